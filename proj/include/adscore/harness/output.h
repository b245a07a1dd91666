#pragma once

#include <filesystem>
#include <string>

#include "adscore/harness/experiments.h"

namespace adscore::harness {

// Each writer creates `dir` if needed and returns the files it wrote.
std::vector<std::filesystem::path> write_static(const std::filesystem::path& dir,
                                                const StaticResult& result);
std::vector<std::filesystem::path> write_dynamic(const std::filesystem::path& dir,
                                                 const DynamicResult& result);
std::vector<std::filesystem::path> write_modified_ctr(
    const std::filesystem::path& dir, const ModifiedCtrResult& result);
std::vector<std::filesystem::path> write_fixtures(const std::filesystem::path& dir,
                                                  const FixtureReport& report);

// 1-based ranks joined by spaces, advertiser order.
std::string rank_field(const Permutation& sigma);
std::string money(double x);

}  // namespace adscore::harness
