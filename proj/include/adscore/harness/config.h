#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "adscore/auction.h"
#include "adscore/equilibrium.h"

namespace adscore::harness {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, std::size_t line,
              const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class CtrKind { kProduct, kCompetitorGroup };
enum class InitialBids { kValue, kRandom };

struct InstanceSpec {
  std::vector<double> values;
  std::vector<double> ad_factors;        // q
  std::vector<double> position_factors;  // s, padded with zeros to N
  std::size_t n_slots = 0;
  double reserve = 0.0;
  CtrKind ctr = CtrKind::kProduct;
  std::vector<std::size_t> group1;  // 0-based advertiser indices
  double group1_users = 0.0;
  double group2_users = 0.0;
};

struct ScorerSpec {
  double initial_score = 100.0;
  double epsilon = 1e-3;
  double delta = 0.01;
  std::size_t max_adjustments = 20000;
  std::size_t max_rounds = 0;
  double tolerance = 1e-7;
  InitialBids initial_bids = InitialBids::kValue;
  BidPlacement bid_placement = BidPlacement::kBalanced;
};

// Variances of the zero-mean Gaussian noise added per dynamic instance.
struct NoiseSpec {
  double var_v = 0.0;
  double var_q = 0.0;
  double var_s = 0.0;
  std::size_t instances = 11;
  double floor = 1e-3;
};

// Random draws for the modified click model trials.
struct TrialSpec {
  std::size_t trials = 100;
  int value_min = 1;
  int value_max = 20;
  int ad_factor_min = 5;
  int ad_factor_max = 70;
};

struct ExperimentConfig {
  InstanceSpec instance;
  ScorerSpec scorer;
  NoiseSpec noise;
  TrialSpec trials;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(std::istream& in, const std::string& source);

AuctionInstance make_instance(const InstanceSpec& spec);

}  // namespace adscore::harness
