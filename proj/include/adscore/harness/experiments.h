#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "adscore/adaptive_scorer.h"
#include "adscore/equilibrium.h"
#include "adscore/harness/config.h"
#include "adscore/optimal_ranking.h"

namespace adscore::harness {

ScorerConfig scorer_config(const ScorerSpec& spec);

struct StaticResult {
  InstanceSpec instance;
  ScorerReport report;
  RankingEvaluation optimum;
  double ratio = 0.0;
  std::vector<TraceRecord> trace;
};

// Cold start of the adaptive scorer on the configured instance, compared with
// the exhaustive optimum.
StaticResult run_static(const ExperimentConfig& config);

struct DynamicInstance {
  std::size_t index = 0;  // 1-based
  InstanceSpec instance;
  ScorerReport report;
  RankingEvaluation optimum;
  bool matches_optimum = false;
};

struct DynamicResult {
  std::vector<DynamicInstance> instances;
  std::size_t cold_adjustments = 0;
  double warm_mean_adjustments = 0.0;  // instances 2.. only
};

// Instance 1 uses the configured means and random or truthful initial bids;
// every later instance redraws Gaussian noise around the means and warm
// starts from the previous report.
DynamicResult run_dynamic(const ExperimentConfig& config);

struct Trial {
  std::size_t index = 0;  // 1-based
  std::vector<double> values;
  std::vector<double> ad_factors;
  ScorerReport report;
  RankingEvaluation optimum;
  double ratio = 0.0;
};

struct ModifiedCtrResult {
  std::vector<Trial> trials;
  std::optional<double> mean;
  std::optional<double> stddev;
  static constexpr double kReferenceMean = 0.916;
  static constexpr double kReferenceStddev = 0.0549;
};

// Random (v, q) trials under the competitor-group click model; ratio of the
// scorer's revenue to the best achievable social surplus.
ModifiedCtrResult run_modified_ctr(const ExperimentConfig& config);

struct FixtureCell {
  int scenario = 0;
  std::string advertiser;  // empty for scenario-wide cells
  std::string field;
  double expected = 0.0;
  double actual = 0.0;
  bool ok = false;
};

struct FixtureReport {
  std::vector<FixtureCell> cells;
  std::vector<NashCheck> nash;  // one per scenario
  bool revenue_ordered = false;
  bool cells_ok() const;
  bool nash_ok() const;
  bool ok() const { return cells_ok() && nash_ok() && revenue_ordered; }
};

// The four-advertiser soda example: three scoring scenarios under an explicit
// click table.
AuctionInstance soda_instance();
struct SodaScenario {
  ScoringProfile scores;
  BidProfile bids;
};
std::vector<SodaScenario> soda_scenarios();
inline const std::vector<std::string> kSodaNames = {"Coke", "Pepsi",
                                                    "Dr. Pepper", "Drink X"};

FixtureReport validate_motivating_example();

// Rounds to 4 decimals, the precision of the published cells.
bool same_to_4dp(double a, double b);

}  // namespace adscore::harness
