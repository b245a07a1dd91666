#include "adscore/harness/experiments.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "adscore/errors.h"

namespace adscore::harness {
namespace {

std::vector<double> random_bids(const std::vector<double>& values,
                                std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> b(values.size());
  // 1 - u lies in (0, 1], so every bid is positive and at most the value.
  for (std::size_t i = 0; i < values.size(); ++i) {
    b[i] = values[i] * (1.0 - unit(rng));
  }
  return b;
}

BidProfile initial_bids(const ScorerSpec& spec, const std::vector<double>& values,
                        std::mt19937_64& rng) {
  if (spec.initial_bids == InitialBids::kRandom) {
    return BidProfile(random_bids(values, rng));
  }
  return BidProfile(values);
}

double noisy(double mean, double variance, double floor,
             std::normal_distribution<double>& normal, std::mt19937_64& rng) {
  const double z = normal(rng);
  return std::max(floor, mean + std::sqrt(variance) * z);
}

InstanceSpec perturb(const InstanceSpec& mean, const NoiseSpec& noise,
                     std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  InstanceSpec out = mean;
  for (double& v : out.values) v = noisy(v, noise.var_v, noise.floor, normal, rng);
  for (double& q : out.ad_factors) {
    q = noisy(q, noise.var_q, noise.floor, normal, rng);
  }
  const std::size_t s = out.n_slots;
  for (std::size_t j = 0; j < s; ++j) {
    out.position_factors[j] =
        noisy(out.position_factors[j], noise.var_s, noise.floor, normal, rng);
  }
  // Positions stay ordered: the top slot keeps the largest factor.
  std::sort(out.position_factors.begin(), out.position_factors.begin() + s,
            std::greater<>());
  for (std::size_t j = 1; j < s; ++j) {
    if (out.position_factors[j] >= out.position_factors[j - 1]) {
      out.position_factors[j] = std::nextafter(out.position_factors[j - 1], 0.0);
    }
  }
  return out;
}

}  // namespace

ScorerConfig scorer_config(const ScorerSpec& spec) {
  ScorerConfig c;
  c.epsilon_rel = spec.epsilon;
  c.delta_rel = spec.delta;
  c.max_adjustments = spec.max_adjustments;
  c.behavior.max_rounds = spec.max_rounds;
  c.behavior.convergence_tolerance = spec.tolerance;
  c.behavior.bid_placement = spec.bid_placement;
  return c;
}

StaticResult run_static(const ExperimentConfig& config) {
  StaticResult result;
  result.instance = config.instance;
  const AuctionInstance instance = make_instance(config.instance);
  std::mt19937_64 rng(config.seed);
  const BidProfile b0 = initial_bids(config.scorer, instance.values(), rng);
  AdaptiveScorer scorer(instance, scorer_config(config.scorer),
                        [&](const TraceRecord& r) { result.trace.push_back(r); });
  result.report = scorer.run(
      ScoringProfile::uniform(instance.n_advertisers(), config.scorer.initial_score),
      b0);
  result.optimum = brute_force_optimum(instance);
  result.ratio = result.report.revenue / result.optimum.social_surplus;
  return result;
}

DynamicResult run_dynamic(const ExperimentConfig& config) {
  DynamicResult result;
  std::mt19937_64 rng(config.seed);
  const InstanceSpec& mean = config.instance;
  std::optional<ScorerReport> previous;
  for (std::size_t u = 1; u <= config.noise.instances; ++u) {
    DynamicInstance item;
    item.index = u;
    item.instance = u == 1 ? mean : perturb(mean, config.noise, rng);
    const AuctionInstance instance = make_instance(item.instance);
    AdaptiveScorer scorer(instance, scorer_config(config.scorer));
    if (previous) {
      item.report = scorer.warm_start(*previous);
    } else {
      const BidProfile b0 = initial_bids(config.scorer, instance.values(), rng);
      item.report = scorer.run(
          ScoringProfile::uniform(instance.n_advertisers(),
                                  config.scorer.initial_score),
          b0);
    }
    item.optimum = brute_force_optimum(instance);
    item.matches_optimum = item.report.final_permutation == item.optimum.permutation;
    previous = item.report;
    result.instances.push_back(std::move(item));
  }
  if (!result.instances.empty()) {
    result.cold_adjustments = result.instances.front().report.adjustments;
  }
  if (result.instances.size() > 1) {
    double total = 0.0;
    for (std::size_t k = 1; k < result.instances.size(); ++k) {
      total += static_cast<double>(result.instances[k].report.adjustments);
    }
    result.warm_mean_adjustments =
        total / static_cast<double>(result.instances.size() - 1);
  }
  return result;
}

ModifiedCtrResult run_modified_ctr(const ExperimentConfig& config) {
  ModifiedCtrResult result;
  std::mt19937_64 rng(config.seed);
  const TrialSpec& spec = config.trials;
  std::uniform_int_distribution<int> value_dist(spec.value_min, spec.value_max);
  std::uniform_int_distribution<int> q_dist(spec.ad_factor_min, spec.ad_factor_max);
  const std::size_t n = config.instance.values.size();
  for (std::size_t k = 1; k <= spec.trials; ++k) {
    Trial trial;
    trial.index = k;
    InstanceSpec inst = config.instance;
    for (std::size_t i = 0; i < n; ++i) inst.values[i] = value_dist(rng);
    for (std::size_t i = 0; i < n; ++i) inst.ad_factors[i] = q_dist(rng);
    trial.values = inst.values;
    trial.ad_factors = inst.ad_factors;
    const AuctionInstance instance = make_instance(inst);
    AdaptiveScorer scorer(instance, scorer_config(config.scorer));
    trial.report = scorer.run(
        ScoringProfile::uniform(n, config.scorer.initial_score),
        initial_bids(config.scorer, instance.values(), rng));
    trial.optimum = brute_force_optimum(instance);
    trial.ratio = trial.report.revenue / trial.optimum.social_surplus;
    result.trials.push_back(std::move(trial));
  }
  if (!result.trials.empty()) {
    const double count = static_cast<double>(result.trials.size());
    double sum = 0.0;
    for (const auto& t : result.trials) sum += t.ratio;
    const double m = sum / count;
    double ss = 0.0;
    for (const auto& t : result.trials) ss += (t.ratio - m) * (t.ratio - m);
    result.mean = m;
    result.stddev = result.trials.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
  }
  return result;
}

bool same_to_4dp(double a, double b) {
  return std::llround(a * 1e4) == std::llround(b * 1e4);
}

bool FixtureReport::cells_ok() const {
  return std::all_of(cells.begin(), cells.end(),
                     [](const FixtureCell& c) { return c.ok; });
}

bool FixtureReport::nash_ok() const {
  return std::all_of(nash.begin(), nash.end(),
                     [](const NashCheck& c) { return c.is_equilibrium; });
}

AuctionInstance soda_instance() {
  // Keys are the 0-based ranks of Coke, Pepsi and Dr. Pepper.
  std::map<TableCtr::Key, std::vector<double>> table = {
      {{0, 1, 2}, {70, 30, 20}}, {{0, 2, 1}, {80, 20, 30}},
      {{1, 0, 2}, {50, 50, 20}}, {{1, 2, 0}, {70, 30, 35}},
      {{2, 0, 1}, {40, 60, 30}}, {{2, 1, 0}, {50, 50, 35}},
  };
  return AuctionInstance({0.10, 0.10, 0.10, 0.07}, 3,
                         TableCtr(4, 3, {0, 1, 2}, std::move(table)));
}

std::vector<SodaScenario> soda_scenarios() {
  return {
      {ScoringProfile({70, 30, 20, 20}), BidProfile({0.05, 0.07, 0.10, 0.07})},
      {ScoringProfile({50, 50, 20, 20}), BidProfile({0.05, 0.07, 0.10, 0.07})},
      {ScoringProfile({50, 40, 20, 20}), BidProfile({0.05, 0.08, 0.10, 0.07})},
  };
}

FixtureReport validate_motivating_example() {
  struct Row {
    std::size_t rank;  // 1-based
    double price, clicks, surplus, payment;
  };
  // Published rows per scenario, advertisers in index order; Pepsi's
  // scenario-3 price follows from its surplus and payment cells.
  const std::vector<std::vector<Row>> expected = {
      {{1, 0.03, 70, 4.9, 2.1}, {2, 0.0667, 30, 1.0, 2.0},
       {3, 0.07, 20, 0.6, 1.4}, {4, 0, 0, 0, 0}},
      {{2, 0.04, 50, 3.0, 2.0}, {1, 0.05, 50, 2.5, 2.5},
       {3, 0.07, 20, 0.6, 1.4}, {4, 0, 0, 0, 0}},
      {{2, 0.04, 50, 3.0, 2.0}, {1, 0.0625, 50, 1.875, 3.125},
       {3, 0.07, 20, 0.6, 1.4}, {4, 0, 0, 0, 0}},
  };
  const std::vector<double> revenue = {5.5, 5.9, 6.525};

  const AuctionInstance instance = soda_instance();
  const auto scenarios = soda_scenarios();
  FixtureReport report;
  std::vector<double> actual_revenue;
  for (std::size_t k = 0; k < scenarios.size(); ++k) {
    const int scenario = static_cast<int>(k + 1);
    const auto& sc = scenarios[k];
    const AllocationResult result = settle(sc.bids, sc.scores, instance);
    const SurplusReport surplus = surplus_report(result, instance.values());
    auto cell = [&](const std::string& who, const std::string& field,
                    double want, double got) {
      report.cells.push_back({scenario, who, field, want, got, same_to_4dp(want, got)});
    };
    for (std::size_t i = 0; i < instance.n_advertisers(); ++i) {
      const Row& row = expected[k][i];
      const std::string& who = kSodaNames[i];
      cell(who, "rank", static_cast<double>(row.rank),
           static_cast<double>(result.permutation.rank_of(i) + 1));
      cell(who, "price", row.price, result.prices[i]);
      cell(who, "clicks", row.clicks, result.clicks[i]);
      cell(who, "surplus", row.surplus, surplus.advertiser[i]);
      cell(who, "payment", row.payment, result.prices[i] * result.clicks[i]);
    }
    cell("", "revenue", revenue[k], surplus.search_engine);
    actual_revenue.push_back(surplus.search_engine);
    report.nash.push_back(is_nash_equilibrium(sc.bids, sc.scores, instance));
  }
  report.revenue_ordered = actual_revenue[0] < actual_revenue[1] &&
                           actual_revenue[1] < actual_revenue[2];
  return report;
}

}  // namespace adscore::harness
