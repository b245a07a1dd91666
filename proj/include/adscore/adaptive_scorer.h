#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "adscore/auction.h"
#include "adscore/equilibrium.h"

namespace adscore {

struct ScorerConfig {
  // Gap between neighbouring ladder rungs, relative to the ladder top when
  // the ladder is laid out.
  double epsilon_rel = 1e-3;
  // Per-step raise of every rung, relative to the current ladder top.
  double delta_rel = 0.01;
  // Budget on scoring-profile changes; a run that hits it stops early.
  std::size_t max_adjustments = 20000;
  BidderBehavior behavior;
};

// Advertisers are split into unrevealed (U) and revealed (V). Revealed ones
// sit on a ladder: ladder[k] is the k-th V member from the top and its score
// is rungs[k] / revealed_value.
struct ScorerState {
  std::vector<bool> revealed;
  std::vector<double> revealed_value;
  std::vector<std::size_t> ladder;
  std::vector<double> rungs;
  ScoringProfile scores;
  BidProfile bids;
  AllocationResult allocation;
  double revenue = 0.0;
  std::size_t t = 0;
  bool settled = false;

  std::size_t unrevealed_count() const;
  bool all_revealed() const { return unrevealed_count() == 0; }
  // Highest-ranked revealed advertiser.
  std::optional<std::size_t> top_revealed() const;
  double ladder_top() const { return rungs.empty() ? 0.0 : rungs.front(); }
};

struct TraceRecord {
  std::size_t t = 0;
  std::vector<double> score_bid;  // e_i * b_i
  Permutation permutation;
  double revenue = 0.0;
  std::size_t unrevealed = 0;
};
using TraceSink = std::function<void(const TraceRecord&)>;

struct ScorerReport {
  Permutation final_permutation;
  ScoringProfile final_scores;
  BidProfile final_bids;
  std::vector<double> final_prices;
  std::vector<double> final_clicks;
  double revenue = 0.0;
  std::size_t adjustments = 0;
  std::vector<double> revealed_values;
  bool terminated = true;
};

class AdaptiveScorer {
 public:
  AdaptiveScorer(const AuctionInstance& instance, ScorerConfig config,
                 TraceSink sink = {});

  // Everyone unrevealed, no settlement yet. Needs N > S.
  ScorerState init(const ScoringProfile& initial_scores,
                   const BidProfile& initial_bids) const;
  ScorerState init(const ScoringProfile& initial_scores) const;

  // First call settles. Later calls raise the ladder when no unrevealed
  // advertiser is out of the slots, then run reveal_check.
  void step(ScorerState& state) const;
  // Moves unslotted unrevealed advertisers to the ladder top, one at a time,
  // each followed by rank_search. Returns whether anyone was revealed.
  bool reveal_check(ScorerState& state) const;
  // Swaps `newcomer` downwards while revenue strictly improves.
  void rank_search(ScorerState& state, std::size_t newcomer) const;

  ScorerReport run(const ScoringProfile& initial_scores,
                   const BidProfile& initial_bids) const;
  ScorerReport run(const ScoringProfile& initial_scores) const;
  // Restarts from a previous report's scores and bids with every value
  // unrevealed; adjustments count this run only.
  ScorerReport warm_start(const ScorerReport& previous) const;

  ScorerReport report(const ScorerState& state) const;
  const AuctionInstance& instance() const { return instance_; }
  const ScorerConfig& config() const { return config_; }

 private:
  void apply_ladder(ScorerState& state) const;
  void layout_ladder(ScorerState& state, double top) const;
  void settle(ScorerState& state) const;
  void emit(const ScorerState& state) const;
  bool over_budget(const ScorerState& state) const;

  const AuctionInstance& instance_;
  ScorerConfig config_;
  TraceSink sink_;
};

}  // namespace adscore
