#include "adscore/adaptive_scorer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "adscore/errors.h"

namespace adscore {

std::size_t ScorerState::unrevealed_count() const {
  return static_cast<std::size_t>(
      std::count(revealed.begin(), revealed.end(), false));
}

std::optional<std::size_t> ScorerState::top_revealed() const {
  if (ladder.empty()) return std::nullopt;
  return ladder.front();
}

AdaptiveScorer::AdaptiveScorer(const AuctionInstance& instance,
                               ScorerConfig config, TraceSink sink)
    : instance_(instance), config_(config), sink_(std::move(sink)) {
  if (!(config_.epsilon_rel > 0.0) || config_.epsilon_rel >= 1.0) {
    throw InstanceError("epsilon must lie in (0, 1)");
  }
  if (!(config_.delta_rel >= 0.0)) {
    throw InstanceError("delta must be non-negative");
  }
}

ScorerState AdaptiveScorer::init(const ScoringProfile& initial_scores,
                                 const BidProfile& initial_bids) const {
  const std::size_t n = instance_.n_advertisers();
  if (n <= instance_.n_slots()) {
    throw PreconditionError("the scorer needs more advertisers than slots");
  }
  check_dimensions(initial_bids, initial_scores, instance_);
  ScorerState state;
  state.revealed.assign(n, false);
  state.revealed_value.assign(n, 0.0);
  state.scores = initial_scores;
  state.bids = initial_bids;
  return state;
}

ScorerState AdaptiveScorer::init(const ScoringProfile& initial_scores) const {
  return init(initial_scores, BidProfile(instance_.values()));
}

void AdaptiveScorer::apply_ladder(ScorerState& state) const {
  std::vector<double> e(state.scores.values());
  for (std::size_t k = 0; k < state.ladder.size(); ++k) {
    const std::size_t i = state.ladder[k];
    e[i] = state.rungs[k] / state.revealed_value[i];
  }
  state.scores = ScoringProfile(std::move(e));
}

void AdaptiveScorer::layout_ladder(ScorerState& state, double top) const {
  state.rungs.resize(state.ladder.size());
  for (std::size_t k = 0; k < state.rungs.size(); ++k) {
    state.rungs[k] = top * (1.0 - static_cast<double>(k) * config_.epsilon_rel);
  }
}

void AdaptiveScorer::settle(ScorerState& state) const {
  const EquilibriumOutcome outcome =
      simulate_ne(state.scores, instance_, config_.behavior, state.bids);
  state.bids = outcome.bids;
  state.allocation = outcome.allocation;
  state.revenue = surplus_report(outcome.allocation, instance_.values()).search_engine;
  state.settled = true;
  emit(state);
}

void AdaptiveScorer::emit(const ScorerState& state) const {
  if (!sink_) return;
  TraceRecord row;
  row.t = state.t;
  row.score_bid = ranking_scores(state.bids, state.scores);
  row.permutation = state.allocation.permutation;
  row.revenue = state.revenue;
  row.unrevealed = state.unrevealed_count();
  sink_(row);
}

bool AdaptiveScorer::over_budget(const ScorerState& state) const {
  return state.t >= config_.max_adjustments;
}

void AdaptiveScorer::step(ScorerState& state) const {
  if (!state.settled) {
    settle(state);
  } else {
    bool unrevealed_out = false;
    for (std::size_t i = 0; i < state.revealed.size(); ++i) {
      if (!state.revealed[i] &&
          state.allocation.permutation.rank_of(i) >= instance_.n_slots()) {
        unrevealed_out = true;
      }
    }
    if (!unrevealed_out && !state.ladder.empty() && config_.delta_rel > 0.0) {
      const double raise = config_.delta_rel * state.ladder_top();
      for (double& r : state.rungs) r += raise;
      apply_ladder(state);
      ++state.t;
      settle(state);
    }
  }
  reveal_check(state);
}

bool AdaptiveScorer::reveal_check(ScorerState& state) const {
  bool any = false;
  for (;;) {
    if (over_budget(state)) return any;
    const Permutation& sigma = state.allocation.permutation;
    std::optional<std::size_t> pick;
    double pick_score = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < state.revealed.size(); ++i) {
      if (state.revealed[i] || sigma.rank_of(i) < instance_.n_slots()) continue;
      const double s = state.bids[i] * state.scores[i];
      if (s < pick_score) {
        pick = i;
        pick_score = s;
      }
    }
    if (!pick) return any;
    const std::size_t i = *pick;
    any = true;
    state.revealed[i] = true;
    state.revealed_value[i] = state.bids[i];
    if (!(state.revealed_value[i] > 0.0)) {
      throw InstanceError("revealed a non-positive value");
    }
    if (state.ladder.empty()) {
      // The first rung sits at the newcomer's own e*v: no score changes.
      state.ladder.push_back(i);
      state.rungs.assign(1, state.scores[i] * state.revealed_value[i]);
      continue;
    }
    state.ladder.insert(state.ladder.begin(), i);
    layout_ladder(state, state.ladder_top());
    apply_ladder(state);
    ++state.t;
    settle(state);
    rank_search(state, i);
  }
}

void AdaptiveScorer::rank_search(ScorerState& state, std::size_t newcomer) const {
  auto it = std::find(state.ladder.begin(), state.ladder.end(), newcomer);
  if (it == state.ladder.end()) {
    throw PreconditionError("rank search needs a revealed advertiser");
  }
  std::size_t k = static_cast<std::size_t>(it - state.ladder.begin());
  while (k + 1 < state.ladder.size() && !over_budget(state)) {
    const double baseline = state.revenue;
    const BidProfile saved_bids = state.bids;
    std::swap(state.ladder[k], state.ladder[k + 1]);
    apply_ladder(state);
    ++state.t;
    settle(state);
    if (state.revenue > baseline + kTolerance * std::max(1.0, std::abs(baseline))) {
      ++k;
      continue;
    }
    std::swap(state.ladder[k], state.ladder[k + 1]);
    apply_ladder(state);
    ++state.t;
    state.bids = saved_bids;
    settle(state);
    return;
  }
}

ScorerReport AdaptiveScorer::report(const ScorerState& state) const {
  ScorerReport r;
  r.final_permutation = state.allocation.permutation;
  r.final_scores = state.scores;
  r.final_bids = state.bids;
  r.final_prices = state.allocation.prices;
  r.final_clicks = state.allocation.clicks;
  r.revenue = state.revenue;
  r.adjustments = state.t;
  r.revealed_values = state.revealed_value;
  r.terminated = state.settled && state.all_revealed();
  return r;
}

ScorerReport AdaptiveScorer::run(const ScoringProfile& initial_scores,
                                 const BidProfile& initial_bids) const {
  ScorerState state = init(initial_scores, initial_bids);
  while (!(state.settled && state.all_revealed()) && !over_budget(state)) {
    const std::size_t before_t = state.t;
    const bool was_settled = state.settled;
    step(state);
    // No raise possible and nothing to reveal: the run cannot progress.
    if (was_settled && state.t == before_t) break;
  }
  return report(state);
}

ScorerReport AdaptiveScorer::run(const ScoringProfile& initial_scores) const {
  return run(initial_scores, BidProfile(instance_.values()));
}

ScorerReport AdaptiveScorer::warm_start(const ScorerReport& previous) const {
  if (previous.final_scores.size() != instance_.n_advertisers()) {
    throw InstanceError("warm start needs the same number of advertisers");
  }
  return run(previous.final_scores, previous.final_bids);
}

}  // namespace adscore
