#include "adscore/equilibrium.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "adscore/errors.h"

namespace adscore {
namespace {

struct AuditCounters {
  std::atomic<std::uint64_t> calls{0};
  std::atomic<std::uint64_t> converged{0};
  std::atomic<std::uint64_t> rounds{0};
  std::atomic<std::uint64_t> cap_checks{0};
  std::atomic<std::uint64_t> unslotted_checks{0};
  std::atomic<std::uint64_t> violations{0};
};

AuditCounters& audit() {
  static AuditCounters counters;
  return counters;
}

double clicks_at(std::size_t advertiser, std::size_t target_rank,
                 const AuctionInstance& instance, const Permutation& sigma) {
  if (target_rank >= instance.n_slots()) return 0.0;
  if (const auto* p = std::get_if<ProductFormCtr>(&instance.ctr_model())) {
    return p->rate_at(advertiser, target_rank);
  }
  return ctr(instance.ctr_model(), advertiser,
             deviation_permutation(sigma, advertiser, target_rank));
}

// Score of the advertiser that would sit directly below `advertiser` if it
// moved to `target_rank`, or -1 when nobody would.
double score_below(std::size_t advertiser, std::size_t target_rank,
                   const std::vector<double>& score, const Permutation& sigma) {
  const std::size_t n = sigma.size();
  const std::size_t current = sigma.rank_of(advertiser);
  const std::size_t below_rank = target_rank < current ? target_rank
                                                       : target_rank + 1;
  if (below_rank >= n) return -1.0;
  return score[sigma.occupant(below_rank)];
}

double score_above(std::size_t advertiser, std::size_t target_rank,
                   const std::vector<double>& score, const Permutation& sigma) {
  if (target_rank == 0) return std::numeric_limits<double>::infinity();
  const std::size_t current = sigma.rank_of(advertiser);
  const std::size_t above_rank = target_rank <= current ? target_rank - 1
                                                        : target_rank;
  return score[sigma.occupant(above_rank)];
}

DeviationTerms terms_with_scores(std::size_t i, std::size_t target,
                                 const std::vector<double>& score,
                                 const ScoringProfile& scores,
                                 const AuctionInstance& instance,
                                 const Permutation& sigma) {
  DeviationTerms t;
  if (target >= instance.n_slots()) return t;
  const double below = score_below(i, target, score, sigma);
  t.price = below < 0.0 ? instance.reserve_price() : below / scores[i];
  t.clicks = clicks_at(i, target, instance, sigma);
  return t;
}

}  // namespace

DeviationTerms deviation_terms(std::size_t advertiser, std::size_t target_rank,
                               const BidProfile& bids,
                               const ScoringProfile& scores,
                               const AuctionInstance& instance,
                               const Permutation& sigma) {
  check_dimensions(bids, scores, instance);
  if (target_rank >= instance.n_advertisers()) {
    throw QueryError("target rank out of range");
  }
  return terms_with_scores(advertiser, target_rank,
                           ranking_scores(bids, scores), scores, instance,
                           sigma);
}

NashCheck is_nash_equilibrium(const BidProfile& bids,
                              const ScoringProfile& scores,
                              const AuctionInstance& instance, double slack,
                              const TieBreak& tie_rule) {
  const Permutation sigma = rank_allocation(bids, scores, instance, tie_rule);
  const std::vector<double> score = ranking_scores(bids, scores);
  const std::size_t n = instance.n_advertisers();
  NashCheck check;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = instance.value(i);
    const std::size_t current = sigma.rank_of(i);
    const DeviationTerms here =
        terms_with_scores(i, current, score, scores, instance, sigma);
    const double current_surplus = (v - here.price) * here.clicks;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == current) continue;
      if (j < instance.n_slots()) {
        const double below = score_below(i, j, score, sigma);
        const double price =
            below < 0.0 ? instance.reserve_price() : below / scores[i];
        if (price >= v && current_surplus >= -slack) continue;
      }
      const DeviationTerms dev =
          terms_with_scores(i, j, score, scores, instance, sigma);
      const double gain = (v - dev.price) * dev.clicks - current_surplus;
      if (gain > slack) check.deviations.push_back({i, j, gain});
    }
  }
  check.is_equilibrium = check.deviations.empty();
  return check;
}

namespace {

// One best-response turn for advertiser i; returns its next bid.
double respond(std::size_t i, const std::vector<double>& bid,
               std::vector<double>& score, const ScoringProfile& scores,
               const AuctionInstance& instance, const BidderBehavior& behavior,
               const TieBreak& tie_rule, std::mt19937_64& rng) {
  const std::size_t n = instance.n_advertisers();
  const std::size_t n_slots = instance.n_slots();
  for (std::size_t k = 0; k < n; ++k) score[k] = bid[k] * scores[k];
  const Permutation sigma =
      rank_allocation(BidProfile(bid), scores, instance, tie_rule);
  const double v = instance.value(i);
  const double cap_score = v * scores[i];
  const std::size_t current = sigma.rank_of(i);

  const DeviationTerms here =
      terms_with_scores(i, current, score, scores, instance, sigma);
  const double current_surplus = (v - here.price) * here.clicks;

  const bool lazy = behavior.bid_placement != BidPlacement::kBalanced;
  const bool pick_random =
      lazy && behavior.target_choice == TargetChoice::kRandomImproving;
  std::vector<std::size_t> improving;
  std::vector<double> improving_surplus, improving_clicks;
  std::size_t best = current;
  double best_surplus = current_surplus;
  double best_clicks = here.clicks;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == current) continue;
    double surplus = 0.0;
    double clicks = 0.0;
    if (j < n_slots) {
      const double below = score_below(i, j, score, sigma);
      if (below >= 0.0 && below >= cap_score - kTolerance) continue;
      // The lazy rules creep by midpoints; leave a margin wider than the bid
      // tolerance so that creeping ends in a detectable jump to the value.
      if (lazy &&
          (below >= (v - 4.0 * behavior.convergence_tolerance) * scores[i] ||
           std::min(cap_score, score_above(i, j, score, sigma)) <=
               std::max(0.0, below) + kTolerance * std::max(1.0, below))) {
        continue;
      }
      const DeviationTerms dev =
          terms_with_scores(i, j, score, scores, instance, sigma);
      surplus = (v - dev.price) * dev.clicks;
      clicks = dev.clicks;
    }
    if (pick_random &&
        surplus > current_surplus +
                      std::max(kTolerance, behavior.convergence_tolerance *
                                               std::max(here.clicks, clicks))) {
      improving.push_back(j);
      improving_surplus.push_back(surplus);
      improving_clicks.push_back(clicks);
    }
    if (surplus > best_surplus + kTolerance) {
      best = j;
      best_surplus = surplus;
      best_clicks = clicks;
    }
  }
  if (!improving.empty()) {
    const std::size_t k =
        std::uniform_int_distribution<std::size_t>(0, improving.size() - 1)(rng);
    best = improving[k];
    best_surplus = improving_surplus[k];
    best_clicks = improving_clicks[k];
  }

  double next_bid = bid[i];
  if (behavior.bid_placement == BidPlacement::kBalanced) {
    if (best >= n_slots || best_surplus <= kTolerance || best == 0) {
      next_bid = v;
    } else {
      const DeviationTerms target =
          terms_with_scores(i, best, score, scores, instance, sigma);
      const double x_up = clicks_at(i, best - 1, instance, sigma);
      next_bid = x_up > 0.0 ? v - (v - target.price) * target.clicks / x_up : v;
      next_bid = std::clamp(next_bid, std::min(target.price, v), v);
    }
    return std::min(next_bid, v);
  }

  const double slack = std::max(
      kTolerance, behavior.convergence_tolerance * std::max(here.clicks, best_clicks));
  if (best != current && best_surplus > current_surplus + slack) {
    if (best >= n_slots) return v;
    const double below = std::max(0.0, score_below(i, best, score, sigma));
    const double upper = std::min(cap_score, score_above(i, best, score, sigma));
    next_bid = 0.5 * (below + upper) / scores[i];
    if (behavior.bid_placement == BidPlacement::kLazyBalanced && best > 0) {
      const DeviationTerms target =
          terms_with_scores(i, best, score, scores, instance, sigma);
      const double x_up = clicks_at(i, best - 1, instance, sigma);
      const double balanced =
          x_up > 0.0 ? v - (v - target.price) * target.clicks / x_up : v;
      if (balanced * scores[i] > below && balanced * scores[i] < upper) {
        next_bid = balanced;
      }
    }
  } else if (current >= n_slots) {
    next_bid = v;
  }
  return std::min(next_bid, v);
}

// Runs up to `budget` rounds; returns rounds used, or 0 on no convergence.
std::size_t run_rounds(std::vector<double>& bid, std::size_t budget,
                       const ScoringProfile& scores,
                       const AuctionInstance& instance,
                       const BidderBehavior& behavior, const TieBreak& tie_rule) {
  const std::size_t n = instance.n_advertisers();
  std::vector<double> score(n);
  std::vector<std::size_t> turn(n);
  std::iota(turn.begin(), turn.end(), 0);
  std::mt19937_64 order_rng(behavior.order_seed);
  std::mt19937_64 choice_rng(behavior.order_seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t round = 1; round <= budget; ++round) {
    if (behavior.update_order == UpdateOrder::kShuffled) {
      std::shuffle(turn.begin(), turn.end(), order_rng);
    }
    const Permutation before =
        rank_allocation(BidProfile(bid), scores, instance, tie_rule);
    bool changed = false;
    for (std::size_t i : turn) {
      const double next = respond(i, bid, score, scores, instance, behavior, tie_rule, choice_rng);
      if (std::abs(next - bid[i]) > behavior.convergence_tolerance) changed = true;
      bid[i] = next;
    }
    if (changed ||
        !(rank_allocation(BidProfile(bid), scores, instance, tie_rule) == before)) {
      continue;
    }
    // Sub-tolerance moves can reorder near-tied scores mid-round, so confirm
    // that the final bids are a fixed point for everyone at once.
    bool fixed = true;
    for (std::size_t i = 0; i < n && fixed; ++i) {
      const double next = respond(i, bid, score, scores, instance, behavior, tie_rule, choice_rng);
      fixed = std::abs(next - bid[i]) <= behavior.convergence_tolerance;
    }
    if (fixed) return round;
  }
  return 0;
}

}  // namespace

std::vector<double> envy_free_bids(const ScoringProfile& scores,
                                   const AuctionInstance& instance,
                                   const TieBreak& tie_rule) {
  const std::size_t n = instance.n_advertisers();
  const std::size_t n_slots = instance.n_slots();
  std::vector<double> bid(instance.values());
  if (scores.size() != n) throw InstanceError("scores do not match the instance");
  const Permutation sigma = rank_allocation(BidProfile(bid), scores, instance, tie_rule);
  // Bottom-up: the advertiser at rank k is indifferent between rank k at the
  // price set by rank k + 1 and rank k - 1 at its own bid.
  for (std::size_t k = std::min(n_slots, n) ; k-- > 1;) {
    const std::size_t i = sigma.occupant(k);
    const double v = instance.value(i);
    const double price = k + 1 < n ? bid[sigma.occupant(k + 1)] *
                                         scores[sigma.occupant(k + 1)] / scores[i]
                                   : instance.reserve_price();
    if (price >= v) continue;
    const double x = clicks_at(i, k, instance, sigma);
    const double x_up = clicks_at(i, k - 1, instance, sigma);
    const double b = x_up > 0.0 ? v - (v - price) * x / x_up : v;
    bid[i] = std::clamp(b, price, v);
  }
  return bid;
}

EquilibriumOutcome simulate_ne(const ScoringProfile& scores,
                               const AuctionInstance& instance,
                               const BidderBehavior& behavior,
                               const BidProfile& initial_bids,
                               const TieBreak& tie_rule) {
  check_dimensions(initial_bids, scores, instance);
  if (!(behavior.convergence_tolerance > 0.0)) {
    throw InstanceError("convergence tolerance must be positive");
  }
  auto& counters = audit();
  counters.calls.fetch_add(1, std::memory_order_relaxed);

  const std::size_t n = instance.n_advertisers();
  const std::size_t n_slots = instance.n_slots();
  const double tol = behavior.convergence_tolerance;
  const std::size_t max_rounds = behavior.rounds_for(n);

  std::vector<double> bid(initial_bids.values());
  for (std::size_t i = 0; i < n; ++i) bid[i] = std::min(bid[i], instance.value(i));

  std::size_t rounds = run_rounds(bid, max_rounds, scores, instance, behavior, tie_rule);
  bool converged = rounds > 0;
  if (!converged) rounds = max_rounds;
  for (std::size_t k = 1; !converged && k <= behavior.restarts; ++k) {
    BidderBehavior again = behavior;
    again.order_seed = behavior.order_seed + k;
    again.target_choice = behavior.restart_target_choice;
    bid = envy_free_bids(scores, instance, tie_rule);
    const std::size_t more = run_rounds(bid, max_rounds, scores, instance, again, tie_rule);
    converged = more > 0;
    rounds += converged ? more : max_rounds;
  }
  counters.rounds.fetch_add(rounds, std::memory_order_relaxed);

  EquilibriumOutcome outcome;
  outcome.bids = BidProfile(bid);
  outcome.allocation = settle(outcome.bids, scores, instance, tie_rule);
  outcome.permutation = outcome.allocation.permutation;
  outcome.rounds_used = rounds;
  outcome.converged = converged;

  for (std::size_t i = 0; i < n; ++i) {
    counters.cap_checks.fetch_add(1, std::memory_order_relaxed);
    if (bid[i] > instance.value(i)) {
      counters.violations.fetch_add(1, std::memory_order_relaxed);
      throw std::logic_error("bid above value for advertiser " +
                             std::to_string(i + 1));
    }
    if (converged && outcome.permutation.rank_of(i) >= n_slots) {
      counters.unslotted_checks.fetch_add(1, std::memory_order_relaxed);
      if (std::abs(bid[i] - instance.value(i)) > tol) {
        counters.violations.fetch_add(1, std::memory_order_relaxed);
        throw std::logic_error("unslotted advertiser " + std::to_string(i + 1) +
                               " does not bid its value");
      }
    }
  }
  if (!converged) {
    throw NotConvergedError("best-response dynamics did not settle within " +
                                std::to_string(rounds) + " rounds",
                            std::move(outcome));
  }
  counters.converged.fetch_add(1, std::memory_order_relaxed);
  return outcome;
}

double equilibrium_slack(const EquilibriumOutcome& outcome,
                         const BidderBehavior& behavior) {
  double max_clicks = 0.0;
  for (double x : outcome.allocation.clicks) max_clicks = std::max(max_clicks, x);
  return std::max(kTolerance, behavior.convergence_tolerance * max_clicks);
}

EquilibriumAudit equilibrium_audit() {
  const auto& c = audit();
  EquilibriumAudit a;
  a.calls = c.calls.load();
  a.converged = c.converged.load();
  a.rounds = c.rounds.load();
  a.cap_checks = c.cap_checks.load();
  a.unslotted_checks = c.unslotted_checks.load();
  a.violations = c.violations.load();
  return a;
}

}  // namespace adscore
