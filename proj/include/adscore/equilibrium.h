#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "adscore/auction.h"

namespace adscore {

// How a best-responding advertiser picks a bid once it has chosen a target
// rank.
// kBalanced: bid b with (v - b) * x_above = (v - p_target) * x_target, so the
// advertiser is indifferent between the target at its price and the slot
// above at b. Re-bids every turn; the fixed point is an envy-free equilibrium.
// kMidpoint: move only on a strict gain, bidding halfway between the score to
// beat and the highest score that still lands on the target. Can cycle.
// kLazyBalanced: move only on a strict gain, with the balanced bid when that
// lands on the target and the midpoint otherwise. Any equilibrium is a fixed
// point, which suits click models where a lower slot can pay more.
enum class BidPlacement { kBalanced, kMidpoint, kLazyBalanced };

// Who moves when within a round. kShuffled draws a fresh order every round
// from a generator seeded with order_seed.
enum class UpdateOrder { kIndex, kShuffled };

// Which slot a lazy mover goes for: the most profitable one, or one drawn
// uniformly from all strictly profitable ones. Best response can cycle under
// click models with externalities where random better response settles.
// kBalanced always targets the most profitable slot.
enum class TargetChoice { kBest, kRandomImproving };

struct BidderBehavior {
  // Advertisers never bid above their value.
  static constexpr bool kCapAtValue = true;
  // An advertiser left without a profitable slot bids exactly its value.
  static constexpr bool kBidValueWhenUnslotted = true;

  BidPlacement bid_placement = BidPlacement::kBalanced;
  UpdateOrder update_order = UpdateOrder::kShuffled;
  std::uint64_t order_seed = 0;
  TargetChoice target_choice = TargetChoice::kBest;
  // After max_rounds without a quiet pass, restart from envy_free_bids with a
  // fresh budget, the next order seed and restart_target_choice, up to this
  // many times.
  std::size_t restarts = 3;
  TargetChoice restart_target_choice = TargetChoice::kRandomImproving;
  // 0 selects 10 * N^2.
  std::size_t max_rounds = 0;
  // Money per click; a pass that moves no bid by more than this converges.
  double convergence_tolerance = 1e-7;

  std::size_t rounds_for(std::size_t n_advertisers) const {
    return max_rounds > 0 ? max_rounds : 10 * n_advertisers * n_advertisers;
  }
};

struct EquilibriumOutcome {
  BidProfile bids;
  Permutation permutation;
  AllocationResult allocation;
  std::size_t rounds_used = 0;
  bool converged = false;
};

struct ProfitableDeviation {
  std::size_t advertiser = 0;
  std::size_t target_rank = 0;  // 0-based
  double gain = 0.0;
};

struct NashCheck {
  bool is_equilibrium = true;
  std::vector<ProfitableDeviation> deviations;
};

// Best-response dynamics hit max_rounds without a quiet pass.
class NotConvergedError : public std::runtime_error {
 public:
  NotConvergedError(const std::string& what, EquilibriumOutcome last)
      : std::runtime_error(what), last_(std::move(last)) {}
  const EquilibriumOutcome& last_state() const { return last_; }

 private:
  EquilibriumOutcome last_;
};

// Price and clicks advertiser i would get at `target_rank`, everyone else's
// bids fixed. Moving up, i pays the score of the current occupant of the
// target rank; moving down, the score of the occupant one rank below it.
struct DeviationTerms {
  double price = 0.0;
  double clicks = 0.0;
};
DeviationTerms deviation_terms(std::size_t advertiser, std::size_t target_rank,
                               const BidProfile& bids,
                               const ScoringProfile& scores,
                               const AuctionInstance& instance,
                               const Permutation& sigma);

// True iff no advertiser gains more than `slack` by moving to any other rank.
// Deviations priced at or above the mover's value are not evaluated when its
// current surplus is non-negative; they cannot be profitable.
NashCheck is_nash_equilibrium(const BidProfile& bids,
                              const ScoringProfile& scores,
                              const AuctionInstance& instance,
                              double slack = kTolerance,
                              const TieBreak& tie_rule = TieBreak::by_index());

// Best-response rounds starting from `initial_bids` capped at values, in the
// behavior's update order, until a full round leaves every bid within the
// tolerance and the ranking unchanged. Stalled runs restart from the
// envy-free bids. Throws NotConvergedError carrying the last state when no
// attempt settles.
EquilibriumOutcome simulate_ne(const ScoringProfile& scores,
                               const AuctionInstance& instance,
                               const BidderBehavior& behavior,
                               const BidProfile& initial_bids,
                               const TieBreak& tie_rule = TieBreak::by_index());

// Bids where, ranked by e_i * v_i, every slotted advertiser below the top is
// indifferent between its slot and the one above at its own bid; the top and
// the unslotted bid their values. The balanced-bidding fixed point under
// product-form clicks.
std::vector<double> envy_free_bids(const ScoringProfile& scores,
                                   const AuctionInstance& instance,
                                   const TieBreak& tie_rule = TieBreak::by_index());

// Surplus slack matching a bid tolerance: tolerance times the largest click
// rate in the outcome.
double equilibrium_slack(const EquilibriumOutcome& outcome,
                         const BidderBehavior& behavior);

// Process-wide counters over every simulate_ne call.
struct EquilibriumAudit {
  std::uint64_t calls = 0;
  std::uint64_t converged = 0;
  std::uint64_t rounds = 0;
  std::uint64_t cap_checks = 0;
  std::uint64_t unslotted_checks = 0;
  std::uint64_t violations = 0;
};
EquilibriumAudit equilibrium_audit();

}  // namespace adscore
