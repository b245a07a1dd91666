#pragma once

#include <cstddef>
#include <vector>

#include "adscore/ctr_model.h"
#include "adscore/permutation.h"

namespace adscore {

// Absolute tolerance for equality of money and score comparisons.
inline constexpr double kTolerance = 1e-9;

// N advertisers with private per-click values competing for S slots. Ranks
// S..N-1 are fake slots with zero click-through rate.
class AuctionInstance {
 public:
  AuctionInstance(std::vector<double> values, std::size_t n_slots,
                  CtrModel ctr_model, double reserve_price = 0.0);

  std::size_t n_advertisers() const { return values_.size(); }
  std::size_t n_slots() const { return n_slots_; }
  double reserve_price() const { return reserve_price_; }
  const std::vector<double>& values() const { return values_; }
  double value(std::size_t i) const { return values_.at(i); }
  const CtrModel& ctr_model() const { return ctr_model_; }

 private:
  std::vector<double> values_;
  std::size_t n_slots_;
  double reserve_price_;
  CtrModel ctr_model_;
};

// The search engine's ad-quality scores e_i, all strictly positive.
class ScoringProfile {
 public:
  ScoringProfile() = default;
  explicit ScoringProfile(std::vector<double> scores);
  static ScoringProfile uniform(std::size_t n, double score);

  std::size_t size() const { return scores_.size(); }
  double operator[](std::size_t i) const { return scores_[i]; }
  const std::vector<double>& values() const { return scores_; }
  ScoringProfile scaled(double k) const;

 private:
  std::vector<double> scores_;
};

// Per-click bids b_i >= 0.
class BidProfile {
 public:
  BidProfile() = default;
  explicit BidProfile(std::vector<double> bids);

  std::size_t size() const { return bids_.size(); }
  double operator[](std::size_t i) const { return bids_[i]; }
  const std::vector<double>& values() const { return bids_; }
  void set(std::size_t i, double bid);

 private:
  std::vector<double> bids_;
};

// Resolves equal ranking scores (within kTolerance). Lower priority value
// takes the higher slot. The default priority is the advertiser index.
class TieBreak {
 public:
  TieBreak() = default;
  static TieBreak by_index() { return TieBreak(); }
  static TieBreak by_priority(std::vector<std::size_t> priority);
  // Priority that reproduces `sigma` among tied advertisers.
  static TieBreak following(const Permutation& sigma);

  bool before(std::size_t a, std::size_t b) const;

 private:
  std::vector<std::size_t> priority_;
};

struct AllocationResult {
  Permutation permutation;
  std::vector<double> prices;
  std::vector<double> clicks;
};

struct SurplusReport {
  std::vector<double> advertiser;  // Pi_i = (v_i - p_i) x_i
  double advertisers_total = 0.0;  // Pi_ad
  double search_engine = 0.0;      // Pi_se = sum p_i x_i
  double social = 0.0;             // sum v_i x_i
};

// Ranking score b_i * e_i for every advertiser.
std::vector<double> ranking_scores(const BidProfile& bids,
                                   const ScoringProfile& scores);

// Orders advertisers by b_i * e_i, highest first.
Permutation rank_allocation(const BidProfile& bids,
                            const ScoringProfile& scores,
                            const AuctionInstance& instance,
                            const TieBreak& tie_rule = TieBreak::by_index());

// Next-price payment of the advertiser at `rank` under `sigma`: the ranking
// score of the advertiser directly below divided by the payer's own score.
// The last slotted bidder with nobody below pays the reserve; fake slots pay
// nothing.
double price_per_click(std::size_t rank, const BidProfile& bids,
                       const ScoringProfile& scores,
                       const AuctionInstance& instance,
                       const Permutation& sigma);
double price_per_click(std::size_t rank, const BidProfile& bids,
                       const ScoringProfile& scores,
                       const AuctionInstance& instance);

AllocationResult settle(const BidProfile& bids, const ScoringProfile& scores,
                        const AuctionInstance& instance,
                        const TieBreak& tie_rule = TieBreak::by_index());

SurplusReport surplus_report(const AllocationResult& result,
                             const std::vector<double>& values);

// Validates that bids and scores match the instance dimension.
void check_dimensions(const BidProfile& bids, const ScoringProfile& scores,
                      const AuctionInstance& instance);

}  // namespace adscore
