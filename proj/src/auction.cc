#include "adscore/auction.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "adscore/errors.h"

namespace adscore {

AuctionInstance::AuctionInstance(std::vector<double> values,
                                 std::size_t n_slots, CtrModel ctr_model,
                                 double reserve_price)
    : values_(std::move(values)),
      n_slots_(n_slots),
      reserve_price_(reserve_price),
      ctr_model_(std::move(ctr_model)) {
  if (values_.empty()) throw InstanceError("need at least one advertiser");
  if (n_slots_ == 0) throw InstanceError("need at least one slot");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw InstanceError("value of advertiser " + std::to_string(i + 1) +
                          " must be positive");
    }
  }
  if (!(reserve_price_ >= 0.0)) throw InstanceError("reserve price must be >= 0");
  if (adscore::n_advertisers(ctr_model_) != values_.size()) {
    throw InstanceError("CTR model advertiser count does not match values");
  }
  if (adscore::n_slots(ctr_model_) != n_slots_) {
    throw InstanceError("CTR model slot count does not match instance");
  }
}

ScoringProfile::ScoringProfile(std::vector<double> scores)
    : scores_(std::move(scores)) {
  for (double e : scores_) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw InstanceError("ad-quality scores must be positive");
    }
  }
}

ScoringProfile ScoringProfile::uniform(std::size_t n, double score) {
  return ScoringProfile(std::vector<double>(n, score));
}

ScoringProfile ScoringProfile::scaled(double k) const {
  std::vector<double> out = scores_;
  for (double& e : out) e *= k;
  return ScoringProfile(std::move(out));
}

BidProfile::BidProfile(std::vector<double> bids) : bids_(std::move(bids)) {
  for (double b : bids_) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw InstanceError("bids must be >= 0");
    }
  }
}

void BidProfile::set(std::size_t i, double bid) {
  if (!(bid >= 0.0) || !std::isfinite(bid)) {
    throw InstanceError("bids must be >= 0");
  }
  bids_.at(i) = bid;
}

TieBreak TieBreak::by_priority(std::vector<std::size_t> priority) {
  TieBreak t;
  t.priority_ = std::move(priority);
  return t;
}

TieBreak TieBreak::following(const Permutation& sigma) {
  return by_priority(
      std::vector<std::size_t>(sigma.ranks().begin(), sigma.ranks().end()));
}

bool TieBreak::before(std::size_t a, std::size_t b) const {
  if (priority_.empty()) return a < b;
  const std::size_t pa = priority_.at(a);
  const std::size_t pb = priority_.at(b);
  return pa != pb ? pa < pb : a < b;
}

void check_dimensions(const BidProfile& bids, const ScoringProfile& scores,
                      const AuctionInstance& instance) {
  const std::size_t n = instance.n_advertisers();
  if (bids.size() != n || scores.size() != n) {
    throw InstanceError("profile length does not match " + std::to_string(n) +
                        " advertisers");
  }
}

std::vector<double> ranking_scores(const BidProfile& bids,
                                   const ScoringProfile& scores) {
  std::vector<double> out(bids.size());
  for (std::size_t i = 0; i < bids.size(); ++i) out[i] = bids[i] * scores[i];
  return out;
}

Permutation rank_allocation(const BidProfile& bids,
                            const ScoringProfile& scores,
                            const AuctionInstance& instance,
                            const TieBreak& tie_rule) {
  check_dimensions(bids, scores, instance);
  const std::vector<double> score = ranking_scores(bids, scores);
  std::vector<std::size_t> order(score.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Exact sort first, then re-order each run of near-equal scores by the tie
  // rule; this keeps the comparator a strict weak ordering.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() &&
           score[order[end - 1]] - score[order[end]] <= kTolerance) {
      ++end;
    }
    std::sort(order.begin() + start, order.begin() + end,
              [&](std::size_t a, std::size_t b) { return tie_rule.before(a, b); });
    start = end;
  }
  return Permutation::from_order(std::move(order));
}

double price_per_click(std::size_t rank, const BidProfile& bids,
                       const ScoringProfile& scores,
                       const AuctionInstance& instance,
                       const Permutation& sigma) {
  check_dimensions(bids, scores, instance);
  const std::size_t n = instance.n_advertisers();
  if (rank >= n) throw QueryError("rank " + std::to_string(rank + 1) + " out of range");
  if (rank >= instance.n_slots()) return 0.0;
  const std::size_t payer = sigma.occupant(rank);
  if (rank + 1 >= n) return instance.reserve_price();
  const std::size_t next = sigma.occupant(rank + 1);
  return bids[next] * scores[next] / scores[payer];
}

double price_per_click(std::size_t rank, const BidProfile& bids,
                       const ScoringProfile& scores,
                       const AuctionInstance& instance) {
  return price_per_click(rank, bids, scores, instance,
                         rank_allocation(bids, scores, instance));
}

AllocationResult settle(const BidProfile& bids, const ScoringProfile& scores,
                        const AuctionInstance& instance,
                        const TieBreak& tie_rule) {
  AllocationResult result;
  result.permutation = rank_allocation(bids, scores, instance, tie_rule);
  const std::size_t n = instance.n_advertisers();
  result.prices.assign(n, 0.0);
  for (std::size_t r = 0; r < std::min(n, instance.n_slots()); ++r) {
    result.prices[result.permutation.occupant(r)] =
        price_per_click(r, bids, scores, instance, result.permutation);
  }
  result.clicks = ctr_all(instance.ctr_model(), result.permutation);
  return result;
}

SurplusReport surplus_report(const AllocationResult& result,
                             const std::vector<double>& values) {
  SurplusReport report;
  const std::size_t n = values.size();
  if (result.prices.size() != n || result.clicks.size() != n) {
    throw InstanceError("allocation does not match value vector");
  }
  report.advertiser.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = result.clicks[i];
    report.advertiser[i] = (values[i] - result.prices[i]) * x;
    report.advertisers_total += report.advertiser[i];
    report.search_engine += result.prices[i] * x;
    report.social += values[i] * x;
  }
  return report;
}

}  // namespace adscore
