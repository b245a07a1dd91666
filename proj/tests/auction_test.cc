#include "adscore/auction.h"

#include <gtest/gtest.h>

#include <random>

#include "adscore/errors.h"
#include "oracles.h"

namespace adscore {
namespace {

AuctionInstance soda() {
  std::map<TableCtr::Key, std::vector<double>> t = {
      {{0, 1, 2}, {70, 30, 20}}, {{0, 2, 1}, {80, 20, 30}},
      {{1, 0, 2}, {50, 50, 20}}, {{1, 2, 0}, {70, 30, 35}},
      {{2, 0, 1}, {40, 60, 30}}, {{2, 1, 0}, {50, 50, 35}},
  };
  return AuctionInstance({0.10, 0.10, 0.10, 0.07}, 3,
                         TableCtr(4, 3, {0, 1, 2}, t));
}

const BidProfile kBids({0.05, 0.07, 0.10, 0.07});

TEST(RankAllocation, WeightsBidsByScore) {
  const AuctionInstance inst = soda();
  const auto p = rank_allocation(kBids, ScoringProfile({70, 30, 20, 20}), inst);
  EXPECT_EQ(p.to_string(), "(1,2,3,4)");
  const auto s = ranking_scores(kBids, ScoringProfile({70, 30, 20, 20}));
  EXPECT_NEAR(s[0], 3.5, 1e-12);
  EXPECT_NEAR(s[1], 2.1, 1e-12);
  EXPECT_NEAR(s[2], 2.0, 1e-12);
  EXPECT_NEAR(s[3], 1.4, 1e-12);

  const auto p3 = rank_allocation(BidProfile({0.05, 0.08, 0.10, 0.07}),
                                  ScoringProfile({50, 40, 20, 20}), inst);
  EXPECT_EQ(p3.to_string(), "(2,1,3,4)");
}

TEST(RankAllocation, UniformScoresRankByBid) {
  const AuctionInstance inst({5, 5, 5}, 2, ProductFormCtr({1, 1, 1}, {2, 1, 0}, 2));
  EXPECT_EQ(rank_allocation(BidProfile({1, 3, 2}), ScoringProfile::uniform(3, 1), inst)
                .to_string(),
            "(3,1,2)");
}

TEST(RankAllocation, TiesGoToTheLowerIndexByDefault) {
  const AuctionInstance inst({5, 5, 5}, 2, ProductFormCtr({1, 1, 1}, {2, 1, 0}, 2));
  const ScoringProfile e({1, 2, 1});
  const BidProfile b({2, 1, 2});
  EXPECT_EQ(rank_allocation(b, e, inst).to_string(), "(1,2,3)");
  EXPECT_EQ(rank_allocation(b, e, inst, TieBreak::by_priority({2, 1, 0})).to_string(),
            "(3,2,1)");
  const Permutation want = Permutation::from_ranks({1, 2, 0});
  EXPECT_EQ(rank_allocation(b, e, inst, TieBreak::following(want)), want);
}

TEST(RankAllocation, ScaleInvariant) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int k = 0; k < 100; ++k) {
    const AuctionInstance inst = oracle::random_product(rng, 6, 4);
    std::vector<double> e(6), b(6);
    for (auto& x : e) x = u(rng);
    for (auto& x : b) x = u(rng);
    const ScoringProfile sp(e);
    const double scale = u(rng);
    EXPECT_EQ(rank_allocation(BidProfile(b), sp, inst),
              rank_allocation(BidProfile(b), sp.scaled(scale), inst));
  }
}

TEST(RankAllocation, DimensionMismatch) {
  const AuctionInstance inst = soda();
  EXPECT_THROW(rank_allocation(BidProfile({1, 1}), ScoringProfile({1, 1, 1, 1}), inst),
               InstanceError);
  EXPECT_THROW(ScoringProfile({1, 0}), InstanceError);
  EXPECT_THROW(BidProfile({1, -1}), InstanceError);
  EXPECT_THROW(AuctionInstance({1, 0}, 1, ProductFormCtr({1, 1}, {1, 0}, 1)),
               InstanceError);
}

TEST(PricePerClick, NextScoreOverOwnScore) {
  const AuctionInstance inst = soda();
  const ScoringProfile e({70, 30, 20, 20});
  EXPECT_NEAR(price_per_click(0, kBids, e, inst), 2.1 / 70, 1e-12);
  EXPECT_NEAR(price_per_click(0, kBids, e, inst), 0.03, 1e-12);
  EXPECT_NEAR(price_per_click(1, kBids, e, inst), 2.0 / 30, 1e-12);
  EXPECT_EQ(price_per_click(3, kBids, e, inst), 0.0);
  EXPECT_THROW(price_per_click(4, kBids, e, inst), QueryError);

  // Pepsi on top in scenario 3: (0.10 - p) * 50 must equal surplus 1.875.
  const double p = price_per_click(0, BidProfile({0.05, 0.08, 0.10, 0.07}),
                                   ScoringProfile({50, 40, 20, 20}), inst);
  EXPECT_NEAR(p, 0.0625, 1e-12);
  EXPECT_NEAR((0.10 - p) * 50, 1.875, 1e-12);
}

TEST(PricePerClick, LoneBidderPaysReserve) {
  const AuctionInstance free({3}, 1, ProductFormCtr({2}, {5}, 1));
  EXPECT_EQ(price_per_click(0, BidProfile({1}), ScoringProfile({1}), free), 0.0);
  const AuctionInstance reserved({3}, 1, ProductFormCtr({2}, {5}, 1), 0.5);
  const auto r = settle(BidProfile({1}), ScoringProfile({1}), reserved);
  EXPECT_EQ(r.prices[0], 0.5);
  EXPECT_EQ(r.clicks[0], 10.0);
}

TEST(Settle, SodaScenarios) {
  const AuctionInstance inst = soda();
  const auto r1 = settle(kBids, ScoringProfile({70, 30, 20, 20}), inst);
  const std::vector<double> clicks1 = {70, 30, 20, 0};
  const std::vector<double> price1 = {0.03, 0.0667, 0.07, 0};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(r1.clicks[i], clicks1[i]);
    EXPECT_NEAR(r1.prices[i], price1[i], 5e-5);
  }
  const auto s1 = surplus_report(r1, inst.values());
  const std::vector<double> surplus1 = {4.9, 1.0, 0.6, 0};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(s1.advertiser[i], surplus1[i], 1e-9);
  EXPECT_NEAR(s1.search_engine, 5.5, 1e-9);

  const auto r2 = settle(kBids, ScoringProfile({50, 50, 20, 20}), inst);
  const std::vector<double> pay2 = {2.0, 2.5, 1.4, 0};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(r2.prices[i] * r2.clicks[i], pay2[i], 1e-9);
  }
  EXPECT_NEAR(surplus_report(r2, inst.values()).search_engine, 5.9, 1e-9);

  const auto r3 = settle(BidProfile({0.05, 0.08, 0.10, 0.07}),
                         ScoringProfile({50, 40, 20, 20}), inst);
  EXPECT_NEAR(surplus_report(r3, inst.values()).search_engine,
              3.125 + 2.0 + 1.4, 1e-9);
}

TEST(Settle, SingleBidderGetsTheSlotAtReserve) {
  const AuctionInstance inst({4}, 1, ProductFormCtr({3}, {7}, 1), 0.25);
  const auto r = settle(BidProfile({2}), ScoringProfile({1}), inst);
  EXPECT_EQ(r.clicks[0], 21.0);
  EXPECT_EQ(r.prices[0], 0.25);
}

TEST(SurplusReport, PricesAtValuesLeaveNothingToAdvertisers) {
  AllocationResult r;
  r.permutation = Permutation::identity(3);
  r.prices = {4, 3, 0};
  r.clicks = {10, 5, 0};
  const auto s = surplus_report(r, {4, 3, 2});
  for (double x : s.advertiser) EXPECT_EQ(x, 0.0);
  EXPECT_EQ(s.search_engine, s.social);
  EXPECT_EQ(s.social, 55.0);
}

// Decomposition, price dominance and monotone scores on random profiles,
// checked against a hand-rolled next-price auction.
TEST(Settle, MatchesReferenceAuction) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + k % 7;
    const std::size_t s = 1 + k % (n - 1);
    const AuctionInstance inst = oracle::random_product(rng, n, s);
    std::vector<double> e(n), b(n);
    for (auto& x : e) x = u(rng);
    for (std::size_t i = 0; i < n; ++i) b[i] = inst.value(i) * u(rng) / 10.0;
    const auto result = settle(BidProfile(b), ScoringProfile(e), inst);
    const auto order = oracle::order_by_score(b, e);
    EXPECT_EQ(result.permutation, Permutation::from_order(order));
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t i = order[r];
      double want = 0.0;
      if (r < s) want = r + 1 < n ? b[order[r + 1]] * e[order[r + 1]] / e[i] : 0.0;
      EXPECT_NEAR(result.prices[i], want, 1e-12);
      EXPECT_LE(result.prices[i], b[i] + 1e-12);
      if (r + 1 < n) {
        EXPECT_GE(b[i] * e[i], b[order[r + 1]] * e[order[r + 1]]);
      }
    }
    const auto rep = surplus_report(result, inst.values());
    double social = 0.0;
    for (std::size_t i = 0; i < n; ++i) social += inst.value(i) * result.clicks[i];
    EXPECT_NEAR(rep.advertisers_total + rep.search_engine, social, 1e-9 * social + 1e-12);
    EXPECT_NEAR(rep.social, social, 1e-9 * social + 1e-12);
  }
}

}  // namespace
}  // namespace adscore
