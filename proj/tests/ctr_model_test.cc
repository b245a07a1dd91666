#include "adscore/ctr_model.h"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "adscore/errors.h"

namespace adscore {
namespace {

const std::vector<double> kQ = {35, 45, 35, 20, 50, 20, 10, 70, 5};
const std::vector<double> kS = {65, 50, 40, 36, 30, 18, 12, 10, 0};
const std::vector<double> kV = {19, 8, 7, 6, 5, 4, 13, 12, 1};

TEST(ProductFormCtr, RateIsAdTimesPositionFactor) {
  const CtrModel m = ProductFormCtr(kQ, kS, 8);
  const Permutation sigma = Permutation::from_ranks({1, 2, 4, 6, 3, 7, 5, 0, 8});
  double total = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    EXPECT_DOUBLE_EQ(ctr(m, i, sigma), kQ[i] * kS[sigma.rank_of(i)]);
    total += kV[i] * ctr(m, i, sigma);
  }
  EXPECT_EQ(total, 123180.0);
}

TEST(ProductFormCtr, FakeSlotHasZeroRate) {
  const CtrModel m = ProductFormCtr(kQ, kS, 8);
  const Permutation sigma = Permutation::identity(9);
  EXPECT_EQ(ctr(m, 8, sigma), 0.0);
}

TEST(ProductFormCtr, DependsOnlyOnOwnRank) {
  const CtrModel m = ProductFormCtr(kQ, kS, 8);
  std::vector<std::size_t> order(9);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    std::shuffle(order.begin(), order.end(), rng);
    const Permutation a = Permutation::from_order(order);
    std::vector<std::size_t> other = order;
    // Permute everyone except the advertiser at rank 3.
    std::shuffle(other.begin(), other.begin() + 3, rng);
    std::shuffle(other.begin() + 4, other.end(), rng);
    const Permutation b = Permutation::from_order(other);
    const std::size_t i = order[3];
    EXPECT_EQ(ctr(m, i, a), ctr(m, i, b));
  }
}

TEST(ProductFormCtr, ValidatesFactors) {
  EXPECT_THROW(ProductFormCtr({1, 1}, {1, 2}, 2), InstanceError);
  EXPECT_THROW(ProductFormCtr({1, 1}, {2, 2}, 2), InstanceError);
  EXPECT_THROW(ProductFormCtr({1, -1}, {2, 1}, 2), InstanceError);
  EXPECT_THROW(ProductFormCtr({1, 1}, {2, 1}, 1), InstanceError);
  EXPECT_THROW(ProductFormCtr({1, 1}, {2}, 1), InstanceError);
  EXPECT_NO_THROW(ProductFormCtr({1, 1}, {2, 0}, 1));
}

// Coke, Pepsi, Dr. Pepper named; Drink X never in a slot.
CtrModel soda_table() {
  std::map<TableCtr::Key, std::vector<double>> t = {
      {{0, 1, 2}, {70, 30, 20}}, {{0, 2, 1}, {80, 20, 30}},
      {{1, 0, 2}, {50, 50, 20}}, {{1, 2, 0}, {70, 30, 35}},
      {{2, 0, 1}, {40, 60, 30}}, {{2, 1, 0}, {50, 50, 35}},
  };
  return TableCtr(4, 3, {0, 1, 2}, t);
}

TEST(TableCtr, LooksUpTheRankingOfTheNamedAdvertisers) {
  const CtrModel m = soda_table();
  const Permutation sigma = Permutation::identity(4);
  EXPECT_EQ(ctr(m, 0, sigma), 70.0);
  EXPECT_EQ(ctr(m, 1, sigma), 30.0);
  EXPECT_EQ(ctr(m, 2, sigma), 20.0);
  EXPECT_EQ(ctr(m, 3, sigma), 0.0);
  // Coke moved one rank down.
  const Permutation down = deviation_permutation(sigma, 0, 1);
  EXPECT_EQ(down.to_string(), "(2,1,3,4)");
  EXPECT_EQ(ctr(m, 0, down), 50.0);
}

TEST(TableCtr, MissingRankingIsAModelError) {
  const CtrModel m = soda_table();
  // Drink X in slot 3 pushes Dr. Pepper out: no such row.
  const Permutation sigma = Permutation::from_ranks({0, 1, 3, 2});
  EXPECT_THROW(ctr(m, 3, sigma), CtrModelError);
  EXPECT_EQ(ctr(m, 2, sigma), 0.0);
}

TEST(CompetitorGroupCtr, HandNormalisedShares) {
  const CtrModel m =
      CompetitorGroupCtr({1, 1, 1}, {2, 1, 1}, 3, {0, 1}, 100, 100);
  const auto x = ctr_all(m, Permutation::identity(3));
  // Group-1 users split 2:1 over ads 1,2; everyone else 2:1:1 over all.
  EXPECT_NEAR(x[0], 100.0 * 2 / 3 + 100.0 * 2 / 4, 1e-12);
  EXPECT_NEAR(x[1], 100.0 * 1 / 3 + 100.0 * 1 / 4, 1e-12);
  EXPECT_NEAR(x[2], 100.0 * 1 / 4, 1e-12);
  EXPECT_NEAR(x[0], 116.6667, 1e-4);
  EXPECT_NEAR(x[1], 58.3333, 1e-4);
  EXPECT_EQ(ctr(m, 2, Permutation::identity(3)), x[2]);
}

TEST(CompetitorGroupCtr, ConservesUsersWhenBothGroupsShown) {
  const CtrModel m = CompetitorGroupCtr(kQ, kS, 8, {0, 1, 2, 3, 4, 5}, 400, 200);
  std::vector<std::size_t> order(9);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    std::shuffle(order.begin(), order.end(), rng);
    const auto x = ctr_all(m, Permutation::from_order(order));
    double total = 0.0;
    for (double c : x) {
      EXPECT_GE(c, 0.0);
      total += c;
    }
    EXPECT_NEAR(total, 600.0, 1e-9);
    EXPECT_EQ(x[order[8]], 0.0);
  }
}

TEST(CompetitorGroupCtr, NoGroupOneAdShownLeavesThoseUsersOut) {
  // Only advertiser 0 is in group 1 and it sits in the fake slot.
  const CtrModel m = CompetitorGroupCtr({1, 1, 1}, {2, 1, 0}, 2, {0}, 100, 60);
  const auto x = ctr_all(m, Permutation::from_ranks({2, 0, 1}));
  EXPECT_EQ(x[0], 0.0);
  EXPECT_NEAR(x[1] + x[2], 60.0, 1e-12);
  EXPECT_NEAR(x[1], 40.0, 1e-12);
}

TEST(CompetitorGroupCtr, Validation) {
  EXPECT_THROW(CompetitorGroupCtr({1, 1, 1}, {1, 2, 0}, 2, {0}, 1, 1), InstanceError);
  EXPECT_THROW(CompetitorGroupCtr({1, 1, 1}, {2, 1, 1}, 2, {0}, 1, 1), InstanceError);
  EXPECT_THROW(CompetitorGroupCtr({1, 1}, {2, 0}, 1, {}, 1, 1), InstanceError);
  EXPECT_THROW(CompetitorGroupCtr({1, 1}, {2, 0}, 1, {0}, -1, 1), InstanceError);
  EXPECT_THROW(CompetitorGroupCtr({1, 1}, {2, 0}, 1, {2}, 1, 1), InstanceError);
}

TEST(DeviationPermutation, ShiftSemantics) {
  const Permutation sigma = Permutation::identity(3);
  EXPECT_EQ(deviation_permutation(sigma, 0, 1).to_string(), "(2,1,3)");
  EXPECT_EQ(deviation_permutation(sigma, 2, 0).to_string(), "(2,3,1)");
  EXPECT_EQ(deviation_permutation(sigma, 0, 2).to_string(), "(3,1,2)");
  EXPECT_EQ(deviation_permutation(sigma, 1, 1), sigma);
  EXPECT_THROW(deviation_permutation(sigma, 0, 3), QueryError);
  EXPECT_THROW(deviation_permutation(sigma, 3, 0), QueryError);
}

TEST(DeviationPermutation, OppositeMoveUndoes) {
  std::vector<std::size_t> order(7);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(3);
  std::shuffle(order.begin(), order.end(), rng);
  const Permutation sigma = Permutation::from_order(order);
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t t = 0; t < 7; ++t) {
      const Permutation moved = deviation_permutation(sigma, i, t);
      EXPECT_EQ(moved.rank_of(i), t);
      // Only ranks between the old and new position change hands.
      const std::size_t lo = std::min(t, sigma.rank_of(i));
      const std::size_t hi = std::max(t, sigma.rank_of(i));
      for (std::size_t a = 0; a < 7; ++a) {
        if (sigma.rank_of(a) < lo || sigma.rank_of(a) > hi) {
          EXPECT_EQ(moved.rank_of(a), sigma.rank_of(a));
        }
      }
      EXPECT_EQ(deviation_permutation(moved, i, sigma.rank_of(i)), sigma);
    }
  }
}

}  // namespace
}  // namespace adscore
