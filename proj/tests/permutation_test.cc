#include "adscore/permutation.h"

#include <gtest/gtest.h>

#include "adscore/errors.h"

namespace adscore {
namespace {

TEST(Permutation, IdentityMapsEveryoneToOwnRank) {
  const Permutation p = Permutation::identity(4);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(p.rank_of(i), i);
    EXPECT_EQ(p.occupant(i), i);
  }
  EXPECT_EQ(p.to_string(), "(1,2,3,4)");
}

TEST(Permutation, RanksAndOrderAreInverse) {
  const Permutation p = Permutation::from_ranks({1, 2, 4, 6, 3, 7, 5, 0, 8});
  EXPECT_EQ(p.to_string(), "(2,3,5,7,4,8,6,1,9)");
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(p.occupant(p.rank_of(i)), i);
    EXPECT_EQ(p.rank_of(p.occupant(i)), i);
  }
  const auto order = p.order();
  EXPECT_EQ(Permutation::from_order({order.begin(), order.end()}), p);
}

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW(Permutation::from_ranks({0, 0, 1}), InstanceError);
  EXPECT_THROW(Permutation::from_ranks({0, 3, 1}), InstanceError);
  EXPECT_THROW(Permutation::from_order({2, 2, 0}), InstanceError);
}

TEST(Permutation, OutOfRangeQueries) {
  const Permutation p = Permutation::identity(3);
  EXPECT_THROW(p.rank_of(3), QueryError);
  EXPECT_THROW(p.occupant(5), QueryError);
}

}  // namespace
}  // namespace adscore
