#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace adscore {

// Bijection between advertisers and ranks, both 0-based internally. Rank 0 is
// the top slot; ranks at or beyond the slot count are the zero-CTR fake slots.
// Text and file output use 1-based ranks.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::size_t n);
  // rank_of[i] is the rank of advertiser i. Throws InstanceError unless
  // rank_of is a bijection onto {0..n-1}.
  static Permutation from_ranks(std::vector<std::size_t> rank_of);
  // order[r] is the advertiser at rank r.
  static Permutation from_order(std::vector<std::size_t> order);

  std::size_t size() const { return rank_of_.size(); }
  std::size_t rank_of(std::size_t advertiser) const;
  std::size_t occupant(std::size_t rank) const;

  std::span<const std::size_t> ranks() const { return rank_of_; }
  std::span<const std::size_t> order() const { return occupant_; }

  // 1-based rank vector, e.g. "(2,3,5,7,4,8,6,1,9)".
  std::string to_string() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> rank_of_;
  std::vector<std::size_t> occupant_;
};

}  // namespace adscore
