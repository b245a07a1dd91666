#include "adscore/permutation.h"

#include <numeric>

#include "adscore/errors.h"

namespace adscore {

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> ranks(n);
  std::iota(ranks.begin(), ranks.end(), std::size_t{0});
  return from_ranks(std::move(ranks));
}

Permutation Permutation::from_ranks(std::vector<std::size_t> rank_of) {
  const std::size_t n = rank_of.size();
  std::vector<std::size_t> occupant(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = rank_of[i];
    if (r >= n || occupant[r] != n) {
      throw InstanceError("permutation is not a bijection over 0.." +
                          std::to_string(n - 1));
    }
    occupant[r] = i;
  }
  Permutation p;
  p.rank_of_ = std::move(rank_of);
  p.occupant_ = std::move(occupant);
  return p;
}

Permutation Permutation::from_order(std::vector<std::size_t> order) {
  const std::size_t n = order.size();
  std::vector<std::size_t> ranks(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = order[r];
    if (i >= n || ranks[i] != n) {
      throw InstanceError("ranking order is not a bijection");
    }
    ranks[i] = r;
  }
  return from_ranks(std::move(ranks));
}

std::size_t Permutation::rank_of(std::size_t advertiser) const {
  if (advertiser >= rank_of_.size()) {
    throw QueryError("advertiser index out of range");
  }
  return rank_of_[advertiser];
}

std::size_t Permutation::occupant(std::size_t rank) const {
  if (rank >= occupant_.size()) throw QueryError("rank out of range");
  return occupant_[rank];
}

std::string Permutation::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < rank_of_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(rank_of_[i] + 1);
  }
  out += ')';
  return out;
}

}  // namespace adscore
