#pragma once

// Independent reference computations used as test oracles. Nothing here calls
// into the library beyond its data types.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "adscore/auction.h"
#include "adscore/ctr_model.h"

namespace oracle {

// order[r] = advertiser at rank r, by b*e descending, ties by index.
inline std::vector<std::size_t> order_by_score(const std::vector<double>& b,
                                               const std::vector<double>& e) {
  std::vector<std::size_t> order(b.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return b[x] * e[x] > b[y] * e[y];
  });
  return order;
}

inline std::vector<std::size_t> ranks_from_order(const std::vector<std::size_t>& order) {
  std::vector<std::size_t> rank(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

// Move the advertiser at rank `from` to rank `to`, shifting the others.
inline std::vector<std::size_t> shifted(std::vector<std::size_t> order,
                                        std::size_t from, std::size_t to) {
  const std::size_t who = order[from];
  order.erase(order.begin() + static_cast<std::ptrdiff_t>(from));
  order.insert(order.begin() + static_cast<std::ptrdiff_t>(to), who);
  return order;
}

inline double clicks(const adscore::CtrModel& model, std::size_t i,
                     const std::vector<std::size_t>& order) {
  return adscore::ctr(model, i,
                      adscore::Permutation::from_order(order));
}

struct Gain {
  std::size_t advertiser;
  std::size_t target;
  double gain;
};

// Every unilateral move to another rank with its surplus change. The price
// at the new rank is the score of whoever ends up directly below, divided by
// the mover's own score.
inline std::vector<Gain> all_deviations(const std::vector<double>& b,
                                        const std::vector<double>& e,
                                        const adscore::AuctionInstance& inst) {
  const auto order = order_by_score(b, e);
  const std::size_t n = order.size();
  const std::size_t s = inst.n_slots();
  const auto& v = inst.values();
  auto price_below = [&](const std::vector<std::size_t>& ord, std::size_t r,
                         std::size_t self) {
    if (r >= s) return 0.0;
    if (r + 1 >= n) return inst.reserve_price();
    const std::size_t nb = ord[r + 1];
    return b[nb] * e[nb] / e[self];
  };
  std::vector<Gain> out;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = order[r];
    const double now = (v[i] - price_below(order, r, i)) *
                       clicks(inst.ctr_model(), i, order);
    for (std::size_t t = 0; t < n; ++t) {
      if (t == r) continue;
      const auto moved = shifted(order, r, t);
      const double p = price_below(moved, t, i);
      // Paying at least the value never beats a non-negative surplus, and
      // click tables need not list such rankings.
      if (p >= v[i] && now >= 0.0) continue;
      const double x = t < s ? clicks(inst.ctr_model(), i, moved) : 0.0;
      out.push_back({i, t, (v[i] - p) * x - now});
    }
  }
  return out;
}

inline double social(const adscore::AuctionInstance& inst,
                     const std::vector<std::size_t>& order) {
  double total = 0.0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    total += inst.value(order[r]) * clicks(inst.ctr_model(), order[r], order);
  }
  return total;
}

// Exhaustive max of the social surplus.
inline double best_social(const adscore::AuctionInstance& inst) {
  std::vector<std::size_t> order(inst.n_advertisers());
  std::iota(order.begin(), order.end(), 0);
  double best = -std::numeric_limits<double>::infinity();
  do {
    best = std::max(best, social(inst, order));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// Random product-form instance with integer-valued parameters, N advertisers
// and S real slots.
inline adscore::AuctionInstance random_product(std::mt19937_64& rng,
                                               std::size_t n, std::size_t s) {
  std::uniform_int_distribution<int> value(1, 20);
  std::uniform_int_distribution<int> factor(5, 70);
  std::vector<double> v(n), q(n), pos(n, 0.0);
  for (auto& x : v) x = value(rng);
  for (auto& x : q) x = factor(rng);
  std::vector<int> slots;
  std::uniform_int_distribution<int> slot(1, 100);
  while (slots.size() < s) {
    const int x = slot(rng);
    if (std::find(slots.begin(), slots.end(), x) == slots.end()) slots.push_back(x);
  }
  std::sort(slots.rbegin(), slots.rend());
  for (std::size_t j = 0; j < s; ++j) pos[j] = slots[j];
  return adscore::AuctionInstance(v, s, adscore::ProductFormCtr(q, pos, s));
}

}  // namespace oracle
