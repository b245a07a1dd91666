#include "adscore/optimal_ranking.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "adscore/equilibrium.h"
#include "adscore/errors.h"

namespace adscore {
namespace {

Permutation swapped(const Permutation& sigma, std::size_t rank) {
  std::vector<std::size_t> order(sigma.order().begin(), sigma.order().end());
  std::swap(order[rank], order[rank + 1]);
  return Permutation::from_order(std::move(order));
}

bool near(double a, double b, double scale) {
  return std::abs(a - b) <= kTolerance * std::max(1.0, scale);
}

}  // namespace

EqualizingProfile equalizing_profile(const std::vector<double>& values,
                                     double level) {
  if (!(level > 0.0)) throw InstanceError("level must be positive");
  std::vector<double> e(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) {
      throw InstanceError("equalizing scores need positive values");
    }
    e[i] = level / values[i];
  }
  return {ScoringProfile(std::move(e)), level};
}

double social_surplus(const AuctionInstance& instance,
                      const Permutation& sigma) {
  const std::vector<double> x = ctr_all(instance.ctr_model(), sigma);
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) total += instance.value(i) * x[i];
  return total;
}

bool verify_truthful_ne(const AuctionInstance& instance,
                        const Permutation& sigma, double level) {
  if (instance.n_advertisers() <= instance.n_slots()) {
    throw PreconditionError("truthful equilibrium needs more advertisers than slots");
  }
  if (sigma.size() != instance.n_advertisers()) {
    throw InstanceError("permutation size does not match the instance");
  }
  const EqualizingProfile eq = equalizing_profile(instance.values(), level);
  const BidProfile bids(instance.values());
  const TieBreak tie = TieBreak::following(sigma);
  const AllocationResult result = settle(bids, eq.scores, instance, tie);
  if (!(result.permutation == sigma)) return false;

  const SurplusReport report = surplus_report(result, instance.values());
  const double scale = std::abs(report.social);
  for (double pi : report.advertiser) {
    if (!near(pi, 0.0, scale)) return false;
  }
  if (!near(report.search_engine, report.social, scale)) return false;
  return is_nash_equilibrium(bids, eq.scores, instance,
                             kTolerance * std::max(1.0, scale), tie)
      .is_equilibrium;
}

RankingEvaluation brute_force_optimum(const AuctionInstance& instance) {
  const std::size_t n = instance.n_advertisers();
  if (n > kBruteForceLimit) {
    throw PreconditionError("brute force is limited to " +
                            std::to_string(kBruteForceLimit) +
                            " advertisers; use product_form_optimum");
  }
  std::vector<std::size_t> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 0);
  RankingEvaluation best{Permutation::identity(n), -1.0};
  bool first = true;
  // next_permutation walks rank vectors in lexicographic order, so keeping the
  // first strict maximum gives the smallest rank vector among ties.
  do {
    Permutation sigma = Permutation::from_ranks(ranks);
    const double value = social_surplus(instance, sigma);
    if (first || value > best.social_surplus +
                             kTolerance * std::abs(best.social_surplus)) {
      best = {std::move(sigma), value};
      first = false;
    }
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return best;
}

RankingEvaluation product_form_optimum(const AuctionInstance& instance) {
  const auto* model = std::get_if<ProductFormCtr>(&instance.ctr_model());
  if (model == nullptr) {
    throw CtrModelError("sort optimum needs a product-form click model");
  }
  const std::size_t n = instance.n_advertisers();
  std::vector<double> weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    weight[i] = instance.value(i) * model->ad_factors()[i];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return weight[a] > weight[b];
  });
  Permutation sigma = Permutation::from_order(std::move(order));
  const double value = social_surplus(instance, sigma);
  return {std::move(sigma), value};
}

double adjacent_swap_gain(const Permutation& sigma, std::size_t rank,
                          const AuctionInstance& instance) {
  if (rank + 1 >= sigma.size()) {
    throw QueryError("rank " + std::to_string(rank + 1) + " has no successor");
  }
  return social_surplus(instance, swapped(sigma, rank)) -
         social_surplus(instance, sigma);
}

std::size_t improve_by_adjacent_swaps(Permutation& sigma,
                                      const AuctionInstance& instance) {
  std::size_t swaps = 0;
  for (;;) {
    const double base = social_surplus(instance, sigma);
    bool moved = false;
    for (std::size_t r = 0; r + 1 < sigma.size(); ++r) {
      if (adjacent_swap_gain(sigma, r, instance) > kTolerance * std::max(1.0, base)) {
        sigma = swapped(sigma, r);
        ++swaps;
        moved = true;
        break;
      }
    }
    if (!moved) return swaps;
  }
}

}  // namespace adscore
