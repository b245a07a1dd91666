#include "adscore/ctr_model.h"

#include <algorithm>
#include <string>

#include "adscore/errors.h"

namespace adscore {
namespace {

void check_factors(const std::vector<double>& ad_factors,
                   const std::vector<double>& position_factors,
                   std::size_t n_slots, bool strict) {
  const std::size_t n = ad_factors.size();
  if (n == 0) throw InstanceError("CTR model needs at least one advertiser");
  if (n_slots == 0) throw InstanceError("CTR model needs at least one slot");
  if (position_factors.size() != n) {
    throw InstanceError("position factors must cover all " +
                        std::to_string(n) + " ranks (fake slots as 0)");
  }
  for (double q : ad_factors) {
    if (!(q >= 0.0)) throw InstanceError("ad factors must be >= 0");
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double s = position_factors[j];
    if (!(s >= 0.0)) throw InstanceError("position factors must be >= 0");
    if (j >= n_slots && s != 0.0) {
      throw InstanceError("fake slot " + std::to_string(j + 1) +
                          " must have position factor 0");
    }
    if (j > 0 && j < n_slots && !(position_factors[j - 1] > s) &&
        (strict || position_factors[j - 1] < s)) {
      throw InstanceError(strict ? "position factors must be strictly descending"
                                 : "position factors must not increase");
    }
  }
}

}  // namespace

ProductFormCtr::ProductFormCtr(std::vector<double> ad_factors,
                               std::vector<double> position_factors,
                               std::size_t n_slots)
    : ad_factors_(std::move(ad_factors)),
      position_factors_(std::move(position_factors)),
      n_slots_(n_slots) {
  check_factors(ad_factors_, position_factors_, n_slots_, true);
}

double ProductFormCtr::rate_at(std::size_t advertiser, std::size_t rank) const {
  if (advertiser >= ad_factors_.size() || rank >= position_factors_.size()) {
    throw QueryError("product CTR query out of range");
  }
  return ad_factors_[advertiser] * position_factors_[rank];
}

TableCtr::TableCtr(std::size_t n_advertisers, std::size_t n_slots,
                   std::vector<std::size_t> named,
                   std::map<Key, std::vector<double>> entries)
    : n_advertisers_(n_advertisers),
      n_slots_(n_slots),
      named_(std::move(named)),
      entries_(std::move(entries)) {
  if (n_advertisers_ == 0 || n_slots_ == 0) {
    throw InstanceError("table CTR needs advertisers and slots");
  }
  for (std::size_t a : named_) {
    if (a >= n_advertisers_) throw InstanceError("named advertiser out of range");
  }
  for (const auto& [key, rates] : entries_) {
    if (key.size() != named_.size() || rates.size() != named_.size()) {
      throw InstanceError("table entry does not match the named subset");
    }
    for (double x : rates) {
      if (!(x >= 0.0)) throw InstanceError("table rates must be >= 0");
    }
  }
}

double TableCtr::rate(std::size_t advertiser, const Permutation& sigma) const {
  if (sigma.size() != n_advertisers_) {
    throw QueryError("permutation size does not match table CTR");
  }
  if (sigma.rank_of(advertiser) >= n_slots_) return 0.0;
  const auto pos = std::find(named_.begin(), named_.end(), advertiser);
  if (pos == named_.end()) {
    throw CtrModelError("no table rates for advertiser " +
                        std::to_string(advertiser + 1));
  }
  Key key;
  key.reserve(named_.size());
  for (std::size_t a : named_) key.push_back(sigma.rank_of(a));
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw CtrModelError("no table entry for ranking " + sigma.to_string());
  }
  return it->second[static_cast<std::size_t>(pos - named_.begin())];
}

CompetitorGroupCtr::CompetitorGroupCtr(std::vector<double> ad_factors,
                                       std::vector<double> position_factors,
                                       std::size_t n_slots,
                                       std::vector<std::size_t> group1,
                                       double group1_users,
                                       double group2_users)
    : ad_factors_(std::move(ad_factors)),
      position_factors_(std::move(position_factors)),
      n_slots_(n_slots),
      group1_users_(group1_users),
      group2_users_(group2_users) {
  check_factors(ad_factors_, position_factors_, n_slots_, false);
  if (group1.empty()) throw InstanceError("group 1 must be nonempty");
  if (!(group1_users_ >= 0.0) || !(group2_users_ >= 0.0)) {
    throw InstanceError("user counts must be >= 0");
  }
  in_group1_.assign(ad_factors_.size(), false);
  for (std::size_t a : group1) {
    if (a >= ad_factors_.size()) throw InstanceError("group 1 index out of range");
    in_group1_[a] = true;
  }
}

std::vector<double> CompetitorGroupCtr::rates(const Permutation& sigma) const {
  const std::size_t n = ad_factors_.size();
  if (sigma.size() != n) {
    throw QueryError("permutation size does not match group CTR");
  }
  std::vector<double> weight(n, 0.0);
  double total = 0.0;
  double group1_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = sigma.rank_of(i);
    if (r >= n_slots_) continue;
    weight[i] = ad_factors_[i] * position_factors_[r];
    total += weight[i];
    if (in_group1_[i]) group1_total += weight[i];
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (weight[i] == 0.0) continue;
    if (in_group1_[i] && group1_total > 0.0) {
      out[i] += group1_users_ * weight[i] / group1_total;
    }
    if (total > 0.0) out[i] += group2_users_ * weight[i] / total;
  }
  return out;
}

std::size_t n_advertisers(const CtrModel& model) {
  return std::visit([](const auto& m) { return m.n_advertisers(); }, model);
}

std::size_t n_slots(const CtrModel& model) {
  return std::visit([](const auto& m) { return m.n_slots(); }, model);
}

double ctr(const CtrModel& model, std::size_t advertiser,
           const Permutation& sigma) {
  if (advertiser >= sigma.size()) throw QueryError("advertiser out of range");
  if (const auto* p = std::get_if<ProductFormCtr>(&model)) {
    return p->rate_at(advertiser, sigma.rank_of(advertiser));
  }
  if (const auto* t = std::get_if<TableCtr>(&model)) {
    return t->rate(advertiser, sigma);
  }
  return std::get<CompetitorGroupCtr>(model).rates(sigma)[advertiser];
}

std::vector<double> ctr_all(const CtrModel& model, const Permutation& sigma) {
  if (const auto* g = std::get_if<CompetitorGroupCtr>(&model)) {
    return g->rates(sigma);
  }
  std::vector<double> out(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) out[i] = ctr(model, i, sigma);
  return out;
}

Permutation deviation_permutation(const Permutation& sigma,
                                  std::size_t advertiser,
                                  std::size_t target_rank) {
  const std::size_t n = sigma.size();
  if (advertiser >= n) throw QueryError("advertiser out of range");
  if (target_rank >= n) throw QueryError("target rank out of range");
  std::vector<std::size_t> order(sigma.order().begin(), sigma.order().end());
  const std::size_t from = sigma.rank_of(advertiser);
  if (from < target_rank) {
    std::rotate(order.begin() + from, order.begin() + from + 1,
                order.begin() + target_rank + 1);
  } else if (from > target_rank) {
    std::rotate(order.begin() + target_rank, order.begin() + from,
                order.begin() + from + 1);
  }
  return Permutation::from_order(std::move(order));
}

}  // namespace adscore
