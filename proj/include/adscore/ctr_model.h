#pragma once

#include <cstddef>
#include <map>
#include <variant>
#include <vector>

#include "adscore/permutation.h"

namespace adscore {

// x_{i,j} = q_i * s_j. Position factors cover every rank including the fake
// slots, which must carry s_j = 0; real slots are strictly descending.
class ProductFormCtr {
 public:
  ProductFormCtr(std::vector<double> ad_factors,
                 std::vector<double> position_factors, std::size_t n_slots);

  std::size_t n_advertisers() const { return ad_factors_.size(); }
  std::size_t n_slots() const { return n_slots_; }
  const std::vector<double>& ad_factors() const { return ad_factors_; }
  const std::vector<double>& position_factors() const {
    return position_factors_;
  }

  // Rate of `advertiser` at `rank`; depends on nothing else.
  double rate_at(std::size_t advertiser, std::size_t rank) const;

 private:
  std::vector<double> ad_factors_;
  std::vector<double> position_factors_;
  std::size_t n_slots_;
};

// Explicit rates for every ranking of a named subset of advertisers. Keys are
// the ranks of the named advertisers, in the order they are listed in `named`;
// each value lists the named advertisers' rates in the same order. Any
// advertiser outside the real slots has rate 0 without a lookup.
class TableCtr {
 public:
  using Key = std::vector<std::size_t>;

  TableCtr(std::size_t n_advertisers, std::size_t n_slots,
           std::vector<std::size_t> named,
           std::map<Key, std::vector<double>> entries);

  std::size_t n_advertisers() const { return n_advertisers_; }
  std::size_t n_slots() const { return n_slots_; }

  double rate(std::size_t advertiser, const Permutation& sigma) const;

 private:
  std::size_t n_advertisers_;
  std::size_t n_slots_;
  std::vector<std::size_t> named_;
  std::map<Key, std::vector<double>> entries_;
};

// Two user populations share the displayed ads. Group-1 users click only on
// Group-1 ads, splitting in proportion to w_k = q_k * s_{rank(k)} over the
// slotted Group-1 ads; Group-2 users click on any ad in proportion to w_k
// over all slotted ads. Total clicks are conserved whenever both
// denominators are positive. Position factors may repeat but never increase.
class CompetitorGroupCtr {
 public:
  CompetitorGroupCtr(std::vector<double> ad_factors,
                     std::vector<double> position_factors, std::size_t n_slots,
                     std::vector<std::size_t> group1, double group1_users,
                     double group2_users);

  std::size_t n_advertisers() const { return ad_factors_.size(); }
  std::size_t n_slots() const { return n_slots_; }
  const std::vector<double>& ad_factors() const { return ad_factors_; }
  const std::vector<double>& position_factors() const {
    return position_factors_;
  }
  bool in_group1(std::size_t advertiser) const {
    return in_group1_[advertiser];
  }
  double group1_users() const { return group1_users_; }
  double group2_users() const { return group2_users_; }

  std::vector<double> rates(const Permutation& sigma) const;

 private:
  std::vector<double> ad_factors_;
  std::vector<double> position_factors_;
  std::size_t n_slots_;
  std::vector<bool> in_group1_;
  double group1_users_;
  double group2_users_;
};

using CtrModel = std::variant<ProductFormCtr, TableCtr, CompetitorGroupCtr>;

std::size_t n_advertisers(const CtrModel& model);
std::size_t n_slots(const CtrModel& model);

// Hourly clicks of `advertiser` under the full ranking `sigma`.
double ctr(const CtrModel& model, std::size_t advertiser,
           const Permutation& sigma);

// Clicks of every advertiser under `sigma`.
std::vector<double> ctr_all(const CtrModel& model, const Permutation& sigma);

// Moves `advertiser` to `target_rank`; everyone strictly between the old and
// the new rank shifts one step toward the vacated rank.
Permutation deviation_permutation(const Permutation& sigma,
                                  std::size_t advertiser,
                                  std::size_t target_rank);

}  // namespace adscore
