#pragma once

#include <cstddef>
#include <vector>

#include "adscore/auction.h"

namespace adscore {

// Scores that make e_i * v_i the same level L for every advertiser.
struct EqualizingProfile {
  ScoringProfile scores;
  double common_level = 0.0;
};

struct RankingEvaluation {
  Permutation permutation;
  double social_surplus = 0.0;
};

inline constexpr std::size_t kBruteForceLimit = 10;

EqualizingProfile equalizing_profile(const std::vector<double>& values,
                                     double level);

// Sum of v_i * ctr(i, sigma).
double social_surplus(const AuctionInstance& instance, const Permutation& sigma);

// Truthful bids under equalizing scores, ranked as `sigma`: true iff nobody
// has a profitable deviation, every advertiser surplus is zero and engine
// revenue equals the social surplus. Requires more advertisers than slots.
bool verify_truthful_ne(const AuctionInstance& instance,
                        const Permutation& sigma, double level = 1.0);

// Exhaustive search over all N! rankings. Ties go to the lexicographically
// smallest rank vector.
RankingEvaluation brute_force_optimum(const AuctionInstance& instance);

// Sort by v_i * q_i descending, ties by index. Product-form models only.
RankingEvaluation product_form_optimum(const AuctionInstance& instance);

// Social surplus change from swapping the advertiser at `rank` with the one at
// rank + 1.
double adjacent_swap_gain(const Permutation& sigma, std::size_t rank,
                          const AuctionInstance& instance);

// Applies positive-gain adjacent swaps (first found, top down) until none is
// left. Returns the number of swaps made.
std::size_t improve_by_adjacent_swaps(Permutation& sigma,
                                      const AuctionInstance& instance);

}  // namespace adscore
