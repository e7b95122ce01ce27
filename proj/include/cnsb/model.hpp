#pragma once

// Cascade click model math: rewards, first-click semantics, optimal lists
// and per-step regret. All functions are pure.

#include <algorithm>
#include <numeric>

#include "cnsb/types.hpp"

namespace cnsb {

// 1 iff any shown item is attracted.
inline int realized_reward(const RankedList& list,
                           const AttractionRealization& realization) {
  check_ranked_list(list, realization.size());
  for (ItemId id : list)
    if (realization[id - 1]) return 1;
  return 0;
}

// Probability of at least one click: 1 - prod_i (1 - alpha(R(i))).
// Invariant under permutations of the list.
inline double expected_reward(const RankedList& list,
                              const AttractionVector& alpha) {
  check_ranked_list(list, alpha.size());
  double no_click = 1.0;
  for (ItemId id : list) no_click *= 1.0 - alpha[id - 1];
  return 1.0 - no_click;
}

// Smallest position holding an attracted item, K+1 when there is none.
inline ClickOutcome first_click_position(
    const RankedList& list, const AttractionRealization& realization) {
  check_ranked_list(list, realization.size());
  for (std::size_t i = 0; i < list.size(); ++i)
    if (realization[list[i] - 1]) return static_cast<ClickOutcome>(i + 1);
  return static_cast<ClickOutcome>(list.size() + 1);
}

// The K most attractive items in decreasing alpha order, ties broken by
// smaller item id so traces are reproducible.
inline RankedList optimal_list(const AttractionVector& alpha, int num_positions) {
  if (num_positions < 1 || static_cast<std::size_t>(num_positions) > alpha.size())
    throw std::invalid_argument("optimal_list: K must be in [1..L]");
  RankedList ids(alpha.size());
  std::iota(ids.begin(), ids.end(), 1);
  std::partial_sort(ids.begin(), ids.begin() + num_positions, ids.end(),
                    [&alpha](ItemId a, ItemId b) {
                      if (alpha[a - 1] != alpha[b - 1])
                        return alpha[a - 1] > alpha[b - 1];
                      return a < b;
                    });
  ids.resize(num_positions);
  return ids;
}

inline double per_step_regret(const RankedList& list,
                              const AttractionVector& alpha,
                              int num_positions) {
  const double best = expected_reward(optimal_list(alpha, num_positions), alpha);
  return best - expected_reward(list, alpha);
}

}  // namespace cnsb
