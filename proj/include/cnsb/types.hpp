#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cnsb {

// Item ids are 1-based: valid ids are 1..L, matching the CSV formats.
using ItemId = int;

// Per-item attraction probabilities, indexed by (id - 1). Length defines L.
using AttractionVector = std::vector<double>;

// Ordered list of K distinct item ids shown to the user.
using RankedList = std::vector<ItemId>;

// Binary attraction indicators, one per item.
using AttractionRealization = std::vector<std::uint8_t>;

// Position of the first click in 1..K, or K+1 when nothing was clicked.
using ClickOutcome = int;

inline void check_ranked_list(const RankedList& list, std::size_t num_items) {
  std::vector<bool> seen(num_items, false);
  for (ItemId id : list) {
    if (id < 1 || static_cast<std::size_t>(id) > num_items)
      throw std::invalid_argument("ranked list contains item id out of [1..L]");
    if (seen[id - 1])
      throw std::invalid_argument("ranked list contains a duplicate item");
    seen[id - 1] = true;
  }
  if (list.empty()) throw std::invalid_argument("ranked list is empty");
  if (list.size() > num_items)
    throw std::invalid_argument("ranked list longer than the item set");
}

inline void check_probability_vector(const AttractionVector& alpha) {
  for (double p : alpha)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("attraction probability outside [0,1]");
}

}  // namespace cnsb
