#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace huci {

using ItemId = std::int32_t;
using Tid = std::int32_t;
using Utility = std::int64_t;

// Canonical itemset representation: item ids sorted ascending, no duplicates.
using Itemset = std::vector<ItemId>;

inline Itemset make_itemset(std::initializer_list<ItemId> ids) {
  Itemset s(ids);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool is_subset(const Itemset& a, const Itemset& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool is_proper_subset(const Itemset& a, const Itemset& b) {
  return a.size() < b.size() && is_subset(a, b);
}

inline Itemset set_union(const Itemset& a, const Itemset& b) {
  Itemset out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Itemset set_difference(const Itemset& a, const Itemset& b) {
  Itemset out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Itemset set_intersection(const Itemset& a, const Itemset& b) {
  Itemset out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct ItemsetHash {
  std::size_t operator()(const Itemset& s) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (ItemId id : s) {
      h ^= static_cast<std::size_t>(id) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Exact rational in [0,1] for confidence values; comparisons cross-multiply
// so threshold ties are decided without floating point.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num * b.den == b.num * a.den;
  }
  friend bool operator>=(const Fraction& a, const Fraction& b) {
    return a.num * b.den >= b.num * a.den;
  }
};

}  // namespace huci
