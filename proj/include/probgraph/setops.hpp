#pragma once

// Exact intersection of sorted, duplicate-free id lists.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "probgraph/hashing.hpp"

namespace probgraph {

enum class SetOpStrategy { Merge, Gallop };

inline constexpr std::size_t kDefaultGallopRatio = 32;

template <class T>
std::size_t intersect_merge(std::span<const T> a, std::span<const T> b) noexcept {
  std::size_t i = 0, j = 0, count = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

// Exponential search from the last match position, then binary search inside
// the bracketed window. O(|small| log |large|).
template <class T>
std::size_t intersect_gallop(std::span<const T> small, std::span<const T> large) noexcept {
  if (small.size() > large.size()) std::swap(small, large);
  std::size_t count = 0;
  std::size_t lo = 0;
  for (const T& x : small) {
    if (lo >= large.size()) break;
    std::size_t step = 1;
    std::size_t hi = lo;
    while (hi < large.size() && large[hi] < x) {
      lo = hi + 1;
      hi += step;
      step <<= 1;
    }
    hi = std::min(hi + 1, large.size());
    auto it = std::lower_bound(large.begin() + static_cast<std::ptrdiff_t>(lo),
                               large.begin() + static_cast<std::ptrdiff_t>(hi), x);
    lo = static_cast<std::size_t>(it - large.begin());
    if (lo < large.size() && large[lo] == x) {
      ++count;
      ++lo;
    }
  }
  return count;
}

// Gallop iff max/min size ratio exceeds `ratio`. An empty side always merges.
constexpr SetOpStrategy select_strategy(std::size_t da, std::size_t db,
                                        std::size_t ratio = kDefaultGallopRatio) noexcept {
  const auto lo = std::min(da, db), hi = std::max(da, db);
  if (lo == 0) return SetOpStrategy::Merge;
  return hi > ratio * lo ? SetOpStrategy::Gallop : SetOpStrategy::Merge;
}

template <class T>
std::size_t intersect_count(std::span<const T> a, std::span<const T> b,
                            std::size_t ratio = kDefaultGallopRatio) noexcept {
  return select_strategy(a.size(), b.size(), ratio) == SetOpStrategy::Merge
             ? intersect_merge(a, b)
             : intersect_gallop(a, b);
}

// Calls f(x) for each common element in ascending order.
template <class T, class F>
void for_each_common(std::span<const T> a, std::span<const T> b, F&& f) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      f(a[i]);
      ++i;
      ++j;
    }
  }
}

// Writes a ∩ b into `out` (cleared first).
template <class T>
void intersect_into(std::span<const T> a, std::span<const T> b, std::vector<T>& out) {
  out.clear();
  for_each_common(a, b, [&](const T& x) { out.push_back(x); });
}

}  // namespace probgraph
