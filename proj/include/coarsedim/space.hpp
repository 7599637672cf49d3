#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "coarsedim/errors.hpp"

namespace coarsedim::space {

using Int = std::int64_t;

enum class Exec { Serial, Parallel };

/// Point of the level-n grid space: the union of axis-parallel lines in R^n
/// through the lattice (nZ)^n, restricted to integer coordinates. At most one
/// coordinate may fall off the n*Z lattice.
struct Point {
  Int level = 1;
  std::vector<Int> coords;

  friend bool operator==(const Point&, const Point&) = default;
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (auto c = a.level <=> b.level; c != 0) return c;
    return a.coords <=> b.coords;
  }
};

/// True iff at least level-1 of the coordinates are divisible by level.
bool is_member(std::span<const Int> coords, Int level);

void validate_point(const Point& p);
Point make_point(Int level, std::vector<Int> coords);

/// The box [lo,hi]^level at a given level. lo == hi is allowed (single slice).
struct Window {
  Int level = 1;
  Int lo = 0;
  Int hi = 0;

  friend bool operator==(const Window&, const Window&) = default;
};

void validate_window(const Window& w);

/// Cross-level offset: 0 when l == k, else l + (l+1) + ... + (k-1).
Int level_offset(Int l, Int k);

struct LevelPair {
  Int l = 1;
  Int k = 1;
  Int offset = 0;
};

LevelPair make_level_pair(Int a, Int b);

/// Distance on the disjoint union of all levels: zero-pad both coordinate
/// vectors to the longer length, take the max-metric distance, and floor the
/// result at the cross-level offset.
Int distance(const Point& a, const Point& b);

/// Exact number of integer points of the level space inside the window.
/// Saturates at UINT64_MAX on overflow.
std::uint64_t window_point_count(const Window& w);

/// All integer points of the level space inside the window, in lexicographic
/// coordinate order. Throws a capacity error when the count exceeds the
/// configured limit.
std::vector<Point> window_points(const Window& w);

namespace detail {

inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

template <class Fn>
void walk_points(std::vector<Int>& scratch, Int axis, bool budget_used,
                 const Window& w, Fn&& fn) {
  const Int n = w.level;
  if (axis == n) {
    fn(std::span<const Int>(scratch));
    return;
  }
  if (budget_used || n == 1) {
    // remaining coordinates must sit on the lattice (level 1 has no lattice
    // constraint; every integer is a multiple of 1)
    if (n == 1) {
      for (Int v = w.lo; v <= w.hi; ++v) {
        scratch[axis] = v;
        walk_points(scratch, axis + 1, budget_used, w, fn);
      }
      return;
    }
    const Int zlo = ceil_div(w.lo, n);
    const Int zhi = floor_div(w.hi, n);
    for (Int z = zlo; z <= zhi; ++z) {
      scratch[axis] = z * n;
      walk_points(scratch, axis + 1, true, w, fn);
    }
    return;
  }
  for (Int v = w.lo; v <= w.hi; ++v) {
    scratch[axis] = v;
    walk_points(scratch, axis + 1, v % n != 0, w, fn);
  }
}

}  // namespace detail

/// Visits every window point in lexicographic order without materializing the
/// full list. No capacity check; callers own their budget.
template <class Fn>
void for_each_window_point(const Window& w, Fn&& fn) {
  validate_window(w);
  std::vector<Int> scratch(static_cast<std::size_t>(w.level));
  detail::walk_points(scratch, 0, false, w, fn);
}

}  // namespace coarsedim::space
