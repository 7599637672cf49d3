#include "coarsedim/space.hpp"

#include <algorithm>
#include <string>

namespace coarsedim::space {

namespace {

using detail::ceil_div;
using detail::floor_div;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  const auto max = ~std::uint64_t{0};
  if (a > max / b) return max;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const auto max = ~std::uint64_t{0};
  return (a > max - b) ? max : a + b;
}

std::uint64_t saturating_pow(std::uint64_t base, Int exp) {
  std::uint64_t acc = 1;
  for (Int i = 0; i < exp; ++i) acc = saturating_mul(acc, base);
  return acc;
}

}  // namespace

bool is_member(std::span<const Int> coords, Int level) {
  if (level < 1) fail(ErrorCode::Parameter, "level must be positive");
  if (static_cast<Int>(coords.size()) != level)
    fail(ErrorCode::DimensionMismatch,
         "coordinate count " + std::to_string(coords.size()) +
             " does not match level " + std::to_string(level));
  Int off_lattice = 0;
  for (Int c : coords)
    if (c % level != 0) ++off_lattice;
  return off_lattice <= 1;
}

void validate_point(const Point& p) {
  if (!is_member(p.coords, p.level))
    fail(ErrorCode::Parameter, "coordinates do not lie in the level-" +
                                   std::to_string(p.level) + " space");
}

Point make_point(Int level, std::vector<Int> coords) {
  Point p{level, std::move(coords)};
  validate_point(p);
  return p;
}

void validate_window(const Window& w) {
  if (w.level < 1) fail(ErrorCode::Parameter, "window level must be positive");
  if (w.lo > w.hi) fail(ErrorCode::Parameter, "window lo exceeds hi");
}

Int level_offset(Int l, Int k) {
  if (l < 1 || k < l) fail(ErrorCode::Parameter, "need 1 <= l <= k");
  // sum of l..k-1
  return (k * (k - 1) - l * (l - 1)) / 2;
}

LevelPair make_level_pair(Int a, Int b) {
  Int l = std::min(a, b), k = std::max(a, b);
  return LevelPair{l, k, level_offset(l, k)};
}

Int distance(const Point& a, const Point& b) {
  validate_point(a);
  validate_point(b);
  const auto& shorter = a.level <= b.level ? a.coords : b.coords;
  const auto& longer = a.level <= b.level ? b.coords : a.coords;
  Int dmax = 0;
  for (std::size_t i = 0; i < longer.size(); ++i) {
    Int s = i < shorter.size() ? shorter[i] : 0;
    dmax = std::max(dmax, std::abs(longer[i] - s));
  }
  return std::max(dmax, make_level_pair(a.level, b.level).offset);
}

std::uint64_t window_point_count(const Window& w) {
  validate_window(w);
  const Int n = w.level;
  const std::uint64_t total = static_cast<std::uint64_t>(w.hi - w.lo + 1);
  if (n == 1) return total;
  const Int zlo = ceil_div(w.lo, n), zhi = floor_div(w.hi, n);
  if (zlo > zhi) return 0;
  const std::uint64_t m = static_cast<std::uint64_t>(zhi - zlo + 1);
  // all-lattice points, plus one free axis holding an off-lattice value
  std::uint64_t grid = saturating_pow(m, n);
  std::uint64_t off = saturating_mul(
      static_cast<std::uint64_t>(n),
      saturating_mul(saturating_pow(m, n - 1), total - m));
  return saturating_add(grid, off);
}

std::vector<Point> window_points(const Window& w) {
  const std::uint64_t count = window_point_count(w);
  if (count > capacity_limit())
    fail(ErrorCode::Capacity, "window holds " + std::to_string(count) +
                                  " points, capacity is " +
                                  std::to_string(capacity_limit()));
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  for_each_window_point(w, [&](std::span<const Int> coords) {
    out.push_back(Point{w.level, {coords.begin(), coords.end()}});
  });
  return out;
}

}  // namespace coarsedim::space
