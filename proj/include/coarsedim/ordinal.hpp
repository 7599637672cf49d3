#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coarsedim/space.hpp"

namespace coarsedim::ordinal {

using space::Int;
using space::Point;
using space::Window;

/// Ordinal of the form w*q + r, plus a distinct infinity marker that compares
/// above everything.
struct Ordinal {
  bool inf = false;
  Int q = 0;
  Int r = 0;

  friend bool operator==(const Ordinal&, const Ordinal&) = default;
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    if (auto c = (a.inf ? 1 : 0) <=> (b.inf ? 1 : 0); c != 0) return c;
    if (auto c = a.q <=> b.q; c != 0) return c;
    return a.r <=> b.r;
  }
};

std::string to_string(const Ordinal& o);

/// Finite collection of finite nonempty subsets of {1, 2, ...}, kept sorted
/// and duplicate-free.
struct SetSystem {
  std::vector<std::vector<Int>> members;

  friend bool operator==(const SetSystem&, const SetSystem&) = default;
};

SetSystem make_system(std::vector<std::vector<Int>> members);

/// Members containing sigma, with sigma removed; empty leftovers are dropped.
SetSystem restricted(const SetSystem& m, std::span<const Int> sigma);

/// Recursive rank of a finite set system: 0 for the empty system, otherwise
/// one more than the largest rank over single-element restrictions. Finite
/// input always yields a finite ordinal (q = 0).
Ordinal ord_of(const SetSystem& m);

struct ASetQuery {
  std::vector<Int> sigma;
  Window window{1, 0, 0};
  Int bound = 1;
  Int search_cap = 64;          // exhaustive search point limit
  std::uint64_t node_budget = 4'000'000;
};

struct BlockFamily {
  Int disjointness = 1;  // the sigma value this family answers to
  std::vector<std::vector<Point>> blocks;
};

struct ASetResult {
  bool member = false;  // true: no admissible cover of the window exists
  std::vector<BlockFamily> cover;  // witness when member == false
  std::uint64_t nodes = 0;
};

/// Windowed membership surrogate: searches for families (one per sigma
/// value i) of blocks that are i-disjoint, bound-limited in diameter, and
/// jointly cover the window points. A greedy first descent handles windows of
/// any size; the exhaustive backtracking phase requires at most search_cap
/// points.
ASetResult a_set_member(const ASetQuery& q);

}  // namespace coarsedim::ordinal
