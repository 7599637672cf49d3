#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coarsedim/families.hpp"

namespace coarsedim::obstruction {

using space::Exec;
using space::Int;
using space::Point;
using space::Window;

/// Labeled closed cover of the cell cube [0, side)^dim; a cell may carry
/// several labels. Cells behave like closed unit cubes: two cells touching in
/// any face, edge, or corner are connected.
struct CellCover {
  Int dim = 1;
  Int side = 1;
  struct LabeledSet {
    std::string label;
    std::vector<std::vector<Int>> cells;
  };
  std::vector<LabeledSet> sets;
};

struct SpanWitness {
  Int set_index = -1;
  Int direction = 0;
  std::vector<std::vector<Int>> component;
  std::vector<std::vector<Int>> touch_lo, touch_hi;
};

/// Searches each set (set i answers for direction i mod dim) for a connected
/// component joining the opposite facets of its direction. With at most dim
/// sets forming a cover a witness always exists; failing to find one then
/// signals an internal error. With more sets the search may legitimately come
/// back empty.
std::optional<SpanWitness> lebesgue_witness(const CellCover& c);

struct CensusResult {
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::uint64_t first_failure = 0;  // labeling code, valid when failures > 0
};

/// Exhaustive spanning check over every labeling of the side^dim cell cube by
/// nonempty subsets of n_sets labels.
CensusResult span_census(Int dim, Int side, Int n_sets,
                         Exec exec = Exec::Parallel);

/// Window points within max-metric distance <= radius of s.
std::vector<Point> thicken(std::span<const Point> s, Int radius,
                           const Window& w);

/// Window points outside `covered`, plus their face neighbors.
std::vector<Point> complement_closure(std::span<const Point> covered,
                                      const Window& w);

struct ObstructionInput {
  Int m = 1;      // candidate families V0..Vm at level m+1
  Int k = 1;      // disjointness scale the candidate claims for V0
  Int n = 6;      // separation scale; Vj (j>=1) must be (n+4m+4)-disjoint
  Int bound = 6;  // B: every family must be bound-bounded
  Int side = 24;  // cube side; rounded up to a multiple of m+1
  std::vector<families::BoxFamily> candidate;
};

struct BetaWitness {
  std::vector<Point> path;  // unit steps along cube edges, facet to facet
  Int diameter = 0;
  Int bound = 0;
};

struct ObstructionReport {
  enum class Verdict { ViolationFound, NoViolation, InvalidInput };
  Verdict verdict = Verdict::NoViolation;
  std::optional<BetaWitness> beta;
  std::optional<families::VerifyReport> family_check;
  std::optional<Point> uncovered;
  std::string note;
};

/// Full pipeline: restrict the candidate families to the cube, check their
/// separation and bounds, thicken into a closed cover of the integer cube,
/// apply the spanning theorem, and when the complement part spans, extract a
/// facet-to-facet edge path that avoids every family except V0. Such a path
/// certifies that V0 contains a connected set wider than its claimed bound.
ObstructionReport run_obstruction(const ObstructionInput& in,
                                  Exec exec = Exec::Parallel);

/// Seeded level-2 candidate: a jittered patch tiling as V0 (every patch
/// within the bound), optionally joined by a sparse well-separated V1.
/// Deterministic for a fixed (side, k, seed).
ObstructionInput random_candidate(Int side, Int k, std::uint64_t seed);

}  // namespace coarsedim::obstruction
