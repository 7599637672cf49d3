#include "coarsedim/obstruction.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace coarsedim::obstruction {

namespace {

using space::detail::ceil_div;
using space::detail::floor_div;

using Idx = std::int32_t;

// Dense row-major grid of side^dim lattice sites; linear index order is
// lexicographic coordinate order.
struct DenseGrid {
  Int dim = 1;
  Int side = 1;
  std::size_t count = 1;
  std::vector<std::vector<Idx>> vertex_nbrs;  // all 3^d - 1 offsets
  std::vector<std::vector<Idx>> face_nbrs;    // +-1 along one axis

  DenseGrid(Int d, Int s) : dim(d), side(s) {
    count = 1;
    for (Int a = 0; a < d; ++a) {
      if (count > capacity_limit() / static_cast<std::size_t>(s))
        fail(ErrorCode::Capacity, "grid too large");
      count *= static_cast<std::size_t>(s);
    }
    vertex_nbrs.resize(count);
    face_nbrs.resize(count);
    std::vector<Int> c(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < count; ++i) {
      decode(i, c);
      build_neighbors(i, c);
    }
  }

  void decode(std::size_t idx, std::vector<Int>& c) const {
    for (Int a = dim; a-- > 0;) {
      c[static_cast<std::size_t>(a)] = static_cast<Int>(idx % side);
      idx /= static_cast<std::size_t>(side);
    }
  }

  std::size_t encode(std::span<const Int> c) const {
    std::size_t idx = 0;
    for (Int a = 0; a < dim; ++a)
      idx = idx * static_cast<std::size_t>(side) +
            static_cast<std::size_t>(c[static_cast<std::size_t>(a)]);
    return idx;
  }

  void build_neighbors(std::size_t i, const std::vector<Int>& c) {
    std::vector<Int> nb(c);
    // face neighbors
    for (Int a = 0; a < dim; ++a)
      for (Int d : {Int{-1}, Int{1}}) {
        Int v = c[static_cast<std::size_t>(a)] + d;
        if (v < 0 || v >= side) continue;
        nb = c;
        nb[static_cast<std::size_t>(a)] = v;
        face_nbrs[i].push_back(static_cast<Idx>(encode(nb)));
      }
    // vertex neighbors: odometer over {-1,0,1}^dim
    std::vector<Int> off(static_cast<std::size_t>(dim), -1);
    while (true) {
      bool zero = true, ok = true;
      for (Int a = 0; a < dim; ++a) {
        if (off[static_cast<std::size_t>(a)] != 0) zero = false;
        Int v = c[static_cast<std::size_t>(a)] + off[static_cast<std::size_t>(a)];
        if (v < 0 || v >= side) ok = false;
        nb[static_cast<std::size_t>(a)] = v;
      }
      if (!zero && ok)
        vertex_nbrs[i].push_back(static_cast<Idx>(encode(nb)));
      Int a = dim;
      while (a > 0 && off[static_cast<std::size_t>(a - 1)] == 1) --a;
      if (a == 0) break;
      ++off[static_cast<std::size_t>(a - 1)];
      for (Int b = a; b < dim; ++b) off[static_cast<std::size_t>(b)] = -1;
    }
    std::sort(vertex_nbrs[i].begin(), vertex_nbrs[i].end());
    std::sort(face_nbrs[i].begin(), face_nbrs[i].end());
  }

  Int coord(std::size_t idx, Int axis) const {
    for (Int a = dim; a-- > axis + 1;) idx /= static_cast<std::size_t>(side);
    return static_cast<Int>(idx % static_cast<std::size_t>(side));
  }
};

// First set (by index) owning a component that joins the opposite facets of
// its direction (set i <-> direction i mod dim). Vertex connectivity: labeled
// cells behave like closed unit cubes.
int find_spanning_set(const DenseGrid& g, const std::vector<std::uint32_t>& mask,
                      Int n_sets, std::vector<Idx>* component_out,
                      std::vector<Idx>& scratch_queue,
                      std::vector<std::uint8_t>& scratch_seen) {
  for (Int s = 0; s < n_sets; ++s) {
    const std::uint32_t bit = 1u << s;
    const Int dir = s % g.dim;
    std::fill(scratch_seen.begin(), scratch_seen.end(), 0);
    for (std::size_t seed = 0; seed < g.count; ++seed) {
      if (!(mask[seed] & bit) || scratch_seen[seed]) continue;
      scratch_queue.clear();
      scratch_queue.push_back(static_cast<Idx>(seed));
      scratch_seen[seed] = 1;
      bool lo = false, hi = false;
      for (std::size_t qi = 0; qi < scratch_queue.size(); ++qi) {
        std::size_t cur = static_cast<std::size_t>(scratch_queue[qi]);
        Int v = g.coord(cur, dir);
        if (v == 0) lo = true;
        if (v == g.side - 1) hi = true;
        for (Idx nb : g.vertex_nbrs[cur]) {
          if ((mask[static_cast<std::size_t>(nb)] & bit) &&
              !scratch_seen[static_cast<std::size_t>(nb)]) {
            scratch_seen[static_cast<std::size_t>(nb)] = 1;
            scratch_queue.push_back(nb);
          }
        }
      }
      if (lo && hi) {
        if (component_out) {
          *component_out = scratch_queue;
          std::sort(component_out->begin(), component_out->end());
        }
        return static_cast<int>(s);
      }
    }
  }
  return -1;
}

// Deterministic BFS path between facets of `dir` inside `allowed`; frontier
// handled in increasing linear index (lexicographic) order.
std::optional<std::vector<Idx>> bfs_facet_path(
    const DenseGrid& g, const std::vector<std::uint8_t>& allowed, Int dir,
    bool face_steps_only) {
  std::vector<Idx> parent(g.count, -2);  // -2 unvisited, -1 seed
  std::vector<Idx> frontier;
  for (std::size_t i = 0; i < g.count; ++i)
    if (allowed[i] && g.coord(i, dir) == 0) {
      parent[i] = -1;
      frontier.push_back(static_cast<Idx>(i));
    }
  auto reconstruct = [&](Idx t) {
    std::vector<Idx> path;
    for (Idx cur = t; cur != -1; cur = parent[static_cast<std::size_t>(cur)])
      path.push_back(cur);
    std::reverse(path.begin(), path.end());
    return path;
  };
  for (Idx f : frontier)
    if (g.coord(static_cast<std::size_t>(f), dir) == g.side - 1)
      return reconstruct(f);
  while (!frontier.empty()) {
    std::vector<Idx> next;
    for (Idx cur : frontier) {
      const auto& nbrs = face_steps_only
                             ? g.face_nbrs[static_cast<std::size_t>(cur)]
                             : g.vertex_nbrs[static_cast<std::size_t>(cur)];
      for (Idx nb : nbrs) {
        std::size_t ni = static_cast<std::size_t>(nb);
        if (!allowed[ni] || parent[ni] != -2) continue;
        parent[ni] = cur;
        if (g.coord(ni, dir) == g.side - 1) return reconstruct(nb);
        next.push_back(nb);
      }
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  return std::nullopt;
}

std::vector<std::uint32_t> cover_masks(const CellCover& c,
                                       const DenseGrid& g) {
  if (c.sets.size() > 31)
    fail(ErrorCode::Capacity, "at most 31 labeled sets are supported");
  std::vector<std::uint32_t> mask(g.count, 0);
  for (std::size_t s = 0; s < c.sets.size(); ++s)
    for (const auto& cell : c.sets[s].cells) {
      if (static_cast<Int>(cell.size()) != c.dim)
        fail(ErrorCode::InvalidInput, "cell dimension mismatch");
      for (Int v : cell)
        if (v < 0 || v >= c.side)
          fail(ErrorCode::InvalidInput, "cell out of range");
      mask[g.encode(cell)] |= 1u << s;
    }
  return mask;
}

}  // namespace

std::optional<SpanWitness> lebesgue_witness(const CellCover& c) {
  if (c.dim < 1 || c.side < 1)
    fail(ErrorCode::Parameter, "cell cover needs dim >= 1 and side >= 1");
  if (c.sets.empty()) fail(ErrorCode::Parameter, "cell cover has no sets");
  DenseGrid g(c.dim, c.side);
  auto mask = cover_masks(c, g);
  for (std::size_t i = 0; i < g.count; ++i)
    if (mask[i] == 0) {
      std::vector<Int> coords(static_cast<std::size_t>(c.dim));
      g.decode(i, coords);
      std::string msg = "unlabeled cell (";
      for (std::size_t a = 0; a < coords.size(); ++a)
        msg += (a ? "," : "") + std::to_string(coords[a]);
      fail(ErrorCode::InvalidInput, msg + ")");
    }
  std::vector<Idx> component;
  std::vector<Idx> queue;
  std::vector<std::uint8_t> seen(g.count, 0);
  int s = find_spanning_set(g, mask, static_cast<Int>(c.sets.size()),
                            &component, queue, seen);
  if (s < 0) {
    if (static_cast<Int>(c.sets.size()) <= c.dim)
      fail(ErrorCode::Internal,
           "cover by at most dim sets has no spanning component");
    return std::nullopt;
  }
  SpanWitness w;
  w.set_index = s;
  w.direction = static_cast<Int>(s) % c.dim;
  std::vector<Int> coords(static_cast<std::size_t>(c.dim));
  for (Idx idx : component) {
    g.decode(static_cast<std::size_t>(idx), coords);
    w.component.push_back(coords);
    if (coords[static_cast<std::size_t>(w.direction)] == 0)
      w.touch_lo.push_back(coords);
    if (coords[static_cast<std::size_t>(w.direction)] == c.side - 1)
      w.touch_hi.push_back(coords);
  }
  return w;
}

CensusResult span_census(Int dim, Int side, Int n_sets, Exec exec) {
  if (dim < 1 || side < 1 || n_sets < 1)
    fail(ErrorCode::Parameter, "census needs positive dim, side, n_sets");
  DenseGrid g(dim, side);
  if (g.count > 16) fail(ErrorCode::Capacity, "census cube too large");
  const std::uint64_t labels = (std::uint64_t{1} << n_sets) - 1;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < g.count; ++i) {
    if (total > (std::uint64_t{1} << 62) / labels)
      fail(ErrorCode::Capacity, "too many labelings");
    total *= labels;
  }
  int threads = 1;
#ifdef _OPENMP
  if (exec == Exec::Parallel) threads = omp_get_max_threads();
#else
  (void)exec;
#endif
  std::vector<std::uint64_t> fail_count(static_cast<std::size_t>(threads), 0);
  std::vector<std::uint64_t> first(static_cast<std::size_t>(threads),
                                   ~std::uint64_t{0});
#ifdef _OPENMP
#pragma omp parallel num_threads(threads) if (exec == Exec::Parallel)
#endif
  {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    std::vector<std::uint32_t> mask(g.count);
    std::vector<Idx> queue;
    std::vector<std::uint8_t> seen(g.count, 0);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (std::int64_t code = 0; code < static_cast<std::int64_t>(total);
         ++code) {
      std::uint64_t c = static_cast<std::uint64_t>(code);
      for (std::size_t i = 0; i < g.count; ++i) {
        mask[i] = static_cast<std::uint32_t>(c % labels) + 1;
        c /= labels;
      }
      if (find_spanning_set(g, mask, n_sets, nullptr, queue, seen) < 0) {
        auto t = static_cast<std::size_t>(tid);
        ++fail_count[t];
        first[t] = std::min(first[t], static_cast<std::uint64_t>(code));
      }
    }
  }
  CensusResult res;
  res.checked = total;
  std::uint64_t best = ~std::uint64_t{0};
  for (int t = 0; t < threads; ++t) {
    res.failures += fail_count[static_cast<std::size_t>(t)];
    best = std::min(best, first[static_cast<std::size_t>(t)]);
  }
  res.first_failure = res.failures ? best : 0;
  return res;
}

std::vector<Point> thicken(std::span<const Point> s, Int radius,
                           const Window& w) {
  if (radius < 0) fail(ErrorCode::Parameter, "radius must be nonnegative");
  for (const auto& p : s) space::validate_point(p);
  std::vector<Point> out;
  if (s.empty()) return out;
  space::for_each_window_point(w, [&](std::span<const Int> coords) {
    for (const auto& p : s) {
      if (static_cast<Int>(p.coords.size()) != w.level) continue;
      if (families::chebyshev(coords, p.coords) <= radius) {
        out.push_back(Point{w.level, {coords.begin(), coords.end()}});
        break;
      }
    }
  });
  return out;
}

std::vector<Point> complement_closure(std::span<const Point> covered,
                                      const Window& w) {
  std::set<std::vector<Int>> cov;
  for (const auto& p : covered) cov.insert(p.coords);
  std::set<std::vector<Int>> result;
  std::vector<std::vector<Int>> uncovered;
  space::for_each_window_point(w, [&](std::span<const Int> coords) {
    std::vector<Int> c(coords.begin(), coords.end());
    if (!cov.count(c)) {
      result.insert(c);
      uncovered.push_back(std::move(c));
    }
  });
  for (const auto& c : uncovered)
    for (std::size_t a = 0; a < c.size(); ++a)
      for (Int d : {Int{-1}, Int{1}}) {
        std::vector<Int> nb(c);
        nb[a] += d;
        if (nb[a] < w.lo || nb[a] > w.hi) continue;
        if (!space::is_member(nb, w.level)) continue;
        result.insert(std::move(nb));
      }
  std::vector<Point> out;
  for (const auto& c : result) out.push_back(Point{w.level, c});
  return out;
}

namespace {

void dilate_chebyshev(const DenseGrid& g, std::vector<std::uint8_t>& mask,
                      Int rounds) {
  std::vector<std::uint8_t> next(mask.size());
  for (Int r = 0; r < rounds; ++r) {
    next = mask;
    for (std::size_t i = 0; i < g.count; ++i) {
      if (next[i]) continue;
      for (Idx nb : g.vertex_nbrs[i])
        if (mask[static_cast<std::size_t>(nb)]) {
          next[i] = 1;
          break;
        }
    }
    mask.swap(next);
  }
}

Int mask_component_bound(const DenseGrid& g,
                         const std::vector<std::uint8_t>& mask) {
  // max diameter over connected components (vertex adjacency)
  std::vector<std::uint8_t> seen(g.count, 0);
  std::vector<Idx> queue;
  Int worst = -1;
  for (std::size_t seed = 0; seed < g.count; ++seed) {
    if (!mask[seed] || seen[seed]) continue;
    queue.clear();
    queue.push_back(static_cast<Idx>(seed));
    seen[seed] = 1;
    std::vector<Int> lo(static_cast<std::size_t>(g.dim),
                        std::numeric_limits<Int>::max());
    std::vector<Int> hi(static_cast<std::size_t>(g.dim),
                        std::numeric_limits<Int>::min());
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t cur = static_cast<std::size_t>(queue[qi]);
      for (Int a = 0; a < g.dim; ++a) {
        Int v = g.coord(cur, a);
        lo[static_cast<std::size_t>(a)] =
            std::min(lo[static_cast<std::size_t>(a)], v);
        hi[static_cast<std::size_t>(a)] =
            std::max(hi[static_cast<std::size_t>(a)], v);
      }
      for (Idx nb : g.vertex_nbrs[cur])
        if (mask[static_cast<std::size_t>(nb)] &&
            !seen[static_cast<std::size_t>(nb)]) {
          seen[static_cast<std::size_t>(nb)] = 1;
          queue.push_back(nb);
        }
    }
    Int diam = 0;
    for (Int a = 0; a < g.dim; ++a)
      diam = std::max(diam, hi[static_cast<std::size_t>(a)] -
                                lo[static_cast<std::size_t>(a)]);
    worst = std::max(worst, diam);
  }
  return worst;
}

}  // namespace

ObstructionReport run_obstruction(const ObstructionInput& in, Exec exec) {
  if (in.m < 1) fail(ErrorCode::Parameter, "m must be positive");
  if (in.bound < 1) fail(ErrorCode::Parameter, "bound must be positive");
  if (in.side < 1) fail(ErrorCode::Parameter, "side must be positive");
  if (in.k < 1 || in.n < 1) fail(ErrorCode::Parameter, "k, n must be positive");
  const Int level = in.m + 1;
  if (static_cast<Int>(in.candidate.size()) > in.m + 1)
    fail(ErrorCode::Parameter, "expected at most m+1 candidate families");
  std::vector<families::BoxFamily> fams = in.candidate;
  while (static_cast<Int>(fams.size()) < in.m + 1)
    fams.push_back(families::BoxFamily{
        level, "V" + std::to_string(fams.size()) + "(empty)", {}});
  for (const auto& f : fams) {
    families::validate_family(f);
    if (f.level != level)
      fail(ErrorCode::Parameter, "candidate families must live at level m+1");
  }
  ObstructionReport rep;
  Int S = ceil_div(in.side, level) * level;
  if (S != in.side) rep.note = "side rounded up to " + std::to_string(S) + "; ";
  const Window w{level, 0, S};

  // separation and bound checks
  const Int sep = in.n + 4 * in.m + 4;
  for (Int j = 1; j <= in.m; ++j) {
    auto r = families::verify_disjoint(fams[static_cast<std::size_t>(j)], sep,
                                       w, exec);
    if (!r.verdict) {
      rep.verdict = ObstructionReport::Verdict::InvalidInput;
      rep.family_check = std::move(r);
      rep.note += "family " + std::to_string(j) + " is not " +
                  std::to_string(sep) + "-disjoint";
      return rep;
    }
  }
  for (Int i = 0; i <= in.m; ++i) {
    auto r = families::verify_bounded(fams[static_cast<std::size_t>(i)],
                                      in.bound, w, exec);
    if (!r.verdict) {
      rep.verdict = ObstructionReport::Verdict::InvalidInput;
      rep.family_check = std::move(r);
      rep.note += "family " + std::to_string(i) + " is not " +
                  std::to_string(in.bound) + "-bounded";
      return rep;
    }
  }

  // the candidate must cover the level points of the cube
  DenseGrid g(level, S + 1);
  std::vector<std::vector<std::uint8_t>> umask(
      static_cast<std::size_t>(in.m + 1));
  for (auto& mk : umask) mk.assign(g.count, 0);
  std::optional<Point> first_uncovered;
  space::for_each_window_point(w, [&](std::span<const Int> coords) {
    bool covered = false;
    for (Int i = 0; i <= in.m; ++i)
      if (families::family_covers(fams[static_cast<std::size_t>(i)], coords)) {
        umask[static_cast<std::size_t>(i)][g.encode(coords)] = 1;
        covered = true;
      }
    if (!covered && !first_uncovered)
      first_uncovered = Point{level, {coords.begin(), coords.end()}};
  });
  if (first_uncovered) {
    rep.verdict = ObstructionReport::Verdict::InvalidInput;
    rep.uncovered = std::move(first_uncovered);
    rep.note += "candidate does not cover the cube";
    return rep;
  }

  // closed thickened cover of the full integer cube
  std::vector<std::vector<std::uint8_t>> tilde(
      static_cast<std::size_t>(in.m + 1));
  for (Int i = 1; i <= in.m; ++i) {
    tilde[static_cast<std::size_t>(i)] = umask[static_cast<std::size_t>(i)];
    dilate_chebyshev(g, tilde[static_cast<std::size_t>(i)], level);
  }
  auto& t0 = tilde[0];
  t0.assign(g.count, 0);
  for (std::size_t idx = 0; idx < g.count; ++idx) {
    bool in_some = false;
    for (Int i = 1; i <= in.m && !in_some; ++i)
      in_some = tilde[static_cast<std::size_t>(i)][idx];
    if (!in_some) t0[idx] = 1;
  }
  {  // closure: add face neighbors of the raw complement
    std::vector<std::uint8_t> closed = t0;
    for (std::size_t idx = 0; idx < g.count; ++idx)
      if (t0[idx])
        for (Idx nb : g.face_nbrs[idx])
          closed[static_cast<std::size_t>(nb)] = 1;
    t0.swap(closed);
  }

  // cover + multiplicity sanity on the assembled closed cover
  for (std::size_t idx = 0; idx < g.count; ++idx) {
    Int labels = 0;
    for (Int i = 0; i <= in.m; ++i)
      labels += tilde[static_cast<std::size_t>(i)][idx];
    if (labels == 0)
      fail(ErrorCode::Internal, "thickened families fail to cover the cube");
    if (labels > in.m + 1)
      fail(ErrorCode::Internal, "covering multiplicity above m+1");
  }
  // component bound invariant for the thickened families
  for (Int i = 1; i <= in.m; ++i) {
    Int worst = mask_component_bound(g, tilde[static_cast<std::size_t>(i)]);
    if (worst > in.bound + 2 * in.m + 2)
      fail(ErrorCode::Internal,
           "thickened family component exceeds B + 2m + 2");
  }

  // spanning search over the closed cover
  std::vector<std::uint32_t> mask(g.count, 0);
  for (std::size_t idx = 0; idx < g.count; ++idx)
    for (Int i = 0; i <= in.m; ++i)
      if (tilde[static_cast<std::size_t>(i)][idx]) mask[idx] |= 1u << i;
  std::vector<Idx> queue;
  std::vector<std::uint8_t> seen(g.count, 0);
  int spanning = find_spanning_set(g, mask, in.m + 1, nullptr, queue, seen);
  if (spanning < 0)
    fail(ErrorCode::Internal, "no spanning set in a full cover");
  if (spanning >= 1) {
    if (S > in.bound + 2 * in.m + 2)
      fail(ErrorCode::Internal,
           "a bounded thickened family spans the cube");
    rep.verdict = ObstructionReport::Verdict::NoViolation;
    rep.note += "window side " + std::to_string(S) +
                " does not exceed B + 2m + 2; scale too small";
    return rep;
  }
  if (S <= in.bound) {
    rep.verdict = ObstructionReport::Verdict::NoViolation;
    rep.note += "window side " + std::to_string(S) +
                " does not exceed the bound; scale too small";
    return rep;
  }

  // alpha: facet-to-facet path inside the complement part
  auto alpha = bfs_facet_path(g, t0, 0, false);
  if (!alpha)
    fail(ErrorCode::Internal, "spanning complement has no facet path");

  // cubes of the side-(m+1) decomposition that meet alpha
  const Int p = S / level;
  DenseGrid cube_grid(level, p);
  std::vector<std::uint8_t> cube_mark(cube_grid.count, 0);
  std::vector<Int> coords(static_cast<std::size_t>(level));
  std::vector<Int> cube_ix(static_cast<std::size_t>(level));
  for (Idx idx : *alpha) {
    g.decode(static_cast<std::size_t>(idx), coords);
    // enumerate cubes containing this point
    std::vector<std::vector<Int>> choices(static_cast<std::size_t>(level));
    for (Int a = 0; a < level; ++a) {
      Int q = floor_div(coords[static_cast<std::size_t>(a)], level);
      for (Int cand : {q - 1, q}) {
        if (cand < 0 || cand >= p) continue;
        if (level * cand <= coords[static_cast<std::size_t>(a)] &&
            coords[static_cast<std::size_t>(a)] <= level * (cand + 1))
          choices[static_cast<std::size_t>(a)].push_back(cand);
      }
    }
    std::vector<std::size_t> ix(static_cast<std::size_t>(level), 0);
    while (true) {
      for (Int a = 0; a < level; ++a)
        cube_ix[static_cast<std::size_t>(a)] =
            choices[static_cast<std::size_t>(a)][ix[static_cast<std::size_t>(a)]];
      cube_mark[cube_grid.encode(cube_ix)] = 1;
      std::size_t a = static_cast<std::size_t>(level);
      while (a > 0 && ix[a - 1] + 1 == choices[a - 1].size()) --a;
      if (a == 0) break;
      ++ix[a - 1];
      for (std::size_t b = a; b < static_cast<std::size_t>(level); ++b)
        ix[b] = 0;
    }
  }

  // skeleton of the marked cubes, avoiding every thickening source
  std::vector<std::uint8_t> skeleton(g.count, 0);
  for (std::size_t idx = 0; idx < g.count; ++idx) {
    g.decode(idx, coords);
    Int off_lattice = 0;
    for (Int a = 0; a < level; ++a)
      if (coords[static_cast<std::size_t>(a)] % level != 0) ++off_lattice;
    if (off_lattice > 1) continue;
    bool in_u = false;
    for (Int i = 1; i <= in.m && !in_u; ++i)
      in_u = umask[static_cast<std::size_t>(i)][idx];
    if (in_u) continue;
    // inside some marked cube?
    bool inside = false;
    std::vector<std::vector<Int>> choices(static_cast<std::size_t>(level));
    for (Int a = 0; a < level; ++a) {
      Int q = floor_div(coords[static_cast<std::size_t>(a)], level);
      for (Int cand : {q - 1, q})
        if (cand >= 0 && cand < p &&
            level * cand <= coords[static_cast<std::size_t>(a)] &&
            coords[static_cast<std::size_t>(a)] <= level * (cand + 1))
          choices[static_cast<std::size_t>(a)].push_back(cand);
    }
    std::vector<std::size_t> ix(static_cast<std::size_t>(level), 0);
    while (!inside) {
      for (Int a = 0; a < level; ++a)
        cube_ix[static_cast<std::size_t>(a)] =
            choices[static_cast<std::size_t>(a)][ix[static_cast<std::size_t>(a)]];
      if (cube_mark[cube_grid.encode(cube_ix)]) inside = true;
      std::size_t a = static_cast<std::size_t>(level);
      while (a > 0 && ix[a - 1] + 1 == choices[a - 1].size()) --a;
      if (a == 0) break;
      ++ix[a - 1];
      for (std::size_t b = a; b < static_cast<std::size_t>(level); ++b)
        ix[b] = 0;
    }
    if (inside) skeleton[idx] = 1;
  }

  auto beta = bfs_facet_path(g, skeleton, 0, true);
  if (!beta) {
    rep.verdict = ObstructionReport::Verdict::NoViolation;
    rep.note += "no skeleton path clears the families at this scale";
    return rep;
  }
  BetaWitness bw;
  bw.bound = in.bound;
  for (Idx idx : *beta) {
    g.decode(static_cast<std::size_t>(idx), coords);
    if (!families::family_covers(fams[0], coords))
      fail(ErrorCode::Internal, "skeleton path leaves the base family");
    bw.path.push_back(Point{level, coords});
  }
  bw.diameter = families::point_set_diameter(bw.path);
  if (bw.diameter <= in.bound)
    fail(ErrorCode::Internal, "facet path no wider than the bound");
  rep.verdict = ObstructionReport::Verdict::ViolationFound;
  rep.note += "connected facet-to-facet edge path inside V0 exceeds its bound";
  rep.beta = std::move(bw);
  return rep;
}

ObstructionInput random_candidate(Int side, Int k, std::uint64_t seed) {
  if (side < 8) fail(ErrorCode::Parameter, "side must be at least 8");
  if (k < 1) fail(ErrorCode::Parameter, "k must be positive");
  std::mt19937_64 rng(seed);
  ObstructionInput in;
  in.m = 1;
  in.k = k;
  in.n = 6 * k;
  in.bound = std::max<Int>(3 * k, side / 4);
  in.side = side;
  std::uniform_int_distribution<Int> len_d(2, in.bound);
  auto cuts = [&]() {
    std::vector<Int> c{0};
    while (c.back() < side)
      c.push_back(std::min<Int>(side, c.back() + len_d(rng)));
    return c;
  };
  auto xs = cuts(), ys = cuts();
  families::BoxFamily v0{2, "patches", {}};
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    for (std::size_t j = 0; j + 1 < ys.size(); ++j)
      v0.templates.push_back(families::BoxTemplate{
          {families::interval_piece(xs[i], xs[i + 1]),
           families::interval_piece(ys[j], ys[j + 1])}});
  families::validate_family(v0);
  in.candidate.push_back(std::move(v0));
  if (seed % 2 == 1) {
    const Int spread = 4 * in.bound + in.n + 8;
    families::BoxFamily v1{
        2,
        "sparse",
        {families::BoxTemplate{
            {families::interval_piece(0, in.bound, spread),
             families::interval_piece(0, in.bound, spread)}}}};
    in.candidate.push_back(std::move(v1));
  }
  return in;
}

}  // namespace coarsedim::obstruction
