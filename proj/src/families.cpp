#include "coarsedim/families.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace coarsedim::families {

namespace {

using space::detail::ceil_div;
using space::detail::floor_div;

constexpr Int kCandidateCap = 50'000;
constexpr Int kAxisPairScanCap = 512;
constexpr Int kZScanCap = 1'000'000;

Int gcd64(Int a, Int b) { return std::gcd(a, b); }

struct IndexRange {
  Int lo = 0, hi = -1;
  bool empty() const { return lo > hi; }
  Int size() const { return empty() ? 0 : hi - lo + 1; }
};

// Indices whose instance boxes meet [wlo, whi] on this axis.
IndexRange axis_index_range(const AxisPiece& p, Int wlo, Int whi) {
  const Int base_lo = p.kind == AxisPiece::Kind::Singleton ? 0 : p.lo;
  const Int base_hi = base_lo + p.length();
  if (p.stride == 0) {
    if (base_lo <= whi && base_hi >= wlo) return {0, 0};
    return {0, -1};
  }
  return {ceil_div(wlo - base_hi, p.stride), floor_div(whi - base_lo, p.stride)};
}

// Arithmetic progression lo, lo+step, ..., hi (nonempty, step >= 1).
struct AxisSet {
  Int lo, hi, step;
};

Int axis_set_min_dist(const AxisSet& a, const AxisSet& b) {
  if (a.hi < b.lo) return b.lo - a.hi;
  if (b.hi < a.lo) return a.lo - b.hi;
  // ranges overlap
  if (a.step == 1 && b.step == 1) return 0;
  if (a.step == 1 || b.step == 1) {
    const AxisSet& s = a.step == 1 ? b : a;  // stepped
    const AxisSet& c = a.step == 1 ? a : b;  // contiguous
    // nearest element of s to the range [c.lo, c.hi]
    Int first_ge = s.lo + ceil_div(std::max(c.lo, s.lo) - s.lo, s.step) * s.step;
    if (first_ge <= std::min(s.hi, c.hi)) return 0;
    Int best = std::numeric_limits<Int>::max();
    if (first_ge <= s.hi) best = std::min(best, first_ge - c.hi);
    Int last_le = s.lo + floor_div(std::min(c.hi, s.hi) - s.lo, s.step) * s.step;
    if (last_le >= s.lo) best = std::min(best, c.lo - last_le);
    return best;
  }
  // two level-lattice progressions: same step, same residue by construction
  if (a.step == b.step && ((a.lo - b.lo) % a.step == 0)) return 0;
  fail(ErrorCode::Internal, "unsupported axis set combination");
}

Int axis_set_max_dist(const AxisSet& a, const AxisSet& b) {
  return std::max(std::abs(b.hi - a.lo), std::abs(a.hi - b.lo));
}

// Star decomposition of box ∩ level-space: one branch per free axis, where
// all other axes are clipped to the level lattice.
std::vector<std::vector<AxisSet>> box_branches(
    const std::vector<std::array<Int, 2>>& box, Int level) {
  std::vector<std::vector<AxisSet>> branches;
  const Int n = static_cast<Int>(box.size());
  if (n == 1) {
    branches.push_back({AxisSet{box[0][0], box[0][1], 1}});
    return branches;
  }
  std::vector<AxisSet> lattice(static_cast<std::size_t>(n));
  std::vector<bool> ok(static_cast<std::size_t>(n), true);
  for (Int a = 0; a < n; ++a) {
    Int mlo = ceil_div(box[a][0], level) * level;
    Int mhi = floor_div(box[a][1], level) * level;
    if (mlo > mhi) {
      ok[a] = false;
      continue;
    }
    lattice[a] = AxisSet{mlo, mhi, level};
  }
  for (Int j = 0; j < n; ++j) {
    bool feasible = true;
    for (Int a = 0; a < n && feasible; ++a)
      if (a != j && !ok[a]) feasible = false;
    if (!feasible) continue;
    std::vector<AxisSet> branch(static_cast<std::size_t>(n));
    for (Int a = 0; a < n; ++a)
      branch[a] = (a == j) ? AxisSet{box[a][0], box[a][1], 1} : lattice[a];
    branches.push_back(std::move(branch));
  }
  return branches;
}

Int branches_min_dist(const std::vector<std::vector<AxisSet>>& a,
                      const std::vector<std::vector<AxisSet>>& b) {
  Int best = -1;
  for (const auto& ba : a)
    for (const auto& bb : b) {
      Int d = 0;
      for (std::size_t i = 0; i < ba.size(); ++i)
        d = std::max(d, axis_set_min_dist(ba[i], bb[i]));
      if (best < 0 || d < best) best = d;
    }
  return best;
}

Int branches_diameter(const std::vector<std::vector<AxisSet>>& br) {
  Int best = -1;
  for (std::size_t i = 0; i < br.size(); ++i)
    for (std::size_t j = i; j < br.size(); ++j) {
      Int d = 0;
      for (std::size_t a = 0; a < br[i].size(); ++a)
        d = std::max(d, axis_set_max_dist(br[i][a], br[j][a]));
      best = std::max(best, d);
    }
  return best;
}

std::tuple<Int, Int, Int, Int> canonical_piece(const AxisPiece& p) {
  if (p.stride > 0) {
    Int base = p.kind == AxisPiece::Kind::Singleton ? 0 : p.lo;
    Int rem = ((base % p.stride) + p.stride) % p.stride;
    return {rem, p.length(), p.stride, 0};
  }
  return {p.lo, p.hi, 0, 1};
}

std::vector<std::vector<std::tuple<Int, Int, Int, Int>>> canonical_templates(
    const BoxFamily& f) {
  std::vector<std::vector<std::tuple<Int, Int, Int, Int>>> out;
  out.reserve(f.templates.size());
  for (const auto& t : f.templates) {
    std::vector<std::tuple<Int, Int, Int, Int>> ct;
    ct.reserve(t.axes.size());
    for (const auto& p : t.axes) ct.push_back(canonical_piece(p));
    out.push_back(std::move(ct));
  }
  return out;
}

// 1-D coverage of [wlo, whi] by one piece, as merged closed intervals.
std::vector<std::array<Int, 2>> piece_union(const AxisPiece& p, Int wlo,
                                            Int whi) {
  std::vector<std::array<Int, 2>> out;
  const Int len = p.length();
  const Int base = p.kind == AxisPiece::Kind::Singleton ? 0 : p.lo;
  if (p.stride == 0) {
    if (base <= whi && base + len >= wlo)
      out.push_back({std::max(base, wlo), std::min(base + len, whi)});
    return out;
  }
  if (p.stride <= len + 1) {
    out.push_back({wlo, whi});  // consecutive instances touch or overlap
    return out;
  }
  IndexRange r = axis_index_range(p, wlo, whi);
  if ((whi - wlo) / p.stride + 2 > kZScanCap)
    fail(ErrorCode::Capacity, "axis union has too many instances");
  for (Int i = r.lo; i <= r.hi; ++i) {
    Int a = base + p.stride * i, b = a + len;
    out.push_back({std::max(a, wlo), std::min(b, whi)});
  }
  return out;
}

void merge_intervals(std::vector<std::array<Int, 2>>& v) {
  std::sort(v.begin(), v.end());
  std::size_t w = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w > 0 && v[i][0] <= v[w - 1][1] + 1)
      v[w - 1][1] = std::max(v[w - 1][1], v[i][1]);
    else
      v[w++] = v[i];
  }
  v.resize(w);
}

// Least uncovered integer in [lo, hi]; multiples of `skip_multiples` are
// exempt when it is >= 2.
std::optional<Int> least_uncovered(std::vector<std::array<Int, 2>> intervals,
                                   Int lo, Int hi, Int skip_multiples) {
  merge_intervals(intervals);
  auto first_relevant = [&](Int a, Int b) -> std::optional<Int> {
    if (a > b) return std::nullopt;
    if (skip_multiples < 2) return a;
    Int t = a;
    if (t % skip_multiples == 0) ++t;
    if (t <= b) return t;
    return std::nullopt;
  };
  Int t = lo;
  for (const auto& iv : intervals) {
    if (iv[0] > t)
      if (auto u = first_relevant(t, std::min(iv[0] - 1, hi))) return u;
    t = std::max(t, iv[1] + 1);
    if (t > hi) return std::nullopt;
  }
  return first_relevant(t, hi);
}

bool piece_covers(const AxisPiece& p, Int x) {
  const Int len = p.length();
  const Int base = p.kind == AxisPiece::Kind::Singleton ? 0 : p.lo;
  if (p.stride == 0) return base <= x && x <= base + len;
  Int rem = ((x - base) % p.stride + p.stride) % p.stride;
  return rem <= len;
}

}  // namespace

AxisPiece interval_piece(Int lo, Int hi, Int stride) {
  return AxisPiece{AxisPiece::Kind::Interval, lo, hi, stride};
}

AxisPiece singleton_piece(Int stride) {
  return AxisPiece{AxisPiece::Kind::Singleton, 0, 0, stride};
}

void validate_family(const BoxFamily& f) {
  if (f.level < 1) fail(ErrorCode::Parameter, "family level must be positive");
  for (const auto& t : f.templates) {
    if (static_cast<Int>(t.axes.size()) != f.level)
      fail(ErrorCode::Parameter, "template of family '" + f.label + "' has " +
                                     std::to_string(t.axes.size()) +
                                     " axes, expected " +
                                     std::to_string(f.level));
    for (const auto& p : t.axes) {
      if (p.kind == AxisPiece::Kind::Singleton) {
        if (p.stride < 1)
          fail(ErrorCode::Parameter, "singleton piece needs stride >= 1");
      } else {
        if (p.lo > p.hi) fail(ErrorCode::Parameter, "interval piece has lo > hi");
        if (p.stride < 0) fail(ErrorCode::Parameter, "negative stride");
      }
    }
  }
  auto canon = canonical_templates(f);
  std::set<std::vector<std::tuple<Int, Int, Int, Int>>> seen;
  for (auto& ct : canon)
    if (!seen.insert(ct).second)
      fail(ErrorCode::Parameter,
           "family '" + f.label + "' contains duplicate templates");
}

BoxFamily merge_families(const BoxFamily& a, const BoxFamily& b,
                         std::string label) {
  if (a.level != b.level)
    fail(ErrorCode::Parameter, "cannot merge families at different levels");
  BoxFamily out{a.level, std::move(label), a.templates};
  out.templates.insert(out.templates.end(), b.templates.begin(),
                       b.templates.end());
  validate_family(out);
  return out;
}

std::vector<std::array<Int, 2>> member_box(const BoxFamily& f,
                                           const MemberRef& m) {
  if (m.template_index < 0 ||
      m.template_index >= static_cast<Int>(f.templates.size()))
    fail(ErrorCode::Parameter, "template index out of range");
  const auto& t = f.templates[static_cast<std::size_t>(m.template_index)];
  if (m.indices.size() != t.axes.size())
    fail(ErrorCode::DimensionMismatch, "member index count mismatch");
  std::vector<std::array<Int, 2>> box(t.axes.size());
  for (std::size_t a = 0; a < t.axes.size(); ++a)
    box[a] = {t.axes[a].instance_lo(m.indices[a]),
              t.axes[a].instance_hi(m.indices[a])};
  return box;
}

std::vector<Point> member_points(const BoxFamily& f, const MemberRef& m) {
  auto box = member_box(f, m);
  const Int n = f.level;
  // budget-style walk: at most one off-lattice coordinate
  std::vector<Point> out;
  std::vector<Int> scratch(static_cast<std::size_t>(n));
  std::uint64_t emitted = 0;
  auto walk = [&](auto&& self, Int axis, bool used) -> void {
    if (axis == n) {
      ++emitted;
      if (emitted > capacity_limit())
        fail(ErrorCode::Capacity, "member point set exceeds capacity");
      out.push_back(Point{n, scratch});
      return;
    }
    if (n == 1) {
      for (Int v = box[0][0]; v <= box[0][1]; ++v) {
        scratch[0] = v;
        self(self, 1, used);
      }
      return;
    }
    if (used) {
      Int zlo = ceil_div(box[axis][0], n), zhi = floor_div(box[axis][1], n);
      for (Int z = zlo; z <= zhi; ++z) {
        scratch[axis] = z * n;
        self(self, axis + 1, true);
      }
      return;
    }
    for (Int v = box[axis][0]; v <= box[axis][1]; ++v) {
      scratch[axis] = v;
      self(self, axis + 1, v % n != 0);
    }
  };
  walk(walk, 0, false);
  return out;
}

bool member_meets_window(const BoxFamily& f, const MemberRef& m,
                         const Window& w) {
  auto box = member_box(f, m);
  for (std::size_t a = 0; a < box.size(); ++a) {
    box[a][0] = std::max(box[a][0], w.lo);
    box[a][1] = std::min(box[a][1], w.hi);
    if (box[a][0] > box[a][1]) return false;
  }
  return !box_branches(box, f.level).empty();
}

bool family_covers(const BoxFamily& f, std::span<const Int> coords) {
  for (const auto& t : f.templates) {
    bool all = true;
    for (std::size_t a = 0; a < t.axes.size() && all; ++a)
      all = piece_covers(t.axes[a], coords[a]);
    if (all) return true;
  }
  return false;
}

Int member_distance(const BoxFamily& f, const MemberRef& a,
                    const MemberRef& b) {
  auto ba = box_branches(member_box(f, a), f.level);
  auto bb = box_branches(member_box(f, b), f.level);
  if (ba.empty() || bb.empty()) return -1;
  return branches_min_dist(ba, bb);
}

Int member_diameter(const BoxFamily& f, const MemberRef& m) {
  auto br = box_branches(member_box(f, m), f.level);
  if (br.empty()) return -1;
  return branches_diameter(br);
}

Int chebyshev(std::span<const Int> a, std::span<const Int> b) {
  Int d = 0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    Int x = i < a.size() ? a[i] : 0;
    Int y = i < b.size() ? b[i] : 0;
    d = std::max(d, std::abs(x - y));
  }
  return d;
}

Int point_set_distance(std::span<const Point> a, std::span<const Point> b) {
  if (a.empty() || b.empty()) return -1;
  Int best = std::numeric_limits<Int>::max();
  for (const auto& p : a)
    for (const auto& q : b)
      best = std::min(best, chebyshev(p.coords, q.coords));
  return best;
}

Int point_set_diameter(std::span<const Point> pts) {
  if (pts.empty()) return -1;
  const std::size_t n = pts[0].coords.size();
  Int diam = 0;
  for (std::size_t a = 0; a < n; ++a) {
    Int lo = pts[0].coords[a], hi = lo;
    for (const auto& p : pts) {
      lo = std::min(lo, p.coords[a]);
      hi = std::max(hi, p.coords[a]);
    }
    diam = std::max(diam, hi - lo);
  }
  return diam;
}

VerifyReport pass_report() { return VerifyReport{}; }

VerifyReport pair_report(MemberRef a, MemberRef b, Int dist,
                         std::string detail) {
  VerifyReport r;
  r.verdict = false;
  r.witness = VerifyReport::Witness::Pair;
  r.member_a = std::move(a);
  r.member_b = std::move(b);
  r.pair_distance = dist;
  r.detail = std::move(detail);
  return r;
}

VerifyReport diameter_report(MemberRef m, Int diam, std::string detail) {
  VerifyReport r;
  r.verdict = false;
  r.witness = VerifyReport::Witness::Diameter;
  r.member = std::move(m);
  r.diameter = diam;
  r.detail = std::move(detail);
  return r;
}

VerifyReport uncovered_report(Point p, std::string detail) {
  VerifyReport r;
  r.verdict = false;
  r.witness = VerifyReport::Witness::Uncovered;
  r.uncovered = std::move(p);
  r.detail = std::move(detail);
  return r;
}

std::vector<MemberRef> members_meeting(const BoxFamily& f, const Window& w) {
  validate_family(f);
  space::validate_window(w);
  std::vector<MemberRef> out;
  for (Int ti = 0; ti < static_cast<Int>(f.templates.size()); ++ti) {
    const auto& t = f.templates[static_cast<std::size_t>(ti)];
    std::vector<IndexRange> ranges;
    bool active = true;
    std::uint64_t count = 1;
    for (const auto& p : t.axes) {
      IndexRange r = axis_index_range(p, w.lo, w.hi);
      if (r.empty()) {
        active = false;
        break;
      }
      count *= static_cast<std::uint64_t>(r.size());
      if (count > capacity_limit())
        fail(ErrorCode::Capacity, "too many members meet the window");
      ranges.push_back(r);
    }
    if (!active) continue;
    std::vector<Int> idx(ranges.size());
    for (std::size_t a = 0; a < ranges.size(); ++a) idx[a] = ranges[a].lo;
    while (true) {
      out.push_back(MemberRef{ti, idx});
      if (out.size() > capacity_limit())
        fail(ErrorCode::Capacity, "too many members meet the window");
      std::size_t a = ranges.size();
      while (a > 0 && idx[a - 1] == ranges[a - 1].hi) --a;
      if (a == 0) break;
      ++idx[a - 1];
      for (std::size_t b = a; b < ranges.size(); ++b) idx[b] = ranges[b].lo;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// pointwise reference kernels
// ---------------------------------------------------------------------------

namespace {

struct MaterializedFamily {
  std::vector<MemberRef> refs;
  std::vector<std::vector<Point>> points;  // full member sets
};

MaterializedFamily materialize(const BoxFamily& f, const Window& w) {
  MaterializedFamily out;
  auto refs = members_meeting(f, w);
  std::uint64_t total = 0;
  for (auto& m : refs) {
    auto pts = member_points(f, m);
    if (pts.empty()) continue;
    bool meets = false;
    for (const auto& p : pts) {
      bool inside = true;
      for (Int c : p.coords)
        if (c < w.lo || c > w.hi) {
          inside = false;
          break;
        }
      if (inside) {
        meets = true;
        break;
      }
    }
    if (!meets) continue;
    total += pts.size();
    if (total > capacity_limit())
      fail(ErrorCode::Capacity, "materialized family exceeds capacity");
    out.refs.push_back(std::move(m));
    out.points.push_back(std::move(pts));
  }
  return out;
}

}  // namespace

VerifyReport pointwise_disjoint(const BoxFamily& f, Int r, const Window& w,
                                Exec exec) {
  if (r < 1) fail(ErrorCode::Parameter, "r must be positive");
  if (f.level != w.level)
    fail(ErrorCode::Parameter, "family level does not match window level");
  auto mat = materialize(f, w);
  const Int n = static_cast<Int>(mat.refs.size());
  std::uint64_t work = 0;
  for (Int i = 0; i < n; ++i)
    for (Int j = i + 1; j < n; ++j) {
      work += mat.points[static_cast<std::size_t>(i)].size() *
              mat.points[static_cast<std::size_t>(j)].size();
      if (work > capacity_limit())
        fail(ErrorCode::Capacity, "pairwise scan exceeds capacity");
    }
  // flatten (i, j) pairs; first violation in lexicographic pair order wins
  struct Best {
    Int i = -1, j = -1, dist = -1;
  };
  std::vector<std::pair<Int, Int>> pairs;
  for (Int i = 0; i < n; ++i)
    for (Int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const Int np = static_cast<Int>(pairs.size());
  int threads = 1;
#ifdef _OPENMP
  if (exec == Exec::Parallel) threads = omp_get_max_threads();
#else
  (void)exec;
#endif
  std::vector<Best> best(static_cast<std::size_t>(threads));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads) \
    if (exec == Exec::Parallel)
#endif
  for (Int p = 0; p < np; ++p) {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    Best& b = best[static_cast<std::size_t>(tid)];
    auto [i, j] = pairs[static_cast<std::size_t>(p)];
    if (b.i >= 0 && std::make_pair(b.i, b.j) < std::make_pair(i, j)) continue;
    Int d = point_set_distance(mat.points[static_cast<std::size_t>(i)],
                               mat.points[static_cast<std::size_t>(j)]);
    if (d >= 0 && d < r) {
      if (b.i < 0 || std::make_pair(i, j) < std::make_pair(b.i, b.j))
        b = Best{i, j, d};
    }
  }
  Best found;
  for (const auto& b : best)
    if (b.i >= 0 &&
        (found.i < 0 ||
         std::make_pair(b.i, b.j) < std::make_pair(found.i, found.j)))
      found = b;
  if (found.i < 0) return pass_report();
  return pair_report(mat.refs[static_cast<std::size_t>(found.i)],
                     mat.refs[static_cast<std::size_t>(found.j)], found.dist,
                     "pointwise pair scan");
}

VerifyReport pointwise_bounded(const BoxFamily& f, Int bound, const Window& w,
                               Exec exec) {
  (void)exec;  // cheap; member loop stays serial
  if (bound < 0) fail(ErrorCode::Parameter, "bound must be nonnegative");
  if (f.level != w.level)
    fail(ErrorCode::Parameter, "family level does not match window level");
  auto mat = materialize(f, w);
  for (std::size_t i = 0; i < mat.refs.size(); ++i) {
    Int d = point_set_diameter(mat.points[i]);
    if (d > bound)
      return diameter_report(mat.refs[i], d, "pointwise diameter scan");
  }
  return pass_report();
}

VerifyReport pointwise_cover(std::span<const BoxFamily> fs, const Window& w,
                             Exec exec) {
  for (const auto& f : fs) {
    validate_family(f);
    if (f.level != w.level)
      fail(ErrorCode::Parameter, "family level does not match window level");
  }
  auto pts = space::window_points(w);
  const Int n = static_cast<Int>(pts.size());
  int threads = 1;
#ifdef _OPENMP
  if (exec == Exec::Parallel) threads = omp_get_max_threads();
#else
  (void)exec;
#endif
  std::vector<Int> best(static_cast<std::size_t>(threads), -1);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads) \
    if (exec == Exec::Parallel)
#endif
  for (Int i = 0; i < n; ++i) {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    Int& b = best[static_cast<std::size_t>(tid)];
    if (b >= 0 && b < i) continue;
    bool covered = false;
    for (const auto& f : fs)
      if (family_covers(f, pts[static_cast<std::size_t>(i)].coords)) {
        covered = true;
        break;
      }
    if (!covered && (b < 0 || i < b)) b = i;
  }
  Int found = -1;
  for (Int b : best)
    if (b >= 0 && (found < 0 || b < found)) found = b;
  if (found < 0) return pass_report();
  return uncovered_report(pts[static_cast<std::size_t>(found)],
                          "pointwise cover scan");
}

// ---------------------------------------------------------------------------
// symbolic paths
// ---------------------------------------------------------------------------

namespace {

// Minimal distance between instances of one piece at distinct indices,
// ignoring the level lattice (a sound lower bound for member distance).
std::optional<Int> same_piece_min_gap(const AxisPiece& p, const IndexRange& r) {
  if (p.stride == 0 || r.size() < 2) return std::nullopt;
  return std::max<Int>(0, p.stride - p.length());
}

// Minimal distance between an instance of a and an instance of b over the
// given index ranges (box level). Exact for stride-0/equal-stride cases;
// for mixed strides enumerates when feasible and otherwise returns the
// unbounded gcd lower bound.
Int cross_piece_min_gap(const AxisPiece& pa, const IndexRange& ra,
                        const AxisPiece& pb, const IndexRange& rb) {
  const Int la = pa.length(), lb = pb.length();
  const Int base_a = pa.kind == AxisPiece::Kind::Singleton ? 0 : pa.lo;
  const Int base_b = pb.kind == AxisPiece::Kind::Singleton ? 0 : pb.lo;
  auto dist_for = [&](Int v) { return std::max<Int>({0, v - la, -v - lb}); };
  const Int base = base_b - base_a;
  if (pa.stride == 0 && pb.stride == 0) return dist_for(base);
  if (pa.stride == 0 || pb.stride == 0) {
    const bool a_fixed = pa.stride == 0;
    const Int s = a_fixed ? pb.stride : pa.stride;
    const IndexRange& r = a_fixed ? rb : ra;
    // v = base + s*j (or base - s*i); candidates near the overlap zone
    Int sign = a_fixed ? 1 : -1;
    Int best = std::numeric_limits<Int>::max();
    // v in [-lb, la] target; solve for index
    for (Int target : {-lb, la}) {
      Int num = (target - base) * sign;
      for (Int j : {floor_div(num, s), ceil_div(num, s)}) {
        Int jc = std::clamp(j, r.lo, r.hi);
        best = std::min(best, dist_for(base + sign * s * jc));
      }
    }
    return best;
  }
  if (pa.stride == pb.stride) {
    const Int s = pa.stride;
    Int dlo = rb.lo - ra.hi, dhi = rb.hi - ra.lo;
    Int best = std::numeric_limits<Int>::max();
    for (Int target : {-lb, la}) {
      for (Int d : {floor_div(target - base, s), ceil_div(target - base, s)}) {
        Int dc = std::clamp(d, dlo, dhi);
        best = std::min(best, dist_for(base + s * dc));
      }
    }
    return best;
  }
  // mixed strides: enumerate the smaller range when feasible
  if (std::min(ra.size(), rb.size()) <= kAxisPairScanCap) {
    const bool scan_a = ra.size() <= rb.size();
    Int best = std::numeric_limits<Int>::max();
    const IndexRange& rs = scan_a ? ra : rb;
    for (Int i = rs.lo; i <= rs.hi; ++i) {
      AxisPiece fixed = scan_a ? pa : pb;
      Int inst_lo = fixed.instance_lo(i);
      AxisPiece asfixed = fixed;
      asfixed.lo = inst_lo;
      asfixed.hi = inst_lo + fixed.length();
      asfixed.kind = AxisPiece::Kind::Interval;
      asfixed.stride = 0;
      IndexRange unit{0, 0};
      best = std::min(best, scan_a ? cross_piece_min_gap(asfixed, unit, pb, rb)
                                   : cross_piece_min_gap(pa, ra, asfixed, unit));
    }
    return best;
  }
  // unbounded lower bound via gcd of strides
  Int g = gcd64(pa.stride, pb.stride);
  Int rem = ((base % g) + g) % g;  // v ≡ base (mod g)
  // nearest representative to the zone [-lb, la]
  Int best = std::numeric_limits<Int>::max();
  for (Int target : {-lb, Int{0}, la}) {
    Int v = floor_div(target - rem, g) * g + rem;
    best = std::min(best, dist_for(v));
    best = std::min(best, dist_for(v + g));
  }
  return best;
}

struct TemplateInfo {
  bool active = false;
  std::vector<IndexRange> ranges;
};

std::vector<TemplateInfo> window_template_info(const BoxFamily& f,
                                               const Window& w) {
  std::vector<TemplateInfo> out(f.templates.size());
  for (std::size_t ti = 0; ti < f.templates.size(); ++ti) {
    const auto& t = f.templates[ti];
    TemplateInfo info;
    info.active = true;
    for (const auto& p : t.axes) {
      IndexRange r = axis_index_range(p, w.lo, w.hi);
      if (r.empty()) {
        info.active = false;
        break;
      }
      info.ranges.push_back(r);
    }
    out[ti] = std::move(info);
  }
  return out;
}

// Candidate streaming with a deterministic order and a generation cap.
class CandidateSink {
 public:
  CandidateSink(const BoxFamily& f, const Window& w, Int r)
      : f_(f), w_(w), r_(r) {}

  // returns true when a confirmed violation was found (stored in report_)
  bool offer(MemberRef a, MemberRef b) {
    if (++generated_ > kCandidateCap)
      fail(ErrorCode::Capacity, "candidate pair enumeration exceeds capacity");
    if (!member_meets_window(f_, a, w_) || !member_meets_window(f_, b, w_))
      return false;
    Int d = member_distance(f_, a, b);
    if (d >= 0 && d < r_) {
      report_ = pair_report(std::move(a), std::move(b), d,
                            "symbolic candidate confirmed exactly");
      return true;
    }
    return false;
  }

  const std::optional<VerifyReport>& report() const { return report_; }

 private:
  const BoxFamily& f_;
  const Window& w_;
  Int r_;
  Int generated_ = 0;
  std::optional<VerifyReport> report_;
};

// Base indices that cover every lattice class of the stride within the
// range. Enumerates everything for small ranges; for large ranges one
// interior representative per class suffices (geometry and emptiness are
// class-invariant, and interior members always meet the window).
std::vector<Int> base_candidates(Int stride, Int level, const IndexRange& rg) {
  std::vector<Int> out;
  if (rg.size() <= 64) {
    for (Int i = rg.lo; i <= rg.hi; ++i) out.push_back(i);
    return out;
  }
  Int cs = 1;  // index step that preserves the lattice class
  if (stride > 0 && level > 1) cs = level / gcd64(stride, level);
  const Int mid = rg.lo + rg.size() / 2;
  for (Int c = 0; c < cs; ++c) {
    Int first = rg.lo + c;
    if (first > rg.hi) break;
    Int i = first + ((mid - first) / cs) * cs;
    i = std::min(i, first + ((rg.hi - first) / cs) * cs);
    out.push_back(std::max(i, first));
  }
  return out;
}

void advance_or_stop(std::vector<std::size_t>& ix,
                     const std::vector<std::size_t>& sizes, bool& done) {
  for (std::size_t a = ix.size(); a-- > 0;) {
    if (ix[a] + 1 < sizes[a]) {
      ++ix[a];
      for (std::size_t b = a + 1; b < ix.size(); ++b) ix[b] = 0;
      return;
    }
  }
  done = true;
}

// Enumerate same-template candidate pairs: base index vector plus a delta
// vector whose per-axis box gaps are all < r.
bool same_template_candidates(const BoxFamily& f, Int ti,
                              const TemplateInfo& info, Int r,
                              CandidateSink& sink) {
  const auto& t = f.templates[static_cast<std::size_t>(ti)];
  const Int n = static_cast<Int>(t.axes.size());
  std::vector<std::vector<Int>> deltas(static_cast<std::size_t>(n));
  std::vector<std::vector<Int>> bases(static_cast<std::size_t>(n));
  bool any_nonzero = false;
  for (Int a = 0; a < n; ++a) {
    const auto& p = t.axes[static_cast<std::size_t>(a)];
    const auto& rg = info.ranges[static_cast<std::size_t>(a)];
    auto& d = deltas[static_cast<std::size_t>(a)];
    d.push_back(0);
    if (p.stride > 0) {
      Int maxd = rg.size() - 1;
      for (Int dd = 1; dd <= maxd; ++dd) {
        Int gap = std::max<Int>(0, p.stride * dd - p.length());
        if (gap >= r) break;
        d.push_back(dd);
        d.push_back(-dd);
        any_nonzero = true;
      }
    }
    bases[static_cast<std::size_t>(a)] = base_candidates(p.stride, f.level, rg);
  }
  if (!any_nonzero) return false;
  std::vector<std::size_t> dsizes, bsizes;
  for (Int a = 0; a < n; ++a) {
    dsizes.push_back(deltas[static_cast<std::size_t>(a)].size());
    bsizes.push_back(bases[static_cast<std::size_t>(a)].size());
  }
  std::vector<std::size_t> di(static_cast<std::size_t>(n), 0);
  bool ddone = false;
  while (!ddone) {
    bool zero = true;
    for (Int a = 0; a < n; ++a)
      if (deltas[static_cast<std::size_t>(a)][di[static_cast<std::size_t>(a)]] !=
          0)
        zero = false;
    if (!zero) {
      std::vector<std::size_t> bi(static_cast<std::size_t>(n), 0);
      bool bdone = false;
      while (!bdone) {
        MemberRef ma{ti, {}}, mb{ti, {}};
        bool ok = true;
        for (Int a = 0; a < n && ok; ++a) {
          Int delta =
              deltas[static_cast<std::size_t>(a)][di[static_cast<std::size_t>(a)]];
          Int base =
              bases[static_cast<std::size_t>(a)][bi[static_cast<std::size_t>(a)]];
          const auto& rg = info.ranges[static_cast<std::size_t>(a)];
          Int i0 = base, i1 = base + delta;
          if (i1 < rg.lo || i1 > rg.hi) {
            i0 = delta >= 0 ? rg.lo : rg.lo - delta;
            i1 = i0 + delta;
            if (i0 < rg.lo || i0 > rg.hi || i1 < rg.lo || i1 > rg.hi)
              ok = false;
          }
          if (ok) {
            ma.indices.push_back(i0);
            mb.indices.push_back(i1);
          }
        }
        if (ok && sink.offer(std::move(ma), std::move(mb))) return true;
        advance_or_stop(bi, bsizes, bdone);
      }
    }
    advance_or_stop(di, dsizes, ddone);
  }
  return false;
}

// Per-axis candidate (i, j) index pairs with axis gap < r. Equal strides use
// the delta structure with class-representative bases; mixed strides fall
// back to bounded pair scans.
std::vector<std::pair<Int, Int>> axis_candidate_pairs(
    const AxisPiece& pa, const IndexRange& ra, const AxisPiece& pb,
    const IndexRange& rb, Int level, Int r) {
  std::vector<std::pair<Int, Int>> out;
  auto gap_of = [&](Int i, Int j) {
    Int alo = pa.instance_lo(i), ahi = pa.instance_hi(i);
    Int blo = pb.instance_lo(j), bhi = pb.instance_hi(j);
    return std::max<Int>({0, blo - ahi, alo - bhi});
  };
  if (pa.stride == pb.stride && pa.stride > 0) {
    const Int s = pa.stride;
    auto bases = base_candidates(s, level, ra);
    // delta interval where the gap can be < r
    Int span = pa.length() + pb.length() + r;
    Int base = (pb.kind == AxisPiece::Kind::Singleton ? 0 : pb.lo) -
               (pa.kind == AxisPiece::Kind::Singleton ? 0 : pa.lo);
    Int dlo = floor_div(-span - base, s) - 1, dhi = ceil_div(span - base, s) + 1;
    for (Int d = dlo; d <= dhi; ++d) {
      for (Int i : bases) {
        Int j = i + d;
        if (j < rb.lo || j > rb.hi) {
          // anchor at the feasible end instead
          Int i2 = std::clamp(d >= 0 ? rb.hi - d : rb.lo - d, ra.lo, ra.hi);
          j = i2 + d;
          if (j < rb.lo || j > rb.hi) continue;
          i = i2;
        }
        if (gap_of(i, j) < r) out.emplace_back(i, j);
      }
    }
  } else {
    if (ra.size() > kAxisPairScanCap || rb.size() > kAxisPairScanCap)
      fail(ErrorCode::Capacity,
           "cross-template candidate ranges exceed scan capacity");
    for (Int i = ra.lo; i <= ra.hi; ++i)
      for (Int j = rb.lo; j <= rb.hi; ++j)
        if (gap_of(i, j) < r) out.emplace_back(i, j);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool cross_template_candidates(const BoxFamily& f, Int ti, Int tj,
                               const TemplateInfo& ii, const TemplateInfo& ij,
                               Int r, CandidateSink& sink) {
  const auto& ta = f.templates[static_cast<std::size_t>(ti)];
  const auto& tb = f.templates[static_cast<std::size_t>(tj)];
  const Int n = static_cast<Int>(ta.axes.size());
  std::vector<std::vector<std::pair<Int, Int>>> axis_pairs(
      static_cast<std::size_t>(n));
  std::vector<std::size_t> sizes;
  for (Int a = 0; a < n; ++a) {
    axis_pairs[static_cast<std::size_t>(a)] = axis_candidate_pairs(
        ta.axes[static_cast<std::size_t>(a)], ii.ranges[static_cast<std::size_t>(a)],
        tb.axes[static_cast<std::size_t>(a)], ij.ranges[static_cast<std::size_t>(a)],
        f.level, r);
    if (axis_pairs[static_cast<std::size_t>(a)].empty())
      return false;  // no pair can be < r on every axis
    sizes.push_back(axis_pairs[static_cast<std::size_t>(a)].size());
  }
  std::vector<std::size_t> ix(static_cast<std::size_t>(n), 0);
  bool done = false;
  while (!done) {
    MemberRef ma{ti, {}}, mb{tj, {}};
    for (Int a = 0; a < n; ++a) {
      auto [i, j] =
          axis_pairs[static_cast<std::size_t>(a)][ix[static_cast<std::size_t>(a)]];
      ma.indices.push_back(i);
      mb.indices.push_back(j);
    }
    if (sink.offer(std::move(ma), std::move(mb))) return true;
    advance_or_stop(ix, sizes, done);
  }
  return false;
}

}  // namespace

VerifyReport verify_disjoint(const BoxFamily& f, Int r, const Window& w,
                             Exec exec) {
  validate_family(f);
  space::validate_window(w);
  if (r < 1) fail(ErrorCode::Parameter, "r must be positive");
  if (f.level != w.level)
    fail(ErrorCode::Parameter, "family level does not match window level");
  auto info = window_template_info(f, w);
  const Int nt = static_cast<Int>(f.templates.size());

  CandidateSink sink(f, w, r);
  // same-template bounds
  for (Int ti = 0; ti < nt; ++ti) {
    if (!info[static_cast<std::size_t>(ti)].active) continue;
    const auto& t = f.templates[static_cast<std::size_t>(ti)];
    Int bound = std::numeric_limits<Int>::max();
    for (std::size_t a = 0; a < t.axes.size(); ++a)
      if (auto g = same_piece_min_gap(
              t.axes[a], info[static_cast<std::size_t>(ti)].ranges[a]))
        bound = std::min(bound, *g);
    if (bound >= r) continue;
    if (same_template_candidates(f, ti, info[static_cast<std::size_t>(ti)], r,
                                 sink))
      return *sink.report();
  }
  // cross-template bounds
  for (Int ti = 0; ti < nt; ++ti) {
    if (!info[static_cast<std::size_t>(ti)].active) continue;
    for (Int tj = ti + 1; tj < nt; ++tj) {
      if (!info[static_cast<std::size_t>(tj)].active) continue;
      const auto& ta = f.templates[static_cast<std::size_t>(ti)];
      const auto& tb = f.templates[static_cast<std::size_t>(tj)];
      Int bound = 0;  // max over axes of per-axis minima
      for (std::size_t a = 0; a < ta.axes.size(); ++a) {
        Int g = cross_piece_min_gap(
            ta.axes[a], info[static_cast<std::size_t>(ti)].ranges[a],
            tb.axes[a], info[static_cast<std::size_t>(tj)].ranges[a]);
        bound = std::max(bound, g);
        if (bound >= r) break;
      }
      if (bound >= r) continue;
      if (cross_template_candidates(f, ti, tj,
                                    info[static_cast<std::size_t>(ti)],
                                    info[static_cast<std::size_t>(tj)], r,
                                    sink))
        return *sink.report();
    }
  }
  (void)exec;
  return pass_report();
}

VerifyReport verify_bounded(const BoxFamily& f, Int bound, const Window& w,
                            Exec exec) {
  (void)exec;
  validate_family(f);
  space::validate_window(w);
  if (bound < 0) fail(ErrorCode::Parameter, "bound must be nonnegative");
  if (f.level != w.level)
    fail(ErrorCode::Parameter, "family level does not match window level");
  auto info = window_template_info(f, w);
  for (Int ti = 0; ti < static_cast<Int>(f.templates.size()); ++ti) {
    const auto& inf = info[static_cast<std::size_t>(ti)];
    if (!inf.active) continue;
    const auto& t = f.templates[static_cast<std::size_t>(ti)];
    Int box_diam = 0;
    for (const auto& p : t.axes) box_diam = std::max(box_diam, p.length());
    if (box_diam <= bound) continue;  // member diameter <= box diameter
    // enumerate meeting members exactly (bounded)
    std::uint64_t combos = 1;
    for (const auto& rg : inf.ranges) {
      combos *= static_cast<std::uint64_t>(rg.size());
      if (combos > static_cast<std::uint64_t>(kCandidateCap))
        fail(ErrorCode::Capacity,
             "bounded check needs too many member instantiations");
    }
    std::vector<Int> idx(inf.ranges.size());
    for (std::size_t a = 0; a < inf.ranges.size(); ++a)
      idx[a] = inf.ranges[a].lo;
    while (true) {
      MemberRef m{ti, idx};
      if (member_meets_window(f, m, w)) {
        Int d = member_diameter(f, m);
        if (d > bound)
          return diameter_report(m, d, "member diameter exceeds bound");
      }
      std::size_t a = inf.ranges.size();
      bool carried = false;
      while (a-- > 0) {
        if (idx[a] < inf.ranges[a].hi) {
          ++idx[a];
          for (std::size_t b = a + 1; b < inf.ranges.size(); ++b)
            idx[b] = inf.ranges[b].lo;
          carried = true;
          break;
        }
      }
      if (!carried) break;
    }
  }
  return pass_report();
}

namespace {

enum class GridStatus { Full, Empty, Partial };

GridStatus grid_status(const AxisPiece& p, Int level, Int zlo, Int zhi) {
  if (zhi - zlo + 1 > kZScanCap)
    fail(ErrorCode::Capacity, "lattice status scan exceeds capacity");
  Int covered = 0;
  for (Int z = zlo; z <= zhi; ++z)
    if (piece_covers(p, z * level)) ++covered;
  if (covered == 0) return GridStatus::Empty;
  if (covered == zhi - zlo + 1) return GridStatus::Full;
  return GridStatus::Partial;
}

std::optional<VerifyReport> cover_one_dimensional(
    std::span<const BoxFamily> fs, const Window& w) {
  std::vector<std::array<Int, 2>> intervals;
  for (const auto& f : fs)
    for (const auto& t : f.templates)
      for (const auto& iv : piece_union(t.axes[0], w.lo, w.hi))
        intervals.push_back(iv);
  if (auto u = least_uncovered(std::move(intervals), w.lo, w.hi, 0))
    return uncovered_report(Point{1, {*u}}, "uncovered on the line");
  return pass_report();
}

// Exact cover check when every template is lattice-uniform on every axis
// (its axis unions either contain all window lattice values or none).
std::optional<VerifyReport> cover_by_branches(std::span<const BoxFamily> fs,
                                              const Window& w) {
  const Int n = w.level;
  const Int zlo = ceil_div(w.lo, n), zhi = floor_div(w.hi, n);
  if (zlo > zhi) return pass_report();  // no lattice values: space is empty
  struct TRef {
    const BoxTemplate* t;
    std::vector<GridStatus> status;
  };
  std::vector<TRef> trefs;
  for (const auto& f : fs)
    for (const auto& t : f.templates) {
      TRef ref{&t, {}};
      for (const auto& p : t.axes) {
        GridStatus s = grid_status(p, n, zlo, zhi);
        if (s == GridStatus::Partial) return std::nullopt;  // not applicable
        ref.status.push_back(s);
      }
      trefs.push_back(std::move(ref));
    }
  std::vector<Point> candidates;
  // all-lattice points: need one template that is Full on every axis
  bool grid_covered = false;
  for (const auto& ref : trefs) {
    bool all = true;
    for (auto s : ref.status)
      if (s != GridStatus::Full) all = false;
    if (all) {
      grid_covered = true;
      break;
    }
  }
  if (!grid_covered)
    candidates.push_back(
        Point{n, std::vector<Int>(static_cast<std::size_t>(n), zlo * n)});
  // branch with free axis j: templates Full on all other axes contribute
  // their axis-j unions; coverage is independent of the lattice profile
  for (Int j = 0; j < n; ++j) {
    std::vector<std::array<Int, 2>> intervals;
    for (const auto& ref : trefs) {
      bool applies = true;
      for (Int a = 0; a < n && applies; ++a)
        if (a != j && ref.status[static_cast<std::size_t>(a)] != GridStatus::Full)
          applies = false;
      if (!applies) continue;
      for (const auto& iv :
           piece_union(ref.t->axes[static_cast<std::size_t>(j)], w.lo, w.hi))
        intervals.push_back(iv);
    }
    if (auto u = least_uncovered(std::move(intervals), w.lo, w.hi, n)) {
      std::vector<Int> coords(static_cast<std::size_t>(n), zlo * n);
      coords[static_cast<std::size_t>(j)] = *u;
      candidates.push_back(Point{n, std::move(coords)});
    }
  }
  if (candidates.empty()) return pass_report();
  auto least = std::min_element(candidates.begin(), candidates.end());
  return uncovered_report(*least, "uncovered window point");
}

// Exact cover check for a complete product-pattern family list: every family
// has one template, and the list realizes all combinations of the per-axis
// piece pools.
std::optional<VerifyReport> cover_product_complete(
    std::span<const BoxFamily> fs, const Window& w) {
  const Int n = w.level;
  if (fs.empty()) return std::nullopt;
  for (const auto& f : fs)
    if (f.templates.size() != 1) return std::nullopt;
  std::vector<std::vector<AxisPiece>> pools(static_cast<std::size_t>(n));
  std::vector<std::vector<std::size_t>> patterns;
  for (const auto& f : fs) {
    std::vector<std::size_t> pat;
    for (Int a = 0; a < n; ++a) {
      const auto& p = f.templates[0].axes[static_cast<std::size_t>(a)];
      auto& pool = pools[static_cast<std::size_t>(a)];
      std::size_t id = pool.size();
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (canonical_piece(pool[i]) == canonical_piece(p)) id = i;
      if (id == pool.size()) pool.push_back(p);
      pat.push_back(id);
    }
    patterns.push_back(std::move(pat));
  }
  std::uint64_t expect = 1;
  for (const auto& pool : pools) expect *= pool.size();
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  if (patterns.size() != expect || expect != fs.size()) return std::nullopt;
  // covered iff each axis pool jointly covers every integer in the window
  const Int zlo = ceil_div(w.lo, n), zhi = floor_div(w.hi, n);
  if (n >= 2 && zlo > zhi) return pass_report();
  std::vector<Point> candidates;
  for (Int a = 0; a < n; ++a) {
    std::vector<std::array<Int, 2>> intervals;
    for (const auto& p : pools[static_cast<std::size_t>(a)])
      for (const auto& iv : piece_union(p, w.lo, w.hi)) intervals.push_back(iv);
    if (auto u = least_uncovered(std::move(intervals), w.lo, w.hi, 0)) {
      std::vector<Int> coords(static_cast<std::size_t>(n),
                              n >= 2 ? zlo * n : w.lo);
      coords[static_cast<std::size_t>(a)] = *u;
      if (!space::is_member(coords, n)) continue;  // cannot happen; be safe
      candidates.push_back(Point{n, std::move(coords)});
    }
  }
  if (candidates.empty()) return pass_report();
  auto least = std::min_element(candidates.begin(), candidates.end());
  return uncovered_report(*least, "axis pool misses a window value");
}

}  // namespace

VerifyReport verify_cover(std::span<const BoxFamily> fs, const Window& w,
                          Exec exec) {
  space::validate_window(w);
  for (const auto& f : fs) {
    validate_family(f);
    if (f.level != w.level)
      fail(ErrorCode::Parameter, "family level does not match window level");
  }
  if (w.level == 1)
    if (auto r = cover_one_dimensional(fs, w)) return *r;
  if (w.level >= 2)
    if (auto r = cover_by_branches(fs, w)) return *r;
  if (auto r = cover_product_complete(fs, w)) return *r;
  return pointwise_cover(fs, w, exec);
}

}  // namespace coarsedim::families
