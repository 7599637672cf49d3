#include "coarsedim/ordinal.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "coarsedim/families.hpp"

namespace coarsedim::ordinal {

std::string to_string(const Ordinal& o) {
  if (o.inf) return "inf";
  if (o.q == 0) return std::to_string(o.r);
  std::string s = "w*" + std::to_string(o.q);
  if (o.r != 0) s += "+" + std::to_string(o.r);
  return s;
}

SetSystem make_system(std::vector<std::vector<Int>> members) {
  for (auto& m : members) {
    if (m.empty())
      fail(ErrorCode::Parameter, "set system members must be nonempty");
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    if (m.front() < 1)
      fail(ErrorCode::Parameter, "set system elements must be >= 1");
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return SetSystem{std::move(members)};
}

SetSystem restricted(const SetSystem& m, std::span<const Int> sigma) {
  std::vector<Int> sig(sigma.begin(), sigma.end());
  std::sort(sig.begin(), sig.end());
  sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
  std::vector<std::vector<Int>> out;
  for (const auto& u : m.members) {
    if (!std::includes(u.begin(), u.end(), sig.begin(), sig.end())) continue;
    std::vector<Int> tau;
    std::set_difference(u.begin(), u.end(), sig.begin(), sig.end(),
                        std::back_inserter(tau));
    if (!tau.empty()) out.push_back(std::move(tau));
  }
  return make_system(std::move(out));
}

Ordinal ord_of(const SetSystem& m) {
  if (m.members.empty()) return Ordinal{false, 0, 0};
  std::set<Int> universe;
  for (const auto& u : m.members) universe.insert(u.begin(), u.end());
  Int best = 0;
  for (Int a : universe) {
    Int sub = ord_of(restricted(m, std::span<const Int>(&a, 1))).r;
    best = std::max(best, sub);
  }
  return Ordinal{false, 0, best + 1};
}

namespace {

struct Block {
  std::vector<std::size_t> point_ids;
  std::vector<Int> lo, hi;  // per-axis bounds, for O(1) diameter updates
};

struct SearchState {
  const std::vector<Point>* points = nullptr;
  std::vector<Int> sigma;
  Int bound = 1;
  std::uint64_t budget = 0;
  std::uint64_t nodes = 0;
  bool backtracking = true;
  std::vector<std::vector<Block>> fams;  // one block list per sigma value
  bool out_of_budget = false;
};

Int point_to_block_dist(const Point& p, const Block& b,
                        const std::vector<Point>& pts) {
  Int best = std::numeric_limits<Int>::max();
  for (std::size_t id : b.point_ids)
    best = std::min(best,
                    families::chebyshev(p.coords, pts[id].coords));
  return best;
}

bool can_extend(const SearchState& st, std::size_t fi, std::size_t bi,
                const Point& p) {
  const auto& blocks = st.fams[fi];
  const Block& b = blocks[bi];
  for (std::size_t a = 0; a < p.coords.size(); ++a) {
    Int lo = std::min(b.lo[a], p.coords[a]);
    Int hi = std::max(b.hi[a], p.coords[a]);
    if (hi - lo > st.bound) return false;
  }
  for (std::size_t other = 0; other < blocks.size(); ++other)
    if (other != bi &&
        point_to_block_dist(p, blocks[other], *st.points) < st.sigma[fi])
      return false;
  return true;
}

bool can_open(const SearchState& st, std::size_t fi, const Point& p) {
  for (const auto& b : st.fams[fi])
    if (point_to_block_dist(p, b, *st.points) < st.sigma[fi]) return false;
  return true;
}

bool place(SearchState& st, std::size_t next) {
  if (st.out_of_budget) return false;
  if (++st.nodes > st.budget) {
    st.out_of_budget = true;
    return false;
  }
  if (next == st.points->size()) return true;
  const Point& p = (*st.points)[next];
  for (std::size_t fi = 0; fi < st.fams.size(); ++fi) {
    auto& blocks = st.fams[fi];
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      if (!can_extend(st, fi, bi, p)) continue;
      Block saved_bounds{{}, blocks[bi].lo, blocks[bi].hi};
      blocks[bi].point_ids.push_back(next);
      for (std::size_t a = 0; a < p.coords.size(); ++a) {
        blocks[bi].lo[a] = std::min(blocks[bi].lo[a], p.coords[a]);
        blocks[bi].hi[a] = std::max(blocks[bi].hi[a], p.coords[a]);
      }
      if (place(st, next + 1)) return true;
      blocks[bi].point_ids.pop_back();
      blocks[bi].lo = saved_bounds.lo;
      blocks[bi].hi = saved_bounds.hi;
      if (!st.backtracking || st.out_of_budget) return false;
    }
    if (can_open(st, fi, p)) {
      blocks.push_back(Block{{next},
                             p.coords,
                             p.coords});
      if (place(st, next + 1)) return true;
      blocks.pop_back();
      if (!st.backtracking || st.out_of_budget) return false;
    }
  }
  return false;
}

}  // namespace

ASetResult a_set_member(const ASetQuery& q) {
  if (q.bound < 1) fail(ErrorCode::Parameter, "bound must be positive");
  std::vector<Int> sigma = q.sigma;
  std::sort(sigma.begin(), sigma.end());
  sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
  if (sigma.empty()) fail(ErrorCode::Parameter, "sigma must be nonempty");
  if (sigma.front() < 1)
    fail(ErrorCode::Parameter, "sigma elements must be >= 1");
  auto points = space::window_points(q.window);

  auto run = [&](bool backtracking) {
    SearchState st;
    st.points = &points;
    st.sigma = sigma;
    st.bound = q.bound;
    st.budget = q.node_budget;
    st.backtracking = backtracking;
    st.fams.resize(sigma.size());
    bool found = place(st, 0);
    return std::tuple<bool, bool, SearchState>(found, st.out_of_budget,
                                               std::move(st));
  };

  auto to_result = [&](const SearchState& st, bool member) {
    ASetResult res;
    res.member = member;
    res.nodes = st.nodes;
    if (!member) {
      for (std::size_t fi = 0; fi < st.fams.size(); ++fi) {
        BlockFamily bf;
        bf.disjointness = sigma[fi];
        for (const auto& b : st.fams[fi]) {
          std::vector<Point> pts;
          for (std::size_t id : b.point_ids) pts.push_back(points[id]);
          bf.blocks.push_back(std::move(pts));
        }
        res.cover.push_back(std::move(bf));
      }
    }
    return res;
  };

  // greedy first descent works at any window size
  auto [greedy_found, greedy_oob, greedy_state] = run(false);
  if (greedy_found) return to_result(greedy_state, false);
  if (static_cast<Int>(points.size()) > q.search_cap)
    fail(ErrorCode::Capacity,
         "window holds " + std::to_string(points.size()) +
             " points; exhaustive search cap is " +
             std::to_string(q.search_cap) + " and the greedy pass found no cover");
  auto [found, oob, state] = run(true);
  if (oob && !found)
    fail(ErrorCode::Capacity, "exhaustive search exceeded its node budget");
  return to_result(state, !found);
}

}  // namespace coarsedim::ordinal
