#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "coarsedim/cover_builder.hpp"
#include "coarsedim/families.hpp"

using namespace coarsedim;
using families::BoxFamily;
using families::BoxTemplate;
using families::interval_piece;
using families::MemberRef;
using families::singleton_piece;
using families::VerifyReport;
using space::Exec;
using space::Int;
using space::Window;

namespace {

BoxFamily fixed_intervals(std::vector<std::array<Int, 2>> ivs,
                          std::string label = "fixed") {
  BoxFamily f{1, std::move(label), {}};
  for (auto [lo, hi] : ivs)
    f.templates.push_back(BoxTemplate{{interval_piece(lo, hi)}});
  return f;
}

bool same_verdicts(const VerifyReport& a, const VerifyReport& b) {
  return a.verdict == b.verdict;
}

}  // namespace

TEST_CASE("family validation") {
  BoxFamily dup{1, "dup", {BoxTemplate{{interval_piece(-1, 1, 6)}},
                           BoxTemplate{{interval_piece(5, 7, 6)}}}};
  // second template is the first one shifted by a whole stride
  CHECK_THROWS_AS(families::validate_family(dup), Error);
  BoxFamily bad{2, "bad", {BoxTemplate{{interval_piece(0, 1)}}}};
  CHECK_THROWS_AS(families::validate_family(bad), Error);
  BoxFamily sing{1, "s", {BoxTemplate{{singleton_piece(0)}}}};
  CHECK_THROWS_AS(families::validate_family(sing), Error);
}

TEST_CASE("member geometry matches brute force on point sets") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Int> level_d(1, 3), lo_d(-6, 6), len_d(0, 5);
  for (int it = 0; it < 120; ++it) {
    Int level = level_d(rng);
    BoxTemplate t;
    for (Int a = 0; a < level; ++a) {
      Int lo = lo_d(rng);
      t.axes.push_back(interval_piece(lo, lo + len_d(rng)));
    }
    BoxFamily f{level, "probe", {t}};
    MemberRef m{0, std::vector<Int>(static_cast<std::size_t>(level), 0)};
    auto pts = families::member_points(f, m);
    if (pts.empty()) {
      CHECK(families::member_diameter(f, m) == -1);
      continue;
    }
    CHECK(families::member_diameter(f, m) ==
          families::point_set_diameter(pts));
    // distance against a shifted copy of itself
    BoxTemplate t2 = t;
    for (auto& p : t2.axes) {
      p.lo += 4;
      p.hi += 4;
    }
    BoxFamily g{level, "probe2", {t, t2}};
    MemberRef m2{1, m.indices};
    auto pts2 = families::member_points(g, m2);
    if (pts2.empty()) continue;
    CHECK(families::member_distance(g, m, m2) ==
          families::point_set_distance(pts, pts2));
  }
}

TEST_CASE("disjointness verdicts") {
  auto lf = cover::build_line_families(6, 1);
  Window w{1, 0, 30};
  SUBCASE("line family intervals keep their gaps") {
    CHECK(families::verify_disjoint(lf.v0, 1, w).verdict);
    CHECK(families::verify_disjoint(lf.v0, 4, w).verdict);
    CHECK_FALSE(families::verify_disjoint(lf.v0, 5, w).verdict);
  }
  SUBCASE("touching intervals fail and carry an exact witness") {
    auto f = fixed_intervals({{0, 2}, {3, 5}});
    auto rep = families::verify_disjoint(f, 2, Window{1, 0, 5});
    REQUIRE_FALSE(rep.verdict);
    CHECK(rep.pair_distance == 1);
    auto pa = families::member_points(f, rep.member_a);
    auto pb = families::member_points(f, rep.member_b);
    CHECK(families::point_set_distance(pa, pb) == 1);
    CHECK(families::verify_disjoint(f, 1, Window{1, 0, 5}).verdict);
  }
  SUBCASE("single member families are vacuously disjoint") {
    auto f = fixed_intervals({{0, 7}});
    CHECK(families::verify_disjoint(f, 100, Window{1, 0, 7}).verdict);
  }
}

TEST_CASE("bounded verdicts use full member diameters") {
  auto lf = cover::build_line_families(8, 1);
  Window w{1, 0, 40};
  CHECK(families::verify_bounded(lf.v0, 3, w).verdict);
  CHECK(families::verify_bounded(lf.v2, 3, w).verdict);
  auto f = fixed_intervals({{0, 7}});
  auto rep = families::verify_bounded(f, 3, Window{1, 0, 7});
  REQUIRE_FALSE(rep.verdict);
  CHECK(rep.diameter == 7);
  CHECK(families::point_set_diameter(families::member_points(f, rep.member)) ==
        rep.diameter);
  BoxFamily empty{1, "empty", {}};
  CHECK(families::verify_bounded(empty, 0, w).verdict);
}

TEST_CASE("cover verdicts") {
  auto lf = cover::build_line_families(6, 1);
  Window w{1, 0, 30};
  std::vector<BoxFamily> all{lf.v0, lf.v1, lf.v2};
  CHECK(families::verify_cover(all, w).verdict);
  SUBCASE("one family alone misses the first residue") {
    std::vector<BoxFamily> only{lf.v0};
    auto rep = families::verify_cover(only, w);
    REQUIRE_FALSE(rep.verdict);
    CHECK(rep.uncovered.coords == std::vector<Int>{2});
    CHECK_FALSE(families::family_covers(lf.v0, rep.uncovered.coords));
  }
  SUBCASE("empty window is covered vacuously") {
    std::vector<BoxFamily> none{BoxFamily{3, "none", {}}};
    CHECK(families::verify_cover(none, Window{3, 1, 2}).verdict);
  }
}

TEST_CASE("symbolic and pointwise paths agree on builder families") {
  for (Int k = 1; k <= 2; ++k)
    for (Int n = 6 * k; n <= 6 * k + 3; ++n) {
      auto lf = cover::build_line_families(n, k);
      Window w{1, 0, 200};
      auto v01 = families::merge_families(lf.v0, lf.v1, "V0+V1");
      for (Int r = 1; r <= 20; ++r) {
        CHECK(same_verdicts(families::verify_disjoint(v01, r, w),
                            families::pointwise_disjoint(v01, r, w)));
        CHECK(same_verdicts(families::verify_disjoint(lf.v2, r, w),
                            families::pointwise_disjoint(lf.v2, r, w)));
      }
      for (Int bound : {Int{0}, k, 2 * k, 3 * k}) {
        CHECK(same_verdicts(families::verify_bounded(lf.v2, bound, w),
                            families::pointwise_bounded(lf.v2, bound, w)));
      }
      std::vector<BoxFamily> all{lf.v0, lf.v1, lf.v2};
      CHECK(same_verdicts(families::verify_cover(all, w),
                          families::pointwise_cover(all, w)));
    }
  SUBCASE("brick families across two dimensions") {
    for (Int d = 1; d <= 2; ++d)
      for (Int r = 1; r <= 2; ++r) {
        auto bricks = cover::build_brick_cover(d, r);
        Window w{d, 0, 30 * r};
        for (const auto& f : bricks)
          for (Int want : {r, 3 * r, 3 * r + 1})
            CHECK(same_verdicts(families::verify_disjoint(f, want, w),
                                families::pointwise_disjoint(f, want, w)));
        CHECK(same_verdicts(families::verify_cover(bricks, w),
                            families::pointwise_cover(bricks, w)));
      }
  }
}

TEST_CASE("symbolic and pointwise paths agree on a small grid") {
  auto gf = cover::build_grid_families(6, 1);
  Window w{6, 0, 6};
  auto sym_d = families::verify_disjoint(gf.u0, 1, w);
  auto ref_d = families::pointwise_disjoint(gf.u0, 1, w);
  CHECK(sym_d.verdict);
  CHECK(same_verdicts(sym_d, ref_d));
  auto sym_b = families::verify_bounded(gf.u0, 3, w);
  auto ref_b = families::pointwise_bounded(gf.u0, 3, w);
  CHECK(sym_b.verdict);
  CHECK(same_verdicts(sym_b, ref_b));
  std::vector<BoxFamily> both{gf.u0, gf.u1};
  auto sym_c = families::verify_cover(both, w);
  auto ref_c = families::pointwise_cover(both, w);
  CHECK(sym_c.verdict);
  CHECK(same_verdicts(sym_c, ref_c));
  SUBCASE("dropping one family breaks the cover in both paths") {
    std::vector<BoxFamily> only{gf.u0};
    auto sym = families::verify_cover(only, w);
    auto ref = families::pointwise_cover(only, w);
    REQUIRE_FALSE(sym.verdict);
    REQUIRE_FALSE(ref.verdict);
    CHECK(sym.uncovered == ref.uncovered);
    CHECK_FALSE(families::family_covers(gf.u0, sym.uncovered.coords));
  }
}

TEST_CASE("serial and parallel reference kernels match") {
  auto lf = cover::build_line_families(6, 1);
  auto v01 = families::merge_families(lf.v0, lf.v1, "V0+V1");
  Window w{1, 0, 60};
  auto s = families::pointwise_disjoint(v01, 1, w, Exec::Serial);
  auto p = families::pointwise_disjoint(v01, 1, w, Exec::Parallel);
  CHECK(s.verdict == p.verdict);
  std::vector<BoxFamily> only{lf.v0};
  auto cs = families::pointwise_cover(only, w, Exec::Serial);
  auto cp = families::pointwise_cover(only, w, Exec::Parallel);
  REQUIRE_FALSE(cs.verdict);
  CHECK(cs.uncovered == cp.uncovered);
}

TEST_CASE("dual routes agree on random families") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<Int> level_d(1, 2), nt_d(1, 3), lo_d(-6, 6),
      len_d(0, 4), stride_d(0, 8), r_d(1, 6);
  int compared = 0;
  for (int it = 0; it < 400; ++it) {
    Int level = level_d(rng);
    BoxFamily f{level, "rand", {}};
    Int nt = nt_d(rng);
    for (Int t = 0; t < nt; ++t) {
      BoxTemplate bt;
      for (Int a = 0; a < level; ++a) {
        Int lo = lo_d(rng);
        bt.axes.push_back(interval_piece(lo, lo + len_d(rng), stride_d(rng)));
      }
      f.templates.push_back(std::move(bt));
    }
    try {
      families::validate_family(f);
    } catch (const Error&) {
      continue;  // duplicate templates; draw again
    }
    Window w{level, -8, 8};
    Int r = r_d(rng);
    try {
      auto sym = families::verify_disjoint(f, r, w);
      auto ref = families::pointwise_disjoint(f, r, w);
      CHECK(sym.verdict == ref.verdict);
      if (!sym.verdict) {
        auto pa = families::member_points(f, sym.member_a);
        auto pb = families::member_points(f, sym.member_b);
        CHECK(families::point_set_distance(pa, pb) == sym.pair_distance);
        CHECK(sym.pair_distance < r);
      }
      Int bound = len_d(rng);
      auto symb = families::verify_bounded(f, bound, w);
      auto refb = families::pointwise_bounded(f, bound, w);
      CHECK(symb.verdict == refb.verdict);
      std::vector<BoxFamily> fs{f};
      auto symc = families::verify_cover(fs, w);
      auto refc = families::pointwise_cover(fs, w);
      CHECK(symc.verdict == refc.verdict);
      if (!symc.verdict)
        CHECK_FALSE(families::family_covers(f, symc.uncovered.coords));
      ++compared;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Capacity) throw;
    }
  }
  CHECK(compared > 300);
}

TEST_CASE("monotonicity of the verdicts") {
  auto lf = cover::build_line_families(9, 1);
  Window w{1, 0, 45};
  auto v01 = families::merge_families(lf.v0, lf.v1, "V0+V1");
  bool prev = true;
  for (Int r = 1; r <= 12; ++r) {
    bool now = families::verify_disjoint(v01, r, w).verdict;
    if (!prev) CHECK_FALSE(now);  // once false, stays false as r grows
    prev = now;
  }
  prev = false;
  for (Int bound = 0; bound <= 6; ++bound) {
    bool now = families::verify_bounded(lf.v2, bound, w).verdict;
    if (prev) CHECK(now);  // once true, stays true as the bound grows
    prev = now;
  }
}
