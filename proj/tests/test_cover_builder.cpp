#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coarsedim/cover_builder.hpp"

using namespace coarsedim;
using families::BoxFamily;
using families::interval_piece;
using space::Int;
using space::Window;

namespace {

bool has_template(const BoxFamily& f, Int lo, Int hi, Int stride) {
  for (const auto& t : f.templates) {
    if (t.axes.size() != 1) continue;
    const auto& p = t.axes[0];
    if (p.kind == families::AxisPiece::Kind::Interval && p.lo == lo &&
        p.hi == hi && p.stride == stride)
      return true;
  }
  return false;
}

}  // namespace

TEST_CASE("line families at the smallest even scale") {
  auto lf = cover::build_line_families(6, 1);
  CHECK(lf.m == 2);
  CHECK(lf.even_case);
  REQUIRE(lf.v0.templates.size() == 1);
  CHECK(has_template(lf.v0, -1, 1, 6));
  REQUIRE(lf.v1.templates.size() == 1);
  CHECK(has_template(lf.v1, 2, 3, 6));
  REQUIRE(lf.v2.templates.size() == 2);
  CHECK(has_template(lf.v2, 1, 2, 6));
  CHECK(has_template(lf.v2, 3, 6, 6));
  CHECK(cover::verify_line_families(lf, Window{1, 0, 30}).verdict);
}

TEST_CASE("parity split follows the floor") {
  auto odd = cover::build_line_families(9, 1);
  CHECK_FALSE(odd.even_case);
  CHECK(odd.m == 3);
  auto even = cover::build_line_families(12, 2);
  CHECK(even.even_case);
  CHECK(even.m == 2);
  CHECK_THROWS_AS((void)cover::build_line_families(5, 1), Error);
  CHECK_THROWS_AS((void)cover::build_line_families(11, 2), Error);
}

TEST_CASE("every scale picks exactly one case and still covers") {
  for (Int k = 1; k <= 2; ++k)
    for (Int n = 6 * k; n <= 6 * k + 7; ++n) {
      auto lf = cover::build_line_families(n, k);
      Int q = (n - 2 * k) / k;
      CHECK(lf.even_case == (q % 2 == 0));
      CHECK(cover::verify_line_families(lf, Window{1, 0, 3 * n}).verdict);
    }
}

TEST_CASE("grid families verify on their windows") {
  auto gf = cover::build_grid_families(6, 1);
  Window w{6, 0, 12};
  CHECK(cover::verify_grid_families(gf, w).verdict);

  SUBCASE("lattice points land in the box family") {
    // any point with all coordinates on the lattice is in a W0 member
    std::vector<Int> lattice_pt(6, 12);
    CHECK(families::family_covers(gf.u0, lattice_pt));
  }
  SUBCASE("the V1 stick along the first axis") {
    // members [6i+2, 6i+3] x {0}^5
    std::vector<Int> inside{2, 0, 0, 0, 0, 0};
    std::vector<Int> outside{4, 0, 0, 0, 0, 0};
    CHECK(families::family_covers(gf.u0, inside));
    CHECK_FALSE(families::family_covers(gf.u0, outside));
    CHECK(families::family_covers(gf.u1, outside));
  }
}

TEST_CASE("grid sticks keep their clearance near lattice corners") {
  // perpendicular tail sticks come within exactly k of each other
  for (Int k = 1; k <= 2; ++k) {
    auto gf = cover::build_grid_families(6 * k, k);
    Window w{6 * k, -6 * k, 6 * k};
    auto rep = families::verify_disjoint(gf.u1, k, w);
    CHECK(rep.verdict);
    CHECK_FALSE(families::verify_disjoint(gf.u1, k + 1, w).verdict);
  }
}

TEST_CASE("brick covers") {
  SUBCASE("one dimension") {
    auto fams = cover::build_brick_cover(1, 1);
    REQUIRE(fams.size() == 2);
    Window w{1, 0, 60};
    for (const auto& f : fams) {
      CHECK(families::verify_disjoint(f, 3, w).verdict);
      CHECK(families::verify_bounded(f, 3, w).verdict);
    }
    CHECK(families::verify_cover(fams, w).verdict);
    CHECK(families::pointwise_cover(fams, w).verdict);
  }
  SUBCASE("two dimensions, pointwise oracle") {
    auto fams = cover::build_brick_cover(2, 1);
    REQUIRE(fams.size() == 4);
    Window w{2, 0, 60};
    for (const auto& f : fams) CHECK(families::verify_disjoint(f, 1, w).verdict);
    CHECK(families::verify_cover(fams, w).verdict);
    CHECK(families::pointwise_cover(fams, w).verdict);
  }
  SUBCASE("degenerate single-point window") {
    auto fams = cover::build_brick_cover(1, 1);
    CHECK(families::verify_cover(fams, Window{1, 0, 0}).verdict);
  }
}

TEST_CASE("certificate assembles and verifies") {
  auto cert = cover::build_coasdim_certificate(1, 96, 8, 1);
  CHECK(cert.levels.size() == 3);  // levels 6, 7, 8
  // residual: 2^n families for each level n <= 5
  std::size_t expect = 2 + 4 + 8 + 16 + 32;
  CHECK(cert.residual.size() == expect);
  auto check = cover::verify_certificate(cert);
  CHECK(check.ok);
  CHECK(check.failed_stage.empty());
}

TEST_CASE("degenerate certificate has an empty grid part") {
  auto cert = cover::build_coasdim_certificate(2, 60, 5, 1);
  CHECK(cert.levels.empty());
  CHECK_FALSE(cert.residual.empty());
  CHECK(cover::verify_certificate(cert).ok);
}

TEST_CASE("cross-level members of the assembled families stay separated") {
  auto a = cover::build_grid_families(6, 1);
  auto b = cover::build_grid_families(7, 1);
  auto pa = space::window_points(Window{6, 0, 6});
  auto pb = space::window_points(Window{7, 0, 7});
  Int best = -1;
  for (const auto& p : pa) {
    if (!families::family_covers(a.u0, p.coords)) continue;
    for (const auto& q : pb) {
      if (!families::family_covers(b.u0, q.coords)) continue;
      Int d = space::distance(p, q);
      if (best < 0 || d < best) best = d;
    }
  }
  CHECK(best >= 6);  // min(i, j) with i = 6, j = 7
}
