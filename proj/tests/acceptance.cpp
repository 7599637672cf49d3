// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. The CLI determinism criterion needs --cli <path-to-binary>.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coarsedim/cover_builder.hpp"
#include "coarsedim/families.hpp"
#include "coarsedim/json_io.hpp"
#include "coarsedim/obstruction.hpp"
#include "coarsedim/ordinal.hpp"
#include "coarsedim/space.hpp"
#include "coarsedim/svg.hpp"

using namespace coarsedim;
using families::BoxFamily;
using families::BoxTemplate;
using families::interval_piece;
using space::Int;
using space::Point;
using space::Window;

namespace {

std::string g_cli_path;

struct Criterion {
  const char* id;
  const char* title;
  bool (*run)(std::string& detail);
};

bool expect(bool cond, std::string& detail, const std::string& msg) {
  if (!cond && detail.empty()) detail = msg;
  return cond;
}

// --- C1 -------------------------------------------------------------------

bool c1_grid_construction(std::string& detail) {
  bool ok = true;
  int checks = 0;
  for (Int k = 1; k <= 3; ++k)
    for (Int n = 6 * k; n <= 6 * k + 12; ++n) {
      auto gf = cover::build_grid_families(n, k);
      Window w{n, 0, 4 * n};
      ok &= expect(families::verify_disjoint(gf.u0, k, w).verdict, detail,
                   "U0 not k-disjoint at n=" + std::to_string(n));
      ok &= expect(families::verify_disjoint(gf.u1, k, w).verdict, detail,
                   "U1 not k-disjoint at n=" + std::to_string(n));
      ok &= expect(families::verify_bounded(gf.u0, 3 * k, w).verdict, detail,
                   "U0 not 3k-bounded at n=" + std::to_string(n));
      ok &= expect(families::verify_bounded(gf.u1, 3 * k, w).verdict, detail,
                   "U1 not 3k-bounded at n=" + std::to_string(n));
      std::vector<BoxFamily> both{gf.u0, gf.u1};
      ok &= expect(families::verify_cover(both, w).verdict, detail,
                   "U0+U1 do not cover at n=" + std::to_string(n));
      ++checks;
    }
  if (ok) detail = std::to_string(checks) + " scales, all exact checks pass";
  return ok;
}

// --- C2 -------------------------------------------------------------------

bool c2_worked_example(std::string& detail) {
  auto lf = cover::build_line_families(6, 1);
  auto expect_fam = [&](const BoxFamily& f,
                        std::vector<std::array<Int, 3>> pieces) {
    if (f.templates.size() != pieces.size()) return false;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const auto& p = f.templates[i].axes.at(0);
      if (p.lo != pieces[i][0] || p.hi != pieces[i][1] ||
          p.stride != pieces[i][2])
        return false;
    }
    return true;
  };
  bool ok = true;
  ok &= expect(expect_fam(lf.v0, {{-1, 1, 6}}), detail, "V0 mismatch");
  ok &= expect(expect_fam(lf.v1, {{2, 3, 6}}), detail, "V1 mismatch");
  ok &= expect(expect_fam(lf.v2, {{1, 2, 6}, {3, 6, 6}}), detail,
               "V2 mismatch");
  Window w{1, 0, 30};
  auto v01 = families::merge_families(lf.v0, lf.v1, "V0+V1");
  ok &= expect(families::pointwise_disjoint(v01, 1, w).verdict, detail,
               "V0+V1 pointwise disjointness");
  ok &= expect(families::pointwise_disjoint(lf.v2, 1, w).verdict, detail,
               "V2 pointwise disjointness");
  for (const auto* f : {&lf.v0, &lf.v1, &lf.v2})
    ok &= expect(families::pointwise_bounded(*f, 3, w).verdict, detail,
                 "3-bound fails");
  std::vector<BoxFamily> all{lf.v0, lf.v1, lf.v2};
  ok &= expect(families::pointwise_cover(all, w).verdict, detail,
               "cover fails on [0,30]");
  if (ok) detail = "templates match the hand derivation and verify pointwise";
  return ok;
}

// --- C3 -------------------------------------------------------------------

bool c3_exhaustive_spanning(std::string& detail) {
  auto square = obstruction::span_census(2, 3, 2);
  if (square.failures != 0 || square.checked != 19683) {
    detail = "3x3 census: " + std::to_string(square.failures) + " failures";
    return false;
  }
  auto cube = obstruction::span_census(3, 2, 3);
  if (cube.failures != 0 || cube.checked != 5764801) {
    detail = "2x2x2 census: " + std::to_string(cube.failures) + " failures";
    return false;
  }
  detail = "19683 + 5764801 labelings, zero missing witnesses";
  return true;
}

// --- C4 -------------------------------------------------------------------

BoxFamily merged_bricks(Int r, const std::string& label) {
  auto bricks = cover::build_brick_cover(2, r);
  BoxFamily v0 = bricks[0];
  for (std::size_t i = 1; i < bricks.size(); ++i)
    v0 = families::merge_families(v0, bricks[i], label);
  return v0;
}

BoxFamily patch_tiling(Int side, Int max_len, std::mt19937_64& rng) {
  std::uniform_int_distribution<Int> len_d(2, max_len);
  auto cuts = [&]() {
    std::vector<Int> c{0};
    while (c.back() < side) c.push_back(std::min<Int>(side, c.back() + len_d(rng)));
    return c;
  };
  auto xs = cuts(), ys = cuts();
  BoxFamily f{2, "patches", {}};
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    for (std::size_t j = 0; j + 1 < ys.size(); ++j)
      f.templates.push_back(BoxTemplate{{interval_piece(xs[i], xs[i + 1]),
                                         interval_piece(ys[j], ys[j + 1])}});
  families::validate_family(f);
  return f;
}

bool beta_reverifies(const obstruction::BetaWitness& bw, Int side, Int bound,
                     const std::vector<BoxFamily>& fams, std::string& why) {
  const auto& path = bw.path;
  if (path.empty()) {
    why = "empty path";
    return false;
  }
  if (path.front().coords[0] != 0 || path.back().coords[0] != side) {
    why = "path does not join the opposite facets";
    return false;
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (families::chebyshev(path[i].coords, path[i + 1].coords) != 1) {
      why = "path is not a unit-step chain";
      return false;
    }
  for (const auto& p : path) {
    if (!space::is_member(p.coords, 2)) {
      why = "path leaves the level-2 space";
      return false;
    }
    if (p.coords[0] < 0 || p.coords[0] > side || p.coords[1] < 0 ||
        p.coords[1] > side) {
      why = "path leaves the cube";
      return false;
    }
    if (!families::family_covers(fams[0], p.coords)) {
      why = "path leaves the base family";
      return false;
    }
    for (std::size_t i = 1; i < fams.size(); ++i)
      if (families::family_covers(fams[i], p.coords)) {
        why = "path touches a separated family";
        return false;
      }
  }
  if (families::point_set_diameter(path) != bw.diameter ||
      bw.diameter <= bound) {
    why = "diameter claim does not re-verify";
    return false;
  }
  return true;
}

bool c4_obstruction_soundness(std::string& detail) {
  std::mt19937_64 rng(2024);
  int runs = 0, violations = 0;
  for (Int side : {24, 36, 48, 60, 72, 84, 96, 108, 120}) {
    for (Int k : {1, 2}) {
      const Int bound = std::max<Int>(3 * k, side / 4);  // < side/2
      const Int n = 6 * k;
      std::vector<std::vector<BoxFamily>> candidates;
      // brick-based candidates
      BoxFamily bricks = merged_bricks(k, "V0-bricks");
      candidates.push_back({bricks});
      BoxFamily one_box{2, "V1-box",
                        {BoxTemplate{{interval_piece(0, bound),
                                      interval_piece(0, bound)}}}};
      candidates.push_back({bricks, one_box});
      const Int spread = 4 * bound + n + 8;
      BoxFamily sparse{2, "V1-sparse",
                       {BoxTemplate{{interval_piece(0, bound, spread),
                                     interval_piece(0, bound, spread)}}}};
      candidates.push_back({bricks, sparse});
      // jittered patch tilings
      for (int variant = 0; variant < 3; ++variant) {
        BoxFamily patches = patch_tiling(side, bound, rng);
        if (variant == 0)
          candidates.push_back({patches});
        else if (variant == 1)
          candidates.push_back({patches, one_box});
        else
          candidates.push_back({patches, sparse});
      }
      for (auto& cand : candidates) {
        obstruction::ObstructionInput in;
        in.m = 1;
        in.k = k;
        in.n = n;
        in.bound = bound;
        in.side = side;
        in.candidate = cand;
        auto rep = obstruction::run_obstruction(in);
        ++runs;
        if (rep.verdict ==
            obstruction::ObstructionReport::Verdict::InvalidInput) {
          detail = "false invalid_input on a genuine cover (side=" +
                   std::to_string(side) + ", k=" + std::to_string(k) + ")";
          return false;
        }
        if (rep.verdict ==
            obstruction::ObstructionReport::Verdict::ViolationFound) {
          std::string why;
          if (!beta_reverifies(*rep.beta, side, bound, cand, why)) {
            detail = "witness fails re-verification: " + why;
            return false;
          }
          ++violations;
        }
      }
    }
  }
  if (runs < 100) {
    detail = "only " + std::to_string(runs) + " candidates generated";
    return false;
  }
  if (violations == 0) {
    detail = "no candidate produced a violation; suite is vacuous";
    return false;
  }
  detail = std::to_string(runs) + " candidates, " +
           std::to_string(violations) + " sound violation witnesses";
  return true;
}

// --- C5 -------------------------------------------------------------------

Int ord_oracle(const ordinal::SetSystem& m, Int universe_max) {
  if (m.members.empty()) return 0;
  Int best = 0;
  for (Int a = 1; a <= universe_max; ++a) {
    auto sub = ordinal::restricted(m, std::span<const Int>(&a, 1));
    best = std::max(best, ord_oracle(sub, universe_max));
  }
  return best + 1;
}

bool c5_ordinal_suite(std::string& detail) {
  bool ok = true;
  ok &= expect(ordinal::ord_of(ordinal::SetSystem{}).r == 0, detail,
               "rank of the empty system");
  ok &= expect(ordinal::ord_of(ordinal::make_system({{1}})).r == 1, detail,
               "rank of a singleton system");
  for (Int m = 1; m <= 4 && ok; ++m) {
    std::vector<std::vector<Int>> members;
    for (Int mask = 1; mask < (Int{1} << m); ++mask) {
      std::vector<Int> s;
      for (Int a = 0; a < m; ++a)
        if ((mask >> a) & 1) s.push_back(a + 1);
      members.push_back(std::move(s));
    }
    auto sys = ordinal::make_system(std::move(members));
    auto got = ordinal::ord_of(sys);
    ok &= expect(got.r == m && got.r == ord_oracle(sys, m), detail,
                 "powerset rank at m=" + std::to_string(m));
  }
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> count_d(0, 14);
  std::uniform_int_distribution<Int> mask_d(1, 31);
  for (int it = 0; it < 1000 && ok; ++it) {
    std::vector<std::vector<Int>> mem;
    int cnt = count_d(rng);
    for (int i = 0; i < cnt; ++i) {
      std::vector<Int> s;
      Int mask = mask_d(rng);
      for (Int a = 0; a < 5; ++a)
        if ((mask >> a) & 1) s.push_back(a + 1);
      mem.push_back(std::move(s));
    }
    auto small = ordinal::make_system(mem);
    auto bigger = small.members;
    std::vector<Int> extra;
    Int mask = mask_d(rng);
    for (Int a = 0; a < 5; ++a)
      if ((mask >> a) & 1) extra.push_back(a + 1);
    bigger.push_back(std::move(extra));
    auto big = ordinal::make_system(std::move(bigger));
    ok &= expect(ordinal::ord_of(small) <= ordinal::ord_of(big), detail,
                 "monotonicity violated at iteration " + std::to_string(it));
  }
  if (ok) detail = "exact ranks and 1000 monotonicity draws, zero violations";
  return ok;
}

// --- C6 -------------------------------------------------------------------

Point random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<Int> level_d(1, 6);
  Int level = level_d(rng);
  std::uniform_int_distribution<Int> coord_d(-100, 100);
  std::vector<Int> coords(static_cast<std::size_t>(level));
  for (auto& c : coords) c = (coord_d(rng) / level) * level;
  std::uniform_int_distribution<Int> axis_d(0, level - 1);
  coords[static_cast<std::size_t>(axis_d(rng))] = coord_d(rng);
  return Point{level, std::move(coords)};
}

bool c6_metric_suite(std::string& detail) {
  std::mt19937_64 rng(99);
  const int samples = 100000;
  long violations = 0;
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::mt19937_64 local;
    long my_violations = 0;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (int it = 0; it < samples; ++it) {
      local.seed(static_cast<std::uint64_t>(it) * 0x9e3779b97f4a7c15ull + 99);
      Point a = random_point(local), b = random_point(local),
            c = random_point(local);
      Int dab = space::distance(a, b);
      if (dab != space::distance(b, a)) ++my_violations;
      if ((dab == 0) != (a == b)) ++my_violations;
      if (space::distance(a, c) > dab + space::distance(b, c)) ++my_violations;
    }
#ifdef _OPENMP
#pragma omp atomic
#endif
    violations += my_violations;
  }
  (void)rng;
  if (violations != 0) {
    detail = std::to_string(violations) + " metric violations";
    return false;
  }
  for (Int l = 1; l <= 6; ++l)
    for (Int k = l + 1; k <= 6; ++k) {
      auto pl = space::window_points(Window{l, 0, k});
      auto pk = space::window_points(Window{k, 0, k});
      Int best = -1;
      for (const auto& a : pl)
        for (const auto& b : pk) {
          Int d = space::distance(a, b);
          if (best < 0 || d < best) best = d;
        }
      if (best != space::level_offset(l, k)) {
        detail = "cross-level floor off at l=" + std::to_string(l) +
                 ", k=" + std::to_string(k);
        return false;
      }
    }
  detail = "100000 triples and all 15 cross-level floors exact";
  return true;
}

// --- C7 -------------------------------------------------------------------

bool c7_certificate(std::string& detail) {
  for (Int r : {1, 2, 4}) {
    auto cert = cover::build_coasdim_certificate(1, 96, 8, r);
    auto check = cover::verify_certificate(cert);
    if (!check.ok) {
      detail = "certificate fails at r=" + std::to_string(r) + " (" +
               check.failed_stage + ")";
      return false;
    }
  }
  detail = "k=1, n_max=8, W=96 verifies end-to-end for r in {1,2,4}";
  return true;
}

// --- C8 -------------------------------------------------------------------

std::string run_cli(const std::string& args, const std::string& out_file) {
  std::string cmd = g_cli_path + " " + args + " --out " + out_file;
  int rc = std::system(cmd.c_str());
  if (rc != 0) return "";
  std::ifstream in(out_file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool c8_cli_determinism(std::string& detail) {
  if (g_cli_path.empty()) {
    detail = "no --cli path given";
    return false;
  }
  const char* tmpdir = std::getenv("TMPDIR");
  std::string base = (tmpdir ? tmpdir : "/tmp");
  std::vector<std::string> invocations = {
      "gen-cover --kind grid --n 6 --k 1",
      "gen-cover --kind brick --dim 2 --r 1",
      "cert-coasdim --k 1 --window-side 96 --nmax 8 --r 1",
      "obstruct --random --side 36 --k 1 --seed 7",
      "a-set --sigma 2 --level 1 --window 0:10 --bound 1",
  };
  for (std::size_t i = 0; i < invocations.size(); ++i) {
    auto a = run_cli(invocations[i], base + "/cd_det_a.json");
    auto b = run_cli(invocations[i], base + "/cd_det_b.json");
    if (a.empty() || a != b) {
      detail = "non-identical output for: " + invocations[i];
      return false;
    }
  }
  // svg: render the brick families
  auto bricks = run_cli("gen-cover --kind brick --dim 2 --r 1",
                        base + "/cd_bricks.json");
  if (bricks.empty()) {
    detail = "brick generation failed";
    return false;
  }
  std::string svg_cmd = "emit-svg --in " + base + "/cd_bricks.json --window 0:24";
  auto s1 = run_cli(svg_cmd, base + "/cd_det_a.svg");
  auto s2 = run_cli(svg_cmd, base + "/cd_det_b.svg");
  if (s1.empty() || s1 != s2) {
    detail = "svg output differs between runs";
    return false;
  }
  detail = "json and svg outputs byte-identical across repeated runs";
  return true;
}

const Criterion kCriteria[] = {
    {"C1", "grid family construction suite", c1_grid_construction},
    {"C2", "worked line-family example lock", c2_worked_example},
    {"C3", "exhaustive spanning censuses", c3_exhaustive_spanning},
    {"C4", "obstruction pipeline soundness", c4_obstruction_soundness},
    {"C5", "ordinal rank suite", c5_ordinal_suite},
    {"C6", "metric axiom and cross-level suite", c6_metric_suite},
    {"C7", "two-family certificate", c7_certificate},
    {"C8", "CLI determinism", c8_cli_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") g_cli_path = argv[i + 1];
  int failed = 0;
  for (const auto& c : kCriteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::printf("[%s] %s %s: %s (%lld ms)\n", ok ? "PASS" : "FAIL", c.id,
                c.title, detail.c_str(), static_cast<long long>(ms));
    if (!ok) ++failed;
  }
  if (failed) {
    std::printf("acceptance: %d criterion(s) failed\n", failed);
    return 1;
  }
  std::printf("acceptance: all %zu criteria passed\n",
              sizeof(kCriteria) / sizeof(kCriteria[0]));
  return 0;
}
