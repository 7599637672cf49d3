// Timing harness for the brute-force verification kernels: each kernel runs
// in its serial reference form and in the OpenMP form, results are checked
// for equality, and the speedup is reported.

#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <random>
#include <string>

#include "coarsedim/cover_builder.hpp"
#include "coarsedim/families.hpp"
#include "coarsedim/obstruction.hpp"
#include "coarsedim/space.hpp"

using namespace coarsedim;
using families::BoxFamily;
using space::Exec;
using space::Int;
using space::Point;
using space::Window;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

struct Row {
  std::string name;
  double serial_ms = 0, parallel_ms = 0;
  bool equal = false;
};

void print(const Row& r) {
  std::printf("%-36s %10.1f ms %10.1f ms   x%5.2f   %s\n", r.name.c_str(),
              r.serial_ms, r.parallel_ms,
              r.parallel_ms > 0 ? r.serial_ms / r.parallel_ms : 0.0,
              r.equal ? "results equal" : "MISMATCH");
}

template <class Fn>
Row time_pair(const std::string& name, Fn&& fn) {
  Row row;
  row.name = name;
  auto t0 = std::chrono::steady_clock::now();
  auto serial = fn(Exec::Serial);
  row.serial_ms = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  auto parallel = fn(Exec::Parallel);
  row.parallel_ms = ms_since(t0);
  row.equal = serial == parallel;
  return row;
}

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

}  // namespace

int main(int argc, char** argv) {
  // benchmarks intentionally run big scans; leave user overrides intact
  setenv("COARSEDIM_CAP", "400000000", /*overwrite=*/0);
  bool full = false;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--full") full = true;

  std::printf("%-36s %13s %13s %8s\n", "kernel", "serial", "parallel",
              "speedup");

  {
    auto gf = cover::build_grid_families(6, 1);
    Window w{6, 0, full ? 18 : 12};
    print(time_pair("pointwise disjoint (level 6 grid)", [&](Exec e) {
      auto r = families::pointwise_disjoint(gf.u0, 1, w, e);
      return std::pair<bool, Int>(r.verdict, r.pair_distance);
    }));
  }
  {
    auto gf = cover::build_grid_families(6, 1);
    Window w{2, 0, full ? 2400 : 1200};
    auto bricks = cover::build_brick_cover(2, 1);
    (void)gf;
    print(time_pair("pointwise cover (level 2 bricks)", [&](Exec e) {
      auto r = families::pointwise_cover(bricks, w, e);
      return r.verdict;
    }));
  }
  {
    const int samples = full ? 2'000'000 : 400'000;
    print(time_pair("metric triple suite", [&](Exec e) {
      long violations = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : violations) \
    if (e == Exec::Parallel)
#endif
      for (int it = 0; it < samples; ++it) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(it) * 0x9e3779b9ull);
        Point a = random_point(rng), b = random_point(rng),
              c = random_point(rng);
        Int dab = space::distance(a, b);
        if (dab != space::distance(b, a)) ++violations;
        if ((dab == 0) != (a == b)) ++violations;
        if (space::distance(a, c) > dab + space::distance(b, c)) ++violations;
      }
#ifndef _OPENMP
      (void)e;
#endif
      return violations;
    }));
  }
  {
    print(time_pair("spanning census 2x2x2, 3 sets", [&](Exec e) {
      auto r = obstruction::span_census(3, 2, 3, e);
      return std::pair<std::uint64_t, std::uint64_t>(r.checked, r.failures);
    }));
  }
  return 0;
}
