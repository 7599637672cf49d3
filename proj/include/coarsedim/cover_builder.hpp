#pragma once

#include <string>
#include <vector>

#include "coarsedim/families.hpp"

namespace coarsedim::cover {

using families::BoxFamily;
using families::VerifyReport;
using space::Exec;
using space::Int;
using space::Window;

/// The three line families at scale (n, k): V0 ∪ V1 and V2 are k-disjoint,
/// all are 3k-bounded, and together they cover the integer line. The case
/// split follows the parity of floor((n-2k)/k) = 2m or 2m+1.
struct LineFamilies {
  Int n = 6;
  Int k = 1;
  Int m = 2;
  bool even_case = true;
  BoxFamily v0, v1, v2;
};

LineFamilies build_line_families(Int n, Int k);

/// Level-n grid families built from the line families: U0 collects the full
/// lattice boxes plus the V1 sticks, U1 the V2 sticks. Each is k-disjoint and
/// 3k-bounded; together they cover the level-n space.
struct GridFamilies {
  Int n = 6;
  Int k = 1;
  BoxFamily u0, u1;
};

GridFamilies build_grid_families(Int n, Int k);

/// 2^dim product families of bricks with period 6r: each family is
/// r-disjoint (gaps of 3r), all members have diameter 3r, and the union
/// covers every window of the dim-cube.
std::vector<BoxFamily> build_brick_cover(Int dim, Int r);

/// Windowed two-family certificate: grid families for every level in
/// [6k, n_max], plus residual brick covers (at disjointness residual_r) for
/// the finitely many levels below 6k.
struct CoasdimCertificate {
  Int k = 1;
  Int window_side = 96;
  Int n_max = 8;
  Int residual_r = 1;
  std::vector<GridFamilies> levels;
  std::vector<BoxFamily> residual;  // brick families; BoxFamily::level keys them
  std::string ordinal = "w+1";
};

CoasdimCertificate build_coasdim_certificate(Int k, Int window_side, Int n_max,
                                             Int residual_r);

struct CertificateCheck {
  bool ok = true;
  std::string failed_stage;
  VerifyReport report;
};

/// Runs every family check the certificate claims, over its own windows.
CertificateCheck verify_certificate(const CoasdimCertificate& cert,
                                    Exec exec = Exec::Parallel);

/// Grouped invariant checks; first failing check wins. Negative r/bound fall
/// back to the construction scales (k and 3k).
VerifyReport verify_line_families(const LineFamilies& lf, const Window& w,
                                  Exec exec = Exec::Parallel, Int r = -1,
                                  Int bound = -1);
VerifyReport verify_grid_families(const GridFamilies& gf, const Window& w,
                                  Exec exec = Exec::Parallel, Int r = -1,
                                  Int bound = -1);

}  // namespace coarsedim::cover
