#include "coarsedim/cover_builder.hpp"

#include <algorithm>

namespace coarsedim::cover {

using families::interval_piece;
using families::singleton_piece;

namespace {

std::string scale_tag(Int n, Int k) {
  return "(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")";
}

families::BoxTemplate line_template(Int lo, Int hi, Int stride) {
  return families::BoxTemplate{{interval_piece(lo, hi, stride)}};
}

}  // namespace

LineFamilies build_line_families(Int n, Int k) {
  if (k < 1) fail(ErrorCode::Parameter, "k must be positive");
  if (n < 6 * k)
    fail(ErrorCode::Parameter, "need n >= 6k (got n=" + std::to_string(n) +
                                   ", k=" + std::to_string(k) + ")");
  const Int q = (n - 2 * k) / k;
  LineFamilies lf;
  lf.n = n;
  lf.k = k;
  lf.even_case = q % 2 == 0;
  lf.m = lf.even_case ? q / 2 : (q - 1) / 2;
  const Int m = lf.m;

  lf.v0 = BoxFamily{1, "V0" + scale_tag(n, k), {line_template(-k, k, n)}};
  lf.v1 = BoxFamily{1, "V1" + scale_tag(n, k), {}};
  lf.v2 = BoxFamily{1, "V2" + scale_tag(n, k), {}};
  const Int j_hi = lf.even_case ? m - 1 : m;
  for (Int j = 1; j <= j_hi; ++j) {
    lf.v1.templates.push_back(line_template(2 * j * k, (2 * j + 1) * k, n));
    lf.v2.templates.push_back(line_template((2 * j - 1) * k, 2 * j * k, n));
  }
  if (lf.even_case)
    lf.v2.templates.push_back(
        line_template(2 * m * k - k, 2 * m * k + 2 * k, n));
  else
    lf.v2.templates.push_back(
        line_template(2 * m * k + k, 2 * m * k + 3 * k, n));
  families::validate_family(lf.v0);
  families::validate_family(lf.v1);
  families::validate_family(lf.v2);
  return lf;
}

GridFamilies build_grid_families(Int n, Int k) {
  LineFamilies lf = build_line_families(n, k);
  GridFamilies gf;
  gf.n = n;
  gf.k = k;
  gf.u0 = BoxFamily{n, "U0" + scale_tag(n, k), {}};
  gf.u1 = BoxFamily{n, "U1" + scale_tag(n, k), {}};

  // full lattice boxes: every axis carries the V0 interval
  families::BoxTemplate w0;
  for (Int a = 0; a < n; ++a) w0.axes.push_back(interval_piece(-k, k, n));
  gf.u0.templates.push_back(std::move(w0));

  // The line tail runs up to the next lattice value; sticks built from it in
  // different directions would meet near the lattice corners. In the grid the
  // tail stops at n-k (the lattice boxes own [n-k, n+k]), which keeps every
  // stick at distance >= k from the lattice and hence from perpendicular
  // sticks.
  BoxFamily grid_v2{1, "V2-grid" + scale_tag(n, k), {}};
  const Int j_hi = lf.even_case ? lf.m - 1 : lf.m;
  for (Int j = 1; j <= j_hi; ++j)
    grid_v2.templates.push_back(
        line_template((2 * j - 1) * k, 2 * j * k, n));
  const Int tail_lo = lf.even_case ? 2 * lf.m * k - k : 2 * lf.m * k + k;
  grid_v2.templates.push_back(line_template(tail_lo, n - k, n));

  auto sticks = [&](const BoxFamily& line, BoxFamily& out) {
    for (Int axis = 0; axis < n; ++axis)
      for (const auto& t : line.templates) {
        families::BoxTemplate stick;
        for (Int a = 0; a < n; ++a)
          stick.axes.push_back(a == axis ? t.axes[0] : singleton_piece(n));
        out.templates.push_back(std::move(stick));
      }
  };
  sticks(lf.v1, gf.u0);
  sticks(grid_v2, gf.u1);
  families::validate_family(gf.u0);
  families::validate_family(gf.u1);
  return gf;
}

std::vector<BoxFamily> build_brick_cover(Int dim, Int r) {
  if (dim < 1) fail(ErrorCode::Parameter, "dim must be positive");
  if (r < 1) fail(ErrorCode::Parameter, "r must be positive");
  if (dim > 24) fail(ErrorCode::Capacity, "brick cover dimension too large");
  const families::AxisPiece low = interval_piece(0, 3 * r, 6 * r);
  const families::AxisPiece high = interval_piece(3 * r, 6 * r, 6 * r);
  std::vector<BoxFamily> out;
  const Int patterns = Int{1} << dim;
  for (Int bits = 0; bits < patterns; ++bits) {
    families::BoxTemplate t;
    for (Int a = 0; a < dim; ++a)
      t.axes.push_back((bits >> a) & 1 ? high : low);
    BoxFamily f{dim,
                "brick(d=" + std::to_string(dim) + ",r=" + std::to_string(r) +
                    ",p=" + std::to_string(bits) + ")",
                {std::move(t)}};
    families::validate_family(f);
    out.push_back(std::move(f));
  }
  return out;
}

CoasdimCertificate build_coasdim_certificate(Int k, Int window_side, Int n_max,
                                             Int residual_r) {
  if (k < 1) fail(ErrorCode::Parameter, "k must be positive");
  if (n_max < 1) fail(ErrorCode::Parameter, "n_max must be positive");
  if (residual_r < 1) fail(ErrorCode::Parameter, "residual_r must be positive");
  if (window_side < 12 * n_max)
    fail(ErrorCode::Parameter, "window side must be at least 12 * n_max");
  CoasdimCertificate cert;
  cert.k = k;
  cert.window_side = window_side;
  cert.n_max = n_max;
  cert.residual_r = residual_r;
  for (Int n = 6 * k; n <= n_max; ++n)
    cert.levels.push_back(build_grid_families(n, k));
  const Int residual_top = std::min(6 * k - 1, n_max);
  for (Int n = 1; n <= residual_top; ++n)
    for (auto& f : build_brick_cover(n, residual_r))
      cert.residual.push_back(std::move(f));
  return cert;
}

VerifyReport verify_line_families(const LineFamilies& lf, const Window& w,
                                  Exec exec, Int r, Int bound) {
  const Int want_r = r > 0 ? r : lf.k;
  const Int want_bound = bound >= 0 ? bound : 3 * lf.k;
  auto v01 = families::merge_families(lf.v0, lf.v1, "V0+V1");
  if (auto rep = families::verify_disjoint(v01, want_r, w, exec); !rep.verdict)
    return rep;
  if (auto rep = families::verify_disjoint(lf.v2, want_r, w, exec);
      !rep.verdict)
    return rep;
  for (const auto* f : {&lf.v0, &lf.v1, &lf.v2})
    if (auto rep = families::verify_bounded(*f, want_bound, w, exec);
        !rep.verdict)
      return rep;
  std::vector<BoxFamily> all{lf.v0, lf.v1, lf.v2};
  return families::verify_cover(all, w, exec);
}

VerifyReport verify_grid_families(const GridFamilies& gf, const Window& w,
                                  Exec exec, Int r, Int bound) {
  const Int want_r = r > 0 ? r : gf.k;
  const Int want_bound = bound >= 0 ? bound : 3 * gf.k;
  if (auto rep = families::verify_disjoint(gf.u0, want_r, w, exec);
      !rep.verdict)
    return rep;
  if (auto rep = families::verify_disjoint(gf.u1, want_r, w, exec);
      !rep.verdict)
    return rep;
  if (auto rep = families::verify_bounded(gf.u0, want_bound, w, exec);
      !rep.verdict)
    return rep;
  if (auto rep = families::verify_bounded(gf.u1, want_bound, w, exec);
      !rep.verdict)
    return rep;
  std::vector<BoxFamily> both{gf.u0, gf.u1};
  return families::verify_cover(both, w, exec);
}

CertificateCheck verify_certificate(const CoasdimCertificate& cert,
                                    Exec exec) {
  for (const auto& gf : cert.levels) {
    Window w{gf.n, 0, cert.window_side};
    if (auto r = verify_grid_families(gf, w, exec); !r.verdict)
      return {false, "grid level " + std::to_string(gf.n), r};
  }
  // residual levels, grouped by dimension
  Int max_level = 0;
  for (const auto& f : cert.residual) max_level = std::max(max_level, f.level);
  for (Int n = 1; n <= max_level; ++n) {
    std::vector<BoxFamily> level_fams;
    for (const auto& f : cert.residual)
      if (f.level == n) level_fams.push_back(f);
    if (level_fams.empty()) continue;
    Window w{n, 0, cert.window_side};
    for (const auto& f : level_fams) {
      if (auto r = families::verify_disjoint(f, cert.residual_r, w, exec);
          !r.verdict)
        return {false, "residual disjoint level " + std::to_string(n), r};
      if (auto r =
              families::verify_bounded(f, 3 * cert.residual_r * n, w, exec);
          !r.verdict)
        return {false, "residual bound level " + std::to_string(n), r};
    }
    if (auto r = families::verify_cover(level_fams, w, exec); !r.verdict)
      return {false, "residual cover level " + std::to_string(n), r};
  }
  return {true, "", families::pass_report()};
}

}  // namespace coarsedim::cover
