// coarsedim: batch CLI over the windowed cover/ordinal/obstruction toolkit.
// Subcommands read and write "schema":"v1" JSON artifacts; outputs are
// byte-deterministic for fixed inputs.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "coarsedim/cover_builder.hpp"
#include "coarsedim/json_io.hpp"
#include "coarsedim/obstruction.hpp"
#include "coarsedim/ordinal.hpp"
#include "coarsedim/svg.hpp"

namespace {

using coarsedim::Error;
using coarsedim::ErrorCode;
using coarsedim::io::Json;
using Int = coarsedim::space::Int;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parameter:
    case ErrorCode::DimensionMismatch: return 2;
    case ErrorCode::Capacity: return 3;
    case ErrorCode::Schema: return 4;
    case ErrorCode::Io: return 5;
    case ErrorCode::Unsupported: return 6;
    case ErrorCode::InvalidInput: return 7;
    case ErrorCode::Internal: return 8;
  }
  return 9;
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) coarsedim::fail(ErrorCode::Io, "cannot open input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) coarsedim::fail(ErrorCode::Io, "cannot open output file " + path);
  out << text;
}

coarsedim::space::Window parse_window(const std::string& spec, Int level) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    coarsedim::fail(ErrorCode::Parameter,
                    "window must be written lo:hi, got '" + spec + "'");
  try {
    Int lo = std::stoll(spec.substr(0, colon));
    Int hi = std::stoll(spec.substr(colon + 1));
    coarsedim::space::Window w{level, lo, hi};
    coarsedim::space::validate_window(w);
    return w;
  } catch (const std::invalid_argument&) {
    coarsedim::fail(ErrorCode::Parameter, "window bounds must be integers");
  } catch (const std::out_of_range&) {
    coarsedim::fail(ErrorCode::Parameter, "window bounds out of range");
  }
}

std::vector<coarsedim::families::BoxFamily> families_from_artifact(
    const Json& j) {
  namespace io = coarsedim::io;
  std::vector<coarsedim::families::BoxFamily> fams;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      fams.push_back(io::family_from_json(j[i], "$[" + std::to_string(i) + "]"));
    return fams;
  }
  const std::string kind = j.contains("kind") ? j["kind"].get<std::string>() : "";
  if (kind == "line_families") {
    auto lf = io::line_families_from_json(j);
    fams = {lf.v0, lf.v1, lf.v2};
  } else if (kind == "grid_families") {
    auto gf = io::grid_families_from_json(j);
    fams = {gf.u0, gf.u1};
  } else if (j.contains("families") && j["families"].is_array()) {
    for (std::size_t i = 0; i < j["families"].size(); ++i)
      fams.push_back(io::family_from_json(
          j["families"][i], "$.families[" + std::to_string(i) + "]"));
  } else {
    fams.push_back(io::family_from_json(j, "$"));
  }
  return fams;
}

int verdict_exit(bool positive, const std::string& expect,
                 const std::string& actual) {
  if (!expect.empty()) return actual == expect ? 0 : 1;
  return positive ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact windowed covers, ordinal ranks, and cube obstructions"};
  app.require_subcommand(1);
  Int max_level = 16;
  app.add_option("--max-level", max_level,
                 "largest level any subcommand may request (default 16)");

  // gen-cover
  auto* gen = app.add_subcommand("gen-cover", "build line/grid/brick families");
  Int gk = 1, gn = 6, gdim = 1, gr = 1;
  std::string gkind = "line", gout;
  gen->add_option("--k", gk, "disjointness scale k");
  gen->add_option("--n", gn, "period n (needs n >= 6k)");
  gen->add_option("--kind", gkind, "line | grid | brick")
      ->check(CLI::IsMember({"line", "grid", "brick"}));
  gen->add_option("--dim", gdim, "brick dimension");
  gen->add_option("--r", gr, "brick disjointness");
  gen->add_option("--out", gout, "output path (default stdout)");

  // verify-cover
  auto* ver = app.add_subcommand("verify-cover", "verify family invariants");
  std::string vin, vwindow = "0:30", vexpect, vout;
  Int vr = 1, vbound = -1;
  ver->add_option("--in", vin, "families JSON (or - for stdin)");
  ver->add_option("--r", vr, "required disjointness");
  ver->add_option("--bound", vbound, "required diameter bound");
  ver->add_option("--window", vwindow, "window lo:hi");
  ver->add_option("--expect", vexpect, "exit 0 only on this verdict");
  ver->add_option("--out", vout, "output path");

  // cert-coasdim
  auto* cert = app.add_subcommand("cert-coasdim",
                                  "build the two-family certificate");
  Int ck = 1, cw = 96, cnmax = 8, cr = 1;
  bool cverify = false;
  std::string cout_path;
  cert->add_option("--k", ck, "disjointness scale k");
  cert->add_option("--window-side", cw, "window side (>= 12 * nmax)");
  cert->add_option("--nmax", cnmax, "largest level");
  cert->add_option("--r", cr, "residual disjointness");
  cert->add_flag("--verify", cverify, "also run all checks");
  cert->add_option("--out", cout_path, "output path");

  // ord
  auto* ord = app.add_subcommand("ord", "rank of a finite set system");
  std::string oin, oout;
  ord->add_option("--in", oin, "set system JSON");
  ord->add_option("--out", oout, "output path");

  // a-set
  auto* aset = app.add_subcommand("a-set", "windowed membership search");
  std::string asigma = "1", awindow = "0:10", aout, aexpect;
  Int alevel = 1, abound = 1, acap = 64;
  aset->add_option("--sigma", asigma, "comma-separated disjointness scales");
  aset->add_option("--level", alevel, "window level");
  aset->add_option("--window", awindow, "window lo:hi");
  aset->add_option("--bound", abound, "block diameter bound B");
  aset->add_option("--cap", acap, "exhaustive search point cap");
  aset->add_option("--expect", aexpect, "exit 0 only on this verdict");
  aset->add_option("--out", aout, "output path");

  // obstruct
  auto* obs = app.add_subcommand("obstruct", "run the cube obstruction pipeline");
  std::string obin, obout, obexpect;
  bool obrandom = false;
  Int obside = 24, obk = 1;
  std::uint64_t obseed = 1;
  obs->add_option("--in", obin, "obstruction input JSON");
  obs->add_flag("--random", obrandom, "generate a seeded level-2 candidate");
  obs->add_option("--side", obside, "cube side for --random");
  obs->add_option("--k", obk, "disjointness scale for --random");
  obs->add_option("--seed", obseed, "seed for --random");
  obs->add_option("--expect", obexpect, "exit 0 only on this verdict");
  obs->add_option("--out", obout, "output path");

  // lebesgue
  auto* leb = app.add_subcommand("lebesgue", "spanning witness of a cell cover");
  std::string lin, lout;
  leb->add_option("--in", lin, "cell cover JSON");
  leb->add_option("--out", lout, "output path");

  // emit-svg
  auto* svg = app.add_subcommand("emit-svg", "render a level-2 window");
  std::string sin, swindow = "0:24", sout;
  svg->add_option("--in", sin, "families JSON (omit for grid only)");
  svg->add_option("--window", swindow, "window lo:hi");
  svg->add_option("--out", sout, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    namespace io = coarsedim::io;
    namespace cover = coarsedim::cover;
    namespace fam = coarsedim::families;

    auto check_level = [&](Int level, const char* what) {
      if (level > max_level)
        coarsedim::fail(ErrorCode::Parameter,
                        std::string(what) + " " + std::to_string(level) +
                            " exceeds --max-level " + std::to_string(max_level));
    };

    if (gen->parsed()) {
      if (gkind == "line")
        check_level(1, "level");
      else if (gkind == "grid")
        check_level(gn, "level");
      else
        check_level(gdim, "dimension");
      Json j;
      if (gkind == "line")
        j = io::to_json(cover::build_line_families(gn, gk));
      else if (gkind == "grid")
        j = io::to_json(cover::build_grid_families(gn, gk));
      else {
        Json arr = Json::array();
        for (const auto& f : cover::build_brick_cover(gdim, gr))
          arr.push_back(io::to_json(f));
        j = Json{{"schema", "v1"}, {"kind", "brick_cover"}, {"families", arr}};
      }
      write_output(gout, io::dump(j));
      return 0;
    }

    if (ver->parsed()) {
      Json j = io::parse(read_input(vin));
      const std::string kind =
          j.contains("kind") ? j["kind"].get<std::string>() : "";
      const Int opt_r = ver->count("--r") ? vr : -1;
      fam::VerifyReport report;
      if (kind == "line_families") {
        auto lf = io::line_families_from_json(j);
        auto w = parse_window(vwindow, 1);
        report = cover::verify_line_families(lf, w, coarsedim::space::Exec::Parallel,
                                             opt_r, vbound);
      } else if (kind == "grid_families") {
        auto gf = io::grid_families_from_json(j);
        auto w = parse_window(vwindow, gf.n);
        report = cover::verify_grid_families(gf, w, coarsedim::space::Exec::Parallel,
                                             opt_r, vbound);
      } else {
        auto fams = families_from_artifact(j);
        if (fams.empty())
          coarsedim::fail(ErrorCode::Parameter, "no families in input");
        auto w = parse_window(vwindow, fams[0].level);
        Int bound = vbound;
        report = fam::pass_report();
        for (const auto& f : fams) {
          report = fam::verify_disjoint(f, vr, w);
          if (!report.verdict) break;
          if (bound >= 0) {
            report = fam::verify_bounded(f, bound, w);
            if (!report.verdict) break;
          }
        }
        if (report.verdict) report = fam::verify_cover(fams, w);
      }
      write_output(vout, io::dump(io::to_json(report)));
      return verdict_exit(report.verdict, vexpect,
                          report.verdict ? "true" : "false");
    }

    if (cert->parsed()) {
      check_level(cnmax, "level");
      auto certificate = cover::build_coasdim_certificate(ck, cw, cnmax, cr);
      Json j = io::to_json(certificate);
      if (cverify) {
        auto check = cover::verify_certificate(certificate);
        j["verified"] = check.ok;
        if (!check.ok) j["failed_stage"] = check.failed_stage;
        write_output(cout_path, io::dump(j));
        return check.ok ? 0 : 1;
      }
      write_output(cout_path, io::dump(j));
      return 0;
    }

    if (ord->parsed()) {
      auto system = io::set_system_from_json(io::parse(read_input(oin)));
      write_output(oout, io::dump(io::to_json(coarsedim::ordinal::ord_of(system))));
      return 0;
    }

    if (aset->parsed()) {
      check_level(alevel, "level");
      coarsedim::ordinal::ASetQuery q;
      std::stringstream ss(asigma);
      std::string tok;
      while (std::getline(ss, tok, ','))
        if (!tok.empty()) q.sigma.push_back(std::stoll(tok));
      q.window = parse_window(awindow, alevel);
      q.bound = abound;
      q.search_cap = acap;
      auto res = coarsedim::ordinal::a_set_member(q);
      write_output(aout, io::dump(io::to_json(res)));
      return verdict_exit(res.member, aexpect, res.member ? "true" : "false");
    }

    if (obs->parsed()) {
      coarsedim::obstruction::ObstructionInput input;
      if (obrandom)
        input = coarsedim::obstruction::random_candidate(obside, obk, obseed);
      else
        input = io::obstruction_input_from_json(io::parse(read_input(obin)));
      check_level(input.m + 1, "level");
      auto report = coarsedim::obstruction::run_obstruction(input);
      write_output(obout, io::dump(io::to_json(report)));
      using V = coarsedim::obstruction::ObstructionReport::Verdict;
      std::string actual = report.verdict == V::ViolationFound
                               ? "violation_found"
                               : report.verdict == V::NoViolation
                                     ? "no_violation"
                                     : "invalid_input";
      return verdict_exit(report.verdict == V::ViolationFound, obexpect, actual);
    }

    if (leb->parsed()) {
      auto cc = io::cell_cover_from_json(io::parse(read_input(lin)));
      auto wit = coarsedim::obstruction::lebesgue_witness(cc);
      Json j = wit ? io::to_json(*wit)
                   : Json{{"schema", "v1"},
                          {"kind", "span_witness"},
                          {"found", false}};
      write_output(lout, io::dump(j));
      return wit ? 0 : 1;
    }

    if (svg->parsed()) {
      std::vector<fam::BoxFamily> fams;
      if (!sin.empty()) fams = families_from_artifact(io::parse(read_input(sin)));
      auto w = parse_window(swindow, 2);
      write_output(sout, coarsedim::svg::render_svg(fams, w));
      return 0;
    }
  } catch (const Error& e) {
    Json err{{"error",
              {{"code", coarsedim::to_string(e.code())}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    Json err{{"error", {{"code", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 8;
  }
  return 0;
}
