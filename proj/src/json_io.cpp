#include "coarsedim/json_io.hpp"

namespace coarsedim::io {

namespace {

const Json& need(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object())
    fail(ErrorCode::Schema, path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end())
    fail(ErrorCode::Schema, path + ": missing field '" + key + "'");
  return *it;
}

space::Int need_int(const Json& j, const char* key, const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_number_integer())
    fail(ErrorCode::Schema, path + "." + key + ": expected an integer");
  return v.get<space::Int>();
}

std::string need_string(const Json& j, const char* key,
                        const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_string())
    fail(ErrorCode::Schema, path + "." + key + ": expected a string");
  return v.get<std::string>();
}

const Json& need_array(const Json& j, const char* key,
                       const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_array())
    fail(ErrorCode::Schema, path + "." + key + ": expected an array");
  return v;
}

std::vector<space::Int> int_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(ErrorCode::Schema, path + ": expected an array");
  std::vector<space::Int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer())
      fail(ErrorCode::Schema,
           path + "[" + std::to_string(i) + "]: expected an integer");
    out.push_back(j[i].get<space::Int>());
  }
  return out;
}

void check_kind(const Json& j, const char* kind) {
  if (j.contains("kind") && j["kind"] != kind)
    fail(ErrorCode::Schema, std::string("expected kind '") + kind + "', got '" +
                                j["kind"].get<std::string>() + "'");
}

Json artifact(const char* kind, Json body) {
  body["schema"] = "v1";
  body["kind"] = kind;
  return body;
}

}  // namespace

Json to_json(const space::Point& p) {
  return Json{{"level", p.level}, {"coords", p.coords}};
}

Json to_json(const space::Window& w) {
  return Json{{"level", w.level}, {"lo", w.lo}, {"hi", w.hi}};
}

Json to_json(const families::AxisPiece& p) {
  if (p.kind == families::AxisPiece::Kind::Singleton)
    return Json{{"kind", "singleton"}, {"stride", p.stride}};
  Json j{{"kind", "interval"}, {"lo", p.lo}, {"hi", p.hi}};
  if (p.stride != 0) j["stride"] = p.stride;
  return j;
}

Json to_json(const families::BoxFamily& f) {
  Json templates = Json::array();
  for (const auto& t : f.templates) {
    Json axes = Json::array();
    for (const auto& p : t.axes) axes.push_back(to_json(p));
    templates.push_back(std::move(axes));
  }
  return Json{
      {"level", f.level}, {"label", f.label}, {"templates", templates}};
}

Json to_json(const families::MemberRef& m) {
  return Json{{"template", m.template_index}, {"indices", m.indices}};
}

Json to_json(const families::VerifyReport& r) {
  Json j{{"verdict", r.verdict}};
  switch (r.witness) {
    case families::VerifyReport::Witness::None:
      break;
    case families::VerifyReport::Witness::Pair:
      j["witness"] = Json{{"type", "pair"},
                          {"a", to_json(r.member_a)},
                          {"b", to_json(r.member_b)},
                          {"distance", r.pair_distance}};
      break;
    case families::VerifyReport::Witness::Diameter:
      j["witness"] = Json{{"type", "diameter"},
                          {"member", to_json(r.member)},
                          {"diameter", r.diameter}};
      break;
    case families::VerifyReport::Witness::Uncovered:
      j["witness"] = Json{{"type", "uncovered"},
                          {"point", to_json(r.uncovered)}};
      break;
  }
  if (!r.detail.empty()) j["detail"] = r.detail;
  return artifact("verify_report", std::move(j));
}

Json to_json(const cover::LineFamilies& lf) {
  return artifact("line_families", Json{{"n", lf.n},
                                        {"k", lf.k},
                                        {"m", lf.m},
                                        {"parity", lf.even_case ? "even" : "odd"},
                                        {"V0", to_json(lf.v0)},
                                        {"V1", to_json(lf.v1)},
                                        {"V2", to_json(lf.v2)}});
}

Json to_json(const cover::GridFamilies& gf) {
  return artifact("grid_families", Json{{"n", gf.n},
                                        {"k", gf.k},
                                        {"U0", to_json(gf.u0)},
                                        {"U1", to_json(gf.u1)}});
}

Json to_json(const cover::CoasdimCertificate& cert) {
  Json levels = Json::array();
  for (const auto& gf : cert.levels)
    levels.push_back(Json{
        {"n", gf.n}, {"U0", to_json(gf.u0)}, {"U1", to_json(gf.u1)}});
  Json residual_fams = Json::array();
  for (const auto& f : cert.residual) residual_fams.push_back(to_json(f));
  return artifact("coasdim_certificate",
                  Json{{"k", cert.k},
                       {"window_side", cert.window_side},
                       {"n_max", cert.n_max},
                       {"levels", levels},
                       {"residual",
                        Json{{"r", cert.residual_r}, {"families", residual_fams}}},
                       {"ordinal", cert.ordinal}});
}

Json to_json(const ordinal::Ordinal& o) {
  if (o.inf) return Json{{"inf", true}};
  return Json{{"q", o.q}, {"r", o.r}};
}

Json to_json(const ordinal::SetSystem& m) {
  return Json{{"members", m.members}};
}

Json to_json(const ordinal::ASetResult& r) {
  Json j{{"member", r.member}, {"nodes", r.nodes}};
  if (!r.member) {
    Json fams = Json::array();
    for (const auto& bf : r.cover) {
      Json blocks = Json::array();
      for (const auto& b : bf.blocks) {
        Json pts = Json::array();
        for (const auto& p : b) pts.push_back(p.coords);
        blocks.push_back(std::move(pts));
      }
      fams.push_back(Json{{"i", bf.disjointness}, {"blocks", blocks}});
    }
    j["witness"] = Json{{"families", fams}};
  }
  return artifact("a_set_result", std::move(j));
}

Json to_json(const obstruction::CellCover& c) {
  Json sets = Json::array();
  for (const auto& s : c.sets)
    sets.push_back(Json{{"label", s.label}, {"cells", s.cells}});
  return Json{{"dim", c.dim}, {"side", c.side}, {"sets", sets}};
}

Json to_json(const obstruction::SpanWitness& w) {
  return artifact("span_witness", Json{{"set", w.set_index},
                                       {"direction", w.direction},
                                       {"component", w.component},
                                       {"touch_lo", w.touch_lo},
                                       {"touch_hi", w.touch_hi}});
}

Json to_json(const obstruction::ObstructionInput& in) {
  Json fams = Json::array();
  for (const auto& f : in.candidate) fams.push_back(to_json(f));
  return artifact("obstruction_input", Json{{"m", in.m},
                                            {"k", in.k},
                                            {"n", in.n},
                                            {"B", in.bound},
                                            {"side", in.side},
                                            {"families", fams}});
}

Json to_json(const obstruction::ObstructionReport& r) {
  const char* verdict = "no_violation";
  if (r.verdict == obstruction::ObstructionReport::Verdict::ViolationFound)
    verdict = "violation_found";
  if (r.verdict == obstruction::ObstructionReport::Verdict::InvalidInput)
    verdict = "invalid_input";
  Json j{{"verdict", verdict}};
  if (r.beta) {
    Json path = Json::array();
    for (const auto& p : r.beta->path) path.push_back(p.coords);
    j["beta"] = Json{{"path", path},
                     {"diameter", r.beta->diameter},
                     {"bound", r.beta->bound}};
  }
  if (r.family_check) j["family_check"] = to_json(*r.family_check);
  if (r.uncovered) j["uncovered"] = to_json(*r.uncovered);
  if (!r.note.empty()) j["note"] = r.note;
  return artifact("obstruction_report", std::move(j));
}

space::Point point_from_json(const Json& j, const std::string& path) {
  space::Point p;
  p.level = need_int(j, "level", path);
  p.coords = int_vector(need_array(j, "coords", path), path + ".coords");
  space::validate_point(p);
  return p;
}

space::Window window_from_json(const Json& j, const std::string& path) {
  space::Window w;
  w.level = need_int(j, "level", path);
  w.lo = need_int(j, "lo", path);
  w.hi = need_int(j, "hi", path);
  space::validate_window(w);
  return w;
}

namespace {

families::AxisPiece piece_from_json(const Json& j, const std::string& path) {
  std::string kind = need_string(j, "kind", path);
  if (kind == "singleton")
    return families::singleton_piece(need_int(j, "stride", path));
  if (kind == "interval") {
    space::Int stride = 0;
    if (j.contains("stride")) stride = need_int(j, "stride", path);
    return families::interval_piece(need_int(j, "lo", path),
                                    need_int(j, "hi", path), stride);
  }
  fail(ErrorCode::Schema, path + ".kind: expected 'interval' or 'singleton'");
}

}  // namespace

families::BoxFamily family_from_json(const Json& j, const std::string& path) {
  families::BoxFamily f;
  f.level = need_int(j, "level", path);
  f.label = j.contains("label") ? need_string(j, "label", path) : "";
  const Json& templates = need_array(j, "templates", path);
  for (std::size_t ti = 0; ti < templates.size(); ++ti) {
    std::string tpath = path + ".templates[" + std::to_string(ti) + "]";
    if (!templates[ti].is_array())
      fail(ErrorCode::Schema, tpath + ": expected an array of axis pieces");
    families::BoxTemplate t;
    for (std::size_t a = 0; a < templates[ti].size(); ++a)
      t.axes.push_back(piece_from_json(templates[ti][a],
                                       tpath + "[" + std::to_string(a) + "]"));
    f.templates.push_back(std::move(t));
  }
  families::validate_family(f);
  return f;
}

cover::LineFamilies line_families_from_json(const Json& j) {
  check_kind(j, "line_families");
  cover::LineFamilies lf;
  lf.n = need_int(j, "n", "$");
  lf.k = need_int(j, "k", "$");
  lf.m = need_int(j, "m", "$");
  lf.even_case = need_string(j, "parity", "$") == "even";
  lf.v0 = family_from_json(need(j, "V0", "$"), "$.V0");
  lf.v1 = family_from_json(need(j, "V1", "$"), "$.V1");
  lf.v2 = family_from_json(need(j, "V2", "$"), "$.V2");
  return lf;
}

cover::GridFamilies grid_families_from_json(const Json& j) {
  check_kind(j, "grid_families");
  cover::GridFamilies gf;
  gf.n = need_int(j, "n", "$");
  gf.k = need_int(j, "k", "$");
  gf.u0 = family_from_json(need(j, "U0", "$"), "$.U0");
  gf.u1 = family_from_json(need(j, "U1", "$"), "$.U1");
  return gf;
}

cover::CoasdimCertificate certificate_from_json(const Json& j) {
  check_kind(j, "coasdim_certificate");
  cover::CoasdimCertificate cert;
  cert.k = need_int(j, "k", "$");
  cert.window_side = need_int(j, "window_side", "$");
  cert.n_max = need_int(j, "n_max", "$");
  const Json& levels = need_array(j, "levels", "$");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    std::string path = "$.levels[" + std::to_string(i) + "]";
    cover::GridFamilies gf;
    gf.n = need_int(levels[i], "n", path);
    gf.k = cert.k;
    gf.u0 = family_from_json(need(levels[i], "U0", path), path + ".U0");
    gf.u1 = family_from_json(need(levels[i], "U1", path), path + ".U1");
    cert.levels.push_back(std::move(gf));
  }
  const Json& residual = need(j, "residual", "$");
  cert.residual_r = need_int(residual, "r", "$.residual");
  const Json& fams = need_array(residual, "families", "$.residual");
  for (std::size_t i = 0; i < fams.size(); ++i)
    cert.residual.push_back(family_from_json(
        fams[i], "$.residual.families[" + std::to_string(i) + "]"));
  if (j.contains("ordinal")) cert.ordinal = need_string(j, "ordinal", "$");
  return cert;
}

ordinal::SetSystem set_system_from_json(const Json& j) {
  const Json& members = need_array(j, "members", "$");
  std::vector<std::vector<space::Int>> out;
  for (std::size_t i = 0; i < members.size(); ++i)
    out.push_back(
        int_vector(members[i], "$.members[" + std::to_string(i) + "]"));
  return ordinal::make_system(std::move(out));
}

obstruction::CellCover cell_cover_from_json(const Json& j) {
  obstruction::CellCover c;
  c.dim = need_int(j, "dim", "$");
  c.side = need_int(j, "side", "$");
  const Json& sets = need_array(j, "sets", "$");
  for (std::size_t s = 0; s < sets.size(); ++s) {
    std::string path = "$.sets[" + std::to_string(s) + "]";
    obstruction::CellCover::LabeledSet ls;
    ls.label = sets[s].contains("label") ? need_string(sets[s], "label", path)
                                         : "S" + std::to_string(s);
    const Json& cells = need_array(sets[s], "cells", path);
    for (std::size_t i = 0; i < cells.size(); ++i)
      ls.cells.push_back(
          int_vector(cells[i], path + ".cells[" + std::to_string(i) + "]"));
    c.sets.push_back(std::move(ls));
  }
  return c;
}

obstruction::ObstructionInput obstruction_input_from_json(const Json& j) {
  check_kind(j, "obstruction_input");
  obstruction::ObstructionInput in;
  in.m = need_int(j, "m", "$");
  in.k = need_int(j, "k", "$");
  in.n = need_int(j, "n", "$");
  in.bound = need_int(j, "B", "$");
  in.side = need_int(j, "side", "$");
  const Json& fams = need_array(j, "families", "$");
  for (std::size_t i = 0; i < fams.size(); ++i)
    in.candidate.push_back(
        family_from_json(fams[i], "$.families[" + std::to_string(i) + "]"));
  return in;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::Schema, std::string("parse error: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace coarsedim::io
