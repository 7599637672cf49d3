#pragma once

#include <string>

#include "coarsedim/cover_builder.hpp"
#include "coarsedim/families.hpp"
#include "coarsedim/obstruction.hpp"
#include "coarsedim/ordinal.hpp"
#include "coarsedim/space.hpp"

#include "json.hpp"

namespace coarsedim::io {

using Json = nlohmann::json;

// Every artifact carries {"schema": "v1", "kind": ...}. Parsers throw
// ErrorCode::Schema with a field path on malformed input.

Json to_json(const space::Point& p);
Json to_json(const space::Window& w);
Json to_json(const families::AxisPiece& p);
Json to_json(const families::BoxFamily& f);
Json to_json(const families::MemberRef& m);
Json to_json(const families::VerifyReport& r);
Json to_json(const cover::LineFamilies& lf);
Json to_json(const cover::GridFamilies& gf);
Json to_json(const cover::CoasdimCertificate& cert);
Json to_json(const ordinal::Ordinal& o);
Json to_json(const ordinal::SetSystem& m);
Json to_json(const ordinal::ASetResult& r);
Json to_json(const obstruction::CellCover& c);
Json to_json(const obstruction::SpanWitness& w);
Json to_json(const obstruction::ObstructionInput& in);
Json to_json(const obstruction::ObstructionReport& r);

space::Point point_from_json(const Json& j, const std::string& path = "$");
space::Window window_from_json(const Json& j, const std::string& path = "$");
families::BoxFamily family_from_json(const Json& j,
                                     const std::string& path = "$");
cover::LineFamilies line_families_from_json(const Json& j);
cover::GridFamilies grid_families_from_json(const Json& j);
cover::CoasdimCertificate certificate_from_json(const Json& j);
ordinal::SetSystem set_system_from_json(const Json& j);
obstruction::CellCover cell_cover_from_json(const Json& j);
obstruction::ObstructionInput obstruction_input_from_json(const Json& j);

/// Parses text, mapping parse failures to schema errors with position info.
Json parse(const std::string& text);

/// Deterministic serialization: sorted object keys, two-space indent and a
/// trailing newline.
std::string dump(const Json& j);

}  // namespace coarsedim::io
