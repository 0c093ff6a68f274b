#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "cells.hpp"
#include "gale.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "partial.hpp"

// JSON layer shared by the C API and the command line tool. Rationals
// travel as strings ("5" or "-5/324"); every index-valued field (supports,
// vertex and facet indices) is 1-based on the wire and 0-based in C++.

namespace logvor {

using Json = nlohmann::json;

// Parses JSON text; malformed input surfaces as ErrorKind::Parse.
Json parse_json_text(const std::string& text);
// dump(2) with a trailing newline.
std::string dump_json(const Json& j);

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);  // accepts "p/q" strings and integers
Json vec_to_json(const RatVector& v);
RatVector vec_from_json(const Json& j);
Json mat_to_json(const RatMatrix& m);
RatMatrix mat_from_json(const Json& j);

Json polytope_to_json(const Polytope& p);
// Prefers a "vertices" member, else "halfspaces"/"equations". An explicit
// `ambient` wins over the "ambient_dim" member; pass SIZE_MAX to defer.
Polytope polytope_from_json(const Json& j, size_t ambient = SIZE_MAX);

Json model_to_json(const LinearModel& m);
Json model_to_json(const PartialLinearModel& m);
bool json_has_theta(const Json& j);
LinearModel model_from_json(const Json& j);
PartialLinearModel partial_from_json(const Json& j);

// Parameter lists: "1/8", "x=1/8", "x=-5/324,y=1/81", "x1=..,x2=..", or
// positional "(-5/324, 1/81)". Aliases x,y,z,w name the first four
// coordinates; x1..xd always work; named and positional cannot be mixed.
RatVector parse_at(const std::string& text, size_t d);

Json model_point_to_json(const ModelPoint& p);
Json validation_to_json(const ValidationReport& r);
Json transversality_to_json(const TransversalityReport& r);
Json cocircuits_to_json(const LinearModel& m, const std::vector<Cocircuit>& zs);
Json vertex_functions_to_json(const LinearModel& m, const std::vector<VertexFunction>& fs);
Json gale_to_json(const GalePair& g, const GaleCheckReport& chk, const Polytope& slice);
Json iso_to_json(const IsoResult& r);
Json type_check_to_json(const TypeCheckReport& r);
Json endpoints_to_json(const EndpointCells& e);
Json realization_to_json(const Realization& r);
Json mle_to_json(const MleResult& r);
Json tessellation_to_json(const TessellationReport& r);
Json facet_cell_to_json(const FacetCellResult& r);
Json face_cell_to_json(const FaceCellResult& r);

}  // namespace logvor
