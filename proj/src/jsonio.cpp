#include "jsonio.hpp"

#include <cctype>

namespace logvor {

namespace {

Json indices_1based(const std::vector<size_t>& v) {
  Json a = Json::array();
  for (size_t i : v) a.push_back(i + 1);
  return a;
}

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string var_name(size_t j, size_t d) {
  return d == 1 ? std::string("x") : "x" + std::to_string(j + 1);
}

std::string affine_formula(const Rat& offset, const RatVector& linear, size_t d) {
  std::string s;
  if (offset != 0) s = format_rat(offset);
  for (size_t j = 0; j < d; ++j) {
    const Rat& a = linear[j];
    if (a == 0) continue;
    std::string term = (abs_rat(a) == 1) ? var_name(j, d) : format_rat(abs_rat(a)) + "*" + var_name(j, d);
    if (s.empty())
      s = (a < 0 ? "-" : "") + term;
    else
      s += (a < 0 ? " - " : " + ") + term;
  }
  return s.empty() ? "0" : s;
}

Json halfspace_to_json(const Halfspace& h) {
  return Json{{"normal", vec_to_json(h.normal)}, {"offset", rat_to_json(h.offset)}};
}

Json equation_to_json(const Equation& e) {
  return Json{{"normal", vec_to_json(e.normal)}, {"offset", rat_to_json(e.offset)}};
}

void read_normal_offset(const Json& j, RatVector& normal, Rat& offset) {
  if (!j.is_object() || !j.contains("normal") || !j.contains("offset"))
    throw Error(ErrorKind::Parse, "halfspaces and equations need \"normal\" and \"offset\"");
  normal = vec_from_json(j.at("normal"));
  offset = rat_from_json(j.at("offset"));
}

size_t coord_index(const std::string& key) {
  if (key == "x") return 0;
  if (key == "y") return 1;
  if (key == "z") return 2;
  if (key == "w") return 3;
  if (key.size() >= 2 && key[0] == 'x') {
    bool digits = true;
    for (size_t i = 1; i < key.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(key[i]))) digits = false;
    if (digits && key[1] != '0') return static_cast<size_t>(std::stoul(key.substr(1))) - 1;
  }
  throw Error(ErrorKind::Parse, "unknown coordinate name \"" + key + "\"");
}

std::vector<double> doubles_to_json_vec(const std::vector<double>& v) { return v; }

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json rat_to_json(const Rat& r) { return format_rat(r); }

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_unsigned()) return Rat(j.get<unsigned long long>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  throw Error(ErrorKind::Parse,
              "expected a rational as a string like \"-5/324\" or an integer");
}

Json vec_to_json(const RatVector& v) {
  Json a = Json::array();
  for (const Rat& r : v) a.push_back(rat_to_json(r));
  return a;
}

RatVector vec_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "expected an array of rationals");
  RatVector v;
  v.reserve(j.size());
  for (const Json& e : j) v.push_back(rat_from_json(e));
  return v;
}

Json mat_to_json(const RatMatrix& m) {
  Json a = Json::array();
  for (const RatVector& row : m) a.push_back(vec_to_json(row));
  return a;
}

RatMatrix mat_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "expected an array of rational rows");
  RatMatrix m;
  m.reserve(j.size());
  for (const Json& e : j) m.push_back(vec_from_json(e));
  return m;
}

Json polytope_to_json(const Polytope& p) {
  Json j;
  j["ambient_dim"] = p.ambient_dim();
  j["dim"] = p.dim();
  j["vertices"] = mat_to_json(p.vertices());
  Json hs = Json::array();
  for (const Halfspace& h : p.halfspaces()) hs.push_back(halfspace_to_json(h));
  j["halfspaces"] = hs;
  Json eqs = Json::array();
  for (const Equation& e : p.equations()) eqs.push_back(equation_to_json(e));
  j["equations"] = eqs;
  j["f_vector"] = p.f_vector();
  return j;
}

Polytope polytope_from_json(const Json& j, size_t ambient) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "polytope must be a JSON object");
  size_t amb = ambient;
  if (amb == SIZE_MAX && j.contains("ambient_dim")) {
    const Json& a = j.at("ambient_dim");
    if (!a.is_number_integer() || a.get<long long>() < 0)
      throw Error(ErrorKind::Parse, "\"ambient_dim\" must be a nonnegative integer");
    amb = a.get<size_t>();
  }
  if (j.contains("vertices") && !j.at("vertices").is_null()) {
    RatMatrix verts = mat_from_json(j.at("vertices"));
    if (amb == SIZE_MAX) {
      if (verts.empty())
        throw Error(ErrorKind::Parse, "cannot infer the ambient dimension of an empty polytope");
      amb = verts[0].size();
    }
    return Polytope::from_vertices(amb, verts);
  }
  std::vector<Halfspace> hs;
  std::vector<Equation> eqs;
  if (j.contains("halfspaces"))
    for (const Json& e : j.at("halfspaces")) {
      Halfspace h;
      read_normal_offset(e, h.normal, h.offset);
      hs.push_back(std::move(h));
    }
  if (j.contains("equations"))
    for (const Json& e : j.at("equations")) {
      Equation q;
      read_normal_offset(e, q.normal, q.offset);
      eqs.push_back(std::move(q));
    }
  if (hs.empty() && eqs.empty())
    throw Error(ErrorKind::Parse, "polytope needs \"vertices\" or \"halfspaces\"/\"equations\"");
  if (amb == SIZE_MAX) {
    amb = hs.empty() ? eqs[0].normal.size() : hs[0].normal.size();
  }
  return Polytope::from_halfspaces(amb, hs, eqs);
}

Json model_to_json(const LinearModel& m) {
  Json j;
  j["name"] = m.name;
  j["n"] = m.n;
  j["d"] = m.d;
  j["c"] = vec_to_json(m.c);
  j["B"] = mat_to_json(m.B);
  return j;
}

Json model_to_json(const PartialLinearModel& m) {
  Json j = model_to_json(m.extension);
  j["name"] = m.name;
  j["theta"] = polytope_to_json(m.theta);
  return j;
}

bool json_has_theta(const Json& j) {
  return j.is_object() && j.contains("theta") && !j.at("theta").is_null();
}

LinearModel model_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "model must be a JSON object");
  if (!j.contains("c") || !j.contains("B"))
    throw Error(ErrorKind::Parse, "model needs \"c\" and \"B\"");
  LinearModel m;
  m.c = vec_from_json(j.at("c"));
  m.B = mat_from_json(j.at("B"));
  m.n = m.c.size();
  if (m.B.size() != m.n)
    throw Error(ErrorKind::Parse, "B must have one row per coordinate of c");
  m.d = m.B.empty() ? 0 : m.B[0].size();
  for (const RatVector& row : m.B)
    if (row.size() != m.d) throw Error(ErrorKind::Parse, "rows of B must have equal length");
  if (j.contains("n") && j.at("n") != Json(m.n))
    throw Error(ErrorKind::Parse, "declared \"n\" does not match the length of c");
  if (j.contains("d") && j.at("d") != Json(m.d))
    throw Error(ErrorKind::Parse, "declared \"d\" does not match the width of B");
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw Error(ErrorKind::Parse, "\"name\" must be a string");
    m.name = j.at("name").get<std::string>();
  }
  return m;
}

PartialLinearModel partial_from_json(const Json& j) {
  PartialLinearModel m;
  m.extension = model_from_json(j);
  if (!json_has_theta(j))
    throw Error(ErrorKind::Parse, "partial model needs a \"theta\" member");
  m.theta = polytope_from_json(j.at("theta"), m.extension.d);
  m.name = m.extension.name;
  return m;
}

RatVector parse_at(const std::string& text, size_t d) {
  std::string s = trim(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')')
    s = trim(s.substr(1, s.size() - 2));
  if (s.empty()) throw Error(ErrorKind::Parse, "empty parameter list");

  std::vector<std::string> tokens;
  size_t start = 0;
  while (true) {
    size_t comma = s.find(',', start);
    tokens.push_back(trim(s.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }

  std::vector<bool> seen(d, false);
  RatVector out(d, Rat(0));
  bool named = false, positional = false;
  for (size_t idx = 0; idx < tokens.size(); ++idx) {
    const std::string& tok = tokens[idx];
    if (tok.empty()) throw Error(ErrorKind::Parse, "empty parameter entry");
    size_t eq = tok.find('=');
    size_t pos;
    std::string value;
    if (eq != std::string::npos) {
      named = true;
      pos = coord_index(trim(tok.substr(0, eq)));
      value = trim(tok.substr(eq + 1));
    } else {
      positional = true;
      pos = idx;
      value = tok;
    }
    if (pos >= d)
      throw Error(ErrorKind::Parse, "parameter has " + std::to_string(d) + " coordinate(s)");
    if (seen[pos]) throw Error(ErrorKind::Parse, "coordinate assigned twice");
    seen[pos] = true;
    out[pos] = parse_rat(value);
  }
  if (named && positional)
    throw Error(ErrorKind::Parse, "cannot mix named and positional coordinates");
  for (size_t i = 0; i < d; ++i)
    if (!seen[i])
      throw Error(ErrorKind::Parse, "missing coordinate " + var_name(i, d));
  return out;
}

Json model_point_to_json(const ModelPoint& p) {
  return Json{{"p", vec_to_json(p.p)},
              {"interior", p.interior},
              {"support", indices_1based(p.support)}};
}

Json validation_to_json(const ValidationReport& r) {
  return Json{{"ok", r.ok}, {"violations", r.violations}};
}

Json transversality_to_json(const TransversalityReport& r) {
  Json j{{"transversal", r.transversal}};
  if (!r.transversal) {
    j["witness_point"] = vec_to_json(r.witness_point);
    j["witness_param"] = vec_to_json(r.witness_param);
    j["witness_zeros"] = r.witness_zeros;
  }
  return j;
}

Json cocircuits_to_json(const LinearModel& m, const std::vector<Cocircuit>& zs) {
  Json arr = Json::array();
  for (const Cocircuit& z : zs)
    arr.push_back(Json{{"support", indices_1based(z.support)}, {"coeffs", vec_to_json(z.coeffs)}});
  return Json{{"model", m.name}, {"n", m.n}, {"d", m.d}, {"count", zs.size()}, {"cocircuits", arr}};
}

Json vertex_functions_to_json(const LinearModel& m, const std::vector<VertexFunction>& fs) {
  Json arr = Json::array();
  for (const VertexFunction& f : fs) {
    Json formulas = Json::array();
    for (size_t i = 0; i < m.n; ++i)
      formulas.push_back(affine_formula(f.offset[i], f.linear[i], m.d));
    arr.push_back(Json{{"support", indices_1based(f.z.support)},
                       {"coeffs", vec_to_json(f.z.coeffs)},
                       {"zhat", vec_to_json(f.zhat)},
                       {"offset", vec_to_json(f.offset)},
                       {"linear", mat_to_json(f.linear)},
                       {"formula", formulas}});
  }
  return Json{{"model", m.name}, {"n", m.n}, {"d", m.d}, {"functions", arr}};
}

Json gale_to_json(const GalePair& g, const GaleCheckReport& chk, const Polytope& slice) {
  return Json{{"A", mat_to_json(g.A)},
              {"V", mat_to_json(g.V)},
              {"B", mat_to_json(g.B)},
              {"check", Json{{"ok", chk.ok}, {"violations", chk.violations}}},
              {"dual_slice", polytope_to_json(slice)}};
}

Json iso_to_json(const IsoResult& r) {
  Json j;
  switch (r.answer) {
    case IsoResult::Answer::Yes: j["answer"] = "yes"; break;
    case IsoResult::Answer::No: j["answer"] = "no"; break;
    case IsoResult::Answer::Inconclusive: j["answer"] = "inconclusive"; break;
  }
  j["nodes"] = r.nodes;
  if (r.answer == IsoResult::Answer::Yes) j["vertex_map"] = indices_1based(r.vertex_map);
  return j;
}

Json type_check_to_json(const TypeCheckReport& r) {
  Json cells = Json::array();
  for (size_t i = 0; i < r.cell_f.size(); ++i)
    cells.push_back(Json{{"f_vector", r.cell_f[i]}, {"iso", iso_to_json(r.iso_to_dual[i])}});
  return Json{{"holds", r.holds},
              {"pairwise", r.pairwise},
              {"inconclusive", r.inconclusive},
              {"dual_f_vector", r.dual_f},
              {"cells", cells}};
}

Json endpoints_to_json(const EndpointCells& e) {
  return Json{{"x_left", rat_to_json(e.x_left)},
              {"x_right", rat_to_json(e.x_right)},
              {"left_index", e.left_index + 1},
              {"right_index", e.right_index + 1},
              {"left_cell", polytope_to_json(e.left_cell)},
              {"right_cell", polytope_to_json(e.right_cell)}};
}

Json realization_to_json(const Realization& r) {
  return Json{{"model", model_to_json(r.model)},
              {"p", vec_to_json(r.p)},
              {"input", polytope_to_json(r.input)}};
}

Json mle_to_json(const MleResult& r) {
  return Json{{"x", doubles_to_json_vec(r.x)},
              {"p", doubles_to_json_vec(r.p)},
              {"residual", r.residual},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"active", indices_1based(r.active)}};
}

Json tessellation_to_json(const TessellationReport& r) {
  return Json{{"samples", r.samples},
              {"passed", r.passed},
              {"non_converged", r.non_converged},
              {"interior_mles", r.interior_mles},
              {"boundary_mles", r.boundary_mles},
              {"max_residual", r.max_residual},
              {"tol", r.tol},
              {"seed", r.seed},
              {"threads", r.threads},
              {"first_failure", r.first_failure}};
}

Json facet_cell_to_json(const FacetCellResult& r) {
  return Json{{"facet_index", r.facet_index + 1},
              {"facet_theta_vertices", indices_1based(r.facet_theta_vertices)},
              {"x", vec_to_json(r.x)},
              {"p", vec_to_json(r.p)},
              {"face_cell", polytope_to_json(r.face_cell)},
              {"model_cell", polytope_to_json(r.model_cell)},
              {"cell", polytope_to_json(r.q)},
              {"complement", polytope_to_json(r.q_bar)},
              {"side_certificate", r.side_certificate}};
}

Json face_cell_to_json(const FaceCellResult& r) {
  Json qs = Json::array();
  for (const Polytope& q : r.q_list) qs.push_back(polytope_to_json(q));
  return Json{{"face_theta_vertices", indices_1based(r.face_theta_vertices)},
              {"x", vec_to_json(r.x)},
              {"p", vec_to_json(r.p)},
              {"face_cell", polytope_to_json(r.face_cell)},
              {"q_list", qs},
              {"cell", polytope_to_json(r.cell)},
              {"experimental", r.experimental},
              {"cover_notes", r.cover_notes}};
}

}  // namespace logvor
