#include "logvor/logvor.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "builtin_models.hpp"
#include "jsonio.hpp"

struct logvor_model {
  logvor::LinearModel full;
  std::optional<logvor::PartialLinearModel> partial;
};

namespace {

using namespace logvor;

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

logvor_status map_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return LOGVOR_ERR_PARSE;
    case ErrorKind::InvalidModel: return LOGVOR_ERR_INVALID_MODEL;
    case ErrorKind::Domain: return LOGVOR_ERR_DOMAIN;
    case ErrorKind::Unbounded: return LOGVOR_ERR_UNBOUNDED;
    case ErrorKind::Unsupported: return LOGVOR_ERR_UNSUPPORTED;
    case ErrorKind::DegenerateSplit: return LOGVOR_ERR_DEGENERATE_SPLIT;
    case ErrorKind::NotRealizable: return LOGVOR_ERR_UNSUPPORTED;
    case ErrorKind::Internal: return LOGVOR_ERR_INTERNAL;
  }
  return LOGVOR_ERR_INTERNAL;
}

template <typename F>
logvor_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return LOGVOR_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_kind(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LOGVOR_ERR_NOMEM;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LOGVOR_ERR_INTERNAL;
  }
}

const logvor_model& need(const logvor_model* m) {
  if (!m) throw Error(ErrorKind::Domain, "null model handle");
  return *m;
}

std::string need_str(const char* s, const char* what) {
  if (!s) throw Error(ErrorKind::Domain, std::string("null ") + what);
  return s;
}

void emit(char** out, const std::string& text) {
  if (!out) throw Error(ErrorKind::Domain, "null output pointer");
  *out = dup_string(text);
}

const PartialLinearModel& need_partial(const logvor_model& h) {
  if (!h.partial)
    throw Error(ErrorKind::Domain, "this operation needs a partial model (a \"theta\" block)");
  return *h.partial;
}

RatVector param_or_default(const logvor_model& h, const char* at) {
  if (at) return parse_at(at, h.full.d);
  return h.partial ? h.partial->theta.centroid() : parameter_polytope(h.full).centroid();
}

std::vector<double> to_doubles(const RatVector& v) {
  std::vector<double> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].convert_to<double>();
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Samples the computed cell and asks the numeric MLE whether each sample's
// optimum really is the claimed point. Agreement evidence for outputs that
// lean on the codimension >= 2 construction; a spot check elsewhere.
Json mc_membership_block(const PartialLinearModel& pm, const Polytope& cell,
                         const RatVector& p_claim, int samples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> p_ref = to_doubles(p_claim);
  int agree = 0, converged = 0;
  const double tol = 1e-6;
  for (int s = 0; s < samples; ++s) {
    RatVector u = cell.relint_sample(rng);
    MleResult r = mle_partial(pm, to_doubles(u));
    if (!r.converged) continue;
    ++converged;
    double dev = 0.0;
    for (size_t i = 0; i < p_ref.size(); ++i)
      dev = std::max(dev, std::fabs(r.p[i] - p_ref[i]));
    if (dev < tol) ++agree;
  }
  return Json{{"samples", samples},     {"seed", seed},
              {"tolerance", tol},       {"converged", converged},
              {"agree", agree},         {"agreement_rate", samples > 0
                                             ? static_cast<double>(agree) / samples
                                             : 1.0}};
}

std::unique_ptr<logvor_model> parse_model_text(const std::string& text) {
  Json j = parse_json_text(text);
  auto h = std::make_unique<logvor_model>();
  if (json_has_theta(j)) {
    h->partial = partial_from_json(j);
    h->full = h->partial->extension;
  } else {
    h->full = model_from_json(j);
  }
  return h;
}

std::string export_plot_csv(const logvor_model& h, int grid, uint64_t seed) {
  const LinearModel& m = h.full;
  require_valid(m);
  if (m.n != 3 && m.n != 4)
    throw Error(ErrorKind::Unsupported,
                "plot export draws cells in the triangle or tetrahedron (n = 3 or n = 4)");
  if (grid <= 0) throw Error(ErrorKind::Domain, "grid must be positive");

  std::ostringstream os;
  os << "sample";
  if (m.d == 1)
    os << ",x";
  else
    for (size_t j = 0; j < m.d; ++j) os << ",x" << j + 1;
  os << ",vertex";
  for (size_t i = 0; i < m.n; ++i) os << ",u" << i + 1;
  os << "\n";

  RatMatrix params;
  if (!h.partial && m.d == 1) {
    Polytope theta = parameter_polytope(m);
    Rat lo = theta.vertices()[0][0];
    Rat hi = theta.vertices()[1][0];
    if (lo > hi) std::swap(lo, hi);
    for (int k = 0; k < grid; ++k)
      params.push_back({lo + (hi - lo) * Rat(2 * k + 1) / Rat(2 * grid)});
  } else {
    std::mt19937_64 rng(seed);
    Polytope dom = h.partial ? h.partial->theta : parameter_polytope(m);
    for (int k = 0; k < grid; ++k) params.push_back(dom.relint_sample(rng));
  }

  for (size_t s = 0; s < params.size(); ++s) {
    Polytope cell =
        h.partial ? cell_partial_interior(*h.partial, params[s]) : cell_at(m, params[s]);
    const RatMatrix& verts = cell.vertices();
    for (size_t vi = 0; vi < verts.size(); ++vi) {
      os << s + 1;
      for (const Rat& x : params[s]) os << "," << format_double(x.convert_to<double>());
      os << "," << vi + 1;
      for (const Rat& u : verts[vi]) os << "," << format_double(u.convert_to<double>());
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace

extern "C" {

const char* logvor_version(void) { return LOGVOR_VERSION; }

const char* logvor_status_name(logvor_status s) {
  switch (s) {
    case LOGVOR_OK: return "ok";
    case LOGVOR_ERR_PARSE: return "parse";
    case LOGVOR_ERR_INVALID_MODEL: return "invalid-model";
    case LOGVOR_ERR_DOMAIN: return "domain";
    case LOGVOR_ERR_UNBOUNDED: return "unbounded";
    case LOGVOR_ERR_UNSUPPORTED: return "unsupported";
    case LOGVOR_ERR_DEGENERATE_SPLIT: return "degenerate-split";
    case LOGVOR_ERR_NOMEM: return "nomem";
    case LOGVOR_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* logvor_last_error(void) { return g_last_error.c_str(); }

void logvor_string_free(char* s) { std::free(s); }

logvor_status logvor_model_parse(const char* json_text, logvor_model** out) {
  return guarded([&] {
    if (!out) throw Error(ErrorKind::Domain, "null output pointer");
    *out = parse_model_text(need_str(json_text, "model text")).release();
  });
}

logvor_status logvor_model_read_file(const char* path, logvor_model** out) {
  return guarded([&] {
    if (!out) throw Error(ErrorKind::Domain, "null output pointer");
    std::string p = need_str(path, "path");
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot read file: " + p);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      *out = parse_model_text(buf.str()).release();
    } catch (const Error& e) {
      throw Error(e.kind(), p + ": " + e.what());
    }
  });
}

void logvor_model_free(logvor_model* m) { delete m; }

logvor_status logvor_model_to_json(const logvor_model* m, char** out_json) {
  return guarded([&] {
    const logvor_model& h = need(m);
    Json j = h.partial ? model_to_json(*h.partial) : model_to_json(h.full);
    emit(out_json, dump_json(j));
  });
}

int logvor_model_n(const logvor_model* m) { return m ? static_cast<int>(m->full.n) : -1; }
int logvor_model_d(const logvor_model* m) { return m ? static_cast<int>(m->full.d) : -1; }
int logvor_model_is_partial(const logvor_model* m) { return m ? (m->partial ? 1 : 0) : -1; }

logvor_status logvor_example_names(char** out_json) {
  return guarded([&] { emit(out_json, dump_json(Json(example_names()))); });
}

logvor_status logvor_example_model(const char* name, logvor_model** out) {
  return guarded([&] {
    if (!out) throw Error(ErrorKind::Domain, "null output pointer");
    ExampleModel ex = example_model(need_str(name, "example name"));
    auto h = std::make_unique<logvor_model>();
    h->full = std::move(ex.full);
    h->partial = std::move(ex.partial);
    *out = h.release();
  });
}

logvor_status logvor_validate(const logvor_model* m, char** out_json) {
  return guarded([&] {
    const logvor_model& h = need(m);
    ValidationReport rep = h.partial ? validate(*h.partial) : validate(h.full);
    Json j = validation_to_json(rep);
    if (rep.ok && !h.partial) j["transversality"] = transversality_to_json(is_transversal(h.full));
    emit(out_json, dump_json(j));
  });
}

logvor_status logvor_cocircuits(const logvor_model* m, int with_functions, char** out_json) {
  return guarded([&] {
    const logvor_model& h = need(m);
    std::vector<Cocircuit> zs = positive_cocircuits(h.full);
    Json j = cocircuits_to_json(h.full, zs);
    if (with_functions) {
      j["functions"] = vertex_functions_to_json(h.full, vertex_functions(h.full))["functions"];
    }
    emit(out_json, dump_json(j));
  });
}

logvor_status logvor_cell(const logvor_model* m, const char* at, char** out_json) {
  return guarded([&] {
    const logvor_model& h = need(m);
    RatVector x = param_or_default(h, at);
    Polytope cell;
    if (h.partial)
      cell = cell_partial_interior(*h.partial, x);
    else
      cell = cell_at(h.full, x);
    ModelPoint p = point_at(h.full, x);
    Json j = model_point_to_json(p);
    j["x"] = vec_to_json(x);
    j["cell"] = polytope_to_json(cell);
    emit(out_json, dump_json(j));
  });
}

logvor_status logvor_endpoints_d1(const logvor_model* m, char** out_json) {
  return guarded([&] {
    const logvor_model& h = need(m);
    if (h.partial)
      throw Error(ErrorKind::Domain, "endpoint cells are a full-model operation");
    emit(out_json, dump_json(endpoints_to_json(cell_endpoints_d1(h.full))));
  });
}

logvor_status logvor_gale(const logvor_model* m, char** out_json) {
  return guarded([&] {
    const logvor_model& h = need(m);
    GalePair g = gale_pair(h.full);
    GaleCheckReport chk = check_gale_pair(g.A, h.full.B);
    Polytope slice = dual_slice(g.A);
    emit(out_json, dump_json(gale_to_json(g, chk, slice)));
  });
}

logvor_status logvor_type_check(const logvor_model* m, const char* const* at, size_t n_at,
                                int random_params, uint64_t seed, char** out_json) {
  return guarded([&] {
    const logvor_model& h = need(m);
    require_valid(h.full);
    RatMatrix params;
    if (n_at > 0) {
      if (!at) throw Error(ErrorKind::Domain, "null parameter list");
      for (size_t i = 0; i < n_at; ++i)
        params.push_back(parse_at(need_str(at[i], "parameter"), h.full.d));
    } else {
      int count = random_params > 0 ? random_params : 5;
      std::mt19937_64 rng(seed);
      Polytope theta = parameter_polytope(h.full);
      for (int i = 0; i < count; ++i) params.push_back(theta.relint_sample(rng));
    }
    TypeCheckReport rep = verify_type_theorem(h.full, params);
    Json j{{"params", mat_to_json(params)}, {"check", type_check_to_json(rep)}};
    emit(out_json, dump_json(j));
  });
}

logvor_status logvor_partial_cell(const logvor_model* m, size_t facet_1based, const char* at,
                                  int mc_samples, uint64_t mc_seed, char** out_json) {
  return guarded([&] {
    const logvor_model& h = need(m);
    const PartialLinearModel& pm = need_partial(h);
    if (facet_1based == 0) throw Error(ErrorKind::Domain, "facet indices are 1-based");
    std::optional<RatVector> x;
    if (at) x = parse_at(at, pm.extension.d);
    FacetCellResult r = cell_partial_facet(pm, facet_1based - 1, x);
    Json j = facet_cell_to_json(r);
    if (mc_samples > 0) j["monte_carlo"] = mc_membership_block(pm, r.q, r.p, mc_samples, mc_seed);
    emit(out_json, dump_json(j));
  });
}

logvor_status logvor_partial_cell_face(const logvor_model* m,
                                       const size_t* theta_vertices_1based, size_t n_vertices,
                                       const char* at, int mc_samples, uint64_t mc_seed,
                                       char** out_json) {
  return guarded([&] {
    const logvor_model& h = need(m);
    const PartialLinearModel& pm = need_partial(h);
    if (!theta_vertices_1based || n_vertices == 0)
      throw Error(ErrorKind::Domain, "the face needs at least one theta vertex index");
    std::vector<size_t> verts;
    for (size_t i = 0; i < n_vertices; ++i) {
      if (theta_vertices_1based[i] == 0)
        throw Error(ErrorKind::Domain, "theta vertex indices are 1-based");
      verts.push_back(theta_vertices_1based[i] - 1);
    }
    std::optional<RatVector> x;
    if (at) x = parse_at(at, pm.extension.d);
    FaceCellResult r = cell_partial_face(pm, verts, x);
    Json j = face_cell_to_json(r);
    // General position is approximated by the extension's transversality;
    // recorded so experimental output carries its own caveat.
    j["extension_transversal"] = is_transversal(pm.extension).transversal;
    if (mc_samples > 0)
      j["monte_carlo"] = mc_membership_block(pm, r.cell, r.p, mc_samples, mc_seed);
    emit(out_json, dump_json(j));
  });
}

logvor_status logvor_theta_faces(const logvor_model* m, char** out_json) {
  return guarded([&] {
    const logvor_model& h = need(m);
    const PartialLinearModel& pm = need_partial(h);
    require_valid(pm);
    Json faces = Json::array();
    for (const auto& f : pm.theta.face_lattice().faces) {
      Json verts = Json::array();
      for (size_t v : f.vertices) verts.push_back(v + 1);
      faces.push_back(Json{{"vertices", verts}, {"dim", f.dim}});
    }
    Json j{{"theta_vertices", mat_to_json(pm.theta.vertices())}, {"faces", faces}};
    emit(out_json, dump_json(j));
  });
}

logvor_status logvor_realize(const char* system_json, logvor_model** out_model,
                             char** out_json) {
  return guarded([&] {
    Json j = parse_json_text(need_str(system_json, "system text"));
    if (!j.is_object() || !j.contains("M") || !j.contains("b"))
      throw Error(ErrorKind::Parse, "realize input needs \"M\" and \"b\"");
    RatMatrix M = mat_from_json(j.at("M"));
    RatVector b = vec_from_json(j.at("b"));
    if (M.size() != b.size())
      throw Error(ErrorKind::Parse, "M must have one row per entry of b");
    size_t n = 0;
    if (j.contains("n")) {
      if (!j.at("n").is_number_integer() || j.at("n").get<long long>() <= 0)
        throw Error(ErrorKind::Parse, "\"n\" must be a positive integer");
      n = j.at("n").get<size_t>();
    } else if (!M.empty()) {
      n = M[0].size();
    } else {
      throw Error(ErrorKind::Parse, "\"n\" is required when M has no rows");
    }
    Realization r = realize(M, b, n);
    if (out_json) *out_json = dup_string(dump_json(realization_to_json(r)));
    if (out_model) {
      auto h = std::make_unique<logvor_model>();
      h->full = std::move(r.model);
      *out_model = h.release();
    }
  });
}

logvor_status logvor_mle(const logvor_model* m, const char* u, char** out_json) {
  return guarded([&] {
    const logvor_model& h = need(m);
    RatVector ur = parse_at(need_str(u, "data vector"), h.full.n);
    std::vector<double> ud = to_doubles(ur);
    for (double v : ud)
      if (v < 0.0) throw Error(ErrorKind::Domain, "data vector must be nonnegative");
    MleResult r = h.partial ? mle_partial(*h.partial, ud) : mle_full(h.full, ud);
    emit(out_json, dump_json(mle_to_json(r)));
  });
}

logvor_status logvor_tessellate(const logvor_model* m, int samples, uint64_t seed, double tol,
                                int threads, char** out_json) {
  return guarded([&] {
    const logvor_model& h = need(m);
    if (samples <= 0) throw Error(ErrorKind::Domain, "samples must be positive");
    if (!(tol > 0)) throw Error(ErrorKind::Domain, "tol must be positive");
    if (threads < 1) threads = 1;
    TessellationReport rep = h.partial
                                 ? tessellation_check(*h.partial, samples, seed, tol, threads)
                                 : tessellation_check(h.full, samples, seed, tol, threads);
    emit(out_json, dump_json(tessellation_to_json(rep)));
  });
}

logvor_status logvor_export_plot(const logvor_model* m, int grid, uint64_t seed,
                                 char** out_csv) {
  return guarded([&] { emit(out_csv, export_plot_csv(need(m), grid, seed)); });
}

}  // extern "C"
