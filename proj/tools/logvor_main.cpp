// Command-line surface over the C API. All mathematics lives behind
// logvor/logvor.h; this file does flags, files, and manifests.
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "logvor/logvor.h"

namespace {

using Json = nlohmann::json;

struct RunContext {
  std::string command;                    // the invocation, reassembled
  std::optional<std::string> input_file;  // hashed into the manifest
  std::optional<uint64_t> seed;
  Json tolerances = nullptr;
};

std::string shell_join(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    std::string a = argv[i];
    if (a.find_first_of(" \t\"'") != std::string::npos) {
      s += '"';
      for (char c : a) {
        if (c == '"' || c == '\\') s += '\\';
        s += c;
      }
      s += '"';
    } else {
      s += a;
    }
  }
  return s;
}

std::optional<std::string> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fnv1a64_hex(const std::string& bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string iso_timestamp_utc() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int fail(logvor_status st) {
  Json err{{"error", {{"kind", logvor_status_name(st)}, {"message", logvor_last_error()}}}};
  std::fputs((err.dump(2) + "\n").c_str(), stderr);
  return 1;
}

int fail_domain(const std::string& message) {
  Json err{{"error", {{"kind", "domain"}, {"message", message}}}};
  std::fputs((err.dump(2) + "\n").c_str(), stderr);
  return 1;
}

bool write_manifest(const std::string& out_path, const RunContext& ctx) {
  Json hash = nullptr;
  if (ctx.input_file) {
    if (auto bytes = read_file_bytes(*ctx.input_file)) hash = fnv1a64_hex(*bytes);
  }
  Json m{{"command", ctx.command},
         {"model_file_hash", hash},
         {"seed", ctx.seed ? Json(*ctx.seed) : Json(nullptr)},
         {"tolerances", ctx.tolerances},
         {"toolkit_version", logvor_version()},
         {"timestamp", iso_timestamp_utc()}};
  std::ofstream out(out_path + ".manifest.json", std::ios::binary);
  if (!out) return false;
  out << m.dump(2) << "\n";
  return bool(out);
}

// Empty path -> stdout (no manifest). Otherwise write the file plus its
// <path>.manifest.json sidecar.
int write_output(const std::string& content, const std::string& out_path,
                 const RunContext& ctx) {
  if (out_path.empty()) {
    std::fputs(content.c_str(), stdout);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) return fail_domain("cannot write output file: " + out_path);
  out << content;
  out.close();
  if (!out) return fail_domain("cannot write output file: " + out_path);
  if (!write_manifest(out_path, ctx))
    return fail_domain("cannot write manifest for: " + out_path);
  return 0;
}

int emit_owned(char* owned, const std::string& out_path, const RunContext& ctx) {
  std::string content = owned ? owned : "";
  logvor_string_free(owned);
  return write_output(content, out_path, ctx);
}

double rat_str_to_double(const std::string& s) {
  auto pos = s.find('/');
  if (pos == std::string::npos) return std::stod(s);
  return std::stod(s.substr(0, pos)) / std::stod(s.substr(pos + 1));
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Vertex rows of one cell, for external rendering.
std::string cell_vertices_csv(const Json& cell_json) {
  const Json& verts = cell_json.at("cell").at("vertices");
  std::ostringstream os;
  size_t n = verts.empty() ? 0 : verts[0].size();
  os << "vertex";
  for (size_t i = 0; i < n; ++i) os << ",u" << i + 1;
  os << "\n";
  for (size_t vi = 0; vi < verts.size(); ++vi) {
    os << vi + 1;
    for (const auto& coord : verts[vi])
      os << "," << format_double(rat_str_to_double(coord.get<std::string>()));
    os << "\n";
  }
  return os.str();
}

int thread_count_from_env() {
  if (const char* e = std::getenv("LOGVOR_THREADS")) {
    int v = std::atoi(e);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

std::vector<size_t> parse_index_list(const std::string& text) {
  std::vector<size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size() || v == 0) {
      throw CLI::ValidationError("--face", "expected comma-separated 1-based indices");
    }
    out.push_back(v);
  }
  if (out.empty())
    throw CLI::ValidationError("--face", "expected comma-separated 1-based indices");
  return out;
}

struct ModelHandle {
  logvor_model* m = nullptr;
  ~ModelHandle() { logvor_model_free(m); }
};

int load_model(const std::string& path, ModelHandle& h) {
  logvor_status st = logvor_model_read_file(path.c_str(), &h.m);
  return st == LOGVOR_OK ? 0 : fail(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact log-Voronoi cells of linear statistical models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", logvor_version());

  std::string model_path, out_path, at, u_data, face_list, from_path, name, plot_data_path,
      polytope_path;
  std::vector<std::string> at_many;
  int grid = 20, samples = 1000, random_params = 5, mc_samples = 200;
  uint64_t seed = 42;
  double tol = 1e-7;
  size_t facet = 0;
  bool with_functions = false, endpoints = false, experimental = false, list_faces = false;

  auto* validate = app.add_subcommand("validate", "Check a model file; report any violations");
  validate->add_option("--model", model_path, "model JSON file")->required();
  validate->add_option("-o,--output", out_path, "write the report here instead of stdout");

  auto* examples = app.add_subcommand(
      "examples", "List bundled example models, or write one out as a model file");
  examples->add_option("--name", name, "example to write (omit to list names)");
  examples->add_option("--from", from_path, "external fixture file (m06 slot only)");
  examples->add_option("-o,--output", out_path, "output path (default <name>.json)");

  auto* cocircuits =
      app.add_subcommand("cocircuits", "Positive co-circuits of the model's kernel");
  cocircuits->add_option("--model", model_path, "model JSON file")->required();
  cocircuits->add_flag("--functions", with_functions,
                       "include the symbolic vertex formulas");
  cocircuits->add_option("-o,--output", out_path, "write the report here instead of stdout");

  auto* cell = app.add_subcommand("cell", "Cell of the parameter point --at");
  cell->add_option("--model", model_path, "model JSON file")->required();
  cell->add_option("--at", at, "parameter point, e.g. \"x=0\" or \"1/8,1/81\"");
  cell->add_flag("--endpoints", endpoints,
                 "for d = 1 models: both endpoint cells via the closed form");
  cell->add_option("--plot-data", plot_data_path, "also dump the cell's vertices as CSV");

  cell->add_option("-o,--output", out_path, "write the report here instead of stdout");

  auto* gale = app.add_subcommand("gale", "Dual configuration and its sliced polytope");
  gale->add_option("--model", model_path, "model JSON file")->required();
  gale->add_option("-o,--output", out_path, "write the report here instead of stdout");

  auto* type_check = app.add_subcommand(
      "type-check", "Verify cells are combinatorially the dual slice polytope");
  type_check->add_option("--model", model_path, "model JSON file")->required();
  type_check->add_option("--at", at_many, "parameter point (repeatable)");
  type_check->add_option("--params", random_params,
                         "random interior points when --at is absent")
      ->default_val(5);
  type_check->add_option("--seed", seed, "RNG seed for random points")->default_val(42);
  type_check->add_option("-o,--output", out_path, "write the report here instead of stdout");

  auto* partial_cell =
      app.add_subcommand("partial-cell", "Cells of a partial model, boundary included");
  partial_cell->add_option("--model", model_path, "model JSON file")->required();
  auto* facet_opt =
      partial_cell->add_option("--facet", facet, "1-based theta facet index");
  auto* face_opt = partial_cell->add_option(
      "--face", face_list, "theta face as 1-based vertex indices, e.g. \"1,3\"");
  face_opt->excludes(facet_opt);
  partial_cell->add_option("--at", at, "parameter point on the chosen face");
  partial_cell->add_flag(
      "--experimental", experimental,
      "allow the codimension >= 2 construction and attach a Monte-Carlo check");
  partial_cell->add_option("--mc-samples", mc_samples,
                           "samples for the Monte-Carlo check")
      ->default_val(200);
  partial_cell->add_option("--seed", seed, "RNG seed for the Monte-Carlo check")
      ->default_val(42);
  partial_cell->add_flag("--list-faces", list_faces, "list theta's faces and exit");
  partial_cell->add_option("-o,--output", out_path,
                           "write the report here instead of stdout");

  auto* tessellate = app.add_subcommand(
      "tessellate", "Sample the simplex and check cells tile it (numeric oracle)");
  tessellate->add_option("--model", model_path, "model JSON file")->required();
  tessellate->add_option("--samples", samples, "number of samples")->default_val(1000);
  tessellate->add_option("--seed", seed, "RNG seed")->default_val(42);
  tessellate->add_option("--tol", tol, "membership tolerance")->default_val(1e-7);
  tessellate->add_option("-o,--output", out_path, "write the report here instead of stdout");

  auto* realize = app.add_subcommand(
      "realize", "Build a model whose cell at the centroid is the given polytope");
  realize->add_option("--polytope", polytope_path,
                      "JSON file with \"M\" (rows) and \"b\" (offsets)")
      ->required();
  realize->add_option("-o,--output", out_path, "write the report here instead of stdout");

  auto* mle = app.add_subcommand("mle", "Numeric maximum-likelihood point for a data vector");
  mle->add_option("--model", model_path, "model JSON file")->required();
  mle->add_option("--u", u_data, "data vector as comma-separated rationals")->required();
  mle->add_option("-o,--output", out_path, "write the report here instead of stdout");

  auto* export_plot = app.add_subcommand(
      "export-plot", "CSV of cell vertices over a parameter sweep (n = 3 or 4)");
  export_plot->add_option("--model", model_path, "model JSON file")->required();
  export_plot->add_option("--grid", grid, "number of parameter samples")->default_val(20);
  export_plot->add_option("--seed", seed, "RNG seed (d >= 2 sweeps)")->default_val(42);
  export_plot->add_option("-o,--output", out_path, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  RunContext ctx;
  ctx.command = shell_join(argc, argv);
  if (!model_path.empty()) ctx.input_file = model_path;

  if (validate->parsed()) {
    ModelHandle h;
    if (int rc = load_model(model_path, h)) return rc;
    char* out = nullptr;
    logvor_status st = logvor_validate(h.m, &out);
    if (st != LOGVOR_OK) return fail(st);
    return emit_owned(out, out_path, ctx);
  }

  if (examples->parsed()) {
    if (name.empty()) {
      char* out = nullptr;
      logvor_status st = logvor_example_names(&out);
      if (st != LOGVOR_OK) return fail(st);
      return emit_owned(out, out_path, ctx);
    }
    ModelHandle h;
    if (name == "m06") {
      if (from_path.empty())
        return fail_domain(
            "example \"m06\" is an external fixture slot: pass --from FILE");
      ctx.input_file = from_path;
      if (int rc = load_model(from_path, h)) return rc;
    } else {
      if (!from_path.empty())
        return fail_domain("--from only applies to the \"m06\" fixture slot");
      logvor_status st = logvor_example_model(name.c_str(), &h.m);
      if (st != LOGVOR_OK) return fail(st);
    }
    char* out = nullptr;
    logvor_status st = logvor_model_to_json(h.m, &out);
    if (st != LOGVOR_OK) return fail(st);
    return emit_owned(out, out_path.empty() ? name + ".json" : out_path, ctx);
  }

  if (cocircuits->parsed()) {
    ModelHandle h;
    if (int rc = load_model(model_path, h)) return rc;
    char* out = nullptr;
    logvor_status st = logvor_cocircuits(h.m, with_functions ? 1 : 0, &out);
    if (st != LOGVOR_OK) return fail(st);
    return emit_owned(out, out_path, ctx);
  }

  if (cell->parsed()) {
    ModelHandle h;
    if (int rc = load_model(model_path, h)) return rc;
    if (endpoints) {
      if (!at.empty())
        return fail_domain("--endpoints computes both ends; it does not take --at");
      char* out = nullptr;
      logvor_status st = logvor_endpoints_d1(h.m, &out);
      if (st != LOGVOR_OK) return fail(st);
      return emit_owned(out, out_path, ctx);
    }
    char* out = nullptr;
    logvor_status st = logvor_cell(h.m, at.empty() ? nullptr : at.c_str(), &out);
    if (st != LOGVOR_OK) return fail(st);
    std::string content = out ? out : "";
    logvor_string_free(out);
    if (!plot_data_path.empty()) {
      std::string csv;
      try {
        csv = cell_vertices_csv(Json::parse(content));
      } catch (const Json::exception& e) {
        return fail_domain(std::string("cannot extract plot data: ") + e.what());
      }
      if (int rc = write_output(csv, plot_data_path, ctx)) return rc;
    }
    return write_output(content, out_path, ctx);
  }

  if (gale->parsed()) {
    ModelHandle h;
    if (int rc = load_model(model_path, h)) return rc;
    char* out = nullptr;
    logvor_status st = logvor_gale(h.m, &out);
    if (st != LOGVOR_OK) return fail(st);
    return emit_owned(out, out_path, ctx);
  }

  if (type_check->parsed()) {
    ModelHandle h;
    if (int rc = load_model(model_path, h)) return rc;
    std::vector<const char*> at_ptrs;
    at_ptrs.reserve(at_many.size());
    for (const std::string& s : at_many) at_ptrs.push_back(s.c_str());
    if (at_ptrs.empty()) ctx.seed = seed;
    char* out = nullptr;
    logvor_status st = logvor_type_check(h.m, at_ptrs.data(), at_ptrs.size(), random_params,
                                         seed, &out);
    if (st != LOGVOR_OK) return fail(st);
    return emit_owned(out, out_path, ctx);
  }

  if (partial_cell->parsed()) {
    ModelHandle h;
    if (int rc = load_model(model_path, h)) return rc;
    if (list_faces) {
      char* out = nullptr;
      logvor_status st = logvor_theta_faces(h.m, &out);
      if (st != LOGVOR_OK) return fail(st);
      return emit_owned(out, out_path, ctx);
    }
    int mc = experimental ? mc_samples : 0;
    if (mc > 0) ctx.seed = seed;
    char* out = nullptr;
    logvor_status st;
    if (facet_opt->count() > 0) {
      st = logvor_partial_cell(h.m, facet, at.empty() ? nullptr : at.c_str(), mc, seed, &out);
    } else if (face_opt->count() > 0) {
      std::vector<size_t> verts;
      try {
        verts = parse_index_list(face_list);
      } catch (const CLI::ParseError& e) {
        std::fputs((std::string(e.what()) + "\n").c_str(), stderr);
        return 2;
      }
      st = logvor_partial_cell_face(h.m, verts.data(), verts.size(),
                                    at.empty() ? nullptr : at.c_str(), mc, seed, &out);
      if (st == LOGVOR_OK && !experimental) {
        Json j = Json::parse(out);
        if (j.value("experimental", false)) {
          logvor_string_free(out);
          return fail_domain(
              "this face has codimension >= 2 in theta; its cell rests on the conjectural "
              "construction — rerun with --experimental to accept that");
        }
      }
    } else {
      st = logvor_cell(h.m, at.empty() ? nullptr : at.c_str(), &out);
    }
    if (st != LOGVOR_OK) return fail(st);
    return emit_owned(out, out_path, ctx);
  }

  if (tessellate->parsed()) {
    ModelHandle h;
    if (int rc = load_model(model_path, h)) return rc;
    ctx.seed = seed;
    ctx.tolerances = Json{{"tol", tol}};
    char* out = nullptr;
    logvor_status st =
        logvor_tessellate(h.m, samples, seed, tol, thread_count_from_env(), &out);
    if (st != LOGVOR_OK) return fail(st);
    return emit_owned(out, out_path, ctx);
  }

  if (realize->parsed()) {
    auto bytes = read_file_bytes(polytope_path);
    if (!bytes) return fail_domain("cannot read file: " + polytope_path);
    ctx.input_file = polytope_path;
    char* out = nullptr;
    logvor_status st = logvor_realize(bytes->c_str(), nullptr, &out);
    if (st != LOGVOR_OK) return fail(st);
    return emit_owned(out, out_path, ctx);
  }

  if (mle->parsed()) {
    ModelHandle h;
    if (int rc = load_model(model_path, h)) return rc;
    char* out = nullptr;
    logvor_status st = logvor_mle(h.m, u_data.c_str(), &out);
    if (st != LOGVOR_OK) return fail(st);
    return emit_owned(out, out_path, ctx);
  }

  if (export_plot->parsed()) {
    ModelHandle h;
    if (int rc = load_model(model_path, h)) return rc;
    ctx.seed = seed;
    char* out = nullptr;
    logvor_status st = logvor_export_plot(h.m, grid, seed, &out);
    if (st != LOGVOR_OK) return fail(st);
    return emit_owned(out, out_path, ctx);
  }

  return 2;
}
