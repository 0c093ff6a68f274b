// End-to-end tests of the command line tool as a subprocess.
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string cli() { return std::string("\"") + LOGVOR_CLI_PATH + "\""; }
std::string tmp(const std::string& rel) { return std::string(LOGVOR_TMP_DIR) + "/" + rel; }
std::string golden(const std::string& rel) {
  return std::string(LOGVOR_GOLDEN_DIR) + "/" + rel;
}

// Runs `prefix cli args`, capturing stdout (+stderr when merged).
RunResult run_full(const std::string& args, bool merge_stderr, const std::string& prefix = "") {
  std::string cmd = prefix + cli() + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

RunResult run(const std::string& args) { return run_full(args, true); }
RunResult run_out(const std::string& args) { return run_full(args, false); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(in), "missing file: " << path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

long lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

// Writes the bundled models this suite keeps reusing into the tmp dir.
void once() {
  static bool done = false;
  if (done) return;
  fs::create_directories(LOGVOR_TMP_DIR);
  for (const char* name :
       {"triangle", "quadrilateral", "cube1", "cube2", "tetra1", "partial-triangle"}) {
    RunResult r = run(std::string("examples --name ") + name + " -o " +
                      tmp(std::string(name) + ".json"));
    REQUIRE_MESSAGE(r.code == 0, r.out);
  }
  done = true;
}

}  // namespace

TEST_CASE("examples write model files with manifests") {
  once();
  CHECK(read_file(tmp("triangle.json")) == read_file(golden("triangle.json")));
  CHECK(read_file(tmp("partial-triangle.json")) == read_file(golden("partial-triangle.json")));

  Json m = Json::parse(read_file(tmp("triangle.json.manifest.json")));
  CHECK(m.at("command").get<std::string>().find("examples") != std::string::npos);
  CHECK(m.at("toolkit_version") == "0.1.0");
  CHECK(m.at("model_file_hash").is_null());
  CHECK(m.at("seed").is_null());
  CHECK(m.at("tolerances").is_null());
  std::string ts = m.at("timestamp").get<std::string>();
  CHECK(ts.size() == 20);
  CHECK(ts[10] == 'T');
  CHECK(ts.back() == 'Z');
}

TEST_CASE("examples list and fixture slot") {
  RunResult r = run_out("examples");
  CHECK(r.code == 0);
  Json names = Json::parse(r.out);
  CHECK(names.size() == 7);
  CHECK(std::find(names.begin(), names.end(), Json("triangle")) != names.end());

  RunResult m06 = run("examples --name m06 -o " + tmp("m06.json"));
  CHECK(m06.code == 1);
  CHECK(m06.out.find("--from") != std::string::npos);
  CHECK(run("examples --name triangle --from /tmp/x.json -o " + tmp("t.json")).code == 1);
  CHECK(run("examples --name no-such -o " + tmp("t.json")).code == 1);
}

TEST_CASE("cell reports are stable") {
  once();
  RunResult r = run_out("cell --model " + tmp("triangle.json") + " --at x=0");
  CHECK(r.code == 0);
  CHECK(r.out == read_file(golden("cell_triangle_x0.json")));

  // Same content lands in a file, with a manifest naming the model hash.
  RunResult f = run("cell --model " + tmp("triangle.json") + " --at x=0 -o " +
                    tmp("cell.json") + " --plot-data " + tmp("cellplot.csv"));
  REQUIRE_MESSAGE(f.code == 0, f.out);
  CHECK(read_file(tmp("cell.json")) == r.out);
  CHECK(lines(read_file(tmp("cellplot.csv"))) == 4);  // header + 3 vertices
  Json m1 = Json::parse(read_file(tmp("cell.json.manifest.json")));
  Json m2 = Json::parse(read_file(tmp("cellplot.csv.manifest.json")));
  CHECK(m1.at("model_file_hash").is_string());
  CHECK(m1.at("model_file_hash") == m2.at("model_file_hash"));
  CHECK(m1.at("model_file_hash").get<std::string>().rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("failures exit 1 with a JSON error") {
  once();
  RunResult missing = run("cell --model /no/such/model.json --at x=0");
  CHECK(missing.code == 1);
  CHECK(Json::parse(missing.out).at("error").contains("kind"));

  std::ofstream bad(tmp("bad.json"));
  bad << R"({"n":4,"d":1,"c":["1/4","1/4","1/4","1/4"],"B":[["1"],["-5"],["2"],["3"]]})";
  bad.close();
  RunResult inv = run("cell --model " + tmp("bad.json") + " --at x=0");
  CHECK(inv.code == 1);
  CHECK(Json::parse(inv.out).at("error").at("kind") == "invalid-model");

  RunResult dom = run("cell --model " + tmp("triangle.json") + " --at x=1/4");
  CHECK(dom.code == 1);
  CHECK(Json::parse(dom.out).at("error").at("kind") == "domain");
}

TEST_CASE("usage errors exit 2") {
  once();
  CHECK(run("cell").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("partial-cell --model " + tmp("partial-triangle.json") +
            " --facet 1 --face 1,2")
            .code == 2);
  CHECK(run("partial-cell --model " + tmp("partial-triangle.json") + " --face bogus").code ==
        2);

  RunResult v = run("--version");
  CHECK(v.code == 0);
  CHECK(v.out.find("0.1.0") != std::string::npos);
  CHECK(run("--help").code == 0);
}

TEST_CASE("cocircuits carry optional formulas") {
  once();
  RunResult r = run_out("cocircuits --model " + tmp("triangle.json") + " --functions");
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("count") == 3);
  CHECK(j.at("functions").size() == 3);
  RunResult bare = run_out("cocircuits --model " + tmp("triangle.json"));
  CHECK_FALSE(Json::parse(bare.out).contains("functions"));
}

TEST_CASE("plot exports") {
  once();
  CHECK(run_out("export-plot --model " + tmp("triangle.json") + " --grid 5").out ==
        read_file(golden("plot_triangle_grid5.csv")));

  RunResult r = run("export-plot --model " + tmp("triangle.json") + " -o " + tmp("plot.csv"));
  REQUIRE_MESSAGE(r.code == 0, r.out);
  CHECK(lines(read_file(tmp("plot.csv"))) == 61);  // header + 20 params x 3 vertices
  Json m = Json::parse(read_file(tmp("plot.csv.manifest.json")));
  CHECK(m.at("seed") == 42);

  CHECK(run("export-plot --model " + tmp("cube1.json")).code == 1);
}

TEST_CASE("tessellate honors the thread environment") {
  once();
  RunResult r = run_full("tessellate --model " + tmp("triangle.json") + " --samples 50", false,
                         "LOGVOR_THREADS=3 ");
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("samples") == 50);
  CHECK(j.at("passed") == 50);
  CHECK(j.at("threads") == 3);
  CHECK(j.at("seed") == 42);
}

TEST_CASE("partial cells from the command line") {
  once();
  std::string model = " --model " + tmp("partial-triangle.json");

  RunResult facet = run_out("partial-cell" + model + " --facet 3");
  CHECK(facet.code == 0);
  CHECK(facet.out == read_file(golden("partial_facet3.json")));

  RunResult face = run_out("partial-cell" + model + " --face 2,3");
  CHECK(face.code == 0);
  Json fj = Json::parse(face.out);
  CHECK(fj.at("experimental") == false);
  CHECK(fj.at("cell").at("vertices") == Json::parse(facet.out).at("cell").at("vertices"));

  RunResult gated = run("partial-cell" + model + " --face 1");
  CHECK(gated.code == 1);
  CHECK(gated.out.find("--experimental") != std::string::npos);

  RunResult exp = run_out("partial-cell" + model + " --face 1 --experimental --mc-samples 10");
  CHECK(exp.code == 0);
  Json ej = Json::parse(exp.out);
  CHECK(ej.at("experimental") == true);
  CHECK(ej.at("monte_carlo").at("samples") == 10);
  CHECK(ej.at("monte_carlo").at("agreement_rate").get<double>() >= 0.9);

  RunResult faces = run_out("partial-cell" + model + " --list-faces");
  CHECK(faces.code == 0);
  CHECK(Json::parse(faces.out).at("faces").size() == 7);

  RunResult interior = run_out("partial-cell" + model);
  CHECK(interior.code == 0);
  CHECK(Json::parse(interior.out).at("interior") == true);
}

TEST_CASE("gale and endpoints match their goldens") {
  once();
  RunResult g = run_out("gale --model " + tmp("quadrilateral.json"));
  CHECK(g.code == 0);
  CHECK(g.out == read_file(golden("gale_quadrilateral.json")));
  CHECK(Json::parse(g.out).at("dual_slice").at("f_vector") == Json::array({4, 4}));

  RunResult e = run_out("cell --model " + tmp("tetra1.json") + " --endpoints");
  CHECK(e.code == 0);
  CHECK(e.out == read_file(golden("endpoints_tetra1.json")));

  CHECK(run("cell --model " + tmp("tetra1.json") + " --endpoints --at x=0").code == 1);
  RunResult tie = run("cell --model " + tmp("triangle.json") + " --endpoints");
  CHECK(tie.code == 1);
  CHECK(Json::parse(tie.out).at("error").at("kind") == "unsupported");
}

TEST_CASE("validate and type-check") {
  once();
  RunResult v = run_out("validate --model " + tmp("cube2.json"));
  CHECK(v.code == 0);
  CHECK(v.out == read_file(golden("validate_cube2.json")));
  Json vj = Json::parse(v.out);
  CHECK(vj.at("ok") == true);
  CHECK(vj.at("transversality").at("transversal") == false);

  RunResult t =
      run_out("type-check --model " + tmp("quadrilateral.json") + " --at x=0 --at 1/100");
  CHECK(t.code == 0);
  CHECK(Json::parse(t.out).at("check").at("holds") == true);

  RunResult tr = run_out("type-check --model " + tmp("triangle.json") + " --params 3");
  CHECK(tr.code == 0);
  Json trj = Json::parse(tr.out);
  CHECK(trj.at("check").at("holds") == true);
  CHECK(trj.at("params").size() == 3);
}

TEST_CASE("mle and realize") {
  once();
  RunResult m = run_out("mle --model " + tmp("triangle.json") + " --u 1/4,1/4,1/4,1/4");
  CHECK(m.code == 0);
  Json mj = Json::parse(m.out);
  CHECK(mj.at("converged") == true);
  CHECK(std::abs(mj.at("x")[0].get<double>()) < 1e-8);

  std::ofstream sys(tmp("sys.json"));
  sys << R"({"M":[["1","1","0","0"]],"b":["1/2"]})";
  sys.close();
  RunResult r = run("realize --polytope " + tmp("sys.json") + " -o " + tmp("real.json"));
  REQUIRE_MESSAGE(r.code == 0, r.out);
  Json rj = Json::parse(read_file(tmp("real.json")));
  CHECK(rj.at("model").at("n") == 4);
  CHECK(rj.at("input").at("f_vector") == Json::array({4, 4}));
  Json man = Json::parse(read_file(tmp("real.json.manifest.json")));
  CHECK(man.at("model_file_hash").is_string());
}
