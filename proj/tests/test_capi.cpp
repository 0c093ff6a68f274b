// Exercises the shared library through its C surface only.
#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "logvor/logvor.h"

using Json = nlohmann::json;

namespace {

// Takes ownership of a C string result.
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  logvor_string_free(s);
  return out;
}

struct Model {
  logvor_model* h = nullptr;
  ~Model() { logvor_model_free(h); }
};

Model example(const char* name) {
  Model m;
  REQUIRE(logvor_example_model(name, &m.h) == LOGVOR_OK);
  return m;
}

const char* kTriangleJson =
    R"({"name":"tri","n":4,"d":1,"c":["1/4","1/4","1/4","1/4"],"B":[["1"],["-5"],["2"],["2"]]})";

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(logvor_version()) == LOGVOR_VERSION);
  CHECK(std::string(logvor_version()) == "0.1.0");
  CHECK(std::string(logvor_status_name(LOGVOR_OK)) == "ok");
  CHECK(std::string(logvor_status_name(LOGVOR_ERR_PARSE)) == "parse");
  CHECK(std::string(logvor_status_name(LOGVOR_ERR_DOMAIN)) == "domain");
  CHECK(std::string(logvor_status_name(LOGVOR_ERR_UNSUPPORTED)) == "unsupported");
  CHECK(std::string(logvor_status_name(static_cast<logvor_status>(99))) == "unknown");
}

TEST_CASE("model parsing and accessors") {
  logvor_model* m = nullptr;
  REQUIRE(logvor_model_parse(kTriangleJson, &m) == LOGVOR_OK);
  CHECK(logvor_model_n(m) == 4);
  CHECK(logvor_model_d(m) == 1);
  CHECK(logvor_model_is_partial(m) == 0);

  char* js = nullptr;
  REQUIRE(logvor_model_to_json(m, &js) == LOGVOR_OK);
  Json j = Json::parse(take(js));
  CHECK(j.at("name") == "tri");
  CHECK(j.at("c")[0] == "1/4");
  logvor_model_free(m);

  CHECK(logvor_model_n(nullptr) == -1);
  CHECK(logvor_model_d(nullptr) == -1);
  CHECK(logvor_model_is_partial(nullptr) == -1);
  logvor_model_free(nullptr);  // must be a no-op
  logvor_string_free(nullptr);
}

TEST_CASE("parse failures set the thread error message") {
  logvor_model* m = nullptr;
  CHECK(logvor_model_parse("{oops", &m) == LOGVOR_ERR_PARSE);
  CHECK(std::string(logvor_last_error()).size() > 0);
  CHECK(m == nullptr);

  CHECK(logvor_model_parse(R"({"c":["1/2","1/2"]})", &m) == LOGVOR_ERR_PARSE);
  CHECK(logvor_model_read_file("/no/such/file.json", &m) != LOGVOR_OK);
  char* rep = nullptr;
  CHECK(logvor_validate(nullptr, &rep) == LOGVOR_ERR_DOMAIN);
  CHECK(std::string(logvor_last_error()) == "null model handle");
  CHECK(rep == nullptr);
}

TEST_CASE("bundled examples round trip") {
  char* names_json = nullptr;
  REQUIRE(logvor_example_names(&names_json) == LOGVOR_OK);
  Json names = Json::parse(take(names_json));
  std::vector<std::string> expect{"triangle",  "quadrilateral", "cube1",           "cube2",
                                  "tetra1",    "tetra2",        "partial-triangle"};
  CHECK(names.get<std::vector<std::string>>() == expect);

  for (const std::string& n : expect) {
    Model m = example(n.c_str());
    char* rep = nullptr;
    REQUIRE(logvor_validate(m.h, &rep) == LOGVOR_OK);
    Json j = Json::parse(take(rep));
    CHECK(j.at("ok") == true);
    if (logvor_model_is_partial(m.h) == 0) {
      REQUIRE(j.contains("transversality"));
      CHECK(j["transversality"].contains("transversal"));
    }
  }
  CHECK(logvor_model_is_partial(example("partial-triangle").h) == 1);

  logvor_model* bad = nullptr;
  CHECK(logvor_example_model("no-such", &bad) == LOGVOR_ERR_DOMAIN);
}

TEST_CASE("cells through the C surface") {
  Model tri = example("triangle");

  char* out = nullptr;
  REQUIRE(logvor_cell(tri.h, "x=0", &out) == LOGVOR_OK);
  Json j = Json::parse(take(out));
  CHECK(j.at("x") == Json::array({"0"}));
  CHECK(j.at("interior") == true);
  Json expect = Json::array({Json::array({"0", "2/7", "0", "5/7"}),
                             Json::array({"0", "2/7", "5/7", "0"}),
                             Json::array({"5/6", "1/6", "0", "0"})});
  CHECK(j.at("cell").at("vertices") == expect);

  // NULL parameter means the centroid of the parameter polytope.
  REQUIRE(logvor_cell(tri.h, nullptr, &out) == LOGVOR_OK);
  Json jc = Json::parse(take(out));
  CHECK(jc.at("cell").at("dim") == 2);

  CHECK(logvor_cell(tri.h, "x=1/4", &out) == LOGVOR_ERR_DOMAIN);
  CHECK(logvor_cell(tri.h, "x=nonsense", &out) == LOGVOR_ERR_PARSE);

  char* cj = nullptr;
  REQUIRE(logvor_cocircuits(tri.h, 1, &cj) == LOGVOR_OK);
  Json cc = Json::parse(take(cj));
  CHECK(cc.at("count") == 3);
  REQUIRE(cc.contains("functions"));
  CHECK(cc.at("functions").size() == 3);
  CHECK(cc.at("functions")[0].contains("formula"));
}

TEST_CASE("endpoint cells") {
  Model t1 = example("tetra1");
  char* out = nullptr;
  REQUIRE(logvor_endpoints_d1(t1.h, &out) == LOGVOR_OK);
  Json j = Json::parse(take(out));
  CHECK(j.at("x_left") == "-1/20");
  CHECK(j.at("x_right") == "1/12");
  CHECK(j.at("left_index") == 2);
  CHECK(j.at("right_index") == 3);

  Model part = example("partial-triangle");
  CHECK(logvor_endpoints_d1(part.h, &out) == LOGVOR_ERR_DOMAIN);
  Model tri = example("triangle");
  CHECK(logvor_endpoints_d1(tri.h, &out) == LOGVOR_ERR_UNSUPPORTED);
}

TEST_CASE("gale and type check") {
  Model quad = example("quadrilateral");
  char* out = nullptr;
  REQUIRE(logvor_gale(quad.h, &out) == LOGVOR_OK);
  Json g = Json::parse(take(out));
  CHECK(g.at("check").at("ok") == true);
  CHECK(g.at("dual_slice").at("f_vector") == Json::array({4, 4}));
  CHECK(g.at("A").size() == 3);  // n - d rows

  const char* at[] = {"x=0", "x=1/100"};
  REQUIRE(logvor_type_check(quad.h, at, 2, 0, 0, &out) == LOGVOR_OK);
  Json t = Json::parse(take(out));
  CHECK(t.at("check").at("holds") == true);
  CHECK(t.at("check").at("cells").size() == 2);

  REQUIRE(logvor_type_check(quad.h, nullptr, 0, 3, 11, &out) == LOGVOR_OK);
  Json tr = Json::parse(take(out));
  CHECK(tr.at("check").at("holds") == true);
  CHECK(tr.at("params").size() == 3);
}

TEST_CASE("partial cells with a monte carlo block") {
  Model part = example("partial-triangle");
  char* out = nullptr;

  REQUIRE(logvor_partial_cell(part.h, 3, nullptr, 25, 9, &out) == LOGVOR_OK);
  Json j = Json::parse(take(out));
  CHECK(j.at("facet_index") == 3);
  CHECK(j.at("facet_theta_vertices") == Json::array({2, 3}));
  CHECK(j.at("x") == Json::array({"1/40", "1/40"}));
  CHECK(j.at("p") == Json::array({"1/5", "1/5", "3/10", "3/10"}));
  Json q = Json::array({Json::array({"0", "0", "1/2", "1/2"}),
                        Json::array({"0", "2/5", "3/10", "3/10"}),
                        Json::array({"2/5", "0", "3/10", "3/10"})});
  CHECK(j.at("cell").at("vertices") == q);
  REQUIRE(j.contains("monte_carlo"));
  CHECK(j["monte_carlo"].at("samples") == 25);
  CHECK(j["monte_carlo"].at("converged") == 25);
  CHECK(j["monte_carlo"].at("agreement_rate").get<double>() >= 0.9);

  CHECK(logvor_partial_cell(part.h, 0, nullptr, 0, 0, &out) == LOGVOR_ERR_DOMAIN);
  CHECK(logvor_partial_cell(part.h, 9, nullptr, 0, 0, &out) == LOGVOR_ERR_DOMAIN);
  Model tri = example("triangle");
  CHECK(logvor_partial_cell(tri.h, 1, nullptr, 0, 0, &out) == LOGVOR_ERR_DOMAIN);

  size_t face[] = {2, 3};
  REQUIRE(logvor_partial_cell_face(part.h, face, 2, nullptr, 0, 0, &out) == LOGVOR_OK);
  Json f = Json::parse(take(out));
  CHECK(f.at("experimental") == false);
  CHECK(f.at("cell").at("vertices") == q);
  CHECK(f.contains("extension_transversal"));

  size_t vert[] = {1};
  REQUIRE(logvor_partial_cell_face(part.h, vert, 1, nullptr, 10, 5, &out) == LOGVOR_OK);
  Json v = Json::parse(take(out));
  CHECK(v.at("experimental") == true);
  CHECK(v.at("cell").at("dim") == 3);
  CHECK(v.at("monte_carlo").at("agreement_rate").get<double>() >= 0.9);

  char* faces_json = nullptr;
  REQUIRE(logvor_theta_faces(part.h, &faces_json) == LOGVOR_OK);
  Json faces = Json::parse(take(faces_json));
  CHECK(faces.at("faces").size() == 7);  // 3 vertices + 3 edges + theta
}

TEST_CASE("realize, mle, tessellate, plot export") {
  char* out = nullptr;
  const char* sys = R"({"M":[["1","1","0","0"]],"b":["1/2"]})";
  logvor_model* made = nullptr;
  REQUIRE(logvor_realize(sys, &made, &out) == LOGVOR_OK);
  Json r = Json::parse(take(out));
  CHECK(r.at("model").at("n") == 4);
  CHECK(logvor_model_n(made) == 4);
  char* cell = nullptr;
  REQUIRE(logvor_cell(made, "0", &cell) == LOGVOR_OK);
  Json cj = Json::parse(take(cell));
  CHECK(cj.at("cell").at("vertices") == r.at("input").at("vertices"));
  logvor_model_free(made);
  CHECK(logvor_realize(R"({"M":[]})", nullptr, &out) == LOGVOR_ERR_PARSE);

  Model tri = example("triangle");
  REQUIRE(logvor_mle(tri.h, "1/4,1/4,1/4,1/4", &out) == LOGVOR_OK);
  Json mj = Json::parse(take(out));
  CHECK(mj.at("converged") == true);
  CHECK(mj.at("x")[0].get<double>() == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(logvor_mle(tri.h, "-1,1,1,1", &out) == LOGVOR_ERR_DOMAIN);
  CHECK(logvor_mle(tri.h, "1/4,1/4", &out) == LOGVOR_ERR_PARSE);

  REQUIRE(logvor_tessellate(tri.h, 100, 3, 1e-7, 2, &out) == LOGVOR_OK);
  Json tj = Json::parse(take(out));
  CHECK(tj.at("samples") == 100);
  CHECK(tj.at("passed") == 100);
  CHECK(logvor_tessellate(tri.h, 0, 3, 1e-7, 1, &out) == LOGVOR_ERR_DOMAIN);

  REQUIRE(logvor_export_plot(tri.h, 5, 1, &out) == LOGVOR_OK);
  std::string csv = take(out);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 16);
  CHECK(csv.rfind("sample,x,vertex,u1,u2,u3,u4", 0) == 0);

  Model c1 = example("cube1");
  CHECK(logvor_export_plot(c1.h, 5, 1, &out) == LOGVOR_ERR_UNSUPPORTED);
  CHECK(logvor_export_plot(tri.h, 0, 1, &out) == LOGVOR_ERR_DOMAIN);
}
