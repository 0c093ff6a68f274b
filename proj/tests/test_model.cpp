#include "builtin_models.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "model.hpp"

using namespace logvor;
using namespace logvor::testing;

namespace {

LinearModel bundled(const std::string& name) { return example_model(name).full; }

}  // namespace

TEST_CASE("bundled models validate") {
  for (const auto& name : example_names()) {
    ExampleModel ex = example_model(name);
    if (ex.partial)
      CHECK(validate(*ex.partial).ok);
    else
      CHECK(validate(ex.full).ok);
  }
  CHECK_THROWS_AS(example_model("no-such-model"), Error);
}

TEST_CASE("validation catches each violation") {
  LinearModel good = bundled("triangle");
  CHECK(validate(good).ok);

  LinearModel m = good;
  m.c[0] = -m.c[0];
  CHECK_FALSE(validate(m).ok);

  m = good;
  m.c[0] += 1;
  CHECK_FALSE(validate(m).ok);  // no longer sums to 1

  m = good;
  m.B[0][0] += 1;
  CHECK_FALSE(validate(m).ok);  // column sum nonzero

  m = good;
  m.B.pop_back();
  CHECK_FALSE(validate(m).ok);  // wrong number of rows

  m = good;
  for (auto& row : m.B) row[0] = 0;
  CHECK_FALSE(validate(m).ok);  // rank-deficient

  CHECK_THROWS_AS(require_valid(m), Error);
  try {
    require_valid(m);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidModel);
  }
}

TEST_CASE("parameter polytope and image of the segment model") {
  LinearModel m = bundled("triangle");
  REQUIRE(m.n == 4);
  REQUIRE(m.d == 1);

  Polytope theta = parameter_polytope(m);
  CHECK(theta.dim() == 1);
  CHECK(theta.vertices() == rm({{"-1/20"}, {"1/8"}}));

  Polytope image = image_polytope(m);
  CHECK(image.dim() == 1);
  CHECK(image.vertices() == rm({{"1/8", "7/8", "0", "0"}, {"3/10", "0", "7/20", "7/20"}}));
  CHECK(model_vertices(m) == image.vertices());
}

TEST_CASE("point evaluation and inversion") {
  LinearModel m = bundled("triangle");

  ModelPoint mid = point_at(m, rv({"0"}));
  CHECK(mid.p == rv({"1/4", "1/4", "1/4", "1/4"}));
  CHECK(mid.interior);
  CHECK(mid.support == std::vector<size_t>{0, 1, 2, 3});

  ModelPoint edge = point_at(m, rv({"1/8"}));
  CHECK(edge.p == rv({"1/8", "7/8", "0", "0"}));
  CHECK_FALSE(edge.interior);
  CHECK(edge.support == std::vector<size_t>{0, 1});

  CHECK_THROWS_AS(point_at(m, rv({"1/4"})), Error);  // outside Theta'

  CHECK(parameter_of(m, rv({"1/4", "1/4", "1/4", "1/4"})) == rv({"0"}));
  CHECK(parameter_of(m, edge.p) == rv({"1/8"}));
}

TEST_CASE("transversality of the bundled models") {
  CHECK(is_transversal(bundled("cube1")).transversal);
  CHECK(is_transversal(bundled("tetra1")).transversal);
  CHECK(is_transversal(bundled("tetra2")).transversal);

  TransversalityReport r = is_transversal(bundled("cube2"));
  CHECK_FALSE(r.transversal);
  CHECK(r.witness_param == rv({"-5/324", "1/81"}));
  CHECK(r.witness_zeros == 3);  // d = 2 expected at a transversal vertex

  // The segment model hits a 2-zero vertex although d = 1.
  TransversalityReport t = is_transversal(bundled("triangle"));
  CHECK_FALSE(t.transversal);
  CHECK(t.witness_param == rv({"1/8"}));
  CHECK(t.witness_zeros == 2);

  CHECK_FALSE(is_transversal(bundled("quadrilateral")).transversal);
}

TEST_CASE("face extensions of the bundled partial model") {
  PartialLinearModel pm = *example_model("partial-triangle").partial;
  REQUIRE(validate(pm).ok);
  // theta vertices sort as (0,0), (0,1/20), (1/20,0)
  CHECK(pm.theta.vertices() == rm({{"0", "0"}, {"0", "1/20"}, {"1/20", "0"}}));

  SUBCASE("the off-simplex facet spans a one-dimensional model") {
    LinearModel fe = face_extension(pm, {1, 2});
    CHECK(fe.n == 4);
    CHECK(fe.d == 1);
    CHECK(fe.c == rv({"1/5", "1/5", "3/10", "3/10"}));
    CHECK(fe.B == rm({{"0"}, {"0"}, {"1"}, {"-1"}}));
    CHECK(validate(fe).ok);
  }

  SUBCASE("facet_extension matches face_extension on facet vertex sets") {
    for (size_t k = 0; k < pm.theta.halfspaces().size(); ++k) {
      LinearModel a = facet_extension(pm, k);
      LinearModel b = face_extension(pm, facet_vertex_indices(pm.theta, k));
      CHECK(a.c == b.c);
      CHECK(a.B == b.B);
    }
  }

  SUBCASE("a vertex face extends to a zero-dimensional model") {
    LinearModel fe = face_extension(pm, {0});
    CHECK(fe.d == 0);
    CHECK(fe.c == rv({"1/4", "1/4", "1/4", "1/4"}));
    CHECK(fe.B == RatMatrix(4, RatVector{}));
  }
}

TEST_CASE("partial validation") {
  PartialLinearModel pm = *example_model("partial-triangle").partial;

  PartialLinearModel bad = pm;
  bad.theta = Polytope::from_vertices(2, rm({{"0", "0"}, {"1", "0"}, {"0", "1"}}));
  CHECK_FALSE(validate(bad).ok);  // pokes out of Theta'

  bad = pm;
  bad.theta = Polytope::from_vertices(2, rm({{"0", "0"}, {"1/20", "0"}}));
  CHECK_FALSE(validate(bad).ok);  // not full-dimensional

  bad = pm;
  bad.theta = Polytope::empty(2);
  CHECK_FALSE(validate(bad).ok);

  // theta equal to the whole parameter polytope: every facet of the image
  // lies on the simplex boundary, so it is not a partial model.
  LinearModel tri = example_model("triangle").full;
  PartialLinearModel full_as_partial{tri, parameter_polytope(tri), "x"};
  CHECK_FALSE(validate(full_as_partial).ok);
}

TEST_CASE("facet vertex indices agree with the lattice") {
  PartialLinearModel pm = *example_model("partial-triangle").partial;
  for (size_t k = 0; k < pm.theta.halfspaces().size(); ++k) {
    auto idx = facet_vertex_indices(pm.theta, k);
    CHECK(idx.size() == 2);
    for (size_t vi : idx) {
      const RatVector& v = pm.theta.vertices()[vi];
      CHECK(dot(pm.theta.halfspaces()[k].normal, v) == pm.theta.halfspaces()[k].offset);
    }
  }
}

TEST_CASE("random models validate and have interior centroids") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 10; ++i) {
    LinearModel m = random_model(rng, 4 + i % 5, 1 + i % 3);
    Polytope theta = parameter_polytope(m);
    CHECK(theta.dim() == static_cast<int>(m.d));
    CHECK(theta.relint_contains(RatVector(m.d, Rat(0))));
    ModelPoint p = point_at(m, theta.centroid());
    Rat s(0);
    for (const auto& pi : p.p) s += pi;
    CHECK(s == 1);
  }
}
