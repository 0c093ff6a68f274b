#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "polytope.hpp"

using namespace logvor;
using namespace logvor::testing;

namespace {

Polytope unit_cube() {
  RatMatrix pts;
  for (int i = 0; i < 8; ++i)
    pts.push_back(rv({i & 1 ? "1" : "0", i & 2 ? "1" : "0", i & 4 ? "1" : "0"}));
  return Polytope::from_vertices(3, pts);
}

Polytope unit_square() {
  return Polytope::from_vertices(2, rm({{"0", "0"}, {"1", "0"}, {"0", "1"}, {"1", "1"}}));
}

Polytope simplex(size_t n) {
  std::vector<Halfspace> hs;
  for (size_t i = 0; i < n; ++i) {
    RatVector normal(n, Rat(0));
    normal[i] = -1;
    hs.push_back({normal, Rat(0)});
  }
  std::vector<Equation> eqs{{RatVector(n, Rat(1)), Rat(1)}};
  return Polytope::from_halfspaces(n, hs, eqs);
}

}  // namespace

TEST_CASE("vertex and halfspace descriptions agree") {
  Polytope sq = unit_square();
  CHECK(sq.dim() == 2);
  CHECK(sq.vertices().size() == 4);
  CHECK(sq.halfspaces().size() == 4);
  CHECK(sq.equations().empty());
  Polytope back = Polytope::from_halfspaces(2, sq.halfspaces(), sq.equations());
  CHECK(back == sq);

  Polytope cube = unit_cube();
  Polytope cube_back = Polytope::from_halfspaces(3, cube.halfspaces(), cube.equations());
  CHECK(cube_back == cube);
}

TEST_CASE("canonicalization ignores duplicates and interior points") {
  RatMatrix pts = rm({{"0", "0"}, {"1", "0"}, {"0", "1"}, {"1", "1"}, {"1", "1"},
                      {"1/2", "1/2"}, {"1/4", "3/4"}});
  CHECK(Polytope::from_vertices(2, pts) == unit_square());
}

TEST_CASE("f-vectors of standard polytopes") {
  CHECK(unit_square().f_vector() == std::vector<size_t>{4, 4});
  CHECK(unit_cube().f_vector() == std::vector<size_t>{8, 12, 6});

  // Octahedron.
  RatMatrix oct;
  for (size_t i = 0; i < 3; ++i)
    for (int s : {-1, 1}) {
      RatVector v(3, Rat(0));
      v[i] = s;
      oct.push_back(v);
    }
  CHECK(Polytope::from_vertices(3, oct).f_vector() == std::vector<size_t>{6, 12, 8});

  Polytope d3 = simplex(4);
  CHECK(d3.dim() == 3);
  CHECK(d3.ambient_dim() == 4);
  CHECK(d3.f_vector() == std::vector<size_t>{4, 6, 4});

  // Euler: f0 - f1 + f2 = 2 for 3-polytopes.
  for (const Polytope& p : {unit_cube(), d3}) {
    auto f = p.f_vector();
    CHECK(f[0] - f[1] + f[2] == 2);
  }
}

TEST_CASE("degenerate polytopes") {
  Polytope pt = Polytope::from_vertices(2, rm({{"1/3", "2/3"}}));
  CHECK(pt.dim() == 0);
  CHECK(pt.f_vector() == std::vector<size_t>{1});
  CHECK(pt.contains(rv({"1/3", "2/3"})));
  CHECK(pt.relint_contains(rv({"1/3", "2/3"})));
  CHECK_FALSE(pt.contains(rv({"1/3", "1/3"})));

  Polytope seg = Polytope::from_vertices(1, rm({{"0"}, {"1"}}));
  CHECK(seg.dim() == 1);
  CHECK(seg.f_vector() == std::vector<size_t>{2});

  Polytope empty = Polytope::empty(3);
  CHECK(empty.is_empty());
  CHECK(empty.dim() == -1);
  CHECK(empty.f_vector().empty());
  CHECK_FALSE(empty.contains(rv({"0", "0", "0"})));

  std::vector<Halfspace> infeasible{{rv({"1"}), Rat(-1)}, {rv({"-1"}), Rat(0)}};
  CHECK(Polytope::from_halfspaces(1, infeasible, {}).is_empty());

  // Ambient dimension zero: the single point of R^0.
  Polytope r0 = Polytope::from_vertices(0, {RatVector{}});
  CHECK(r0.dim() == 0);
  CHECK(r0.contains({}));
}

TEST_CASE("unbounded regions carry a certificate ray") {
  std::vector<Halfspace> hs{{rv({"-1"}), Rat(0)}};  // x >= 0
  try {
    Polytope::from_halfspaces(1, hs, {});
    FAIL("expected UnboundedError");
  } catch (const UnboundedError& e) {
    REQUIRE(e.ray().size() == 1);
    CHECK(e.ray()[0] > 0);  // recession direction satisfies -ray <= 0
  }
  // Whole plane (no constraints at all).
  CHECK_THROWS_AS(Polytope::from_halfspaces(2, {}, {}), UnboundedError);
  // Lineality space: a strip.
  std::vector<Halfspace> strip{{rv({"1", "0"}), Rat(1)}, {rv({"-1", "0"}), Rat(0)}};
  CHECK_THROWS_AS(Polytope::from_halfspaces(2, strip, {}), UnboundedError);
}

TEST_CASE("containment and relative interior") {
  Polytope cube = unit_cube();
  CHECK(cube.contains(rv({"1/2", "1/2", "1/2"})));
  CHECK(cube.relint_contains(rv({"1/2", "1/2", "1/2"})));
  CHECK(cube.contains(rv({"0", "1/2", "1/2"})));
  CHECK_FALSE(cube.relint_contains(rv({"0", "1/2", "1/2"})));
  CHECK_FALSE(cube.contains(rv({"-1/100", "1/2", "1/2"})));

  // For a lower-dimensional polytope relint is relative to its affine hull.
  Polytope d3 = simplex(4);
  CHECK(d3.relint_contains(rv({"1/4", "1/4", "1/4", "1/4"})));
  CHECK_FALSE(d3.relint_contains(rv({"0", "1/4", "1/4", "1/2"})));
  CHECK(d3.contains(rv({"0", "1/4", "1/4", "1/2"})));

  CHECK(cube.centroid() == rv({"1/2", "1/2", "1/2"}));
}

TEST_CASE("face lattice of the square") {
  Polytope sq = unit_square();
  const FaceLattice& fl = sq.face_lattice();
  REQUIRE(fl.faces.size() == 9);  // 4 vertices, 4 edges, the square itself
  size_t by_dim[3] = {0, 0, 0};
  for (const auto& f : fl.faces) {
    REQUIRE(f.dim >= 0);
    REQUIRE(f.dim <= 2);
    ++by_dim[f.dim];
    CHECK(std::is_sorted(f.vertices.begin(), f.vertices.end()));
  }
  CHECK(by_dim[0] == 4);
  CHECK(by_dim[1] == 4);
  CHECK(by_dim[2] == 1);
}

TEST_CASE("splitting by a hyperplane") {
  Polytope cube = unit_cube();

  SUBCASE("generic cut through the middle gives a hexagonal section") {
    auto [lo, hi] = cube.split_by_hyperplane(rv({"1", "1", "1"}), rat("3/2"));
    CHECK(lo.dim() == 3);
    CHECK(hi.dim() == 3);
    CHECK(lo.vertices().size() == 10);  // 4 cube vertices + hexagon
    CHECK(hi.vertices().size() == 10);
    Polytope section = lo.intersect(hi);
    CHECK(section.dim() == 2);
    CHECK(section.f_vector() == std::vector<size_t>{6, 6});
    // Every original vertex survives on its side.
    for (const auto& v : cube.vertices()) {
      Rat s = v[0] + v[1] + v[2];
      if (s <= rat("3/2")) CHECK(lo.contains(v));
      if (s >= rat("3/2")) CHECK(hi.contains(v));
    }
  }

  SUBCASE("cut along a facet") {
    auto [lo, hi] = cube.split_by_hyperplane(rv({"1", "0", "0"}), Rat(0));
    CHECK(lo.dim() == 2);  // the x=0 facet
    CHECK(lo.vertices().size() == 4);
    CHECK(hi == cube);
  }

  SUBCASE("cut missing the polytope") {
    auto [lo, hi] = cube.split_by_hyperplane(rv({"1", "0", "0"}), Rat(5));
    CHECK(lo == cube);
    CHECK(hi.is_empty());
  }
}

TEST_CASE("intersections") {
  Polytope cube = unit_cube();
  Polytope shifted = Polytope::from_vertices(3, [&] {
    RatMatrix pts;
    for (const auto& v : cube.vertices())
      pts.push_back(rv({format_rat(v[0] + rat("1/2")), format_rat(v[1]), format_rat(v[2])}));
    return pts;
  }());
  Polytope box = cube.intersect(shifted);
  CHECK(box.dim() == 3);
  CHECK(box.f_vector() == std::vector<size_t>{8, 12, 6});
  CHECK(box.contains(rv({"3/4", "1/2", "1/2"})));
  CHECK_FALSE(box.contains(rv({"1/4", "1/2", "1/2"})));

  Polytope slice = cube.intersect_with_affine({{rv({"0", "0", "1"}), rat("1/2")}});
  CHECK(slice.dim() == 2);
  CHECK(slice.f_vector() == std::vector<size_t>{4, 4});
}

TEST_CASE("relative interior sampling is deterministic and interior") {
  Polytope cube = unit_cube();
  std::mt19937_64 a(99), b(99);
  RatVector s1 = cube.relint_sample(a);
  RatVector s2 = cube.relint_sample(b);
  CHECK(s1 == s2);
  CHECK(cube.relint_contains(s1));

  Polytope pt = Polytope::from_vertices(2, rm({{"1/7", "2/7"}}));
  std::mt19937_64 c(1);
  CHECK(pt.relint_sample(c) == rv({"1/7", "2/7"}));

  Polytope d3 = simplex(4);
  std::mt19937_64 d(5);
  for (int i = 0; i < 10; ++i) CHECK(d3.relint_contains(d3.relint_sample(d)));
}

TEST_CASE("combinatorial isomorphism") {
  Polytope cube = unit_cube();
  Polytope box = Polytope::from_vertices(3, [] {
    RatMatrix pts;
    for (int i = 0; i < 8; ++i)
      pts.push_back(rv({i & 1 ? "1" : "0", i & 2 ? "2" : "0", i & 4 ? "3" : "0"}));
    return pts;
  }());
  IsoResult r = combinatorially_isomorphic(cube, box);
  REQUIRE(r.answer == IsoResult::Answer::Yes);
  // The witness must be a bijection.
  std::vector<size_t> seen(8, 0);
  REQUIRE(r.vertex_map.size() == 8);
  for (size_t v : r.vertex_map) {
    REQUIRE(v < 8);
    ++seen[v];
  }
  for (size_t cnt : seen) CHECK(cnt == 1);

  RatMatrix oct;
  for (size_t i = 0; i < 3; ++i)
    for (int s : {-1, 1}) {
      RatVector v(3, Rat(0));
      v[i] = s;
      oct.push_back(v);
    }
  CHECK(combinatorially_isomorphic(cube, Polytope::from_vertices(3, oct)).answer ==
        IsoResult::Answer::No);

  CHECK(combinatorially_isomorphic(unit_square(),
                                   Polytope::from_vertices(2, rm({{"0", "0"}, {"1", "0"},
                                                                  {"0", "1"}})))
            .answer == IsoResult::Answer::No);

  // Same square after an affine shuffle.
  Polytope diamond = Polytope::from_vertices(
      2, rm({{"1", "0"}, {"0", "1"}, {"-1", "0"}, {"0", "-1"}}));
  CHECK(combinatorially_isomorphic(unit_square(), diamond).answer == IsoResult::Answer::Yes);
}
