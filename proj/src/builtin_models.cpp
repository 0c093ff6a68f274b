#include "builtin_models.hpp"

#include <algorithm>

namespace logvor {

namespace {

RatVector rvec(const std::vector<long>& num, long den) {
  RatVector v;
  v.reserve(num.size());
  for (long x : num) v.push_back(Rat(x) / Rat(den));
  return v;
}

RatMatrix column(const std::vector<long>& entries) {
  RatMatrix m;
  m.reserve(entries.size());
  for (long x : entries) m.push_back(RatVector{Rat(x)});
  return m;
}

RatMatrix rows2(const std::vector<std::pair<long, long>>& entries) {
  RatMatrix m;
  m.reserve(entries.size());
  for (const auto& [a, b] : entries) m.push_back(RatVector{Rat(a), Rat(b)});
  return m;
}

LinearModel make_full(std::string name, RatVector c, RatMatrix B) {
  LinearModel m;
  m.name = std::move(name);
  m.c = std::move(c);
  m.B = std::move(B);
  m.n = m.c.size();
  m.d = m.B.empty() ? 0 : m.B[0].size();
  return m;
}

// One-dimensional models in the tetrahedron: cells are triangles.
LinearModel triangle() {
  return make_full("triangle", rvec({1, 1, 1, 1}, 4), column({1, -5, 2, 2}));
}

// Same ambient, matrix dual to a convex 4-gon: cells are quadrilaterals.
LinearModel quadrilateral() {
  return make_full("quadrilateral", rvec({1, 1, 1, 1}, 4), column({1, 5, -3, -3}));
}

// Two-dimensional model in the 5-simplex whose cells are 3-cubes; it meets
// the simplex boundary in general position.
LinearModel cube1() {
  return make_full(
      "cube1", rvec({1, 4, 2, 1, 2, 2}, 12),
      rows2({{-10, 3}, {-2, 2}, {-4, 1}, {6, -1}, {6, -2}, {4, -3}}));
}

// Cells are 3-cubes at interior points, but one model vertex sits on a
// low-dimensional simplex face, so its boundary cell degenerates.
LinearModel cube2() {
  return make_full(
      "cube2", rvec({2, 1, 4, 2, 1, 2}, 12),
      rows2({{-10, 1}, {-3, 3}, {-20, 2}, {6, -1}, {6, -3}, {21, -2}}));
}

// One-dimensional models in general position used for tetrahedron plots.
LinearModel tetra1() {
  return make_full("tetra1", rvec({1, 1, 1, 1}, 4), column({1, -5, 3, 1}));
}

LinearModel tetra2() {
  return make_full("tetra2", rvec({1, 1, 1, 1}, 4), column({-2, -1, 1, 2}));
}

// Partial model: the triangle conv{(1/5,1/5,1/5,2/5), (1/5,1/5,2/5,1/5),
// (1/4,1/4,1/4,1/4)} in the tetrahedron; one facet of theta is interior to
// the parameter polytope of the extension.
PartialLinearModel partial_triangle() {
  PartialLinearModel m;
  m.name = "partial-triangle";
  m.extension = make_full("partial-triangle", rvec({1, 1, 1, 1}, 4),
                          rows2({{1, 1}, {1, 1}, {1, -3}, {-3, 1}}));
  RatMatrix theta_verts = {
      {Rat(0), Rat(0)},
      {Rat(1) / 20, Rat(0)},
      {Rat(0), Rat(1) / 20},
  };
  m.theta = Polytope::from_vertices(2, theta_verts);
  return m;
}

}  // namespace

std::vector<std::string> example_names() {
  return {"triangle", "quadrilateral", "cube1", "cube2", "tetra1", "tetra2",
          "partial-triangle"};
}

ExampleModel example_model(const std::string& name) {
  ExampleModel ex;
  if (name == "triangle") {
    ex.full = triangle();
  } else if (name == "quadrilateral") {
    ex.full = quadrilateral();
  } else if (name == "cube1") {
    ex.full = cube1();
  } else if (name == "cube2") {
    ex.full = cube2();
  } else if (name == "tetra1") {
    ex.full = tetra1();
  } else if (name == "tetra2") {
    ex.full = tetra2();
  } else if (name == "partial-triangle") {
    ex.partial = partial_triangle();
    ex.full = ex.partial->extension;
  } else {
    throw Error(ErrorKind::Domain, "unknown example model \"" + name + "\"");
  }
  return ex;
}

}  // namespace logvor
