#pragma once

#include "model.hpp"

namespace logvor {

struct Cocircuit {
  std::vector<size_t> support;  // 0-based, sorted, size <= d+1
  RatVector coeffs;             // length n, primitive integer, positive on the support
};

// All positive co-circuits of B: nonzero z >= 0 with zB = 0 and minimal
// support, one representative per scaling class, sorted by support.
std::vector<Cocircuit> positive_cocircuits(const LinearModel& m);

// The cell vertex tracked by a co-circuit, as an affine function of the
// parameter: x -> offset + linear * x, coordinatewise zhat_i (c_i - b_i . x).
struct VertexFunction {
  Cocircuit z;
  RatVector zhat;    // z / (z . c)
  RatVector offset;  // zhat_i c_i
  RatMatrix linear;  // n x d, row i = -zhat_i b_i
};
std::vector<VertexFunction> vertex_functions(const LinearModel& m);
RatVector eval_vertex_function(const VertexFunction& f, const RatVector& x);

// Cell at an interior model point, as the convex hull of the vertex
// function values.
Polytope cell_interior(const LinearModel& m, const RatVector& x);
// Same cell through its halfspace description {u in simplex : u . diag(p)^-1 B = 0}.
Polytope cell_interior_hrep(const LinearModel& m, const RatVector& x);
// Cell at a boundary point of the model: evaluate all vertex functions and
// rebuild; coinciding and absorbed vertices disappear in the hull.
Polytope cell_boundary(const LinearModel& m, const RatVector& x);
// Dispatches to the interior or boundary construction.
Polytope cell_at(const LinearModel& m, const RatVector& x);

// Zero set of the vertex function of z at a model vertex (given by its
// parameter), predicted from minors of [B | c] without evaluating. The
// vertex must vanish in exactly d coordinates.
std::vector<size_t> predicted_zeros(const LinearModel& m, const RatVector& vertex_param,
                                    const Cocircuit& z);

struct EndpointCells {
  Rat x_left;
  Rat x_right;
  size_t left_index;   // coordinate attaining x_left (0-based)
  size_t right_index;  // coordinate attaining x_right
  Polytope left_cell;
  Polytope right_cell;
};
// Closed-form boundary cells of a 1-dimensional model at the two endpoints
// of its parameter interval. Requires all entries of B nonzero and unique
// attainment of each endpoint.
EndpointCells cell_endpoints_d1(const LinearModel& m);

struct Realization {
  LinearModel model;
  RatVector p;     // = model.c; the cell at parameter 0 is exactly `input`
  Polytope input;  // {Mx = b, sum x = 1, x >= 0}
};
// Builds a linear model one of whose cells is exactly the given polytope.
Realization realize(const RatMatrix& M, const RatVector& b, size_t n);

}  // namespace logvor
