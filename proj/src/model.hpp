#pragma once

#include <optional>
#include <string>

#include "polytope.hpp"

namespace logvor {

// Discrete linear model {c - Bx : x in Theta'} inside the probability
// simplex Delta_{n-1}: B is n x d with zero column sums, c is a strictly
// positive distribution, and Theta' = {x : Bx <= c} is the full parameter
// polytope.
struct LinearModel {
  size_t n = 0;
  size_t d = 0;
  RatVector c;  // length n
  RatMatrix B;  // n rows of length d
  std::string name;
};

// Restriction of a linear model to a sub-polytope theta of Theta'. The
// model is {c - Bx : x in theta}; the full {c - Bx : x in Theta'} extends it.
struct PartialLinearModel {
  LinearModel extension;
  Polytope theta;  // in R^d
  std::string name;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

ValidationReport validate(const LinearModel& m);
ValidationReport validate(const PartialLinearModel& m);

// Throws ErrorKind::InvalidModel when validation reports violations.
void require_valid(const LinearModel& m);
void require_valid(const PartialLinearModel& m);

// Theta' = {x : Bx <= c}; bounded for every valid model.
Polytope parameter_polytope(const LinearModel& m);

// Image polytope, i.e. the model itself as a subset of the simplex.
Polytope image_polytope(const LinearModel& m);
Polytope image_polytope(const PartialLinearModel& m);

RatMatrix model_vertices(const LinearModel& m);

struct ModelPoint {
  RatVector p;
  bool interior = false;        // strictly positive
  std::vector<size_t> support;  // 0-based indices with p_i > 0
};
// Evaluates x -> c - Bx. x must lie in Theta'.
ModelPoint point_at(const LinearModel& m, const RatVector& x);

// Inverse of point_at on the model: solves Bx = c - p.
RatVector parameter_of(const LinearModel& m, const RatVector& p);

struct TransversalityReport {
  bool transversal = true;
  RatVector witness_point;  // image vertex with a zero count != d, if any
  RatVector witness_param;
  size_t witness_zeros = 0;
};
// The model meets the simplex boundary transversally iff every vertex of
// the image polytope has exactly d vanishing coordinates.
TransversalityReport is_transversal(const LinearModel& m);

// Linear model spanned by a face of theta's image: anchored at the image
// centroid, with an echelonized primitive basis of the direction space as
// the columns of the new B. Face given by vertex indices into theta.
LinearModel face_extension(const PartialLinearModel& m, const std::vector<size_t>& face_vertices);
LinearModel facet_extension(const PartialLinearModel& m, size_t facet_index);

// Vertex index sets of a polytope facet (sorted, 0-based).
std::vector<size_t> facet_vertex_indices(const Polytope& p, size_t facet_index);

}  // namespace logvor
