#pragma once

#include "cells.hpp"

namespace logvor {

// Dual configuration data for a model: A is (n-d) x n with first row all
// ones and the remaining rows a zero-sum basis completing the left kernel
// of B, so the columns v_i of the lower block form a vector configuration
// with Gale transform B, centered at the origin.
struct GalePair {
  RatMatrix A;  // (n-d) x n
  RatMatrix V;  // (n-d-1) x n, rows 2.. of A
  RatMatrix B;  // n x d, the model matrix the pair belongs to
};
GalePair gale_pair(const LinearModel& m);

struct GaleCheckReport {
  bool ok = true;
  std::vector<std::string> violations;
};
// Structural checks: shapes, A B = 0, rank A = n-d, all-ones first row.
// Any affine placement of the configuration passes; boundedness of the
// slice is dual_slice's concern.
GaleCheckReport check_gale_pair(const RatMatrix& A, const RatMatrix& B);

// {x in R^{n-d} : x_1 = 1, xA >= 0}; combinatorially the cell at any
// interior model point.
Polytope dual_slice(const RatMatrix& A);

struct TypeCheckReport {
  bool holds = false;     // every sampled cell is isomorphic to the dual slice
  bool pairwise = false;  // sampled cells pairwise isomorphic
  std::vector<size_t> dual_f;
  std::vector<std::vector<size_t>> cell_f;  // per parameter
  std::vector<IsoResult> iso_to_dual;       // per parameter
  bool inconclusive = false;                // some search hit its node cap
};
// Checks the duality theorem at the given interior parameters.
TypeCheckReport verify_type_theorem(const LinearModel& m, const RatMatrix& params);

}  // namespace logvor
