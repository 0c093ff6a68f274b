#pragma once

#include <cstddef>
#include <vector>

#include "rational.hpp"

namespace logvor {

// Matrices are dense row-major vectors of rows. A matrix may have zero rows;
// operations that cannot infer the column count from the data take it
// explicitly.

size_t rows(const RatMatrix& a);
size_t cols(const RatMatrix& a, size_t fallback = 0);

RatMatrix identity(size_t n);
RatMatrix transpose(const RatMatrix& a);
RatMatrix matmul(const RatMatrix& a, const RatMatrix& b);
RatVector matvec(const RatMatrix& a, const RatVector& x);
RatVector vecmat(const RatVector& x, const RatMatrix& a);
Rat dot(const RatVector& a, const RatVector& b);
RatVector vec_sub(const RatVector& a, const RatVector& b);
RatVector vec_add(const RatVector& a, const RatVector& b);
RatVector vec_scale(const Rat& s, const RatVector& v);
bool is_zero(const RatVector& v);

RatMatrix submatrix(const RatMatrix& a, const std::vector<size_t>& row_idx,
                    const std::vector<size_t>& col_idx);

// Fraction-free Bareiss determinant. det of the empty matrix is 1.
Rat det(const RatMatrix& a);

size_t rank(const RatMatrix& a);

struct Rref {
  RatMatrix mat;
  std::vector<size_t> pivot_cols;
};
Rref rref(const RatMatrix& a);

// Rows of the result form the canonical kernel basis of the linear map
// x -> a*x: one row per free column of rref(a), identity in the free
// positions, free columns taken in increasing order.
RatMatrix right_kernel_basis(const RatMatrix& a, size_t ncols);

enum class SolveStatus { Unique, Inconsistent, NonUnique };
struct SolveResult {
  SolveStatus status;
  RatVector solution;  // particular solution (free vars 0); empty if inconsistent
};
SolveResult solve(const RatMatrix& a, const RatVector& b);

// Smallest integer vector with the same span direction: clears denominators,
// divides by content, flips sign so the first nonzero entry is positive.
RatVector primitive(const RatVector& v);

}  // namespace logvor
