#include "gale.hpp"

namespace logvor {

GalePair gale_pair(const LinearModel& m) {
  require_valid(m);
  // Left kernel of B = right kernel of B^T. The all-ones vector is in it
  // because columns of B sum to zero; complete it with zero-sum kernel
  // vectors so the dual configuration is centered.
  RatMatrix ker = right_kernel_basis(transpose(m.B), m.n);
  GalePair g;
  g.A.push_back(RatVector(m.n, Rat(1)));
  RatMatrix centered;
  for (const auto& row : ker) {
    Rat mean(0);
    for (const auto& x : row) mean += x;
    mean /= Rat(static_cast<long>(m.n));
    RatVector r(m.n);
    for (size_t i = 0; i < m.n; ++i) r[i] = row[i] - mean;
    if (!is_zero(r)) centered.push_back(std::move(r));
  }
  // Echelonize the centered rows for a canonical, independent lower block.
  Rref rc = rref(centered);
  for (size_t i = 0; i < rc.pivot_cols.size(); ++i) {
    RatVector row = primitive(rc.mat[i]);
    g.V.push_back(row);
    g.A.push_back(std::move(row));
  }
  if (g.A.size() != m.n - m.d)
    throw Error(ErrorKind::Internal, "kernel completion has the wrong rank");
  g.B = m.B;
  return g;
}

GaleCheckReport check_gale_pair(const RatMatrix& A, const RatMatrix& B) {
  GaleCheckReport r;
  auto fail = [&](const std::string& s) {
    r.ok = false;
    r.violations.push_back(s);
  };
  size_t n = rows(B);
  size_t d = cols(B);
  if (rows(A) != n - d) fail("A must have n-d rows");
  if (!A.empty() && cols(A) != n) fail("A must have n columns");
  if (!r.ok) return r;
  for (const auto& x : A.front())
    if (x != 1) {
      fail("first row of A must be all ones");
      break;
    }
  RatMatrix prod = matmul(A, B);
  for (const auto& row : prod)
    for (const auto& x : row)
      if (x != 0) {
        fail("A B must be the zero matrix");
        goto after_prod;
      }
after_prod:
  if (rank(A) != n - d) fail("A must have full row rank n-d");
  if (rank(B) != d) fail("B must have full column rank d");
  return r;
}

Polytope dual_slice(const RatMatrix& A) {
  size_t k = rows(A);
  if (k == 0) throw Error(ErrorKind::Domain, "A must be nonempty");
  size_t n = cols(A);
  std::vector<Halfspace> hs;
  for (size_t j = 0; j < n; ++j) {
    RatVector normal(k);
    for (size_t i = 0; i < k; ++i) normal[i] = -A[i][j];
    hs.push_back({std::move(normal), Rat(0)});
  }
  std::vector<Equation> eqs;
  RatVector e1(k, Rat(0));
  e1[0] = 1;
  eqs.push_back({std::move(e1), Rat(1)});
  return Polytope::from_halfspaces(k, hs, eqs);
}

TypeCheckReport verify_type_theorem(const LinearModel& m, const RatMatrix& params) {
  TypeCheckReport rep;
  GalePair g = gale_pair(m);
  Polytope dual = dual_slice(g.A);
  rep.dual_f = dual.f_vector();

  std::vector<Polytope> cells;
  for (const auto& x : params) {
    Polytope cell = cell_interior(m, x);
    rep.cell_f.push_back(cell.f_vector());
    IsoResult iso = combinatorially_isomorphic(cell, dual);
    if (iso.answer == IsoResult::Answer::Inconclusive) rep.inconclusive = true;
    rep.iso_to_dual.push_back(iso);
    cells.push_back(std::move(cell));
  }
  rep.holds = !params.empty();
  for (const auto& iso : rep.iso_to_dual)
    if (iso.answer != IsoResult::Answer::Yes) rep.holds = false;

  rep.pairwise = true;
  for (size_t i = 0; i + 1 < cells.size() && rep.pairwise; ++i)
    for (size_t j = i + 1; j < cells.size(); ++j) {
      IsoResult iso = combinatorially_isomorphic(cells[i], cells[j]);
      if (iso.answer == IsoResult::Answer::Inconclusive) rep.inconclusive = true;
      if (iso.answer != IsoResult::Answer::Yes) {
        rep.pairwise = false;
        break;
      }
    }
  return rep;
}

}  // namespace logvor
