#include "ratmat.hpp"

#include <boost/multiprecision/integer.hpp>

namespace logvor {

namespace {

void check_rect(const RatMatrix& a) {
  for (const auto& r : a)
    if (r.size() != a.front().size())
      throw Error(ErrorKind::Internal, "ragged matrix");
}

}  // namespace

size_t rows(const RatMatrix& a) { return a.size(); }

size_t cols(const RatMatrix& a, size_t fallback) {
  if (a.empty()) return fallback;
  check_rect(a);
  return a.front().size();
}

RatMatrix identity(size_t n) {
  RatMatrix m(n, RatVector(n, Rat(0)));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMatrix transpose(const RatMatrix& a) {
  size_t r = rows(a), c = cols(a);
  RatMatrix t(c, RatVector(r, Rat(0)));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) t[j][i] = a[i][j];
  return t;
}

RatMatrix matmul(const RatMatrix& a, const RatMatrix& b) {
  size_t n = rows(a), k = cols(a), m = cols(b);
  if (k != rows(b)) throw Error(ErrorKind::Internal, "matmul shape mismatch");
  RatMatrix out(n, RatVector(m, Rat(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

RatVector matvec(const RatMatrix& a, const RatVector& x) {
  RatVector out(rows(a), Rat(0));
  for (size_t i = 0; i < rows(a); ++i) {
    if (a[i].size() != x.size()) throw Error(ErrorKind::Internal, "matvec shape mismatch");
    for (size_t j = 0; j < x.size(); ++j) out[i] += a[i][j] * x[j];
  }
  return out;
}

RatVector vecmat(const RatVector& x, const RatMatrix& a) {
  if (a.empty()) return {};
  if (x.size() != rows(a)) throw Error(ErrorKind::Internal, "vecmat shape mismatch");
  RatVector out(cols(a), Rat(0));
  for (size_t i = 0; i < rows(a); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < out.size(); ++j) out[j] += x[i] * a[i][j];
  }
  return out;
}

Rat dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::Internal, "dot shape mismatch");
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVector vec_sub(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::Internal, "vec_sub shape mismatch");
  RatVector out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVector vec_add(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::Internal, "vec_add shape mismatch");
  RatVector out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVector vec_scale(const Rat& s, const RatVector& v) {
  RatVector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

bool is_zero(const RatVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

RatMatrix submatrix(const RatMatrix& a, const std::vector<size_t>& row_idx,
                    const std::vector<size_t>& col_idx) {
  RatMatrix out;
  out.reserve(row_idx.size());
  for (size_t i : row_idx) {
    if (i >= rows(a)) throw Error(ErrorKind::Internal, "submatrix row out of range");
    RatVector r;
    r.reserve(col_idx.size());
    for (size_t j : col_idx) {
      if (j >= a[i].size()) throw Error(ErrorKind::Internal, "submatrix col out of range");
      r.push_back(a[i][j]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

Rat det(const RatMatrix& a) {
  size_t n = rows(a);
  if (n == 0) return Rat(1);
  if (cols(a) != n) throw Error(ErrorKind::Internal, "det of non-square matrix");

  // Clear denominators row by row so Bareiss runs over integers.
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
  Rat scale(1);
  for (size_t i = 0; i < n; ++i) {
    Int l(1);
    for (size_t j = 0; j < n; ++j) l = lcm(l, denominator(a[i][j]));
    scale /= Rat(l);
    for (size_t j = 0; j < n; ++j) {
      Rat v = a[i][j] * Rat(l);
      m[i][j] = numerator(v);
    }
  }

  Int prev(1);
  int sgn = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return Rat(0);
      std::swap(m[k], m[p]);
      sgn = -sgn;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = t / prev;  // exact division, Bareiss invariant
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return Rat(m[n - 1][n - 1]) * scale * sgn;
}

Rref rref(const RatMatrix& a) {
  Rref out;
  out.mat = a;
  if (a.empty()) return out;
  check_rect(a);
  size_t r = rows(a), c = cols(a);
  size_t lead = 0;
  for (size_t col = 0; col < c && lead < r; ++col) {
    size_t piv = lead;
    while (piv < r && out.mat[piv][col] == 0) ++piv;
    if (piv == r) continue;
    std::swap(out.mat[lead], out.mat[piv]);
    Rat inv = Rat(1) / out.mat[lead][col];
    for (size_t j = col; j < c; ++j) out.mat[lead][j] *= inv;
    for (size_t i = 0; i < r; ++i) {
      if (i == lead || out.mat[i][col] == 0) continue;
      Rat f = out.mat[i][col];
      for (size_t j = col; j < c; ++j) out.mat[i][j] -= f * out.mat[lead][j];
    }
    out.pivot_cols.push_back(col);
    ++lead;
  }
  return out;
}

size_t rank(const RatMatrix& a) { return rref(a).pivot_cols.size(); }

RatMatrix right_kernel_basis(const RatMatrix& a, size_t ncols) {
  if (!a.empty() && cols(a) != ncols)
    throw Error(ErrorKind::Internal, "right_kernel_basis column mismatch");
  Rref r = rref(a);
  std::vector<bool> is_pivot(ncols, false);
  for (size_t p : r.pivot_cols) is_pivot[p] = true;
  RatMatrix basis;
  for (size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(ncols, Rat(0));
    v[f] = 1;
    for (size_t i = 0; i < r.pivot_cols.size(); ++i) v[r.pivot_cols[i]] = -r.mat[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

SolveResult solve(const RatMatrix& a, const RatVector& b) {
  size_t n = rows(a);
  if (n != b.size()) throw Error(ErrorKind::Internal, "solve shape mismatch");
  size_t c = cols(a);
  RatMatrix aug(n);
  for (size_t i = 0; i < n; ++i) {
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  Rref r = rref(aug);
  for (size_t p : r.pivot_cols)
    if (p == c) return {SolveStatus::Inconsistent, {}};
  RatVector x(c, Rat(0));
  for (size_t i = 0; i < r.pivot_cols.size(); ++i) x[r.pivot_cols[i]] = r.mat[i][c];
  SolveStatus st = (r.pivot_cols.size() == c) ? SolveStatus::Unique : SolveStatus::NonUnique;
  return {st, std::move(x)};
}

RatVector primitive(const RatVector& v) {
  Int l(1);
  for (const auto& x : v) l = lcm(l, denominator(x));
  Int g(0);
  for (const auto& x : v) g = gcd(g, Int(numerator(x * Rat(l))));
  if (g == 0) return RatVector(v.size(), Rat(0));
  int s = 0;
  for (const auto& x : v) {
    if (x != 0) {
      s = x < 0 ? -1 : 1;
      break;
    }
  }
  RatVector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * Rat(l) / Rat(g) * s;
  return out;
}

}  // namespace logvor
