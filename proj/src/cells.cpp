#include "cells.hpp"

#include <algorithm>

namespace logvor {

namespace {

// Shared subset iteration with cells-specific needs kept local.
template <typename Fn>
void subsets_of_size(size_t m, size_t k, Fn&& fn) {
  if (k > m) return;
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + m - k) break;
      if (i == 0) return;
    }
    if (idx[i] == i + m - k) return;
    ++idx[i];
    for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<Cocircuit> positive_cocircuits(const LinearModel& m) {
  require_valid(m);
  std::vector<Cocircuit> out;
  // A minimal-support left-kernel vector has support of size at most d+1,
  // and within its support the row submatrix has a one-dimensional kernel
  // with no vanishing coordinate. Scan supports by size.
  for (size_t k = 1; k <= m.d + 1 && k <= m.n; ++k) {
    subsets_of_size(m.n, k, [&](const std::vector<size_t>& S) {
      RatMatrix bs;
      for (size_t i : S) bs.push_back(m.B[i]);
      RatMatrix ker = right_kernel_basis(transpose(bs), k);
      if (ker.size() != 1) return;
      const RatVector& g = ker[0];
      int s = 0;
      for (const auto& gi : g) {
        if (gi == 0) return;  // support smaller than S; found elsewhere
        int si = sign(gi);
        if (s == 0) s = si;
        if (si != s) return;  // mixed signs: not a positive co-circuit
      }
      RatVector z = primitive(g);  // first entry now positive, so all are
      Cocircuit c;
      c.support = S;
      c.coeffs.assign(m.n, Rat(0));
      for (size_t i = 0; i < k; ++i) c.coeffs[S[i]] = z[i];
      out.push_back(std::move(c));
    });
  }
  std::sort(out.begin(), out.end(),
            [](const Cocircuit& a, const Cocircuit& b) { return a.support < b.support; });
  return out;
}

std::vector<VertexFunction> vertex_functions(const LinearModel& m) {
  std::vector<VertexFunction> out;
  for (auto& z : positive_cocircuits(m)) {
    VertexFunction f;
    Rat t = dot(z.coeffs, m.c);
    f.zhat = vec_scale(Rat(1) / t, z.coeffs);
    f.offset.resize(m.n);
    f.linear.assign(m.n, RatVector(m.d, Rat(0)));
    for (size_t i = 0; i < m.n; ++i) {
      f.offset[i] = f.zhat[i] * m.c[i];
      for (size_t j = 0; j < m.d; ++j) f.linear[i][j] = -f.zhat[i] * m.B[i][j];
    }
    f.z = std::move(z);
    out.push_back(std::move(f));
  }
  return out;
}

RatVector eval_vertex_function(const VertexFunction& f, const RatVector& x) {
  return vec_add(f.offset, matvec(f.linear, x));
}

Polytope cell_interior(const LinearModel& m, const RatVector& x) {
  ModelPoint mp = point_at(m, x);
  if (!mp.interior)
    throw Error(ErrorKind::Domain,
                "model point lies on the simplex boundary; use the boundary cell operation");
  RatMatrix pts;
  for (const auto& f : vertex_functions(m)) pts.push_back(eval_vertex_function(f, x));
  // The cell is the simplex cut with an affine space through an interior
  // point, so every facet lies on a coordinate hyperplane.
  std::vector<Halfspace> supports;
  for (size_t i = 0; i < m.n; ++i) {
    RatVector neg(m.n, Rat(0));
    neg[i] = -1;
    supports.push_back({std::move(neg), Rat(0)});
  }
  return Polytope::from_vertices(m.n, pts, supports);
}

Polytope cell_interior_hrep(const LinearModel& m, const RatVector& x) {
  ModelPoint mp = point_at(m, x);
  if (!mp.interior)
    throw Error(ErrorKind::Domain,
                "model point lies on the simplex boundary; use the boundary cell operation");
  require_valid(m);
  std::vector<Halfspace> hs;
  for (size_t i = 0; i < m.n; ++i) {
    RatVector neg(m.n, Rat(0));
    neg[i] = -1;
    hs.push_back({std::move(neg), Rat(0)});
  }
  std::vector<Equation> eqs;
  eqs.push_back({RatVector(m.n, Rat(1)), Rat(1)});
  for (size_t j = 0; j < m.d; ++j) {
    RatVector normal(m.n);
    for (size_t i = 0; i < m.n; ++i) normal[i] = m.B[i][j] / mp.p[i];
    eqs.push_back({std::move(normal), Rat(0)});
  }
  return Polytope::from_halfspaces(m.n, hs, eqs);
}

Polytope cell_boundary(const LinearModel& m, const RatVector& x) {
  point_at(m, x);  // validates x in Theta'
  RatMatrix pts;
  for (const auto& f : vertex_functions(m)) pts.push_back(eval_vertex_function(f, x));
  return Polytope::from_vertices(m.n, pts);
}

Polytope cell_at(const LinearModel& m, const RatVector& x) {
  ModelPoint mp = point_at(m, x);
  return mp.interior ? cell_interior(m, x) : cell_boundary(m, x);
}

std::vector<size_t> predicted_zeros(const LinearModel& m, const RatVector& vertex_param,
                                    const Cocircuit& z) {
  require_valid(m);
  ModelPoint mp = point_at(m, vertex_param);
  std::vector<size_t> zeros;
  for (size_t i = 0; i < m.n; ++i)
    if (mp.p[i] == 0) zeros.push_back(i);
  if (zeros.size() != m.d)
    throw Error(ErrorKind::Unsupported,
                "vertex must vanish in exactly d coordinates for the minor criterion");
  {
    RatMatrix bz;
    for (size_t i : zeros) bz.push_back(m.B[i]);
    if (rank(bz) != m.d)
      throw Error(ErrorKind::Unsupported, "the vanishing coordinates do not determine a vertex");
  }

  std::vector<bool> in_support(m.n, false);
  for (size_t i : z.support) in_support[i] = true;
  std::vector<bool> is_zero_coord(m.n, false);
  for (size_t i : zeros) is_zero_coord[i] = true;

  std::vector<size_t> cols(m.d + 1);
  for (size_t j = 0; j <= m.d; ++j) cols[j] = j;

  std::vector<size_t> out;
  for (size_t i = 0; i < m.n; ++i) {
    if (!in_support[i]) {
      out.push_back(i);  // the co-circuit itself vanishes here
      continue;
    }
    if (is_zero_coord[i]) {
      out.push_back(i);  // p_i = 0 forces the coordinate to zero
      continue;
    }
    // i in the support and off the vertex's zero set: the coordinate
    // vanishes iff the (d+1)x(d+1) minor of [B | c] on rows zeros + {i}
    // vanishes.
    RatMatrix sub;
    for (size_t r : zeros) {
      RatVector row = m.B[r];
      row.push_back(m.c[r]);
      sub.push_back(std::move(row));
    }
    RatVector row = m.B[i];
    row.push_back(m.c[i]);
    sub.push_back(std::move(row));
    if (det(sub) == 0) out.push_back(i);
  }
  return out;
}

EndpointCells cell_endpoints_d1(const LinearModel& m) {
  require_valid(m);
  if (m.d != 1)
    throw Error(ErrorKind::Unsupported, "endpoint formula applies to 1-dimensional models only");
  RatVector b(m.n);
  for (size_t i = 0; i < m.n; ++i) {
    b[i] = m.B[i][0];
    if (b[i] == 0)
      throw Error(ErrorKind::Unsupported,
                  "endpoint formula requires all entries of B nonzero; use the boundary cell "
                  "operation instead");
  }

  bool have_r = false, have_l = false;
  Rat xr, xl;
  size_t ri = 0, li = 0;
  bool r_tie = false, l_tie = false;
  for (size_t i = 0; i < m.n; ++i) {
    Rat root = m.c[i] / b[i];
    if (b[i] > 0) {
      if (!have_r || root < xr) {
        xr = root;
        ri = i;
        have_r = true;
        r_tie = false;
      } else if (root == xr) {
        r_tie = true;
      }
    } else {
      if (!have_l || root > xl) {
        xl = root;
        li = i;
        have_l = true;
        l_tie = false;
      } else if (root == xl) {
        l_tie = true;
      }
    }
  }
  if (!have_r || !have_l)
    throw Error(ErrorKind::Internal, "a valid model has entries of both signs");
  if (r_tie || l_tie)
    throw Error(ErrorKind::Unsupported,
                "endpoint attained by more than one coordinate; use the boundary cell operation");

  auto pair_vertex = [&](size_t i, size_t j, const Rat& x) {
    // Evaluation of the co-circuit {i, j} vertex written in closed form.
    Rat den = b[j] * m.c[i] - b[i] * m.c[j];
    RatVector v(m.n, Rat(0));
    v[i] = (m.c[i] - b[i] * x) * b[j] / den;
    v[j] = -(m.c[j] - b[j] * x) * b[i] / den;
    return v;
  };

  RatMatrix right_pts;
  for (size_t j = 0; j < m.n; ++j) {
    if (b[j] >= 0) continue;
    RatVector ej(m.n, Rat(0));
    ej[j] = 1;
    right_pts.push_back(std::move(ej));
    for (size_t i = 0; i < m.n; ++i) {
      if (b[i] <= 0 || i == ri) continue;
      right_pts.push_back(pair_vertex(i, j, xr));
    }
  }
  RatMatrix left_pts;
  for (size_t i = 0; i < m.n; ++i) {
    if (b[i] <= 0) continue;
    RatVector ei(m.n, Rat(0));
    ei[i] = 1;
    left_pts.push_back(std::move(ei));
    for (size_t j = 0; j < m.n; ++j) {
      if (b[j] >= 0 || j == li) continue;
      left_pts.push_back(pair_vertex(i, j, xl));
    }
  }

  EndpointCells out;
  out.x_left = xl;
  out.x_right = xr;
  out.left_index = li;
  out.right_index = ri;
  out.left_cell = Polytope::from_vertices(m.n, left_pts);
  out.right_cell = Polytope::from_vertices(m.n, right_pts);
  return out;
}

Realization realize(const RatMatrix& M, const RatVector& b, size_t n) {
  size_t d = rows(M);
  if (b.size() != d) throw Error(ErrorKind::Domain, "b must have one entry per row of M");
  for (const auto& row : M)
    if (row.size() != n) throw Error(ErrorKind::Domain, "every row of M must have length n");

  std::vector<Halfspace> hs;
  for (size_t i = 0; i < n; ++i) {
    RatVector neg(n, Rat(0));
    neg[i] = -1;
    hs.push_back({std::move(neg), Rat(0)});
  }
  std::vector<Equation> eqs;
  eqs.push_back({RatVector(n, Rat(1)), Rat(1)});
  for (size_t i = 0; i < d; ++i) eqs.push_back({M[i], b[i]});
  Polytope input = Polytope::from_halfspaces(n, hs, eqs);
  if (input.is_empty())
    throw Error(ErrorKind::Domain, "the system {Mx = b, sum x = 1, x >= 0} has no solutions");

  RatVector xprime = input.centroid();
  for (const auto& xi : xprime)
    if (xi == 0)
      throw Error(ErrorKind::NotRealizable,
                  "the polytope lies in a coordinate hyperplane; it has no strictly positive "
                  "point, so it is not a cell of any model in this simplex");

  // N = M - b 1^T vanishes on the polytope's cone; scaling column i by
  // x'_i > 0 makes the all-ones vector a solution, which is exactly the
  // zero-column-sum property after transposing.
  RatMatrix N(d, RatVector(n));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < n; ++j) N[i][j] = (M[i][j] - b[i]) * xprime[j];
  Rref r = rref(N);
  size_t k = r.pivot_cols.size();

  Realization out;
  out.model.n = n;
  out.model.d = k;
  out.model.c = xprime;
  out.model.B.assign(n, RatVector(k, Rat(0)));
  for (size_t j = 0; j < k; ++j) {
    RatVector col = primitive(r.mat[j]);
    for (size_t i = 0; i < n; ++i) out.model.B[i][j] = col[i];
  }
  out.model.name = "realized";
  out.p = xprime;
  out.input = std::move(input);
  require_valid(out.model);
  return out;
}

}  // namespace logvor
