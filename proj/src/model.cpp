#include "model.hpp"

#include <algorithm>

namespace logvor {

ValidationReport validate(const LinearModel& m) {
  ValidationReport r;
  auto fail = [&](const std::string& s) {
    r.ok = false;
    r.violations.push_back(s);
  };
  if (m.c.size() != m.n) fail("c must have length n");
  if (m.B.size() != m.n) fail("B must have n rows");
  for (const auto& row : m.B)
    if (row.size() != m.d) {
      fail("every row of B must have length d");
      break;
    }
  if (!r.ok) return r;

  Rat s(0);
  for (const auto& ci : m.c) s += ci;
  if (s != 1) fail("c must sum to 1");
  for (const auto& ci : m.c)
    if (ci <= 0) {
      fail("c must be strictly positive");
      break;
    }
  for (size_t j = 0; j < m.d; ++j) {
    Rat col(0);
    for (size_t i = 0; i < m.n; ++i) col += m.B[i][j];
    if (col != 0) {
      fail("every column of B must sum to 0");
      break;
    }
  }
  if (rank(m.B) != m.d) fail("B must have full column rank d");
  if (r.ok) {
    // With zero column sums and full rank the parameter polytope is bounded;
    // it still needs an interior point for the model to be d-dimensional.
    Polytope theta = parameter_polytope(m);
    if (theta.dim() != static_cast<int>(m.d))
      fail("parameter polytope {Bx <= c} is not full-dimensional");
  }
  return r;
}

ValidationReport validate(const PartialLinearModel& m) {
  ValidationReport r = validate(m.extension);
  auto fail = [&](const std::string& s) {
    r.ok = false;
    r.violations.push_back(s);
  };
  if (!r.ok) return r;
  if (m.theta.is_empty()) {
    fail("theta is empty");
    return r;
  }
  if (m.theta.ambient_dim() != m.extension.d) {
    fail("theta must live in R^d");
    return r;
  }
  if (m.theta.dim() != static_cast<int>(m.extension.d))
    fail("theta must be full-dimensional in R^d");
  for (const auto& v : m.theta.vertices())
    for (size_t i = 0; i < m.extension.n; ++i)
      if (dot(m.extension.B[i], v) > m.extension.c[i]) {
        fail("theta is not contained in the full parameter polytope");
        goto done_subset;
      }
done_subset:
  // A partial model must have at least one facet off the simplex boundary.
  if (m.theta.dim() == static_cast<int>(m.extension.d)) {
    bool extendable = false;
    for (size_t k = 0; k < m.theta.halfspaces().size() && !extendable; ++k) {
      auto idx = facet_vertex_indices(m.theta, k);
      RatVector avg(m.extension.n, Rat(0));
      for (size_t vi : idx) {
        RatVector img = vec_sub(m.extension.c, matvec(m.extension.B, m.theta.vertices()[vi]));
        avg = vec_add(avg, img);
      }
      bool positive = true;
      for (const auto& a : avg)
        if (a <= 0) positive = false;
      extendable = positive;
    }
    if (!extendable) fail("every facet of the model lies on the simplex boundary");
  }
  return r;
}

void require_valid(const LinearModel& m) {
  ValidationReport r = validate(m);
  if (!r.ok) {
    std::string msg = "invalid model";
    if (!m.name.empty()) msg += " '" + m.name + "'";
    for (const auto& v : r.violations) msg += "; " + v;
    throw Error(ErrorKind::InvalidModel, msg);
  }
}

void require_valid(const PartialLinearModel& m) {
  ValidationReport r = validate(m);
  if (!r.ok) {
    std::string msg = "invalid partial model";
    if (!m.name.empty()) msg += " '" + m.name + "'";
    for (const auto& v : r.violations) msg += "; " + v;
    throw Error(ErrorKind::InvalidModel, msg);
  }
}

Polytope parameter_polytope(const LinearModel& m) {
  std::vector<Halfspace> hs;
  for (size_t i = 0; i < m.n; ++i) hs.push_back({m.B[i], m.c[i]});
  return Polytope::from_halfspaces(m.d, hs, {});
}

Polytope image_polytope(const LinearModel& m) {
  Polytope theta = parameter_polytope(m);
  RatMatrix pts;
  for (const auto& v : theta.vertices()) pts.push_back(vec_sub(m.c, matvec(m.B, v)));
  return Polytope::from_vertices(m.n, pts);
}

Polytope image_polytope(const PartialLinearModel& m) {
  RatMatrix pts;
  for (const auto& v : m.theta.vertices())
    pts.push_back(vec_sub(m.extension.c, matvec(m.extension.B, v)));
  return Polytope::from_vertices(m.extension.n, pts);
}

RatMatrix model_vertices(const LinearModel& m) { return image_polytope(m).vertices(); }

ModelPoint point_at(const LinearModel& m, const RatVector& x) {
  if (x.size() != m.d) throw Error(ErrorKind::Domain, "parameter has wrong dimension");
  ModelPoint mp;
  mp.p = vec_sub(m.c, matvec(m.B, x));
  mp.interior = true;
  for (size_t i = 0; i < m.n; ++i) {
    if (mp.p[i] < 0)
      throw Error(ErrorKind::Domain, "parameter lies outside the parameter polytope");
    if (mp.p[i] > 0)
      mp.support.push_back(i);
    else
      mp.interior = false;
  }
  return mp;
}

RatVector parameter_of(const LinearModel& m, const RatVector& p) {
  if (p.size() != m.n) throw Error(ErrorKind::Domain, "point has wrong dimension");
  SolveResult s = solve(m.B, vec_sub(m.c, p));
  if (s.status == SolveStatus::Inconsistent)
    throw Error(ErrorKind::Domain, "point does not lie on the model's affine span");
  return s.solution;
}

TransversalityReport is_transversal(const LinearModel& m) {
  require_valid(m);
  TransversalityReport r;
  for (const auto& v : model_vertices(m)) {
    size_t zeros = 0;
    for (const auto& vi : v)
      if (vi == 0) ++zeros;
    if (zeros != m.d) {
      r.transversal = false;
      r.witness_point = v;
      r.witness_param = parameter_of(m, v);
      r.witness_zeros = zeros;
      return r;
    }
  }
  return r;
}

std::vector<size_t> facet_vertex_indices(const Polytope& p, size_t facet_index) {
  if (facet_index >= p.halfspaces().size())
    throw Error(ErrorKind::Domain, "facet index out of range");
  const Halfspace& h = p.halfspaces()[facet_index];
  std::vector<size_t> idx;
  for (size_t i = 0; i < p.vertices().size(); ++i)
    if (dot(h.normal, p.vertices()[i]) == h.offset) idx.push_back(i);
  return idx;
}

LinearModel face_extension(const PartialLinearModel& m, const std::vector<size_t>& face_vertices) {
  const LinearModel& ext = m.extension;
  if (face_vertices.empty()) throw Error(ErrorKind::Domain, "face has no vertices");
  RatMatrix imgs;
  for (size_t vi : face_vertices) {
    if (vi >= m.theta.vertices().size())
      throw Error(ErrorKind::Domain, "face vertex index out of range");
    imgs.push_back(vec_sub(ext.c, matvec(ext.B, m.theta.vertices()[vi])));
  }
  RatVector anchor(ext.n, Rat(0));
  for (const auto& w : imgs) anchor = vec_add(anchor, w);
  anchor = vec_scale(Rat(1) / Rat(static_cast<long>(imgs.size())), anchor);

  RatMatrix diffs;
  for (size_t i = 1; i < imgs.size(); ++i) diffs.push_back(vec_sub(imgs[i], imgs[0]));
  Rref rd = rref(diffs);
  size_t k = rd.pivot_cols.size();

  LinearModel f;
  f.n = ext.n;
  f.d = k;
  f.c = anchor;
  f.B.assign(ext.n, RatVector(k, Rat(0)));
  for (size_t j = 0; j < k; ++j) {
    RatVector col = primitive(rd.mat[j]);
    for (size_t i = 0; i < ext.n; ++i) f.B[i][j] = col[i];
  }
  f.name = m.name.empty() ? "face-extension" : m.name + "-face";
  return f;
}

LinearModel facet_extension(const PartialLinearModel& m, size_t facet_index) {
  return face_extension(m, facet_vertex_indices(m.theta, facet_index));
}

}  // namespace logvor
