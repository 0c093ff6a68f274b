#include "polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>

namespace logvor {

namespace {

bool lex_less(const RatVector& a, const RatVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool hs_less(const Halfspace& a, const Halfspace& b) {
  if (a.normal != b.normal) return lex_less(a.normal, b.normal);
  return a.offset < b.offset;
}

bool eq_less(const Equation& a, const Equation& b) {
  if (a.normal != b.normal) return lex_less(a.normal, b.normal);
  return a.offset < b.offset;
}

// Rescales (normal, offset) by a positive rational so the normal becomes a
// content-1 integer vector. Orientation is preserved.
Halfspace canonical_halfspace(const RatVector& n, const Rat& off) {
  Int l(1);
  for (const auto& x : n) l = lcm(l, denominator(x));
  Int g(0);
  for (const auto& x : n) g = gcd(g, Int(numerator(x * Rat(l))));
  if (g == 0) throw Error(ErrorKind::Internal, "zero halfspace normal");
  Rat s = Rat(l) / Rat(g);
  Halfspace h;
  h.normal.reserve(n.size());
  for (const auto& x : n) h.normal.push_back(x * s);
  h.offset = off * s;
  return h;
}

// Same rescale but the sign is free for an equation; fix first nonzero > 0.
Equation canonical_equation(const RatVector& n, const Rat& off) {
  RatVector p = primitive(n);
  if (is_zero(p)) throw Error(ErrorKind::Internal, "zero equation normal");
  // primitive() scaled n by some positive factor and possibly flipped sign;
  // recover the factor from the first nonzero coordinate.
  size_t i = 0;
  while (n[i] == 0) ++i;
  Rat s = p[i] / n[i];
  return Equation{std::move(p), off * s};
}

// All k-subsets of {0..m-1}, in lexicographic order.
template <typename Fn>
void for_each_subset(size_t m, size_t k, Fn&& fn) {
  if (k > m) return;
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  if (k == 0) {
    fn(idx);
    return;
  }
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

std::mutex lattice_mutex;

}  // namespace

Polytope Polytope::empty(size_t ambient) {
  Polytope p;
  p.ambient_ = ambient;
  p.dim_ = -1;
  return p;
}

Polytope Polytope::from_vertices(size_t ambient, const RatMatrix& points) {
  return hull_impl(ambient, points, nullptr);
}

Polytope Polytope::from_vertices(size_t ambient, const RatMatrix& points,
                                 const std::vector<Halfspace>& supports) {
  return hull_impl(ambient, points, &supports);
}

Polytope Polytope::hull_impl(size_t ambient, const RatMatrix& points,
                             const std::vector<Halfspace>* supports) {
  for (const auto& p : points)
    if (p.size() != ambient) throw Error(ErrorKind::Internal, "point dimension mismatch");
  RatMatrix pts = points;
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Polytope P;
  P.ambient_ = ambient;
  if (pts.empty()) {
    P.dim_ = -1;
    return P;
  }

  const RatVector& p0 = pts.front();
  RatMatrix D;
  for (size_t i = 1; i < pts.size(); ++i) D.push_back(vec_sub(pts[i], p0));
  Rref rd = rref(D);
  size_t adim = rd.pivot_cols.size();

  RatMatrix ker = right_kernel_basis(D, ambient);
  for (const auto& h : ker) P.eqs_.push_back(canonical_equation(h, dot(h, p0)));
  std::sort(P.eqs_.begin(), P.eqs_.end(), eq_less);

  P.dim_ = static_cast<int>(adim);
  if (adim == 0) {
    P.verts_ = {p0};
    return P;
  }

  RatMatrix dirs(rd.mat.begin(), rd.mat.begin() + adim);

  std::vector<Halfspace> found;
  if (supports) {
    // Each facet is tight for some support, so its hyperplane is the affine
    // hull of that support's tight point set whenever that set has the right
    // dimension. The canonical normal is rebuilt inside span(dirs), exactly
    // as the generic scan below would produce it.
    for (const Halfspace& s : *supports) {
      if (s.normal.size() != ambient)
        throw Error(ErrorKind::Internal, "support dimension mismatch");
      if (is_zero(s.normal)) continue;
      RatMatrix tight;
      for (const auto& p : pts) {
        int side = sign(dot(s.normal, p) - s.offset);
        if (side > 0) throw Error(ErrorKind::Internal, "support violated by a hull point");
        if (side == 0) tight.push_back(p);
      }
      if (tight.size() < adim) continue;
      RatMatrix G;
      for (size_t i = 1; i < tight.size(); ++i) {
        RatVector diff = vec_sub(tight[i], tight[0]);
        RatVector row(adim);
        for (size_t k = 0; k < adim; ++k) row[k] = dot(dirs[k], diff);
        G.push_back(std::move(row));
      }
      RatMatrix kb = right_kernel_basis(G, adim);
      if (kb.size() != 1) continue;  // tight set is not facet-dimensional
      RatVector h(ambient, Rat(0));
      for (size_t k = 0; k < adim; ++k)
        if (kb[0][k] != 0) h = vec_add(h, vec_scale(kb[0][k], dirs[k]));
      Rat off = dot(h, tight[0]);
      int orient = 0;
      for (const auto& p : pts) {
        orient = sign(dot(h, p) - off);
        if (orient != 0) break;
      }
      if (orient == 0) continue;
      if (orient > 0) {
        for (auto& x : h) x = -x;
        off = -off;
      }
      found.push_back(canonical_halfspace(h, off));
    }
  } else {
    // Every facet hyperplane is affinely spanned by some adim-subset of the
    // input points, so scanning all such subsets finds each facet at least
    // once.
    for_each_subset(pts.size(), adim, [&](const std::vector<size_t>& S) {
      RatMatrix G;
      for (size_t i = 1; i < adim; ++i) {
        RatVector diff = vec_sub(pts[S[i]], pts[S[0]]);
        RatVector row(adim);
        for (size_t k = 0; k < adim; ++k) row[k] = dot(dirs[k], diff);
        G.push_back(std::move(row));
      }
      RatMatrix kb = right_kernel_basis(G, adim);
      if (kb.size() != 1) return;
      RatVector h(ambient, Rat(0));
      for (size_t k = 0; k < adim; ++k)
        if (kb[0][k] != 0) h = vec_add(h, vec_scale(kb[0][k], dirs[k]));
      Rat off = dot(h, pts[S[0]]);
      bool above = false, below = false;
      for (const auto& p : pts) {
        int s = sign(dot(h, p) - off);
        if (s > 0) above = true;
        if (s < 0) below = true;
        if (above && below) return;
      }
      if (!above && !below) return;
      if (above) {
        for (auto& x : h) x = -x;
        off = -off;
      }
      found.push_back(canonical_halfspace(h, off));
    });
  }
  std::sort(found.begin(), found.end(), hs_less);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  P.hs_ = std::move(found);

  for (const auto& p : pts) {
    RatMatrix tight;
    for (const auto& e : P.eqs_) tight.push_back(e.normal);
    for (const auto& h : P.hs_)
      if (dot(h.normal, p) == h.offset) tight.push_back(h.normal);
    if (rank(tight) == ambient) P.verts_.push_back(p);
  }
  return P;
}

Polytope Polytope::from_halfspaces(size_t ambient, const std::vector<Halfspace>& hs,
                                   const std::vector<Equation>& eqs) {
  std::vector<Halfspace> H;
  std::vector<Equation> E;
  for (const auto& h : hs) {
    if (h.normal.size() != ambient) throw Error(ErrorKind::Internal, "halfspace dimension mismatch");
    if (is_zero(h.normal)) {
      if (h.offset < 0) return empty(ambient);
    } else {
      H.push_back(h);
    }
  }
  for (const auto& e : eqs) {
    if (e.normal.size() != ambient) throw Error(ErrorKind::Internal, "equation dimension mismatch");
    if (is_zero(e.normal)) {
      if (e.offset != 0) return empty(ambient);
    } else {
      E.push_back(e);
    }
  }

  RatMatrix stack;
  for (const auto& h : H) stack.push_back(h.normal);
  for (const auto& e : E) stack.push_back(e.normal);
  RatMatrix lin = right_kernel_basis(stack, ambient);
  if (!lin.empty()) {
    // The region is invariant along lin; decide emptiness in the quotient.
    Rref rs = rref(stack);
    size_t k = rs.pivot_cols.size();
    RatMatrix C(rs.mat.begin(), rs.mat.begin() + k);
    std::vector<Halfspace> H2;
    for (const auto& h : H) H2.push_back({matvec(C, h.normal), h.offset});
    std::vector<Equation> E2;
    for (const auto& e : E) E2.push_back({matvec(C, e.normal), e.offset});
    Polytope red = from_halfspaces(k, H2, E2);
    if (red.is_empty()) return empty(ambient);
    throw UnboundedError("feasible region contains a line", primitive(lin[0]));
  }

  RatMatrix en;
  for (const auto& e : E) en.push_back(e.normal);
  size_t re = rank(en);
  size_t k = ambient - re;

  RatMatrix candidates;
  for_each_subset(H.size(), k, [&](const std::vector<size_t>& T) {
    RatMatrix A = en;
    RatVector b;
    for (const auto& e : E) b.push_back(e.offset);
    for (size_t t : T) {
      A.push_back(H[t].normal);
      b.push_back(H[t].offset);
    }
    SolveResult s = solve(A, b);
    if (s.status != SolveStatus::Unique) return;
    for (const auto& h : H)
      if (dot(h.normal, s.solution) > h.offset) return;
    candidates.push_back(std::move(s.solution));
  });
  if (candidates.empty()) return empty(ambient);

  if (k >= 1) {
    // A nonzero recession direction exists iff the (pointed) recession cone
    // has an extreme ray; its generator solves some (k-1)-subset system.
    UnboundedError* pending = nullptr;
    RatVector cert;
    for_each_subset(H.size(), k - 1, [&](const std::vector<size_t>& R) {
      if (!cert.empty()) return;
      RatMatrix A = en;
      for (size_t r : R) A.push_back(H[r].normal);
      RatMatrix kb = right_kernel_basis(A, ambient);
      if (kb.size() != 1) return;
      const RatVector& v = kb[0];
      bool pos_ok = true, neg_ok = true;
      for (const auto& h : H) {
        int s = sign(dot(h.normal, v));
        if (s > 0) pos_ok = false;
        if (s < 0) neg_ok = false;
        if (!pos_ok && !neg_ok) return;
      }
      if (pos_ok)
        cert = primitive(v);
      else if (neg_ok) {
        RatVector w(v.size());
        for (size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
        cert = primitive(w);
      }
    });
    (void)pending;
    if (!cert.empty()) throw UnboundedError("feasible region has a recession ray", cert);
  }

  // Every facet of the region is tight for one of the input halfspaces.
  return from_vertices(ambient, candidates, H);
}

bool Polytope::contains(const RatVector& p) const {
  if (is_empty()) return false;
  if (p.size() != ambient_) throw Error(ErrorKind::Internal, "point dimension mismatch");
  for (const auto& e : eqs_)
    if (dot(e.normal, p) != e.offset) return false;
  for (const auto& h : hs_)
    if (dot(h.normal, p) > h.offset) return false;
  return true;
}

bool Polytope::relint_contains(const RatVector& p) const {
  if (is_empty()) return false;
  if (p.size() != ambient_) throw Error(ErrorKind::Internal, "point dimension mismatch");
  for (const auto& e : eqs_)
    if (dot(e.normal, p) != e.offset) return false;
  for (const auto& h : hs_)
    if (dot(h.normal, p) >= h.offset) return false;
  return true;
}

RatVector Polytope::centroid() const {
  if (is_empty()) throw Error(ErrorKind::Domain, "centroid of empty polytope");
  RatVector c(ambient_, Rat(0));
  for (const auto& v : verts_) c = vec_add(c, v);
  Rat inv = Rat(1) / Rat(static_cast<long>(verts_.size()));
  return vec_scale(inv, c);
}

const FaceLattice& Polytope::face_lattice() const {
  std::lock_guard<std::mutex> lock(lattice_mutex);
  if (lattice_) return *lattice_;
  auto lat = std::make_shared<FaceLattice>();
  if (!is_empty()) {
    std::vector<size_t> top(verts_.size());
    for (size_t i = 0; i < verts_.size(); ++i) top[i] = i;
    std::vector<std::vector<size_t>> facet_sets;
    for (const auto& h : hs_) {
      std::vector<size_t> s;
      for (size_t i = 0; i < verts_.size(); ++i)
        if (dot(h.normal, verts_[i]) == h.offset) s.push_back(i);
      facet_sets.push_back(std::move(s));
    }
    // Every face is an intersection of facets, so closing the facet sets
    // under pairwise intersection enumerates the whole lattice.
    std::set<std::vector<size_t>> sets;
    sets.insert(top);
    for (const auto& s : facet_sets) sets.insert(s);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<size_t>> snapshot(sets.begin(), sets.end());
      for (const auto& f : facet_sets)
        for (const auto& x : snapshot) {
          std::vector<size_t> inter;
          std::set_intersection(f.begin(), f.end(), x.begin(), x.end(),
                                std::back_inserter(inter));
          if (!inter.empty() && sets.insert(inter).second) grew = true;
        }
    }
    for (const auto& s : sets) {
      RatMatrix diffs;
      for (size_t i = 1; i < s.size(); ++i) diffs.push_back(vec_sub(verts_[s[i]], verts_[s[0]]));
      lat->faces.push_back({s, static_cast<int>(rank(diffs))});
    }
    std::sort(lat->faces.begin(), lat->faces.end(), [](const auto& a, const auto& b) {
      if (a.dim != b.dim) return a.dim < b.dim;
      return a.vertices < b.vertices;
    });
  }
  lattice_ = lat;
  return *lattice_;
}

std::vector<size_t> Polytope::f_vector() const {
  if (dim_ < 0) return {};
  if (dim_ == 0) return {1};
  std::vector<size_t> f(static_cast<size_t>(dim_), 0);
  for (const auto& face : face_lattice().faces)
    if (face.dim < dim_) ++f[static_cast<size_t>(face.dim)];
  return f;
}

Polytope Polytope::intersect_with_affine(const std::vector<Equation>& eqs) const {
  if (is_empty()) return *this;
  std::vector<Equation> all = eqs_;
  all.insert(all.end(), eqs.begin(), eqs.end());
  return from_halfspaces(ambient_, hs_, all);
}

Polytope Polytope::intersect(const Polytope& other) const {
  if (ambient_ != other.ambient_) throw Error(ErrorKind::Internal, "intersect ambient mismatch");
  if (is_empty()) return *this;
  if (other.is_empty()) return other;
  std::vector<Halfspace> hs = hs_;
  hs.insert(hs.end(), other.hs_.begin(), other.hs_.end());
  std::vector<Equation> eqs = eqs_;
  eqs.insert(eqs.end(), other.eqs_.begin(), other.eqs_.end());
  return from_halfspaces(ambient_, hs, eqs);
}

std::pair<Polytope, Polytope> Polytope::split_by_hyperplane(const RatVector& normal,
                                                            const Rat& offset) const {
  if (normal.size() != ambient_) throw Error(ErrorKind::Internal, "split dimension mismatch");
  if (is_empty()) return {*this, *this};
  std::vector<int> side(verts_.size());
  for (size_t i = 0; i < verts_.size(); ++i) side[i] = sign(dot(normal, verts_[i]) - offset);

  RatMatrix crossings;
  for (const auto& face : face_lattice().faces) {
    if (face.dim != 1) continue;
    // A 1-face has exactly two vertices.
    size_t a = face.vertices.front(), b = face.vertices.back();
    if (side[a] * side[b] >= 0) continue;
    Rat ha = dot(normal, verts_[a]), hb = dot(normal, verts_[b]);
    Rat t = (offset - ha) / (hb - ha);
    crossings.push_back(vec_add(verts_[a], vec_scale(t, vec_sub(verts_[b], verts_[a]))));
  }

  RatMatrix le = crossings, ge = crossings;
  for (size_t i = 0; i < verts_.size(); ++i) {
    if (side[i] <= 0) le.push_back(verts_[i]);
    if (side[i] >= 0) ge.push_back(verts_[i]);
  }
  return {from_vertices(ambient_, le), from_vertices(ambient_, ge)};
}

RatVector Polytope::relint_sample(std::mt19937_64& rng) const {
  if (is_empty()) throw Error(ErrorKind::Domain, "sample from empty polytope");
  RatVector acc(ambient_, Rat(0));
  Rat total(0);
  for (const auto& v : verts_) {
    Rat w(static_cast<long>(rng() % 997 + 1));
    acc = vec_add(acc, vec_scale(w, v));
    total += w;
  }
  return vec_scale(Rat(1) / total, acc);
}

IsoResult combinatorially_isomorphic(const Polytope& p, const Polytope& q, uint64_t node_cap) {
  IsoResult res;
  if (p.dim() != q.dim() || p.vertices().size() != q.vertices().size() ||
      p.halfspaces().size() != q.halfspaces().size()) {
    res.answer = IsoResult::Answer::No;
    return res;
  }
  size_t nv = p.vertices().size();
  if (p.dim() <= 0) {
    res.answer = IsoResult::Answer::Yes;
    if (nv == 1) res.vertex_map = {0};
    return res;
  }

  auto incidence = [](const Polytope& poly) {
    std::vector<std::vector<size_t>> vf(poly.vertices().size());
    std::vector<size_t> fsize(poly.halfspaces().size(), 0);
    for (size_t f = 0; f < poly.halfspaces().size(); ++f) {
      const auto& h = poly.halfspaces()[f];
      for (size_t v = 0; v < poly.vertices().size(); ++v)
        if (dot(h.normal, poly.vertices()[v]) == h.offset) {
          vf[v].push_back(f);
          ++fsize[f];
        }
    }
    return std::pair(vf, fsize);
  };
  auto [pvf, pfs] = incidence(p);
  auto [qvf, qfs] = incidence(q);

  {
    auto sp = pfs, sq = qfs;
    std::sort(sp.begin(), sp.end());
    std::sort(sq.begin(), sq.end());
    if (sp != sq) {
      res.answer = IsoResult::Answer::No;
      return res;
    }
  }

  auto signature = [](const std::vector<size_t>& facets, const std::vector<size_t>& fsize) {
    std::vector<size_t> sig;
    for (size_t f : facets) sig.push_back(fsize[f]);
    std::sort(sig.begin(), sig.end());
    return sig;
  };
  std::vector<std::vector<size_t>> psig(nv), qsig(nv);
  for (size_t v = 0; v < nv; ++v) {
    psig[v] = signature(pvf[v], pfs);
    qsig[v] = signature(qvf[v], qfs);
  }
  {
    auto sp = psig, sq = qsig;
    std::sort(sp.begin(), sp.end());
    std::sort(sq.begin(), sq.end());
    if (sp != sq) {
      res.answer = IsoResult::Answer::No;
      return res;
    }
  }

  auto common = [nv](const std::vector<std::vector<size_t>>& vf) {
    std::vector<std::vector<size_t>> c(nv, std::vector<size_t>(nv, 0));
    for (size_t a = 0; a < nv; ++a)
      for (size_t b = 0; b < nv; ++b) {
        std::vector<size_t> inter;
        std::set_intersection(vf[a].begin(), vf[a].end(), vf[b].begin(), vf[b].end(),
                              std::back_inserter(inter));
        c[a][b] = inter.size();
      }
    return c;
  };
  auto pc = common(pvf), qc = common(qvf);

  // Most-constrained-first vertex order: rarest signature class first.
  std::vector<size_t> order(nv);
  for (size_t i = 0; i < nv; ++i) order[i] = i;
  std::map<std::vector<size_t>, size_t> sig_count;
  for (size_t v = 0; v < nv; ++v) ++sig_count[qsig[v]];
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    size_t ca = sig_count[psig[a]], cb = sig_count[psig[b]];
    if (ca != cb) return ca < cb;
    return a < b;
  });

  std::vector<size_t> map(nv, SIZE_MAX);
  std::vector<bool> used(nv, false);
  uint64_t nodes = 0;
  bool capped = false;

  std::set<std::vector<size_t>> q_facet_sets;
  for (size_t f = 0; f < q.halfspaces().size(); ++f) {
    std::vector<size_t> s;
    for (size_t v = 0; v < nv; ++v)
      if (std::binary_search(qvf[v].begin(), qvf[v].end(), f)) s.push_back(v);
    q_facet_sets.insert(s);
  }

  std::function<bool(size_t)> backtrack = [&](size_t pos) -> bool {
    if (capped) return false;
    if (pos == nv) {
      for (size_t f = 0; f < p.halfspaces().size(); ++f) {
        std::vector<size_t> img;
        for (size_t v = 0; v < nv; ++v)
          if (std::binary_search(pvf[v].begin(), pvf[v].end(), f)) img.push_back(map[v]);
        std::sort(img.begin(), img.end());
        if (!q_facet_sets.count(img)) return false;
      }
      return true;
    }
    size_t v = order[pos];
    for (size_t w = 0; w < nv; ++w) {
      if (used[w] || qsig[w] != psig[v]) continue;
      if (++nodes > node_cap) {
        capped = true;
        return false;
      }
      bool ok = true;
      for (size_t j = 0; j < pos; ++j) {
        size_t u = order[j];
        if (pc[v][u] != qc[w][map[u]]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      if (backtrack(pos + 1)) return true;
      map[v] = SIZE_MAX;
      used[w] = false;
    }
    return false;
  };

  bool found = backtrack(0);
  res.nodes = nodes;
  if (found) {
    res.answer = IsoResult::Answer::Yes;
    res.vertex_map = map;
  } else {
    res.answer = capped ? IsoResult::Answer::Inconclusive : IsoResult::Answer::No;
  }
  return res;
}

}  // namespace logvor
