#include "partial.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "oracle.hpp"

namespace logvor {

namespace {

double dbl(const Rat& r) { return r.convert_to<double>(); }

std::vector<double> dbl_vec(const RatVector& v) {
  std::vector<double> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = dbl(v[i]);
  return out;
}

std::string format_vec(const RatVector& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_rat(v[i]);
  }
  return s + ")";
}

std::string format_eq(const Equation& e) {
  return format_vec(e.normal) + "·u = " + format_rat(e.offset);
}

using Face = FaceLattice::Face;

Face locate_face(const Polytope& theta, std::vector<size_t> verts) {
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (verts.empty()) throw Error(ErrorKind::Domain, "empty vertex set does not name a face of theta");
  for (size_t i : verts)
    if (i >= theta.vertices().size())
      throw Error(ErrorKind::Domain, "theta vertex index out of range");
  for (const Face& f : theta.face_lattice().faces)
    if (f.vertices == verts) return f;
  throw Error(ErrorKind::Domain, "the given vertices are not the vertex set of a face of theta");
}

struct FaceBase {
  Face face;
  Polytope face_poly;  // the face itself, in parameter space
  RatVector x;         // relative-interior point of the face
  RatVector p;         // its image on the model, strictly positive
};

FaceBase face_base(const PartialLinearModel& m, const std::vector<size_t>& verts,
                   const std::optional<RatVector>& at) {
  FaceBase fb;
  fb.face = locate_face(m.theta, verts);
  RatMatrix pts;
  for (size_t i : fb.face.vertices) pts.push_back(m.theta.vertices()[i]);
  fb.face_poly = Polytope::from_vertices(m.extension.d, pts);
  if (at) {
    if (at->size() != m.extension.d)
      throw Error(ErrorKind::Domain, "base parameter has wrong dimension");
    if (!fb.face_poly.relint_contains(*at))
      throw Error(ErrorKind::Domain,
                  "base parameter does not lie in the relative interior of the face");
    fb.x = *at;
  } else {
    fb.x = fb.face_poly.centroid();
  }
  ModelPoint mp = point_at(m.extension, fb.x);
  if (!mp.interior)
    throw Error(ErrorKind::Unsupported,
                "the face maps onto the boundary of the simplex; only faces with strictly "
                "positive image points are supported");
  fb.p = mp.p;
  return fb;
}

std::vector<Face> covers_of(const Polytope& theta, const Face& f) {
  std::vector<Face> out;
  for (const Face& g : theta.face_lattice().faces) {
    if (g.dim != f.dim + 1) continue;
    if (std::includes(g.vertices.begin(), g.vertices.end(), f.vertices.begin(),
                      f.vertices.end()))
      out.push_back(g);
  }
  return out;
}

struct CoverSplit {
  Polytope q;      // side of the face cell away from the cover's image
  Polytope q_bar;  // complementary side
  Equation cut;
  bool kept_le = false;
  Polytope cover_cell;
  Polytope cover_image;
  std::string note;
};

CoverSplit split_for_cover(const PartialLinearModel& m, const FaceBase& fb,
                           const Polytope& face_cell, const Face& g) {
  LinearModel gm = face_extension(m, g.vertices);
  Polytope g_cell = cell_interior(gm, parameter_of(gm, fb.p));

  // The cover's cell spans a hyperplane of the face cell's affine hull; any
  // of its equations that fails on the face cell cuts along that hyperplane.
  const Equation* cut = nullptr;
  for (const Equation& eq : g_cell.equations()) {
    bool valid_on_face = true;
    for (const RatVector& v : face_cell.vertices())
      if (dot(eq.normal, v) != eq.offset) {
        valid_on_face = false;
        break;
      }
    if (!valid_on_face) {
      cut = &eq;
      break;
    }
  }
  if (!cut)
    throw Error(ErrorKind::Internal,
                "no splitting equation: the covering face's cell spans the face cell's "
                "affine hull");

  auto sides = face_cell.split_by_hyperplane(cut->normal, cut->offset);

  RatMatrix g_img;
  for (size_t i : g.vertices) g_img.push_back(point_at(m.extension, m.theta.vertices()[i]).p);
  Polytope g_poly = Polytope::from_vertices(m.extension.n, g_img);

  bool lo_touches = touches_relint(sides.first, g_poly);
  bool hi_touches = touches_relint(sides.second, g_poly);
  if (lo_touches == hi_touches) {
    std::ostringstream os;
    os << "degenerate split of the face cell along " << format_eq(*cut) << ": "
       << (lo_touches ? "both sides meet" : "neither side meets")
       << " the relative interior of the covering face's image";
    throw Error(ErrorKind::DegenerateSplit, os.str());
  }

  CoverSplit out;
  out.cut = *cut;
  out.cover_cell = g_cell;
  out.cover_image = g_poly;
  out.kept_le = hi_touches;
  if (out.kept_le) {
    out.q = sides.first;
    out.q_bar = sides.second;
  } else {
    out.q = sides.second;
    out.q_bar = sides.first;
  }

  std::ostringstream os;
  os << "cover with parameter vertices ";
  for (size_t k = 0; k < g.vertices.size(); ++k)
    os << (k ? ", " : "") << format_vec(m.theta.vertices()[g.vertices[k]]);
  os << ": cut " << format_eq(out.cut) << ", kept the " << (out.kept_le ? "<=" : ">=")
     << " side; it avoids the relative interior of the cover's image";
  out.note = os.str();
  return out;
}

std::string facet_certificate(const PartialLinearModel& m, const FaceBase& fb,
                              const FacetCellResult& res, const CoverSplit& cs) {
  std::ostringstream os;
  os << "base point p = " << format_vec(fb.p) << " at parameter " << format_vec(fb.x)
     << "; the facet-extension cell splits along " << format_eq(cs.cut) << "; kept the "
     << (cs.kept_le ? "<=" : ">=") << " side.";

  Polytope kept_meet = res.q.intersect(cs.cover_image);
  os << " Exact: the kept side meets the model in a set of dimension " << kept_meet.dim()
     << " inside the model's boundary";
  Polytope other_meet = res.q_bar.intersect(cs.cover_image);
  if (!other_meet.is_empty() && touches_relint(res.q_bar, cs.cover_image))
    os << "; the discarded side reaches its relative interior (witness "
       << format_vec(other_meet.centroid()) << ").";
  else
    os << ".";

  os << std::scientific << std::setprecision(2);
  MleResult near = mle_partial(m, dbl_vec(res.q.centroid()));
  double near_err = 0.0;
  for (size_t i = 0; i < fb.p.size(); ++i)
    near_err = std::max(near_err, std::fabs(near.p[i] - dbl(fb.p[i])));
  os << " Numeric: constrained mle at the kept side's centroid lands "
     << (near.converged ? "" : "(non-converged) ") << near_err << " from p";
  if (res.q_bar.dim() == res.face_cell.dim()) {
    MleResult far = mle_partial(m, dbl_vec(res.q_bar.centroid()));
    double far_err = 0.0;
    for (size_t i = 0; i < fb.p.size(); ++i)
      far_err = std::max(far_err, std::fabs(far.p[i] - dbl(fb.p[i])));
    os << "; at the discarded side's centroid it lands " << far_err << " away";
    os << ((near.converged && near_err < 1e-6 && far.converged && far_err > 1e-6)
               ? " (confirms the side selection)."
               : " (inconclusive).");
  } else {
    os << "; the discarded side is lower-dimensional, far-side check skipped.";
  }
  return os.str();
}

}  // namespace

Polytope cell_partial_interior(const PartialLinearModel& m, const RatVector& x) {
  require_valid(m);
  if (x.size() != m.extension.d) throw Error(ErrorKind::Domain, "parameter has wrong dimension");
  if (!m.theta.relint_contains(x))
    throw Error(ErrorKind::Domain,
                "parameter is not interior to theta; use the facet or face operation for "
                "boundary points");
  return cell_interior(m.extension, x);
}

FacetCellResult cell_partial_facet(const PartialLinearModel& m, size_t facet_index,
                                   const std::optional<RatVector>& at) {
  require_valid(m);
  if (facet_index >= m.theta.halfspaces().size())
    throw Error(ErrorKind::Domain, "facet index out of range");

  FacetCellResult res;
  res.facet_index = facet_index;
  res.facet_theta_vertices = facet_vertex_indices(m.theta, facet_index);

  FaceBase fb = face_base(m, res.facet_theta_vertices, at);
  res.x = fb.x;
  res.p = fb.p;

  LinearModel fm = facet_extension(m, facet_index);
  res.face_cell = cell_interior(fm, parameter_of(fm, fb.p));
  res.model_cell = cell_interior(m.extension, fb.x);

  std::vector<Face> covers = covers_of(m.theta, fb.face);
  if (covers.size() != 1)
    throw Error(ErrorKind::Internal, "a facet of theta must have theta as its unique cover");
  CoverSplit cs = split_for_cover(m, fb, res.face_cell, covers.front());
  if (!(cs.cover_cell == res.model_cell))
    throw Error(ErrorKind::Internal, "covering-face cell disagrees with the extension cell");

  res.q = cs.q;
  res.q_bar = cs.q_bar;
  res.side_certificate = facet_certificate(m, fb, res, cs);
  return res;
}

FaceCellResult cell_partial_face(const PartialLinearModel& m,
                                 const std::vector<size_t>& face_theta_vertices,
                                 const std::optional<RatVector>& at) {
  require_valid(m);
  FaceBase fb = face_base(m, face_theta_vertices, at);

  FaceCellResult res;
  res.face_theta_vertices = fb.face.vertices;
  res.x = fb.x;
  res.p = fb.p;

  LinearModel fm = face_extension(m, fb.face.vertices);
  res.face_cell = cell_interior(fm, parameter_of(fm, fb.p));
  res.experimental = fb.face.dim < m.theta.dim() - 1;

  std::vector<Face> covers = covers_of(m.theta, fb.face);
  if (covers.empty()) {
    res.cell = res.face_cell;
    res.experimental = false;
    res.cover_notes.push_back(
        "the face is theta itself; its relative-interior cell is the extension's cell");
    return res;
  }

  Polytope cell = res.face_cell;
  for (const Face& g : covers) {
    CoverSplit cs = split_for_cover(m, fb, res.face_cell, g);
    res.q_list.push_back(cs.q);
    res.cover_notes.push_back(cs.note);
    cell = cell.intersect(cs.q);
  }
  res.cell = cell;
  return res;
}

bool touches_relint(const Polytope& a, const Polytope& g) {
  Polytope meet = a.intersect(g);
  if (meet.is_empty()) return false;
  if (g.dim() <= 0) return true;  // a point is its own relative interior
  // A convex subset of g missing relint(g) lies inside a single facet of g.
  for (const Halfspace& h : g.halfspaces()) {
    bool all_tight = true;
    for (const RatVector& v : meet.vertices())
      if (dot(h.normal, v) != h.offset) {
        all_tight = false;
        break;
      }
    if (all_tight) return false;
  }
  return true;
}

}  // namespace logvor
