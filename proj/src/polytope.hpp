#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "ratmat.hpp"

namespace logvor {

// normal . x <= offset
struct Halfspace {
  RatVector normal;
  Rat offset;
  bool operator==(const Halfspace&) const = default;
};

// normal . x == offset
struct Equation {
  RatVector normal;
  Rat offset;
  bool operator==(const Equation&) const = default;
};

class UnboundedError : public Error {
public:
  UnboundedError(const std::string& what, RatVector ray)
      : Error(ErrorKind::Unbounded, what), ray_(std::move(ray)) {}
  const RatVector& ray() const { return ray_; }

private:
  RatVector ray_;
};

struct FaceLattice {
  struct Face {
    std::vector<size_t> vertices;  // sorted indices into Polytope::vertices()
    int dim;
  };
  std::vector<Face> faces;  // all nonempty faces incl. the polytope itself, sorted by (dim, vertices)
};

struct IsoResult {
  enum class Answer { Yes, No, Inconclusive };
  Answer answer = Answer::No;
  std::vector<size_t> vertex_map;  // P-vertex i -> Q-vertex vertex_map[i], set iff Yes
  uint64_t nodes = 0;
};

// Bounded convex polytope in Q^ambient, held in canonical double description:
// lexicographically sorted vertex list, irredundant sorted facet halfspaces,
// canonical affine-hull equations. The empty polytope has dim() == -1.
class Polytope {
public:
  Polytope() = default;

  static Polytope from_vertices(size_t ambient, const RatMatrix& points);
  // Same canonical result as from_vertices(ambient, points), provided every
  // point satisfies every support and each facet of the hull is tight for at
  // least one support. Skips the generic facet scan, so it is much faster
  // when the caller already knows where the facets can lie.
  static Polytope from_vertices(size_t ambient, const RatMatrix& points,
                                const std::vector<Halfspace>& supports);
  // Throws UnboundedError (with a certificate ray) if the region is unbounded.
  static Polytope from_halfspaces(size_t ambient, const std::vector<Halfspace>& hs,
                                  const std::vector<Equation>& eqs);
  static Polytope empty(size_t ambient);

  size_t ambient_dim() const { return ambient_; }
  int dim() const { return dim_; }
  bool is_empty() const { return dim_ < 0; }
  const RatMatrix& vertices() const { return verts_; }
  const std::vector<Halfspace>& halfspaces() const { return hs_; }
  const std::vector<Equation>& equations() const { return eqs_; }

  bool contains(const RatVector& p) const;
  bool relint_contains(const RatVector& p) const;
  RatVector centroid() const;

  const FaceLattice& face_lattice() const;
  // (f_0, ..., f_{dim-1}); a single point reports (1), the empty polytope ().
  std::vector<size_t> f_vector() const;

  Polytope intersect_with_affine(const std::vector<Equation>& eqs) const;
  Polytope intersect(const Polytope& other) const;
  // Exact split into the <= side and the >= side of normal . x = offset.
  std::pair<Polytope, Polytope> split_by_hyperplane(const RatVector& normal, const Rat& offset) const;

  // Random rational point in the relative interior (positive vertex weights).
  RatVector relint_sample(std::mt19937_64& rng) const;

  bool operator==(const Polytope& o) const {
    return ambient_ == o.ambient_ && dim_ == o.dim_ && verts_ == o.verts_ && hs_ == o.hs_ &&
           eqs_ == o.eqs_;
  }

private:
  static Polytope hull_impl(size_t ambient, const RatMatrix& points,
                            const std::vector<Halfspace>* supports);

  size_t ambient_ = 0;
  int dim_ = -1;
  RatMatrix verts_;
  std::vector<Halfspace> hs_;
  std::vector<Equation> eqs_;
  mutable std::shared_ptr<const FaceLattice> lattice_;
};

// Backtracking search for a vertex bijection carrying facets to facets.
// Gives up (Inconclusive) after node_cap search nodes.
IsoResult combinatorially_isomorphic(const Polytope& p, const Polytope& q,
                                     uint64_t node_cap = 10'000'000);

}  // namespace logvor
