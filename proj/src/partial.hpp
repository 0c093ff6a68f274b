#pragma once

#include <optional>

#include "cells.hpp"

namespace logvor {

// Cell at a point in the relative interior of the partial model; equal to
// the extension's cell there.
Polytope cell_partial_interior(const PartialLinearModel& m, const RatVector& x);

struct FacetCellResult {
  size_t facet_index = 0;
  std::vector<size_t> facet_theta_vertices;  // indices into theta's vertex list
  RatVector x;  // parameter of the base point, in relint of the facet
  RatVector p;  // the base point on the model
  Polytope face_cell;   // cell of the facet's own extension at p; dim n-d
  Polytope model_cell;  // cell of the full extension at p; dim n-d-1
  Polytope q;           // the cell of the partial model at p
  Polytope q_bar;       // the complementary side, toward the model interior
  std::string side_certificate;
};
// Cell at a relative-interior point of a facet of theta's image: the side
// of the facet-extension cell, split along the full extension's cell, that
// does not meet the model's relative interior.
FacetCellResult cell_partial_facet(const PartialLinearModel& m, size_t facet_index,
                                   const std::optional<RatVector>& at = std::nullopt);

struct FaceCellResult {
  std::vector<size_t> face_theta_vertices;
  RatVector x;
  RatVector p;
  Polytope face_cell;             // cell of the face's extension at p
  std::vector<Polytope> q_list;   // one side per covering face
  Polytope cell;                  // intersection of q_list
  bool experimental = true;       // conjectural beyond codimension one
  std::vector<std::string> cover_notes;
};
// Conjectural construction at a relint point of an arbitrary proper face of
// theta: intersect, over all faces G covering F in theta's face lattice,
// the side of F's extension cell cut off by G's extension cell away from
// G's relative interior. For facets (codimension one) this is the proven
// construction above.
FaceCellResult cell_partial_face(const PartialLinearModel& m,
                                 const std::vector<size_t>& face_theta_vertices,
                                 const std::optional<RatVector>& at = std::nullopt);

// True when `a` meets the relative interior of `g` (both in the same
// ambient space). Exact.
bool touches_relint(const Polytope& a, const Polytope& g);

}  // namespace logvor
