#pragma once

#include <cstdint>

#include "model.hpp"

namespace logvor {

// Floating-point maximum-likelihood oracle. Everything here is double
// precision and independent of the exact cell constructions, so the two
// sides can be checked against each other.

struct MleOptions {
  double tol = 1e-10;  // stationarity tolerance (inf norm)
  int max_iter = 200;
};

struct MleResult {
  std::vector<double> x;  // maximizing parameter
  std::vector<double> p;  // c - Bx at the maximizer
  double residual = 0.0;  // projected likelihood-gradient norm at exit
  int iterations = 0;
  bool converged = false;
  std::vector<size_t> active;  // active theta facets (partial models only)
};

// Maximizes sum_i u_i log(c_i - b_i . x) over the full parameter polytope.
// With every u_i positive the maximizer is interior, so plain damped Newton
// converges quadratically.
MleResult mle_full(const LinearModel& m, const std::vector<double>& u, const MleOptions& opt = {});

// Same objective constrained to theta, by an active-set Newton method.
MleResult mle_partial(const PartialLinearModel& m, const std::vector<double>& u,
                      const MleOptions& opt = {});

// Maximum constraint violation of u against the polytope, with halfspace
// and equation normals scaled to unit Euclidean length.
double membership_slack(const Polytope& poly, const std::vector<double>& u);
bool approx_member(const Polytope& poly, const std::vector<double>& u, double tol);

// One Dirichlet(1,...,1) draw: a uniform sample from the simplex.
std::vector<double> dirichlet_sample(size_t n, std::mt19937_64& rng);

struct TessellationReport {
  int samples = 0;
  int passed = 0;
  int non_converged = 0;
  int interior_mles = 0;
  int boundary_mles = 0;  // partial models: maximizer on the boundary of theta
  double max_residual = 0.0;
  double tol = 0.0;
  uint64_t seed = 0;
  int threads = 1;
  long first_failure = -1;
};
// Checks that the cells tile the simplex: the likelihood equations of every
// sampled distribution must hold at its own maximizer, i.e. each sample lies
// in the cell at its image point. Deterministic for a fixed seed at any
// thread count.
TessellationReport tessellation_check(const LinearModel& m, int samples, uint64_t seed, double tol,
                                      int threads = 1);
TessellationReport tessellation_check(const PartialLinearModel& m, int samples, uint64_t seed,
                                      double tol, int threads = 1);

}  // namespace logvor
