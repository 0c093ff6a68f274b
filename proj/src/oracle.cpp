#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace logvor {

namespace {

double to_double(const Rat& r) { return static_cast<double>(r); }

std::vector<double> to_doubles(const RatVector& v) {
  std::vector<double> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

std::vector<std::vector<double>> to_doubles(const RatMatrix& m) {
  std::vector<std::vector<double>> out(m.size());
  for (size_t i = 0; i < m.size(); ++i) out[i] = to_doubles(m[i]);
  return out;
}

// Gaussian elimination with partial pivoting; returns empty on a singular
// system. Systems here are tiny (d + a few constraints).
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
  size_t n = a.size();
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    for (size_t i = k + 1; i < n; ++i)
      if (std::fabs(a[i][k]) > std::fabs(a[piv][k])) piv = i;
    if (std::fabs(a[piv][k]) < 1e-300) return {};
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (size_t i = k + 1; i < n; ++i) {
      double f = a[i][k] / a[k][k];
      if (f == 0.0) continue;
      for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (size_t i = n; i-- > 0;) {
    double s = b[i];
    for (size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

struct Objective {
  size_t n, d;
  std::vector<double> c;
  std::vector<std::vector<double>> B;  // n x d
  std::vector<double> u;

  std::vector<double> point(const std::vector<double>& x) const {
    std::vector<double> p = c;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < d; ++j) p[i] -= B[i][j] * x[j];
    return p;
  }
  bool feasible(const std::vector<double>& x) const {
    for (double pi : point(x))
      if (pi <= 0.0) return false;
    return true;
  }
  double value(const std::vector<double>& x) const {  // negative log-likelihood
    double f = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double pi = c[i];
      for (size_t j = 0; j < d; ++j) pi -= B[i][j] * x[j];
      f -= u[i] * std::log(pi);
    }
    return f;
  }
  std::vector<double> gradient(const std::vector<double>& p) const {
    std::vector<double> g(d, 0.0);
    for (size_t i = 0; i < n; ++i) {
      double w = u[i] / p[i];
      for (size_t j = 0; j < d; ++j) g[j] += w * B[i][j];
    }
    return g;
  }
  std::vector<std::vector<double>> hessian(const std::vector<double>& p) const {
    std::vector<std::vector<double>> h(d, std::vector<double>(d, 0.0));
    for (size_t i = 0; i < n; ++i) {
      double w = u[i] / (p[i] * p[i]);
      for (size_t j = 0; j < d; ++j)
        for (size_t k = j; k < d; ++k) h[j][k] += w * B[i][j] * B[i][k];
    }
    for (size_t j = 0; j < d; ++j)
      for (size_t k = 0; k < j; ++k) h[j][k] = h[k][j];
    return h;
  }
};

std::vector<double> normalize_counts(const std::vector<double>& u, size_t n) {
  if (u.size() != n) throw Error(ErrorKind::Domain, "distribution has wrong length");
  std::vector<double> v = u;
  double s = 0.0;
  for (double x : v) {
    if (x < 0.0) throw Error(ErrorKind::Domain, "distribution entries must be nonnegative");
    s += x;
  }
  if (s <= 0.0) throw Error(ErrorKind::Domain, "distribution must have positive mass");
  for (double& x : v) x /= s;
  // Zero coordinates would let the maximizer escape to the boundary; nudge
  // them to keep the objective strictly concave with an interior optimum.
  bool bumped = false;
  for (double& x : v)
    if (x == 0.0) {
      x = 1e-12;
      bumped = true;
    }
  if (bumped) {
    double t = 0.0;
    for (double x : v) t += x;
    for (double& x : v) x /= t;
  }
  return v;
}

std::vector<double> interior_start(const Polytope& param_poly) {
  RatVector c = param_poly.centroid();
  return to_doubles(c);
}

}  // namespace

MleResult mle_full(const LinearModel& m, const std::vector<double>& u, const MleOptions& opt) {
  require_valid(m);
  Objective obj{m.n, m.d, to_doubles(m.c), to_doubles(m.B), normalize_counts(u, m.n)};
  MleResult res;
  res.x = interior_start(parameter_polytope(m));
  if (m.d == 0) {
    res.p = obj.c;
    res.converged = true;
    return res;
  }
  for (res.iterations = 0; res.iterations < opt.max_iter; ++res.iterations) {
    std::vector<double> p = obj.point(res.x);
    std::vector<double> g = obj.gradient(p);
    double r = 0.0;
    for (double gj : g) r = std::max(r, std::fabs(gj));
    res.residual = r;
    if (r <= opt.tol) {
      res.converged = true;
      res.p = p;
      return res;
    }
    std::vector<std::vector<double>> h = obj.hessian(p);
    std::vector<double> rhs(m.d);
    for (size_t j = 0; j < m.d; ++j) rhs[j] = -g[j];
    std::vector<double> step = solve_dense(h, rhs);
    if (step.empty()) step = rhs;  // gradient fallback for a singular Hessian
    double gd = 0.0;
    for (size_t j = 0; j < m.d; ++j) gd += g[j] * step[j];
    if (gd >= 0.0) {
      gd = 0.0;
      for (size_t j = 0; j < m.d; ++j) {
        step[j] = -g[j];
        gd -= g[j] * g[j];
      }
    }
    double f0 = obj.value(res.x);
    // Near the optimum the guaranteed decrease falls below double rounding,
    // so allow an absolute epsilon; otherwise the search stalls above tol.
    double fslack = 1e-14 * (1.0 + std::fabs(f0));
    double t = 1.0;
    std::vector<double> trial(m.d);
    bool moved = false;
    for (int back = 0; back < 80; ++back) {
      for (size_t j = 0; j < m.d; ++j) trial[j] = res.x[j] + t * step[j];
      if (obj.feasible(trial) && obj.value(trial) <= f0 + 1e-4 * t * gd + fslack) {
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
    res.x = trial;
  }
  res.p = obj.point(res.x);
  std::vector<double> g = obj.gradient(res.p);
  res.residual = 0.0;
  for (double gj : g) res.residual = std::max(res.residual, std::fabs(gj));
  res.converged = res.residual <= opt.tol;
  return res;
}

MleResult mle_partial(const PartialLinearModel& m, const std::vector<double>& u,
                      const MleOptions& opt) {
  require_valid(m);
  const LinearModel& ext = m.extension;
  Objective obj{ext.n, ext.d, to_doubles(ext.c), to_doubles(ext.B), normalize_counts(u, ext.n)};

  size_t nf = m.theta.halfspaces().size();
  std::vector<std::vector<double>> a(nf);
  std::vector<double> beta(nf);
  for (size_t k = 0; k < nf; ++k) {
    a[k] = to_doubles(m.theta.halfspaces()[k].normal);
    beta[k] = to_double(m.theta.halfspaces()[k].offset);
    double norm = 0.0;
    for (double v : a[k]) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : a[k]) v /= norm;
    beta[k] /= norm;
  }

  MleResult res;
  res.x = interior_start(m.theta);
  size_t d = ext.d;
  if (d == 0) {
    res.p = obj.c;
    res.converged = true;
    return res;
  }
  std::vector<bool> active(nf, false);

  auto slack = [&](const std::vector<double>& x, size_t k) {
    double s = beta[k];
    for (size_t j = 0; j < d; ++j) s -= a[k][j] * x[j];
    return s;  // >= 0 when feasible
  };

  for (res.iterations = 0; res.iterations < opt.max_iter; ++res.iterations) {
    std::vector<double> p = obj.point(res.x);
    std::vector<double> g = obj.gradient(p);
    std::vector<std::vector<double>> h = obj.hessian(p);

    std::vector<size_t> w;
    for (size_t k = 0; k < nf; ++k)
      if (active[k]) w.push_back(k);
    size_t nw = w.size();

    // KKT system on the active manifold.
    size_t dim = d + nw;
    std::vector<std::vector<double>> kkt(dim, std::vector<double>(dim, 0.0));
    std::vector<double> rhs(dim, 0.0);
    for (size_t j = 0; j < d; ++j) {
      for (size_t k = 0; k < d; ++k) kkt[j][k] = h[j][k];
      rhs[j] = -g[j];
    }
    for (size_t t = 0; t < nw; ++t) {
      for (size_t j = 0; j < d; ++j) {
        kkt[j][d + t] = a[w[t]][j];
        kkt[d + t][j] = a[w[t]][j];
      }
    }
    std::vector<double> sol = solve_dense(kkt, rhs);
    if (sol.empty()) {
      res.converged = false;
      break;
    }
    std::vector<double> step(sol.begin(), sol.begin() + d);
    std::vector<double> lambda(sol.begin() + d, sol.end());

    double step_norm = 0.0;
    for (double sj : step) step_norm = std::max(step_norm, std::fabs(sj));

    if (step_norm <= 1e-13) {
      // Stationary on the current manifold; check multiplier signs.
      double min_lambda = 0.0;
      size_t drop = SIZE_MAX;
      for (size_t t = 0; t < nw; ++t)
        if (lambda[t] < min_lambda) {
          min_lambda = lambda[t];
          drop = w[t];
        }
      // Projected gradient residual: g + sum lambda_t a_t.
      double r = 0.0;
      for (size_t j = 0; j < d; ++j) {
        double rj = g[j];
        for (size_t t = 0; t < nw; ++t) rj += lambda[t] * a[w[t]][j];
        r = std::max(r, std::fabs(rj));
      }
      res.residual = r;
      if (min_lambda >= -opt.tol) {
        res.converged = r <= std::max(opt.tol, 1e-8);
        res.p = p;
        for (size_t k = 0; k < nf; ++k)
          if (active[k]) res.active.push_back(k);
        return res;
      }
      active[drop] = false;
      continue;
    }

    // Ratio test against the inactive constraints.
    double tmax = 1.0;
    size_t blocking = SIZE_MAX;
    for (size_t k = 0; k < nf; ++k) {
      if (active[k]) continue;
      double ad = 0.0;
      for (size_t j = 0; j < d; ++j) ad += a[k][j] * step[j];
      if (ad <= 1e-15) continue;
      double t = slack(res.x, k) / ad;
      if (t < tmax) {
        tmax = t;
        blocking = k;
      }
    }

    double gd = 0.0;
    for (size_t j = 0; j < d; ++j) gd += g[j] * step[j];
    double f0 = obj.value(res.x);
    double fslack = 1e-14 * (1.0 + std::fabs(f0));
    double t = tmax;
    std::vector<double> trial(d);
    bool hit_block = blocking != SIZE_MAX;
    bool moved = false;
    for (int back = 0; back < 80; ++back) {
      for (size_t j = 0; j < d; ++j) trial[j] = res.x[j] + t * step[j];
      if (obj.feasible(trial) &&
          obj.value(trial) <= f0 + 1e-4 * t * std::min(gd, 0.0) + fslack) {
        moved = true;
        break;
      }
      t *= 0.5;
      hit_block = false;
    }
    if (!moved) break;
    res.x = trial;
    if (hit_block) active[blocking] = true;
  }

  res.p = obj.point(res.x);
  std::vector<double> g = obj.gradient(res.p);
  res.residual = 0.0;
  for (double gj : g) res.residual = std::max(res.residual, std::fabs(gj));
  for (size_t k = 0; k < nf; ++k)
    if (active[k]) res.active.push_back(k);
  return res;
}

double membership_slack(const Polytope& poly, const std::vector<double>& u) {
  if (poly.is_empty()) return std::numeric_limits<double>::infinity();
  if (u.size() != poly.ambient_dim())
    throw Error(ErrorKind::Domain, "point has wrong length for this polytope");
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& h : poly.halfspaces()) {
    double norm = 0.0, v = -to_double(h.offset);
    for (size_t i = 0; i < u.size(); ++i) {
      double ni = to_double(h.normal[i]);
      norm += ni * ni;
      v += ni * u[i];
    }
    worst = std::max(worst, v / std::sqrt(norm));
  }
  for (const auto& e : poly.equations()) {
    double norm = 0.0, v = -to_double(e.offset);
    for (size_t i = 0; i < u.size(); ++i) {
      double ni = to_double(e.normal[i]);
      norm += ni * ni;
      v += ni * u[i];
    }
    worst = std::max(worst, std::fabs(v) / std::sqrt(norm));
  }
  // A polytope with no constraints is a single point in dimension zero.
  if (!std::isfinite(worst)) return 0.0;
  return worst;
}

bool approx_member(const Polytope& poly, const std::vector<double>& u, double tol) {
  return membership_slack(poly, u) <= tol;
}

std::vector<double> dirichlet_sample(size_t n, std::mt19937_64& rng) {
  std::vector<double> u(n);
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (v <= 0.0) v = 0x1.0p-53;
    u[i] = -std::log(v);
    s += u[i];
  }
  for (size_t i = 0; i < n; ++i) u[i] /= s;
  return u;
}

namespace {

struct TessVerdict {
  bool converged = false;
  bool interior = true;
  double residual = 0.0;
};

// Each sample's verdict depends only on its own data, so any thread count
// folds to the same report.
template <typename Solve>
TessellationReport run_tessellation(size_t n, int samples, uint64_t seed, double tol, int threads,
                                    Solve&& solve_one) {
  TessellationReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.tol = tol;
  rep.threads = std::max(1, threads);

  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> us(samples);
  for (int i = 0; i < samples; ++i) us[i] = dirichlet_sample(n, rng);

  std::vector<TessVerdict> verdicts(samples);
  auto worker = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) verdicts[i] = solve_one(us[i]);
  };
  if (rep.threads <= 1 || samples < 2) {
    worker(0, samples);
  } else {
    int t = std::min<int>(rep.threads, samples);
    std::vector<std::thread> pool;
    int chunk = (samples + t - 1) / t;
    for (int k = 0; k < t; ++k)
      pool.emplace_back(worker, k * chunk, std::min(samples, (k + 1) * chunk));
    for (auto& th : pool) th.join();
  }

  for (int i = 0; i < samples; ++i) {
    const TessVerdict& v = verdicts[i];
    rep.max_residual = std::max(rep.max_residual, v.residual);
    if (!v.converged) ++rep.non_converged;
    if (v.interior)
      ++rep.interior_mles;
    else
      ++rep.boundary_mles;
    bool pass = v.converged && v.residual <= tol;
    if (pass)
      ++rep.passed;
    else if (rep.first_failure < 0)
      rep.first_failure = i;
  }
  return rep;
}

}  // namespace

TessellationReport tessellation_check(const LinearModel& m, int samples, uint64_t seed, double tol,
                                      int threads) {
  require_valid(m);
  MleOptions opt;
  opt.tol = std::min(1e-10, tol / 10.0);
  return run_tessellation(m.n, samples, seed, tol, threads, [&](const std::vector<double>& u) {
    MleResult r = mle_full(m, u, opt);
    // Scaled stationarity: the sample lies in the cell at its own image.
    double worst = 0.0;
    for (size_t j = 0; j < m.d; ++j) {
      double s = 0.0, norm = 0.0;
      for (size_t i = 0; i < m.n; ++i) {
        double bij = to_double(m.B[i][j]) / r.p[i];
        s += u[i] * bij;
        norm += bij * bij;
      }
      worst = std::max(worst, std::fabs(s) / std::sqrt(norm));
    }
    return TessVerdict{r.converged, true, worst};
  });
}

TessellationReport tessellation_check(const PartialLinearModel& m, int samples, uint64_t seed,
                                      double tol, int threads) {
  require_valid(m);
  MleOptions opt;
  opt.tol = std::min(1e-10, tol / 10.0);
  return run_tessellation(m.extension.n, samples, seed, tol, threads,
                          [&](const std::vector<double>& u) {
                            MleResult r = mle_partial(m, u, opt);
                            return TessVerdict{r.converged, r.active.empty(), r.residual};
                          });
}

}  // namespace logvor
