#pragma once

#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "model.hpp"

namespace logvor::testing {

inline Rat rat(const std::string& s) { return parse_rat(s); }

inline RatVector rv(std::initializer_list<std::string> xs) {
  RatVector v;
  for (const auto& x : xs) v.push_back(parse_rat(x));
  return v;
}

inline RatMatrix rm(std::initializer_list<std::initializer_list<std::string>> rows) {
  RatMatrix m;
  for (const auto& r : rows) m.push_back(rv(r));
  return m;
}

// Zero-column-sum integer B plus a positive rational c summing to 1. Returns
// nothing when the draw is rank-deficient.
inline std::optional<LinearModel> try_random_model(std::mt19937_64& rng, size_t n, size_t d) {
  LinearModel m;
  m.n = n;
  m.d = d;
  m.name = "random";
  std::uniform_int_distribution<int> entry(-5, 5);
  std::uniform_int_distribution<int> weight(1, 9);
  m.B.assign(n, RatVector(d, Rat(0)));
  for (size_t j = 0; j < d; ++j) {
    long long sum = 0;
    for (size_t i = 0; i + 1 < n; ++i) {
      int e = entry(rng);
      m.B[i][j] = e;
      sum += e;
    }
    m.B[n - 1][j] = Rat(-sum);
  }
  long long total = 0;
  std::vector<int> w(n);
  for (auto& wi : w) {
    wi = weight(rng);
    total += wi;
  }
  m.c.resize(n);
  for (size_t i = 0; i < n; ++i) m.c[i] = Rat(w[i], total);
  if (!validate(m).ok) return std::nullopt;
  return m;
}

inline LinearModel random_model(std::mt19937_64& rng, size_t n, size_t d) {
  for (;;) {
    if (auto m = try_random_model(rng, n, d)) return *m;
  }
}

}  // namespace logvor::testing
