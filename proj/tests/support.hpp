#pragma once

#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"
#include "oracle/grid.hpp"
#include "oracle/rational.hpp"
#include "tailbound/classic.hpp"

namespace testing {

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

inline double to_double(const oracle::Rational& r) { return static_cast<double>(r); }

// Random valid (n, p, t); integer_t rounds t into the open interval (np, n).
inline tailbound::MeanInstance random_instance(std::mt19937_64& rng, int n_max, bool integer_t) {
  std::uniform_int_distribution<int> nd(2, n_max);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (true) {
    const int n = nd(rng);
    const double p = 0.05 + 0.9 * u(rng);
    double t = n * p + (n - n * p) * u(rng);
    if (integer_t) t = std::floor(t) + 1.0;
    if (t > n * p + 1e-9 && t < n - 1e-9) return {n, p, t};
  }
}

}  // namespace testing
