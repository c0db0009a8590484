#pragma once

#include "tailbound/classic.hpp"
#include "tailbound/report.hpp"

namespace tailbound {

// Optimal bound over F_ic(t) against Bin(n, p):
//   min over j in {0, ..., ceil(t)-1} of E[max(0, B - j)] / (t - j).
// Witness eps = minimising j (ties to the largest j).
BoundReport bentkus_linear_bound(const MeanInstance& inst);

// Hoeffding with the (1+h)/e^h missing factor. Requires integer t with
// e n p / (e p - p + 1) <= t < n; throws PreconditionError below the
// threshold and DomainError for non-integer t.
BoundReport missing_factor_bound(const MeanInstance& inst);

// Smallest integer t accepted by missing_factor_bound.
double missing_factor_threshold(int n, double p);

struct MissingFactorParts {
  double h;
  double factor;      // (1 + h) / e^h
  double hoeffding;   // H(n, p, t)
  double correction;  // T(n, p, t; h) = sum_{i<t} e^{h(i-t)} P[B = i]
  double point_mass;  // P[B = t]
};
MissingFactorParts missing_factor_parts(const MeanInstance& inst);

// min(1, ((t - t p) / (t - n p)) P[B >= t]) for integer t.
BoundReport binomial_comparison_bound(const MeanInstance& inst);

}  // namespace tailbound
