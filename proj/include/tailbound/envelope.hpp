#pragma once

#include "tailbound/discrete_dist.hpp"

namespace tailbound {

// Shared optimisers behind the bound families.

struct ExponentialMinimum {
  double value;  // inf over h > 0 of e^{-ht} (E e^{hY})^n
  double h;      // minimiser; +inf when the infimum is only approached as h grows
};

// ln of e^{-ht} (E e^{hY})^n.
double log_exponential_objective(const DiscreteDist& y, int n, double t, double h);

// Minimises the exponential-moment bound for n i.i.d. copies of y by
// golden-section search on the log objective, which is convex in h.
// Bracket starts at [1e-6, 50] and is expanded until the derivative turns
// positive; tolerance 1e-10 on h.
ExponentialMinimum minimize_exponential_moment(const DiscreteDist& y, int n, double t);

struct LinearEnvelopeMinimum {
  double value;  // min over a of E[max(0, S - a)] / (t - a)
  double eps;    // minimising a
};

// Optimal member of F_ic(t) for the sum S: candidates a = 0 and every
// support point of S in (0, t). Ties go to the larger a.
LinearEnvelopeMinimum minimize_linear_envelope(const DiscreteDist& sum, double t);

}  // namespace tailbound
