#pragma once

#include <span>

#include "tailbound/report.hpp"

namespace tailbound {

// n variables in [0,1] with average mean p; threshold t with n p < t < n.
struct MeanInstance {
  int n;
  double p;
  double t;

  // Averages per-variable means; n is the list length.
  static MeanInstance from_means(std::span<const double> means, double t);
};

// Throws DomainError unless n >= 1, 0 < p < 1 and n p < t < n.
void validate(const MeanInstance& inst);
BoundContext context_of(const MeanInstance& inst);

// Class B(p, sigma^2): mean p, variance sigma^2 with 0 < sigma^2 <= p (1 - p).
struct VarianceClassSpec {
  double p;
  double sigma2;
};

void validate(const VarianceClassSpec& spec);

// min(1, total_mean / t).
BoundReport markov_bound(double total_mean, double t);

// H(n, p, t) in log space; witness h = ln(t (1-p) / (p (n-t))).
BoundReport hoeffding_bound(const MeanInstance& inst);
double log_hoeffding(const MeanInstance& inst);

// exp(-2 n (t/n - p)^2).
BoundReport hoeffding_exp_bound(const MeanInstance& inst);

// Bennett's bound for n i.i.d. members of B(p, sigma^2); witness (alpha, beta).
BoundReport bennett_bound(int n, const VarianceClassSpec& vclass, double t);

}  // namespace tailbound
