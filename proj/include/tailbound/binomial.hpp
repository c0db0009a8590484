#pragma once

namespace tailbound {

// Bin(n, p) with n >= 1 and 0 < p < 1.
struct BinomialSpec {
  int n;
  double p;
};

// Throws DomainError unless n >= 1 and 0 < p < 1.
void validate(const BinomialSpec& spec);

// ln P[B = k], falling back to log-gamma where P[B = k] underflows.
// Both throw DomainError for k outside [0, n].
double log_pmf(const BinomialSpec& spec, int k);
double pmf(const BinomialSpec& spec, int k);

// P[B >= k]; 1 for k <= 0 and 0 for k > n.
double upper_tail(const BinomialSpec& spec, int k);

// E[max(0, B - a)].
double expected_positive_part(const BinomialSpec& spec, double a);

// Point estimate ((i - i p)/(i - n p)) P[B = i] >= P[B >= i],
// valid for integer i > n p. Throws DomainError otherwise.
double feller_point_bound(const BinomialSpec& spec, int i);

// log(sum exp(x_k)) over the given terms; -inf for an empty range.
double log_sum_exp(const double* first, const double* last);

}  // namespace tailbound
