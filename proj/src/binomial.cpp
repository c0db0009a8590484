#include "tailbound/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/distributions/binomial.hpp>

#include "tailbound/errors.hpp"

namespace tailbound {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

boost::math::binomial_distribution<double> dist_of(const BinomialSpec& spec) {
  return boost::math::binomial_distribution<double>(spec.n, spec.p);
}

}  // namespace

void validate(const BinomialSpec& spec) {
  if (spec.n < 1) throw DomainError("binomial: n must be >= 1, got " + std::to_string(spec.n));
  if (!(spec.p > 0.0 && spec.p < 1.0)) {
    throw DomainError("binomial: p must lie in (0,1), got " + std::to_string(spec.p));
  }
}

double log_sum_exp(const double* first, const double* last) {
  if (first == last) return kNegInf;
  const double m = *std::max_element(first, last);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (const double* it = first; it != last; ++it) s += std::exp(*it - m);
  return m + std::log(s);
}

double log_pmf(const BinomialSpec& spec, int k) {
  validate(spec);
  if (k < 0 || k > spec.n) {
    throw DomainError("log_pmf: k=" + std::to_string(k) + " outside [0, " +
                      std::to_string(spec.n) + "]");
  }
  const double direct = boost::math::pdf(dist_of(spec), k);
  if (direct >= std::numeric_limits<double>::min()) return std::log(direct);
  // Far tails underflow; fall back to log space.
  const int n = spec.n;
  double lp = 0.0;
  if (k > 0) lp += k * std::log(spec.p);
  if (k < n) lp += (n - k) * std::log1p(-spec.p);
  if (k > 0 && k < n) lp += log_choose(n, k);
  return lp;
}

double pmf(const BinomialSpec& spec, int k) {
  validate(spec);
  if (k < 0 || k > spec.n) {
    throw DomainError("pmf: k=" + std::to_string(k) + " outside [0, " + std::to_string(spec.n) + "]");
  }
  return boost::math::pdf(dist_of(spec), k);
}

double upper_tail(const BinomialSpec& spec, int k) {
  validate(spec);
  if (k <= 0) return 1.0;
  if (k > spec.n) return 0.0;
  return boost::math::cdf(boost::math::complement(dist_of(spec), k - 1));
}

double expected_positive_part(const BinomialSpec& spec, double a) {
  validate(spec);
  if (a <= 0.0) return spec.n * spec.p - a;
  if (a >= spec.n) return 0.0;
  double s = 0.0;
  const int first = static_cast<int>(std::floor(a)) + 1;
  for (int k = first; k <= spec.n; ++k) s += (k - a) * pmf(spec, k);
  return s;
}

double feller_point_bound(const BinomialSpec& spec, int i) {
  validate(spec);
  const double np = spec.n * spec.p;
  if (!(i > np)) {
    throw DomainError("feller_point_bound: requires i > n p (i=" + std::to_string(i) +
                      ", np=" + std::to_string(np) + ")");
  }
  if (i > spec.n) throw DomainError("feller_point_bound: i exceeds n");
  return ((i - i * spec.p) / (i - np)) * pmf(spec, i);
}

}  // namespace tailbound
