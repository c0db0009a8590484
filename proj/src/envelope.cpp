#include "tailbound/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tailbound/errors.hpp"
#include "tailbound/golden_section.hpp"

namespace tailbound {

namespace {

constexpr double kBracketLo = 1e-6;
constexpr double kBracketHi = 50.0;
constexpr double kBracketCap = 1e8;
constexpr double kTolH = 1e-10;

// Derivative of the log objective: n * (tilted mean of y at h) - t.
double log_objective_slope(const DiscreteDist& y, int n, double t, double h) {
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y.probs()[i] > 0.0) shift = std::max(shift, h * y.support()[i]);
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double w = y.probs()[i] * std::exp(h * y.support()[i] - shift);
    num += w * y.support()[i];
    den += w;
  }
  return n * (num / den) - t;
}

}  // namespace

double log_exponential_objective(const DiscreteDist& y, int n, double t, double h) {
  std::vector<double> terms;
  terms.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y.probs()[i] > 0.0) terms.push_back(std::log(y.probs()[i]) + h * y.support()[i]);
  }
  const double m = *std::max_element(terms.begin(), terms.end());
  double s = 0.0;
  for (double v : terms) s += std::exp(v - m);
  return -h * t + n * (m + std::log(s));
}

ExponentialMinimum minimize_exponential_moment(const DiscreteDist& y, int n, double t) {
  if (n < 1) throw DomainError("exponential moment: n must be >= 1");
  double top = -std::numeric_limits<double>::infinity();
  double top_mass = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y.probs()[i] > 0.0) {
      top = y.support()[i];
      top_mass = y.probs()[i];
    }
  }
  // As h grows the objective behaves like e^{h (n top - t)} top_mass^n.
  const double edge = n * top - t;
  if (edge < 0.0 && !same_point(n * top, t)) {
    return {0.0, std::numeric_limits<double>::infinity()};
  }
  if (same_point(n * top, t)) {
    return {std::pow(top_mass, n), std::numeric_limits<double>::infinity()};
  }
  if (log_objective_slope(y, n, t, 0.0) >= 0.0) return {1.0, 0.0};

  double lo = 0.0;
  double hi = kBracketHi;
  if (log_objective_slope(y, n, t, kBracketLo) < 0.0) lo = kBracketLo;
  while (log_objective_slope(y, n, t, hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > kBracketCap) throw ResourceError("exponential moment: minimiser beyond h = 1e8");
  }
  auto objective = [&](double h) { return log_exponential_objective(y, n, t, h); };
  const double h = golden_section_minimize(objective, lo, hi, kTolH);
  return {std::exp(objective(h)), h};
}

LinearEnvelopeMinimum minimize_linear_envelope(const DiscreteDist& sum, double t) {
  if (!(t > 0.0)) throw DomainError("linear envelope: t must be positive");
  const auto xs = sum.support();
  const auto ps = sum.probs();
  const std::size_t k = xs.size();
  // Suffix sums of P and x P for O(1) evaluation of E[(S - x_i)+].
  std::vector<double> tail_p(k + 1, 0.0);
  std::vector<double> tail_xp(k + 1, 0.0);
  for (std::size_t i = k; i-- > 0;) {
    tail_p[i] = tail_p[i + 1] + ps[i];
    tail_xp[i] = tail_xp[i + 1] + ps[i] * xs[i];
  }
  LinearEnvelopeMinimum best{sum.expected_positive_part(0.0) / t, 0.0};
  for (std::size_t i = 0; i < k; ++i) {
    const double a = xs[i];
    if (a <= 0.0 || same_point(a, 0.0)) continue;
    if (a >= t || same_point(a, t)) break;
    const double excess = std::max(0.0, tail_xp[i + 1] - a * tail_p[i + 1]);
    const double v = excess / (t - a);
    if (v <= best.value) best = {v, a};
  }
  return best;
}

}  // namespace tailbound
