#include "tailbound/order.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tailbound/envelope.hpp"
#include "tailbound/errors.hpp"

namespace tailbound {

namespace {

std::vector<double> merged_support(const DiscreteDist& x, const DiscreteDist& y) {
  std::vector<double> pts(x.support().begin(), x.support().end());
  pts.insert(pts.end(), y.support().begin(), y.support().end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(), same_point), pts.end());
  return pts;
}

}  // namespace

OrderCertificate check_convex_order(const DiscreteDist& x, const DiscreteDist& y, double tol) {
  const double gap = x.mean() - y.mean();
  if (std::abs(gap) > tol) {
    return {false, std::nullopt, "means differ by " + std::to_string(gap)};
  }
  for (double a : merged_support(x, y)) {
    if (x.expected_positive_part(a) > y.expected_positive_part(a) + tol) {
      return {false, a, "E[(X-a)+] exceeds E[(Y-a)+]"};
    }
  }
  return {};
}

OrderCertificate check_stochastic_order(const DiscreteDist& x, const DiscreteDist& y, double tol) {
  for (double a : merged_support(x, y)) {
    if (x.survival(a) > y.survival(a) + tol) {
      return {false, a, "P[X >= a] exceeds P[Y >= a]"};
    }
  }
  return {};
}

MarkovReductionReport markov_reduction_check(std::span<const double> mus, double t) {
  const double total = std::accumulate(mus.begin(), mus.end(), 0.0);
  for (double mu : mus) {
    if (mu < 0.0) throw DomainError("markov_reduction: means must be nonnegative");
  }
  if (!(t > total)) throw DomainError("markov_reduction: requires t > sum of means");
  std::vector<DiscreteDist> ys;
  ys.reserve(mus.size());
  for (double mu : mus) {
    ys.push_back(DiscreteDist::from_points({{0.0, 1.0 - mu / t}, {t, mu / t}}));
  }
  const DiscreteDist sum = convolve(ys);
  auto best = minimize_linear_envelope(sum, t);
  constexpr int kGrid = 64;
  for (int k = 1; k < kGrid; ++k) {
    const double eps = t * k / kGrid;
    const double v = sum.expected_positive_part(eps) / (t - eps);
    if (v < best.value * (1.0 - 1e-12)) best = {v, eps};
  }
  const double markov = total / t;
  const bool holds = best.eps == 0.0 && std::abs(best.value - markov) <= 1e-12;
  return {best.value, best.eps, markov, holds};
}

}  // namespace tailbound
