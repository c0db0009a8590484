#pragma once

#include <optional>
#include <span>
#include <string>

#include "tailbound/discrete_dist.hpp"

namespace tailbound {

inline constexpr double kOrderTolerance = 1e-10;

struct OrderCertificate {
  bool holds = true;
  // First merged support point where the defining inequality fails.
  std::optional<double> violating_point;
  std::string reason;

  explicit operator bool() const noexcept { return holds; }
};

// X <=_cx Y on finite supports: equal means and E[(X-a)+] <= E[(Y-a)+] at
// every point a of the merged support.
OrderCertificate check_convex_order(const DiscreteDist& x, const DiscreteDist& y,
                                    double tol = kOrderTolerance);

// X <=_st Y: P[X >= a] <= P[Y >= a] at every merged support point.
OrderCertificate check_stochastic_order(const DiscreteDist& x, const DiscreteDist& y,
                                        double tol = kOrderTolerance);

struct MarkovReductionReport {
  double value;         // min over eps of E[max(0, (sum Y - eps)/(t - eps))]
  double eps_star;
  double markov_value;  // sum mu / t
  bool holds;           // eps_star == 0 and value == markov_value within 1e-12
};

// For unbounded nonnegative variables the optimal F_ic(t) envelope on the
// two-point laws Y_i in {0, t} collapses to Markov's bound. Candidates are
// 0, the support points below t and a uniform grid of 64 interior points.
// Throws DomainError unless t > sum mu.
MarkovReductionReport markov_reduction_check(std::span<const double> mus, double t);

}  // namespace tailbound
