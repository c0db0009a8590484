#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tailbound/discrete_dist.hpp"

namespace tailbound {

// Declaration order is the canonical output order.
enum class Method {
  markov,
  hoeffding,
  hoeffding_exp,
  bennett,
  bentkus_linear,
  missing_factor,
  binomial_comparison,
  exp_moment,
  z_nm,
  refined_binomial,
  conditional_means,
  conditional_probs,
  xi_sum,
};

std::string_view method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);
const std::vector<Method>& all_methods();

// Optimizer record. Only the fields a method produces are set.
struct Witness {
  std::optional<double> h;
  std::optional<double> eps;
  std::optional<int> s;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> factor;
  // Method specific: pi weights, LP solution mu*, per-s terms.
  std::vector<double> weights;
  std::optional<DiscreteDist> envelope;
};

// Instance the bound was computed for; carried through to CSV output.
struct BoundContext {
  int n = 0;
  double p = 0.0;
  std::optional<double> sigma2;
  double t = 0.0;
};

struct BoundReport {
  Method method;
  double value = 1.0;  // in [0, 1]
  double raw = 1.0;    // formula value before clamping
  bool clamped = false;
  Witness witness;
  BoundContext context;
};

// Clamps raw values above one to one (flagged) and float noise below zero to zero.
BoundReport make_report(Method method, double raw, Witness witness = {}, BoundContext context = {});

}  // namespace tailbound
