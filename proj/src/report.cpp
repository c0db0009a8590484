#include "tailbound/report.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace tailbound {

namespace {
constexpr std::array<std::pair<Method, std::string_view>, 13> kNames{{
    {Method::markov, "markov"},
    {Method::hoeffding, "hoeffding"},
    {Method::hoeffding_exp, "hoeffding_exp"},
    {Method::bennett, "bennett"},
    {Method::bentkus_linear, "bentkus_linear"},
    {Method::missing_factor, "missing_factor"},
    {Method::binomial_comparison, "binomial_comparison"},
    {Method::exp_moment, "exp_moment"},
    {Method::z_nm, "z_nm"},
    {Method::refined_binomial, "refined_binomial"},
    {Method::conditional_means, "conditional_means"},
    {Method::conditional_probs, "conditional_probs"},
    {Method::xi_sum, "xi_sum"},
}};
}  // namespace

std::string_view method_name(Method m) {
  for (const auto& [method, name] : kNames) {
    if (method == m) return name;
  }
  return "unknown";
}

std::optional<Method> method_from_name(std::string_view name) {
  for (const auto& [method, n] : kNames) {
    if (n == name) return method;
  }
  return std::nullopt;
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods = [] {
    std::vector<Method> v;
    for (const auto& entry : kNames) v.push_back(entry.first);
    return v;
  }();
  return methods;
}

BoundReport make_report(Method method, double raw, Witness witness, BoundContext context) {
  BoundReport r{method, raw, raw, false, std::move(witness), context};
  if (raw > 1.0) {
    r.value = 1.0;
    r.clamped = true;
  } else if (raw < 0.0) {
    r.value = 0.0;
  }
  return r;
}

}  // namespace tailbound
