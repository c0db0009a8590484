#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tailbound/class_spec.hpp"
#include "tailbound/discrete_dist.hpp"

namespace tailbound {

// Exact enumeration of the sum is only attempted for small n.
inline constexpr int kMaxValidationVariables = 8;
inline constexpr double kValidationSlack = 1e-10;

struct ValidationReport {
  int trials = 0;
  int violations = 0;
  double max_tail = 0.0;
  // Lowest-index violating trial and the members drawn in it.
  std::optional<int> first_violation;
  std::vector<DiscreteDist> counterexample;

  bool passed() const noexcept { return violations == 0; }
};

// Seed for variable `var` in trial `trial`, derived from the root seed by
// splitmix64 so that results do not depend on the thread schedule.
std::uint64_t trial_seed(std::uint64_t root, int trial, int var) noexcept;

// Draws one member per class, convolves exactly and returns P[sum >= t].
double sampled_tail(std::span<const ClassSpec> classes, double t, std::uint64_t root, int trial,
                    std::vector<DiscreteDist>* members = nullptr);

// Counts trials whose exact tail exceeds bound + kValidationSlack.
// Trials run in parallel; the report is identical to validate_bound_serial.
ValidationReport validate_bound(std::span<const ClassSpec> classes, double t, double bound, int trials,
                                std::uint64_t seed);
ValidationReport validate_bound_serial(std::span<const ClassSpec> classes, double t, double bound,
                                       int trials, std::uint64_t seed);

}  // namespace tailbound
