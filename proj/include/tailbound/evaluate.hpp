#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailbound/instance_io.hpp"
#include "tailbound/report.hpp"

namespace tailbound {

struct MethodOutcome {
  Method method;
  BoundContext context;
  std::optional<BoundReport> report;  // empty when skipped
  std::string skip_reason;
};

// Methods whose hypotheses are implied by the information level.
std::vector<Method> applicable_methods(InfoLevel level);

// Evaluates the selected methods (all applicable ones when `selected` is
// empty) on one concrete instance. Methods that do not apply, or whose
// preconditions fail for this t, come back skipped with the reason.
std::vector<MethodOutcome> evaluate_methods(const Instance& inst, std::span<const Method> selected = {});

// Same over every point of the instance's sweep grid.
std::vector<MethodOutcome> evaluate_instance(const Instance& inst, std::span<const Method> selected = {});

}  // namespace tailbound
