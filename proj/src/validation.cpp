#include "tailbound/validation.hpp"

#include <algorithm>
#include <exception>
#include <string>

#include "tailbound/errors.hpp"

namespace tailbound {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_inputs(std::span<const ClassSpec> classes, int trials) {
  if (classes.empty()) throw DomainError("validation: need at least one variable");
  if (static_cast<int>(classes.size()) > kMaxValidationVariables) {
    throw DomainError("validation: exact enumeration supports n <= " + std::to_string(kMaxValidationVariables) +
                      ", got n = " + std::to_string(classes.size()));
  }
  if (trials < 0) throw DomainError("validation: trials must be nonnegative");
}

ValidationReport summarize(std::span<const ClassSpec> classes, double t, double bound, std::uint64_t seed,
                           const std::vector<double>& tails) {
  ValidationReport rep;
  rep.trials = static_cast<int>(tails.size());
  for (int k = 0; k < rep.trials; ++k) {
    rep.max_tail = std::max(rep.max_tail, tails[k]);
    if (tails[k] > bound + kValidationSlack) {
      ++rep.violations;
      if (!rep.first_violation) rep.first_violation = k;
    }
  }
  if (rep.first_violation) sampled_tail(classes, t, seed, *rep.first_violation, &rep.counterexample);
  return rep;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t root, int trial, int var) noexcept {
  const std::uint64_t a = splitmix64(root ^ splitmix64(static_cast<std::uint64_t>(trial)));
  return splitmix64(a + static_cast<std::uint64_t>(var));
}

double sampled_tail(std::span<const ClassSpec> classes, double t, std::uint64_t root, int trial,
                    std::vector<DiscreteDist>* members) {
  std::vector<DiscreteDist> draws;
  draws.reserve(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    draws.push_back(sample_class_member(classes[i], trial_seed(root, trial, static_cast<int>(i))));
  }
  const double tail = convolve(draws).survival(t);
  if (members) *members = std::move(draws);
  return tail;
}

ValidationReport validate_bound_serial(std::span<const ClassSpec> classes, double t, double bound, int trials,
                                       std::uint64_t seed) {
  check_inputs(classes, trials);
  std::vector<double> tails(static_cast<std::size_t>(trials));
  for (int k = 0; k < trials; ++k) tails[k] = sampled_tail(classes, t, seed, k);
  return summarize(classes, t, bound, seed, tails);
}

ValidationReport validate_bound(std::span<const ClassSpec> classes, double t, double bound, int trials,
                                std::uint64_t seed) {
  check_inputs(classes, trials);
  std::vector<double> tails(static_cast<std::size_t>(trials));
  std::exception_ptr failure;
  int failed_trial = trials;
#pragma omp parallel for schedule(dynamic, 16)
  for (int k = 0; k < trials; ++k) {
    try {
      tails[k] = sampled_tail(classes, t, seed, k);
    } catch (...) {
#pragma omp critical(tailbound_validation_error)
      {
        // Keep the error of the lowest trial so the outcome matches the serial run.
        if (k < failed_trial) {
          failed_trial = k;
          failure = std::current_exception();
        }
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(classes, t, bound, seed, tails);
}

}  // namespace tailbound
