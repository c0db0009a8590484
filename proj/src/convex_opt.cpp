#include "tailbound/convex_opt.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tailbound/binomial.hpp"
#include "tailbound/errors.hpp"

namespace tailbound {

namespace {

int require_integer_t(const MeanInstance& inst, const char* who) {
  if (std::floor(inst.t) != inst.t) {
    throw DomainError(std::string(who) + ": t must be an integer; apply floor(t) first (t=" +
                      std::to_string(inst.t) + ")");
  }
  return static_cast<int>(inst.t);
}

}  // namespace

BoundReport bentkus_linear_bound(const MeanInstance& inst) {
  validate(inst);
  const BinomialSpec b{inst.n, inst.p};
  const int last = static_cast<int>(std::ceil(inst.t)) - 1;
  double best = expected_positive_part(b, 0.0) / inst.t;
  int best_j = 0;
  for (int j = 1; j <= last; ++j) {
    const double v = expected_positive_part(b, j) / (inst.t - j);
    if (v <= best) {
      best = v;
      best_j = j;
    }
  }
  Witness w;
  w.eps = best_j;
  w.h = 1.0 / (inst.t - best_j);
  return make_report(Method::bentkus_linear, best, std::move(w), context_of(inst));
}

double missing_factor_threshold(int n, double p) {
  const double e = std::numbers::e;
  return e * n * p / (e * p - p + 1.0);
}

MissingFactorParts missing_factor_parts(const MeanInstance& inst) {
  validate(inst);
  const int t = require_integer_t(inst, "missing_factor");
  const double threshold = missing_factor_threshold(inst.n, inst.p);
  if (t < threshold) {
    throw PreconditionError("missing_factor: requires t >= e n p / (e p - p + 1) = " +
                            std::to_string(threshold) + "; smallest admissible integer t is " +
                            std::to_string(static_cast<int>(std::ceil(threshold))));
  }
  const BinomialSpec b{inst.n, inst.p};
  MissingFactorParts parts{};
  parts.h = std::log(inst.t) + std::log1p(-inst.p) - std::log(inst.p) - std::log(inst.n - inst.t);
  parts.factor = (1.0 + parts.h) * std::exp(-parts.h);
  parts.hoeffding = std::exp(log_hoeffding(inst));
  parts.correction = 0.0;
  for (int i = 0; i < t; ++i) parts.correction += std::exp(parts.h * (i - t) + log_pmf(b, i));
  parts.point_mass = pmf(b, t);
  return parts;
}

BoundReport missing_factor_bound(const MeanInstance& inst) {
  const MissingFactorParts parts = missing_factor_parts(inst);
  const double value = parts.factor * (parts.hoeffding - parts.correction) +
                       (1.0 - parts.factor) * parts.point_mass;
  Witness w;
  w.h = parts.h;
  w.factor = parts.factor;
  return make_report(Method::missing_factor, value, std::move(w), context_of(inst));
}

BoundReport binomial_comparison_bound(const MeanInstance& inst) {
  validate(inst);
  const int t = require_integer_t(inst, "binomial_comparison");
  const double factor = (inst.t - inst.t * inst.p) / (inst.t - inst.n * inst.p);
  Witness w;
  w.factor = factor;
  return make_report(Method::binomial_comparison, factor * upper_tail({inst.n, inst.p}, t),
                     std::move(w), context_of(inst));
}

}  // namespace tailbound
