#include "tailbound/classic.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "tailbound/errors.hpp"

namespace tailbound {

MeanInstance MeanInstance::from_means(std::span<const double> means, double t) {
  if (means.empty()) throw DomainError("mean instance: at least one variable required");
  for (double p : means) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("mean instance: each mean must lie in (0,1)");
  }
  const double avg = std::accumulate(means.begin(), means.end(), 0.0) / means.size();
  return {static_cast<int>(means.size()), avg, t};
}

void validate(const MeanInstance& inst) {
  if (inst.n < 1) throw DomainError("n must be >= 1");
  if (!(inst.p > 0.0 && inst.p < 1.0)) throw DomainError("p must lie in (0,1)");
  if (!(inst.t > inst.n * inst.p)) {
    throw DomainError("t must exceed np (t=" + std::to_string(inst.t) +
                      ", np=" + std::to_string(inst.n * inst.p) + ")");
  }
  if (!(inst.t < inst.n)) throw DomainError("t must be below n");
}

BoundContext context_of(const MeanInstance& inst) { return {inst.n, inst.p, std::nullopt, inst.t}; }

void validate(const VarianceClassSpec& spec) {
  if (!(spec.p > 0.0 && spec.p < 1.0)) throw DomainError("variance class: p must lie in (0,1)");
  if (!(spec.sigma2 > 0.0)) throw DomainError("variance class: sigma2 must be strictly positive");
  if (spec.sigma2 > spec.p * (1.0 - spec.p) * (1.0 + 1e-12)) {
    throw DomainError("variance class: sigma2 must not exceed p(1-p)");
  }
}

BoundReport markov_bound(double total_mean, double t) {
  if (!(t > 0.0)) throw DomainError("markov: t must be positive");
  if (total_mean < 0.0) throw DomainError("markov: mean must be nonnegative");
  return make_report(Method::markov, total_mean / t, {}, {0, 0.0, std::nullopt, t});
}

double log_hoeffding(const MeanInstance& inst) {
  const double n = inst.n;
  const double p = inst.p;
  const double t = inst.t;
  return t * (std::log(p) + std::log(n - t) - std::log(t) - std::log1p(-p)) +
         n * (std::log1p(-p) + std::log(n) - std::log(n - t));
}

BoundReport hoeffding_bound(const MeanInstance& inst) {
  validate(inst);
  Witness w;
  w.h = std::log(inst.t) + std::log1p(-inst.p) - std::log(inst.p) - std::log(inst.n - inst.t);
  return make_report(Method::hoeffding, std::exp(log_hoeffding(inst)), std::move(w), context_of(inst));
}

BoundReport hoeffding_exp_bound(const MeanInstance& inst) {
  validate(inst);
  const double d = inst.t / inst.n - inst.p;
  return make_report(Method::hoeffding_exp, std::exp(-2.0 * inst.n * d * d), {}, context_of(inst));
}

BoundReport bennett_bound(int n, const VarianceClassSpec& vclass, double t) {
  validate(vclass);
  const MeanInstance inst{n, vclass.p, t};
  validate(inst);
  const double p = vclass.p;
  const double s2 = vclass.sigma2;
  const double q2 = (1.0 - p) * (1.0 - p);
  const double alpha = s2 / (s2 + q2);
  const double beta = (s2 + (t / n - p) * (1.0 - p)) / (s2 + q2);
  if (!(beta < 1.0)) throw DomainError("bennett: beta >= 1 (t out of range)");
  const double log_value =
      n * (beta * (std::log(alpha) - std::log(beta)) +
           (1.0 - beta) * (std::log1p(-alpha) - std::log1p(-beta)));
  Witness w;
  w.alpha = alpha;
  w.beta = beta;
  BoundContext ctx = context_of(inst);
  ctx.sigma2 = s2;
  return make_report(Method::bennett, std::exp(log_value), std::move(w), ctx);
}

}  // namespace tailbound
