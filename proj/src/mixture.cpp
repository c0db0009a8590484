#include "tailbound/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tailbound/envelope.hpp"
#include "tailbound/errors.hpp"

namespace tailbound {

PartitionSpec::PartitionSpec(std::vector<double> breakpoints) : r_(std::move(breakpoints)) {
  if (r_.size() < 3) throw DomainError("partition: need at least two cells (m >= 2)");
  if (r_.front() != 0.0 || r_.back() != 1.0) {
    throw DomainError("partition: breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < r_.size(); ++i) {
    if (!(r_[i] > r_[i - 1])) throw DomainError("partition: breakpoints must be strictly ascending");
  }
}

int PartitionSpec::cell_of(double x) const {
  const int last = cells() - 1;
  for (int j = 0; j < last; ++j) {
    if (x < upper(j)) return j;
  }
  return last;
}

void validate(const ConditionalMeansSpec& spec) {
  const auto& part = spec.partition;
  const int m = part.cells();
  if (static_cast<int>(spec.mu.size()) != m) {
    throw DomainError("conditional means: need one mean per cell");
  }
  for (int j = 0; j < m; ++j) {
    const double mu = spec.mu[j];
    const bool last = j == m - 1;
    if (mu < part.lower(j) || (last ? mu > part.upper(j) : mu >= part.upper(j))) {
      throw DomainError("conditional means: mu_" + std::to_string(j + 1) + " outside its cell");
    }
  }
  if (!(spec.p > 0.0 && spec.p < 1.0)) throw DomainError("conditional means: p must lie in (0,1)");
  if (spec.p < spec.mu.front() || spec.p > spec.mu.back()) {
    throw DomainError("conditional means: p must lie in [mu_1, mu_m]");
  }
}

void validate(const ConditionalProbsSpec& spec) {
  const auto& part = spec.partition;
  const int m = part.cells();
  if (static_cast<int>(spec.q.size()) != m) {
    throw DomainError("conditional probabilities: need one probability per cell");
  }
  double total = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  for (int j = 0; j < m; ++j) {
    if (spec.q[j] < 0.0) throw DomainError("conditional probabilities: q_j must be nonnegative");
    total += spec.q[j];
    lo += spec.q[j] * part.lower(j);
    hi += spec.q[j] * part.upper(j);
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("conditional probabilities: q must sum to 1");
  if (!(spec.p > 0.0 && spec.p < 1.0)) throw DomainError("conditional probabilities: p must lie in (0,1)");
  if (spec.p < lo - 1e-12 || spec.p > hi + 1e-12) {
    throw DomainError("conditional probabilities: p not achievable, need " + std::to_string(lo) +
                      " <= p <= " + std::to_string(hi));
  }
}

DiscreteDist mix_envelope(const DiscreteDist& x, const PartitionSpec& partition) {
  const int m = partition.cells();
  std::vector<double> mass(m, 0.0);
  std::vector<double> first(m, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = x.support()[i];
    if (v < -1e-12 || v > 1.0 + 1e-12) throw DomainError("mix_envelope: support must lie in [0,1]");
    const int c = partition.cell_of(v);
    mass[c] += x.probs()[i];
    first[c] += x.probs()[i] * v;
  }
  std::vector<std::pair<double, double>> points;
  for (int c = 0; c < m; ++c) {
    if (mass[c] <= 0.0) continue;
    const double lo = partition.lower(c);
    const double hi = partition.upper(c);
    const double mu = std::clamp(first[c] / mass[c], lo, hi);
    const double w_lo = (hi - mu) / (hi - lo);
    points.emplace_back(lo, mass[c] * w_lo);
    points.emplace_back(hi, mass[c] * (1.0 - w_lo));
  }
  auto merged = DiscreteDist::from_points(std::move(points));
  std::vector<std::pair<double, double>> kept;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (merged.probs()[i] > 0.0) kept.emplace_back(merged.support()[i], merged.probs()[i]);
  }
  return DiscreteDist::from_points(std::move(kept));
}

namespace {

struct CondMeansWeights {
  double pi[4];
};

CondMeansWeights cond_means_weights(const ConditionalMeansSpec& spec) {
  validate(spec);
  const auto& part = spec.partition;
  const int m = part.cells();
  const double mu1 = spec.mu.front();
  const double mum = spec.mu.back();
  if (!(mum > mu1)) throw DomainError("conditional means: mu_m equals mu_1 (degenerate mixture)");
  const double r1 = part.upper(0);
  const double rm1 = part.lower(m - 1);
  const double q = (mum - spec.p) / (mum - mu1);
  const double s = (r1 - mu1) / r1;
  const double u = (1.0 - mum) / (1.0 - rm1);
  return {{q * s, q * (1.0 - s), (1.0 - q) * u, (1.0 - q) * (1.0 - u)}};
}

DiscreteDist four_point(const PartitionSpec& part, const double (&pi)[4]) {
  const int m = part.cells();
  return DiscreteDist::from_points(
      {{0.0, pi[0]}, {part.upper(0), pi[1]}, {part.lower(m - 1), pi[2]}, {1.0, pi[3]}});
}

}  // namespace

DiscreteDist conditional_means_envelope(const ConditionalMeansSpec& spec) {
  return four_point(spec.partition, cond_means_weights(spec).pi);
}

BoundReport conditional_means_bound(std::span<const ConditionalMeansSpec> specs, double t) {
  if (specs.empty()) throw DomainError("conditional means: no variables");
  const auto& part = specs.front().partition;
  double pi[4] = {0.0, 0.0, 0.0, 0.0};
  double p_sum = 0.0;
  for (const auto& spec : specs) {
    if (!(spec.partition == part)) throw DomainError("conditional means: partitions must agree");
    const auto w = cond_means_weights(spec);
    for (int k = 0; k < 4; ++k) pi[k] += w.pi[k];
    p_sum += spec.p;
  }
  const int n = static_cast<int>(specs.size());
  for (double& x : pi) x /= n;
  const MeanInstance inst{n, p_sum / n, t};
  validate(inst);
  const auto opt = minimize_exponential_moment(four_point(part, pi), n, t);
  Witness w;
  w.h = opt.h;
  w.weights.assign(std::begin(pi), std::end(pi));
  return make_report(Method::conditional_means, opt.value, std::move(w), context_of(inst));
}

ConditionalProbsLp solve_conditional_probs_lp(const ConditionalProbsSpec& spec, double h) {
  validate(spec);
  const auto& part = spec.partition;
  const int m = part.cells();
  std::vector<double> mu(m);
  std::vector<double> slope(m);
  double budget = spec.p;
  for (int j = 0; j < m; ++j) {
    mu[j] = part.lower(j);
    budget -= spec.q[j] * part.lower(j);
    slope[j] = (std::exp(h * part.upper(j)) - std::exp(h * part.lower(j))) /
               (part.upper(j) - part.lower(j));
  }
  // Fractional knapsack: spend the mean budget on the steepest cells first.
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return slope[a] > slope[b]; });
  for (int j : order) {
    if (budget <= 0.0) break;
    if (spec.q[j] <= 0.0) continue;
    const double capacity = spec.q[j] * (part.upper(j) - part.lower(j));
    const double take = std::min(capacity, budget);
    mu[j] += take / spec.q[j];
    budget -= take;
  }
  std::vector<std::pair<double, double>> points;
  for (int j = 0; j < m; ++j) {
    const double lo = part.lower(j);
    const double hi = part.upper(j);
    const double mj = std::clamp(mu[j], lo, hi);
    mu[j] = mj;
    const double w_lo = (hi - mj) / (hi - lo);
    points.emplace_back(lo, spec.q[j] * w_lo);
    points.emplace_back(hi, spec.q[j] * (1.0 - w_lo));
  }
  return {std::move(mu), DiscreteDist::from_points(std::move(points))};
}

BoundReport conditional_probs_bound(const ConditionalProbsSpec& spec, int n, double t) {
  validate(spec);
  const MeanInstance inst{n, spec.p, t};
  validate(inst);
  const double h = std::log(t) + std::log1p(-spec.p) - std::log(spec.p) - std::log(n - t);
  auto lp = solve_conditional_probs_lp(spec, h);
  const double value = std::exp(log_exponential_objective(lp.xi, n, t, h));
  Witness w;
  w.h = h;
  w.weights = lp.mu;
  w.envelope = lp.xi;
  return make_report(Method::conditional_probs, value, std::move(w), context_of(inst));
}

DiscreteDist xi_distribution(const VarianceClassSpec& vclass) {
  validate(vclass);
  const double p = vclass.p;
  const double s2 = std::min(vclass.sigma2, p * (1.0 - p));
  const double s = std::sqrt(s2);
  double p0, pp, p1;
  if (s <= std::min(p, 1.0 - p)) {
    p0 = s / (2.0 * p);
    pp = 1.0 - s / (2.0 * (1.0 - p) * p);
    p1 = s / (2.0 - 2.0 * p);
  } else if (s > 1.0 - p) {
    const double d = (1.0 - p) * (1.0 - p) + s2;
    p0 = (s2 - p * s2) / (p * d);
    pp = (1.0 - p) * ((1.0 - p) * p - s2) / (p * d);
    p1 = s2 / d;
  } else {
    const double d = p * p + s2;
    p0 = s2 / d;
    pp = p * ((1.0 - p) * p - s2) / ((1.0 - p) * d);
    p1 = p * s2 / ((1.0 - p) * d);
  }
  return DiscreteDist({0.0, p, 1.0}, {p0, pp, p1});
}

BoundReport xi_sum_bound(std::span<const VarianceClassSpec> vclasses, double t) {
  if (vclasses.empty()) throw DomainError("xi_sum: no variables");
  std::vector<DiscreteDist> xis;
  xis.reserve(vclasses.size());
  double p_sum = 0.0;
  bool shared_sigma = true;
  for (const auto& vc : vclasses) {
    xis.push_back(xi_distribution(vc));
    p_sum += vc.p;
    shared_sigma = shared_sigma && vc.sigma2 == vclasses.front().sigma2;
  }
  const int n = static_cast<int>(vclasses.size());
  const MeanInstance inst{n, p_sum / n, t};
  validate(inst);
  const auto opt = minimize_linear_envelope(convolve(xis), t);
  Witness w;
  w.eps = opt.eps;
  BoundContext ctx = context_of(inst);
  if (shared_sigma) ctx.sigma2 = vclasses.front().sigma2;
  return make_report(Method::xi_sum, opt.value, std::move(w), ctx);
}

}  // namespace tailbound
