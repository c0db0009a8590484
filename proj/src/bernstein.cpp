#include "tailbound/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tailbound/binomial.hpp"
#include "tailbound/envelope.hpp"
#include "tailbound/errors.hpp"

namespace tailbound {

namespace {

double choose(int n, int k) {
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

int shared_order(std::span<const MomentVector> mvs) {
  if (mvs.empty()) throw DomainError("moment list must not be empty");
  const int m = mvs.front().order();
  for (const auto& mv : mvs) {
    if (mv.order() != m) throw DomainError("all moment vectors must share the same order m");
  }
  return m;
}

double average_first_moment(std::span<const MomentVector> mvs) {
  double s = 0.0;
  for (const auto& mv : mvs) s += mv.moment(1);
  return s / mvs.size();
}

void require_threshold(std::span<const MomentVector> mvs, double t) {
  const double n = static_cast<double>(mvs.size());
  const double mean = n * average_first_moment(mvs);
  if (!(t > mean && t < n)) {
    throw DomainError("t must lie in (n mu1, n) = (" + std::to_string(mean) + ", " +
                      std::to_string(n) + ")");
  }
}

// C(m,j) E[X^j (1-X)^{m-j}] as integer-grid weights.
std::vector<double> raw_weights(const MomentVector& mv) {
  const int m = mv.order();
  std::vector<double> w(m + 1);
  for (int j = 0; j <= m; ++j) {
    double e = 0.0;
    for (int k = 0; k <= m - j; ++k) {
      const double sign = ((m - j - k) % 2 == 0) ? 1.0 : -1.0;
      e += choose(m - j, k) * sign * mv.moment(m - k);
    }
    w[j] = choose(m, j) * e;
  }
  return w;
}

std::vector<double> checked_weights(const MomentVector& mv) {
  auto w = raw_weights(mv);
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] < -1e-12) {
      throw InfeasibleMomentsError("moment vector infeasible: Bernstein weight " +
                                   std::to_string(j) + " is " + std::to_string(w[j]));
    }
    w[j] = std::max(0.0, w[j]);
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

DiscreteDist grid_dist(const std::vector<double>& weights, int m) {
  std::vector<double> support(weights.size());
  for (std::size_t j = 0; j < weights.size(); ++j) support[j] = static_cast<double>(j) / m;
  return DiscreteDist(std::move(support), weights);
}

}  // namespace

MomentVector::MomentVector(std::vector<double> mu) : mu_(std::move(mu)) {
  if (mu_.empty()) throw DomainError("moment vector: order m must be >= 1");
  if (!(mu_.front() < 1.0)) throw DomainError("moment vector: mu_1 must be < 1");
  if (!(mu_.back() > 0.0)) throw DomainError("moment vector: mu_m must be > 0");
  for (std::size_t j = 1; j < mu_.size(); ++j) {
    if (mu_[j] > mu_[j - 1]) throw DomainError("moment sequence must be nonincreasing");
  }
}

double MomentVector::moment(int j) const {
  if (j == 0) return 1.0;
  if (j < 0 || j > order()) throw DomainError("moment index out of range");
  return mu_[static_cast<std::size_t>(j - 1)];
}

DiscreteDist bernstein_weights(const MomentVector& mv) {
  return grid_dist(checked_weights(mv), mv.order());
}

DiscreteDist t_nm_distribution(std::span<const MomentVector> mvs) {
  const int m = shared_order(mvs);
  std::vector<double> avg(m + 1, 0.0);
  for (const auto& mv : mvs) {
    const auto w = checked_weights(mv);
    for (int j = 0; j <= m; ++j) avg[j] += w[j];
  }
  for (double& x : avg) x /= mvs.size();
  return grid_dist(avg, m);
}

BoundReport exp_moment_bound(std::span<const MomentVector> mvs, double t) {
  shared_order(mvs);
  require_threshold(mvs, t);
  const int n = static_cast<int>(mvs.size());
  const auto opt = minimize_exponential_moment(t_nm_distribution(mvs), n, t);
  Witness w;
  w.h = opt.h;
  return make_report(Method::exp_moment, opt.value, std::move(w),
                     {n, average_first_moment(mvs), std::nullopt, t});
}

DiscreteDist z_nm_distribution(std::span<const MomentVector> mvs) {
  const int m = shared_order(mvs);
  const std::size_t n = mvs.size();
  if (n * static_cast<std::size_t>(m) > kMaxSupport) {
    throw ResourceError("z_nm: n m = " + std::to_string(n * m) + " grid points exceed the guard");
  }
  // Lattice convolution on integer indices k, value k/m.
  std::vector<double> acc{1.0};
  for (const auto& mv : mvs) {
    const auto w = checked_weights(mv);
    std::vector<double> next(acc.size() + m, 0.0);
    for (std::size_t a = 0; a < acc.size(); ++a) {
      if (acc[a] == 0.0) continue;
      for (int j = 0; j <= m; ++j) next[a + j] += acc[a] * w[j];
    }
    acc = std::move(next);
  }
  const double total = std::accumulate(acc.begin(), acc.end(), 0.0);
  for (double& x : acc) x /= total;
  return grid_dist(acc, m);
}

BoundReport z_nm_bound(std::span<const MomentVector> mvs, double t) {
  shared_order(mvs);
  require_threshold(mvs, t);
  const auto opt = minimize_linear_envelope(z_nm_distribution(mvs), t);
  Witness w;
  w.eps = opt.eps;
  const int n = static_cast<int>(mvs.size());
  return make_report(Method::z_nm, opt.value, std::move(w),
                     {n, average_first_moment(mvs), std::nullopt, t});
}

std::vector<double> power_means(std::span<const MomentVector> mvs) {
  const int m = shared_order(mvs);
  std::vector<double> q(m, 0.0);
  for (const auto& mv : mvs) {
    for (int s = 1; s <= m; ++s) q[s - 1] += std::pow(mv.moment(s), 1.0 / s);
  }
  for (double& x : q) x /= mvs.size();
  return q;
}

BoundReport refined_binomial_bound(std::span<const MomentVector> mvs, double t) {
  shared_order(mvs);
  if (std::floor(t) != t) throw DomainError("refined_binomial: t must be a positive integer");
  const int n = static_cast<int>(mvs.size());
  const auto q = power_means(mvs);
  for (std::size_t s = 1; s < q.size(); ++s) {
    if (q[s] < q[s - 1] - 1e-12) {
      throw ConsistencyError("refined_binomial: power means q_s must be nondecreasing in s");
    }
  }
  if (!(t > n * q[0] && t < n)) {
    throw DomainError("refined_binomial: t must lie in (n q1, n)");
  }
  // t lies in I_j for j = the largest s with t > n q_s + 1.
  int j = 0;
  for (int s = 1; s <= static_cast<int>(q.size()); ++s) {
    if (t > n * q[s - 1] + 1.0) j = s;
  }
  if (j == 0) {
    throw PreconditionError("refined_binomial: requires n q1 + 1 < t < n, admissible range (" +
                            std::to_string(n * q[0] + 1.0) + ", " + std::to_string(n) + ")");
  }
  Witness w;
  double best = 0.0;
  int best_s = 0;
  for (int s = 1; s <= j; ++s) {
    const double qs = q[s - 1];
    const double k = s * t - s + 1.0;
    const double factor = k * (1.0 - qs) / (s * (k - n * s * qs));
    const double term = factor * upper_tail({n * s, qs}, static_cast<int>(k));
    w.weights.push_back(term);
    if (best_s == 0 || term < best) {
      best = term;
      best_s = s;
    }
  }
  w.s = best_s;
  return make_report(Method::refined_binomial, best, std::move(w), {n, q[0], std::nullopt, t});
}

DiscreteDist cohen_extremal(double p, double sigma2) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("cohen_extremal: p must lie in (0,1)");
  if (!(sigma2 > 0.0)) throw DomainError("cohen_extremal: sigma2 must be strictly positive");
  double lambda = p - sigma2 / (1.0 - p);
  if (lambda < -1e-15) {
    throw DomainError("cohen_extremal: lambda < 0, sigma2 exceeds p(1-p)");
  }
  lambda = std::max(0.0, lambda);
  return DiscreteDist::from_points(
      {{lambda, (1.0 - p) / (1.0 - lambda)}, {1.0, (p - lambda) / (1.0 - lambda)}});
}

ImpossibilityWitness impossibility_witness(double mu1, double mu2) {
  if (!(mu1 > 0.0 && mu1 < 1.0)) throw DomainError("impossibility_witness: mu1 must lie in (0,1)");
  if (!(mu1 > mu2)) throw DomainError("impossibility_witness: requires mu1 > mu2");
  if (!(mu2 > mu1 * mu1)) {
    throw DomainError("impossibility_witness: requires mu2 > mu1^2 (positive variance)");
  }
  const double sigma2 = mu2 - mu1 * mu1;
  const DiscreteDist c = cohen_extremal(mu1, sigma2);
  const double lambda = c.support().front();
  const double top = (mu1 * mu1 + sigma2) / mu1;
  const double w0 = sigma2 / (mu1 * mu1 + sigma2);
  DiscreteDist c_prime = DiscreteDist::from_points({{0.0, w0}, {top, 1.0 - w0}});
  auto expect_g = [lambda](const DiscreteDist& d) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      s += d.probs()[i] * std::max(0.0, (d.support()[i] - lambda) / (1.0 - lambda));
    }
    return s;
  };
  const double eg_c = expect_g(c);
  const double eg_cp = expect_g(c_prime);
  return {lambda, eg_c, eg_cp, eg_c / eg_cp, c, std::move(c_prime)};
}

}  // namespace tailbound
