#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tailbound/class_spec.hpp"
#include "tailbound/errors.hpp"

namespace tailbound {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool coin(Rng& rng, double prob) { return uniform(rng) < prob; }

[[noreturn]] void exhausted(std::string_view kind) {
  throw SamplingExhaustedError("sampling: no member of the " + std::string(kind) + " class found in " +
                               std::to_string(kSamplingAttempts) + " attempts");
}

// Two-point law on [lo, hi] around mean, with endpoints drawn towards the
// interval ends. hi_open excludes hi itself.
DiscreteDist spread_around(Rng& rng, double lo, double hi, double mean, bool hi_open) {
  if (coin(rng, 0.25) || hi - lo <= 0.0) return DiscreteDist::point_mass(mean);
  double a = coin(rng, 0.4) ? lo : lo + (mean - lo) * uniform(rng);
  double b = (!hi_open && coin(rng, 0.4)) ? hi : mean + (hi - mean) * uniform(rng);
  if (hi_open && b >= hi) b = mean;
  if (b - a <= 0.0 || a > mean || b < mean) return DiscreteDist::point_mass(mean);
  return DiscreteDist::two_point(a, b, mean);
}

DiscreteDist mix(const DiscreteDist& a, const DiscreteDist& b, double w) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < a.size(); ++i) pts.emplace_back(a.support()[i], w * a.probs()[i]);
  for (std::size_t i = 0; i < b.size(); ++i) pts.emplace_back(b.support()[i], (1.0 - w) * b.probs()[i]);
  return DiscreteDist::from_points(std::move(pts));
}

DiscreteDist sample_mean(Rng& rng, double p) {
  if (!(p >= 0.0 && p <= 1.0)) exhausted("mean");
  if (p == 0.0 || p == 1.0) return DiscreteDist::point_mass(p);
  const double mode = uniform(rng);
  if (mode < 0.25) return DiscreteDist::bernoulli(p);
  if (mode < 0.45) {
    // Markov-type law: mass p/x at some x in (p, 1], rest at 0.
    const double x = p + (1.0 - p) * (1.0 - uniform(rng));
    return DiscreteDist::two_point(0.0, x, p);
  }
  if (mode < 0.75) return spread_around(rng, 0.0, 1.0, p, false);
  return mix(spread_around(rng, 0.0, 1.0, p, false), spread_around(rng, 0.0, 1.0, p, false), uniform(rng));
}

// Two-point law with mean m and variance v on [0,1], or nothing.
std::optional<DiscreteDist> two_point_with_variance(Rng& rng, double m, double v) {
  if (!(m > 0.0 && m < 1.0) || v < 0.0 || v > m * (1.0 - m)) return std::nullopt;
  if (v == 0.0) return DiscreteDist::point_mass(m);
  // Weight u on the upper point; support m - sqrt(v u/(1-u)), m + sqrt(v (1-u)/u).
  const double u_lo = v / (v + (1.0 - m) * (1.0 - m));
  const double u_hi = m * m / (v + m * m);
  if (u_lo > u_hi) return std::nullopt;
  double u = u_lo + (u_hi - u_lo) * uniform(rng);
  if (coin(rng, 0.2)) u = coin(rng, 0.5) ? u_lo : u_hi;
  if (!(u > 0.0 && u < 1.0)) return std::nullopt;
  const double lo = std::max(0.0, m - std::sqrt(v * u / (1.0 - u)));
  const double hi = std::min(1.0, m + std::sqrt(v * (1.0 - u) / u));
  if (!(hi > lo)) return std::nullopt;
  return DiscreteDist::from_points({{lo, 1.0 - u}, {hi, u}});
}

// Cell j gets mass w[j] spread around mean mu[j] inside the cell. A cell is
// only split into two points while the total stays within kMaxSampleSupport.
DiscreteDist fill_cells(Rng& rng, const PartitionSpec& part, const std::vector<double>& w,
                        const std::vector<double>& mu) {
  const int m = part.cells();
  int pending = 0;
  for (int j = 0; j < m; ++j) pending += w[j] > 0.0 ? 1 : 0;
  int used = 0;
  std::vector<std::pair<double, double>> pts;
  for (int j = 0; j < m; ++j) {
    if (w[j] <= 0.0) continue;
    --pending;
    const bool last = j == m - 1;
    DiscreteDist cell = DiscreteDist::point_mass(mu[j]);
    if (used + 2 + pending <= kMaxSampleSupport) cell = spread_around(rng, part.lower(j), part.upper(j), mu[j], !last);
    used += static_cast<int>(cell.size());
    for (std::size_t i = 0; i < cell.size(); ++i) pts.emplace_back(cell.support()[i], w[j] * cell.probs()[i]);
  }
  return DiscreteDist::from_points(std::move(pts));
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

DiscreteDist sample_variance(Rng& rng, const VarianceClassSpec& spec) {
  const double p = spec.p;
  const double v = spec.sigma2;
  for (int attempt = 0; attempt < kSamplingAttempts; ++attempt) {
    std::optional<DiscreteDist> cand;
    const double mode = uniform(rng);
    if (mode < 0.3) {
      cand = two_point_with_variance(rng, p, v);
    } else {
      // One free point x with weight w; the remainder is a two-point law
      // carrying the leftover mean and second moment.
      const double x = coin(rng, 0.3) ? (coin(rng, 0.5) ? 0.0 : 1.0) : uniform(rng);
      const double w = 0.5 * uniform(rng);
      const double m_rest = (p - w * x) / (1.0 - w);
      const double second = (v + p * p - w * x * x) / (1.0 - w);
      double v_rest = second - m_rest * m_rest;
      if (v_rest < 0.0 && v_rest > -1e-15) v_rest = 0.0;
      auto rest = two_point_with_variance(rng, m_rest, v_rest);
      if (rest) cand = mix(DiscreteDist::point_mass(x), *rest, w);
    }
    if (cand && is_member(*cand, spec)) return *cand;
  }
  exhausted("variance");
}

DiscreteDist sample_moments(Rng& rng, const MomentVector& mv) {
  const int m = mv.order();
  if (m == 1) return sample_mean(rng, mv.moment(1));
  if (m == 2) {
    const double mu1 = mv.moment(1);
    return sample_variance(rng, VarianceClassSpec{mu1, mv.moment(2) - mu1 * mu1});
  }
  const int k = m + 1;
  for (int attempt = 0; attempt < kSamplingAttempts; ++attempt) {
    std::vector<double> x(k);
    for (auto& xi : x) xi = uniform(rng);
    if (coin(rng, 0.5)) x[0] = 0.0;
    if (coin(rng, 0.5)) x[1] = 1.0;
    std::sort(x.begin(), x.end());
    if (std::adjacent_find(x.begin(), x.end(), [](double a, double b) { return b - a < 1e-6; }) != x.end()) {
      continue;
    }
    Eigen::MatrixXd vand(k, k);
    Eigen::VectorXd rhs(k);
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) vand(r, c) = std::pow(x[c], r);
      rhs(r) = mv.moment(r);
    }
    const Eigen::VectorXd w = vand.colPivHouseholderQr().solve(rhs);
    if ((w.array() < 0.0).any()) continue;
    std::vector<std::pair<double, double>> pts;
    for (int c = 0; c < k; ++c) pts.emplace_back(x[c], w(c));
    double total = w.sum();
    if (std::abs(total - 1.0) > 1e-12) continue;
    for (auto& pt : pts) pt.second /= total;
    auto cand = DiscreteDist::from_points(std::move(pts));
    if (is_member(cand, mv)) return cand;
  }
  exhausted("moment");
}

DiscreteDist sample_conditional_means(Rng& rng, const ConditionalMeansSpec& spec) {
  const auto& part = spec.partition;
  const int m = part.cells();
  const auto& mu = spec.mu;
  for (int attempt = 0; attempt < kSamplingAttempts; ++attempt) {
    // Inner cells get random mass; the outer two absorb the mean constraint.
    std::vector<double> w(m, 0.0);
    const double scale = coin(rng, 0.3) ? 0.0 : uniform(rng) / m;
    double inner = 0.0;
    double inner_mean = 0.0;
    for (int j = 1; j + 1 < m; ++j) {
      w[j] = scale * uniform(rng);
      inner += w[j];
      inner_mean += w[j] * mu[j];
    }
    const double rest = 1.0 - inner;
    const double span = mu[m - 1] - mu[0];
    if (span <= 0.0) {
      w[0] = rest * uniform(rng);
      w[m - 1] = rest - w[0];
    } else {
      w[m - 1] = (spec.p - inner_mean - rest * mu[0]) / span;
      w[0] = rest - w[m - 1];
    }
    if (w[0] < 0.0 || w[m - 1] < 0.0) continue;
    auto cand = fill_cells(rng, part, w, mu);
    if (is_member(cand, spec)) return cand;
  }
  exhausted("conditional-means");
}

DiscreteDist sample_conditional_probs(Rng& rng, const ConditionalProbsSpec& spec) {
  const auto& part = spec.partition;
  const int m = part.cells();
  const auto& q = spec.q;
  for (int attempt = 0; attempt < kSamplingAttempts; ++attempt) {
    std::vector<double> mu(m);
    double lo_sum = 0.0;
    double hi_sum = 0.0;
    double cur = 0.0;
    for (int j = 0; j < m; ++j) {
      mu[j] = part.lower(j) + uniform(rng) * (part.upper(j) - part.lower(j));
      lo_sum += q[j] * part.lower(j);
      hi_sum += q[j] * part.upper(j);
      cur += q[j] * mu[j];
    }
    // Shrink towards the lower or upper corner of the box until the mean is p.
    if (cur > spec.p) {
      const double a = (spec.p - lo_sum) / (cur - lo_sum);
      for (int j = 0; j < m; ++j) mu[j] = part.lower(j) + a * (mu[j] - part.lower(j));
    } else if (cur < spec.p) {
      const double b = (hi_sum - spec.p) / (hi_sum - cur);
      for (int j = 0; j < m; ++j) mu[j] = part.upper(j) - b * (part.upper(j) - mu[j]);
    }
    bool ok = true;
    for (int j = 0; j < m; ++j) {
      const bool last = j == m - 1;
      if (mu[j] < part.lower(j) || mu[j] > part.upper(j) || (!last && mu[j] >= part.upper(j))) ok = false;
    }
    if (!ok) continue;
    auto cand = fill_cells(rng, part, q, mu);
    if (is_member(cand, spec)) return cand;
  }
  exhausted("conditional-probabilities");
}

bool in_unit_interval(const DiscreteDist& x, double tol) {
  return x.support().front() >= -tol && x.support().back() <= 1.0 + tol;
}

}  // namespace

double class_mean(const ClassSpec& spec) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MomentVector>) {
          return s.moment(1);
        } else {
          return s.p;
        }
      },
      spec);
}

std::string_view class_kind(const ClassSpec& spec) {
  static constexpr std::string_view kNames[] = {"mean", "moments", "variance", "conditional-means",
                                                "conditional-probs"};
  return kNames[spec.index()];
}

bool is_member(const DiscreteDist& x, const ClassSpec& spec, double tol) {
  if (!in_unit_interval(x, tol)) return false;
  if (!close(x.mean(), class_mean(spec), tol)) return false;
  if (const auto* mv = std::get_if<MomentVector>(&spec)) {
    for (int j = 2; j <= mv->order(); ++j) {
      if (!close(x.moment(j), mv->moment(j), tol)) return false;
    }
  } else if (const auto* vs = std::get_if<VarianceClassSpec>(&spec)) {
    if (!close(x.variance(), vs->sigma2, tol)) return false;
  } else if (const auto* cm = std::get_if<ConditionalMeansSpec>(&spec)) {
    const int m = cm->partition.cells();
    std::vector<double> mass(m, 0.0), first(m, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const int c = cm->partition.cell_of(x.support()[i]);
      mass[c] += x.probs()[i];
      first[c] += x.probs()[i] * x.support()[i];
    }
    for (int j = 0; j < m; ++j) {
      if (mass[j] > tol && !close(first[j] / mass[j], cm->mu[j], 1e-9)) return false;
    }
  } else if (const auto* cp = std::get_if<ConditionalProbsSpec>(&spec)) {
    const int m = cp->partition.cells();
    std::vector<double> mass(m, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) mass[cp->partition.cell_of(x.support()[i])] += x.probs()[i];
    for (int j = 0; j < m; ++j) {
      if (!close(mass[j], cp->q[j], tol)) return false;
    }
  }
  return true;
}

DiscreteDist sample_class_member(const ClassSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return std::visit(
      [&](const auto& s) -> DiscreteDist {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MeanClass>) {
          return sample_mean(rng, s.p);
        } else if constexpr (std::is_same_v<T, MomentVector>) {
          return sample_moments(rng, s);
        } else if constexpr (std::is_same_v<T, VarianceClassSpec>) {
          return sample_variance(rng, s);
        } else if constexpr (std::is_same_v<T, ConditionalMeansSpec>) {
          return sample_conditional_means(rng, s);
        } else {
          return sample_conditional_probs(rng, s);
        }
      },
      spec);
}

}  // namespace tailbound
