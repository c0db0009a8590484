#include "tailbound/discrete_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tailbound/errors.hpp"

namespace tailbound {

bool same_point(double x, double y) noexcept {
  const double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= DiscreteDist::kMergeTolerance * scale;
}

DiscreteDist::DiscreteDist(std::vector<double> support, std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
  if (support_.empty() || support_.size() != probs_.size()) {
    throw DomainError("DiscreteDist: support and probabilities must be non-empty and equal length");
  }
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (!std::isfinite(support_[i]) || !std::isfinite(probs_[i])) {
      throw DomainError("DiscreteDist: non-finite entry");
    }
    if (i > 0 && !(support_[i] > support_[i - 1])) {
      throw DomainError("DiscreteDist: support must be strictly ascending");
    }
  }
  bool clipped = false;
  for (double& p : probs_) {
    if (p < -kNegativeTolerance) {
      throw DomainError("DiscreteDist: negative probability " + std::to_string(p));
    }
    if (p < 0.0) {
      p = 0.0;
      clipped = true;
    }
  }
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw DomainError("DiscreteDist: probabilities sum to " + std::to_string(total));
  }
  if (clipped) {
    for (double& p : probs_) p /= total;
  }
}

DiscreteDist DiscreteDist::from_points(std::vector<std::pair<double, double>> points) {
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> support;
  std::vector<double> probs;
  support.reserve(points.size());
  probs.reserve(points.size());
  for (const auto& [x, p] : points) {
    if (!support.empty() && same_point(support.back(), x)) {
      probs.back() += p;
    } else {
      support.push_back(x);
      probs.push_back(p);
    }
  }
  return DiscreteDist(std::move(support), std::move(probs));
}

DiscreteDist DiscreteDist::point_mass(double x) { return DiscreteDist({x}, {1.0}); }

DiscreteDist DiscreteDist::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bernoulli: p must lie in [0,1]");
  return DiscreteDist({0.0, 1.0}, {1.0 - p, p});
}

DiscreteDist DiscreteDist::two_point(double lo, double hi, double mean) {
  if (!(lo <= mean && mean <= hi)) throw DomainError("two_point: mean outside [lo, hi]");
  if (same_point(lo, hi)) return point_mass(mean);
  const double w_hi = (mean - lo) / (hi - lo);
  return from_points({{lo, 1.0 - w_hi}, {hi, w_hi}});
}

double DiscreteDist::mean() const { return moment(1); }

double DiscreteDist::variance() const {
  const double m = mean();
  double v = 0.0;
  for (std::size_t i = 0; i < size(); ++i) v += probs_[i] * (support_[i] - m) * (support_[i] - m);
  return v;
}

double DiscreteDist::moment(int k) const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) s += probs_[i] * std::pow(support_[i], k);
  return s;
}

double DiscreteDist::expected_positive_part(double a) const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (support_[i] > a) s += probs_[i] * (support_[i] - a);
  }
  return s;
}

double DiscreteDist::survival(double a) const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (support_[i] >= a || same_point(support_[i], a)) s += probs_[i];
  }
  return s;
}

double DiscreteDist::mass_at(double x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (same_point(support_[i], x)) s += probs_[i];
  }
  return s;
}

DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b) {
  const std::size_t pairs = a.size() * b.size();
  if (pairs > 50 * kMaxSupport) {
    throw ResourceError("convolve: " + std::to_string(pairs) +
                        " intermediate points exceed the support guard; coarsen the inputs");
  }
  std::vector<std::pair<double, double>> points;
  points.reserve(pairs);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      points.emplace_back(a.support()[i] + b.support()[j], a.probs()[i] * b.probs()[j]);
    }
  }
  std::sort(points.begin(), points.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<double> support;
  std::vector<double> probs;
  for (const auto& [x, p] : points) {
    if (!support.empty() && same_point(support.back(), x)) {
      probs.back() += p;
    } else {
      support.push_back(x);
      probs.push_back(p);
    }
  }
  if (support.size() > kMaxSupport) {
    throw ResourceError("convolve: merged support of " + std::to_string(support.size()) +
                        " points exceeds the guard; coarsen the inputs");
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  bool drift = std::abs(total - 1.0) > DiscreteDist::kSumTolerance;
  if (drift) {
    for (double& p : probs) p /= total;
  }
  DiscreteDist out(std::move(support), std::move(probs));
  if (drift || a.renormalized() || b.renormalized()) out.mark_renormalized();
  return out;
}

DiscreteDist convolve(std::span<const DiscreteDist> dists) {
  if (dists.empty()) return DiscreteDist::point_mass(0.0);
  DiscreteDist acc = dists.front();
  for (std::size_t i = 1; i < dists.size(); ++i) acc = convolve(acc, dists[i]);
  return acc;
}

}  // namespace tailbound
