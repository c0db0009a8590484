#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace tailbound {

// Finite discrete distribution on real support points, ascending.
//
// Construction validates: strictly ascending support, probabilities summing
// to one within kSumTolerance, and no probability below -kNegativeTolerance.
// Slightly negative probabilities (float noise) are clipped to zero and the
// vector is renormalised. Zero-probability points are kept, so grid
// distributions such as Bernstein weights keep their full support.
class DiscreteDist {
 public:
  static constexpr double kSumTolerance = 1e-12;
  static constexpr double kNegativeTolerance = 1e-15;
  // Support points closer than this (relative, floored at 1 in magnitude)
  // are treated as the same point when merging.
  static constexpr double kMergeTolerance = 1e-12;

  DiscreteDist(std::vector<double> support, std::vector<double> probs);

  // Unsorted (value, probability) pairs; sorts and merges coincident points.
  static DiscreteDist from_points(std::vector<std::pair<double, double>> points);
  static DiscreteDist point_mass(double x);
  static DiscreteDist bernoulli(double p);
  // Two-point law on {lo, hi} with the given mean (the coupling construction).
  static DiscreteDist two_point(double lo, double hi, double mean);

  std::span<const double> support() const noexcept { return support_; }
  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return support_.size(); }

  double mean() const;
  double variance() const;
  double moment(int k) const;
  // E[max(0, X - a)].
  double expected_positive_part(double a) const;
  // P[X >= a], with support points within merge tolerance of a counted in.
  double survival(double a) const;
  // Probability mass at x (merge tolerance), zero if x is not a support point.
  double mass_at(double x) const;

  // True when convolution had to renormalise probability drift above tolerance.
  bool renormalized() const noexcept { return renormalized_; }
  void mark_renormalized() noexcept { renormalized_ = true; }

 private:
  DiscreteDist() = default;

  std::vector<double> support_;
  std::vector<double> probs_;
  bool renormalized_ = false;
};

bool same_point(double x, double y) noexcept;

// Exact distribution of the independent sum. Support is merged at
// kMergeTolerance; throws ResourceError when the merged support would exceed
// kMaxSupport points.
inline constexpr std::size_t kMaxSupport = 1'000'000;
DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b);
DiscreteDist convolve(std::span<const DiscreteDist> dists);

}  // namespace tailbound
