#pragma once

#include <span>
#include <vector>

#include "tailbound/classic.hpp"
#include "tailbound/discrete_dist.hpp"
#include "tailbound/report.hpp"

namespace tailbound {

// Breakpoints 0 = r_0 < r_1 < ... < r_m = 1 with m >= 2. Cell j (0-based)
// is [r_j, r_{j+1}); the last cell is closed.
class PartitionSpec {
 public:
  explicit PartitionSpec(std::vector<double> breakpoints);

  int cells() const noexcept { return static_cast<int>(r_.size()) - 1; }
  double lower(int cell) const { return r_.at(static_cast<std::size_t>(cell)); }
  double upper(int cell) const { return r_.at(static_cast<std::size_t>(cell) + 1); }
  int cell_of(double x) const;
  const std::vector<double>& breakpoints() const noexcept { return r_; }

  bool operator==(const PartitionSpec&) const = default;

 private:
  std::vector<double> r_;
};

// Class B(p, {I_j, mu_j}): mean p and conditional mean mu_j on each cell.
struct ConditionalMeansSpec {
  PartitionSpec partition;
  std::vector<double> mu;
  double p;
};

// Class C(p, {I_j, q_j}): mean p and probability q_j of each cell.
struct ConditionalProbsSpec {
  PartitionSpec partition;
  std::vector<double> q;
  double p;
};

void validate(const ConditionalMeansSpec& spec);
void validate(const ConditionalProbsSpec& spec);

// Replaces each cell's conditional law by the two-point law on the cell
// endpoints with the same conditional mean, weighted by the cell mass.
// The result dominates x in convex order and has the same mean.
// Zero-mass breakpoints are dropped.
DiscreteDist mix_envelope(const DiscreteDist& x, const PartitionSpec& partition);

// Envelope xi_i on {0, r_1, r_{m-1}, 1} for one conditional-means class;
// witness weights of the bound are the averages of these.
DiscreteDist conditional_means_envelope(const ConditionalMeansSpec& spec);

// inf_h e^{-ht} (pi_1 + e^{h r_1} pi_2 + e^{h r_{m-1}} pi_3 + e^{h} pi_4)^n.
// All specs share one partition. Witness h and weights (pi_1..pi_4).
BoundReport conditional_means_bound(std::span<const ConditionalMeansSpec> specs, double t);

struct ConditionalProbsLp {
  std::vector<double> mu;  // maximising conditional means
  DiscreteDist xi;         // mixture envelope at mu
};

// Maximises E[e^{h xi}] over r_j <= mu_j <= r_{j+1}, sum q_j mu_j = p.
ConditionalProbsLp solve_conditional_probs_lp(const ConditionalProbsSpec& spec, double h);

// e^{-ht} (E e^{h xi})^n at the Hoeffding-optimal h, xi from the LP.
BoundReport conditional_probs_bound(const ConditionalProbsSpec& spec, int n, double t);

// Three-point law on {0, p, 1} dominating every member of B(p, sigma2) in
// convex order and dominated by Ber(p).
DiscreteDist xi_distribution(const VarianceClassSpec& vclass);

// Optimal F_ic(t) bound for the independent sum of the xi_{p_i, sigma_i}.
// Witness eps.
BoundReport xi_sum_bound(std::span<const VarianceClassSpec> vclasses, double t);

}  // namespace tailbound
