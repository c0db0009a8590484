#pragma once

#include <span>
#include <vector>

#include "tailbound/discrete_dist.hpp"
#include "tailbound/report.hpp"

namespace tailbound {

// First m moments (mu_1, ..., mu_m) of a [0,1]-valued variable, i.e. the
// class B(mu_1, ..., mu_m). Requires 1 > mu_1 >= ... >= mu_m > 0.
class MomentVector {
 public:
  explicit MomentVector(std::vector<double> mu);

  int order() const noexcept { return static_cast<int>(mu_.size()); }
  // mu_j for j in [0, m]; mu_0 = 1.
  double moment(int j) const;
  const std::vector<double>& values() const noexcept { return mu_; }

  bool operator==(const MomentVector&) const = default;

 private:
  std::vector<double> mu_;
};

// Bernstein random variable: P[j/m] = C(m,j) E[X^j (1-X)^{m-j}], computed
// from the moments alone. Throws InfeasibleMomentsError if a weight is
// below -1e-12.
DiscreteDist bernstein_weights(const MomentVector& mv);

// T_nm: pointwise average of the Bernstein weights. All inputs share m.
DiscreteDist t_nm_distribution(std::span<const MomentVector> mvs);

// inf_h e^{-ht} (E e^{h T_nm})^n, n = mvs.size(). Witness h.
BoundReport exp_moment_bound(std::span<const MomentVector> mvs, double t);

// Z_nm = independent sum of the per-variable Bernstein variables.
// Throws ResourceError when n m exceeds kMaxSupport.
DiscreteDist z_nm_distribution(std::span<const MomentVector> mvs);

// inf over a < t of E[max(0, Z_nm - a)] / (t - a). Witness eps = a*.
BoundReport z_nm_bound(std::span<const MomentVector> mvs, double t);

// Power means q_s = (1/n) sum_i mu_{i,s}^{1/s}, s = 1..m.
std::vector<double> power_means(std::span<const MomentVector> mvs);

// Binomial comparison refined with higher moments: min over admissible s of
// ((st-s+1)(1-q_s) / (s (st-s+1 - n s q_s))) P[Bin(ns, q_s) >= st-s+1].
// Integer t only. Witness s = s*, weights = per-s terms.
BoundReport refined_binomial_bound(std::span<const MomentVector> mvs, double t);

// Two-point extremal law on {lambda, 1},
// lambda = p - sigma2/(1-p); largest moments of every order in B(p, sigma2).
DiscreteDist cohen_extremal(double p, double sigma2);

struct ImpossibilityWitness {
  double lambda;
  double expected_g_c;        // E[g(C)]
  double expected_g_c_prime;  // E[g(C')]
  double ratio;               // E[g(C)] / E[g(C')], equals mu_2 / mu_1 < 1
  DiscreteDist c;
  DiscreteDist c_prime;
};

// No member of B(mu1, mu2) dominates the class under increasing convex
// functions: C' beats the extremal law C for g(x) = max(0, (x-lambda)/(1-lambda)).
ImpossibilityWitness impossibility_witness(double mu1, double mu2);

}  // namespace tailbound
