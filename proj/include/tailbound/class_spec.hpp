#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

#include "tailbound/bernstein.hpp"
#include "tailbound/classic.hpp"
#include "tailbound/discrete_dist.hpp"
#include "tailbound/mixture.hpp"

namespace tailbound {

// Class B(p): [0,1]-valued variables with mean p.
struct MeanClass {
  double p;
  bool operator==(const MeanClass&) const = default;
};

inline bool operator==(const VarianceClassSpec& a, const VarianceClassSpec& b) {
  return a.p == b.p && a.sigma2 == b.sigma2;
}
inline bool operator==(const ConditionalMeansSpec& a, const ConditionalMeansSpec& b) {
  return a.partition == b.partition && a.mu == b.mu && a.p == b.p;
}
inline bool operator==(const ConditionalProbsSpec& a, const ConditionalProbsSpec& b) {
  return a.partition == b.partition && a.q == b.q && a.p == b.p;
}

// Information available about one summand.
using ClassSpec =
    std::variant<MeanClass, MomentVector, VarianceClassSpec, ConditionalMeansSpec, ConditionalProbsSpec>;

double class_mean(const ClassSpec& spec);
std::string_view class_kind(const ClassSpec& spec);

// Checks that x is supported in [0,1] and satisfies every constraint of the
// class to within tol.
bool is_member(const DiscreteDist& x, const ClassSpec& spec, double tol = 1e-12);

inline constexpr int kSamplingAttempts = 20000;
// Members drawn for the mean, variance, moment (m <= 3) and conditional
// classes (at most four nonempty cells) have at most this many points.
inline constexpr int kMaxSampleSupport = 4;

// Draws a random finite-support member of the class. The family is biased
// towards extreme laws (Bernoulli, endpoint-heavy two-point laws, the two-point
// extremal) because those are where bounds are tight. Deterministic in the
// seed. Throws SamplingExhaustedError if no member was found within
// kSamplingAttempts tries, which is what happens for empty classes.
DiscreteDist sample_class_member(const ClassSpec& spec, std::uint64_t seed);

}  // namespace tailbound
