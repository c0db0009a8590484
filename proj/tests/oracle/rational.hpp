#pragma once
// Exact rational reference values for small binomial instances.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using boost::multiprecision::cpp_int;

inline Rational choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  cpp_int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return Rational(r);
}

inline Rational power(Rational x, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Decimal literal such as 0.3 as the exact fraction 3/10.
inline Rational frac(long long num, long long den) { return Rational(num) / Rational(den); }

inline Rational pmf(int n, const Rational& p, int k) {
  return choose(n, k) * power(p, k) * power(1 - p, n - k);
}

inline Rational upper_tail(int n, const Rational& p, int k) {
  Rational s = 0;
  for (int i = std::max(k, 0); i <= n; ++i) s += pmf(n, p, i);
  return s;
}

// E[max(0, B - a)] for integer a.
inline Rational expected_excess(int n, const Rational& p, int a) {
  Rational s = 0;
  for (int i = std::max(a, 0); i <= n; ++i) s += (i - a) * pmf(n, p, i);
  return s;
}

struct LinearOptimum {
  Rational value;
  int j;
};

// min over j in {0..t-1} of E[(B - j)+] / (t - j), ties to the largest j.
inline LinearOptimum linear_envelope(int n, const Rational& p, int t) {
  LinearOptimum best{expected_excess(n, p, 0) / t, 0};
  for (int j = 1; j < t; ++j) {
    const Rational v = expected_excess(n, p, j) / (t - j);
    if (v <= best.value) best = {v, j};
  }
  return best;
}

// Hoeffding function for integer t: rational whenever p is.
inline Rational hoeffding(int n, const Rational& p, int t) {
  return power(p * (n - t) / (t * (1 - p)), t) * power((1 - p) * n / (n - t), n);
}

// sum_{i<t} e^{h(i-t)} P[B = i] with e^h = t(1-p)/(p(n-t)).
inline Rational correction(int n, const Rational& p, int t) {
  const Rational eh = t * (1 - p) / (p * (n - t));
  Rational s = 0;
  for (int i = 0; i < t; ++i) s += pmf(n, p, i) / power(eh, t - i);
  return s;
}

// Exact law of an independent sum of finite rational distributions.
using RationalDist = std::vector<std::pair<Rational, Rational>>;

inline RationalDist convolve(const RationalDist& a, const RationalDist& b) {
  RationalDist out;
  for (const auto& [x, px] : a) {
    for (const auto& [y, py] : b) {
      const Rational v = x + y;
      auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == v; });
      if (it == out.end()) {
        out.emplace_back(v, px * py);
      } else {
        it->second += px * py;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Rational expectation(const RationalDist& d, auto&& g) {
  Rational s = 0;
  for (const auto& [x, px] : d) s += px * g(x);
  return s;
}

}  // namespace oracle
