#include "support.hpp"
#include "tailbound/bernstein.hpp"
#include "tailbound/binomial.hpp"
#include "tailbound/errors.hpp"
#include "tailbound/order.hpp"

using namespace tailbound;
using namespace testing;

TEST_CASE("convex order examples") {
  const auto two_point = DiscreteDist::two_point(0.2, 0.9, 0.5);
  CHECK(check_convex_order(two_point, DiscreteDist::bernoulli(0.5)).holds);

  const auto mixed = convolve(DiscreteDist::bernoulli(0.3), DiscreteDist::bernoulli(0.7));
  const auto bin = convolve(DiscreteDist::bernoulli(0.5), DiscreteDist::bernoulli(0.5));
  CHECK(check_convex_order(mixed, bin).holds);
  CHECK_FALSE(check_convex_order(bin, mixed).holds);

  const auto cert = check_convex_order(DiscreteDist::bernoulli(0.5), DiscreteDist::bernoulli(0.6));
  CHECK_FALSE(cert.holds);
  CHECK_FALSE(cert.violating_point.has_value());

  const auto bad = check_convex_order(DiscreteDist::bernoulli(0.5), DiscreteDist::point_mass(0.5));
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.violating_point);
}

TEST_CASE("stochastic order examples") {
  const auto z = bernstein_weights(MomentVector({0.5, 0.3}));
  const double q = std::sqrt(0.3);
  const DiscreteDist xi({0.0, 0.5, 1.0}, {pmf({2, q}, 0), pmf({2, q}, 1), pmf({2, q}, 2)});
  CHECK(check_stochastic_order(z, xi).holds);

  const DiscreteDist x({0.1, 0.5}, {0.4, 0.6});
  CHECK(check_stochastic_order(x, x).holds);

  const auto cert = check_stochastic_order(DiscreteDist::bernoulli(0.6), DiscreteDist::bernoulli(0.5));
  CHECK_FALSE(cert.holds);
  REQUIRE(cert.violating_point);
  CHECK(*cert.violating_point == 1.0);
}

TEST_CASE("convex order transitivity on sampled triples") {
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int chains = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const double p = 0.1 + 0.8 * u(rng);
    // x: point mass, y: spread two-point, z: Bernoulli; plus random two-point laws.
    std::vector<DiscreteDist> laws{DiscreteDist::point_mass(p), DiscreteDist::bernoulli(p)};
    for (int k = 0; k < 3; ++k) laws.push_back(DiscreteDist::two_point(p * u(rng), p + (1 - p) * u(rng), p));
    for (const auto& a : laws) {
      for (const auto& b : laws) {
        for (const auto& c : laws) {
          if (check_convex_order(a, b).holds && check_convex_order(b, c).holds) {
            ++chains;
            CHECK(check_convex_order(a, c).holds);
          }
        }
      }
    }
  }
  CHECK(chains > 0);
}

TEST_CASE("unequal Bernoulli sums have lighter upper tails than the averaged binomial") {
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (int n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 40; ++rep) {
      std::vector<DiscreteDist> bs;
      double total = 0.0;
      for (int i = 0; i < n; ++i) {
        const double q = u(rng);
        total += q;
        bs.push_back(DiscreteDist::bernoulli(q));
      }
      const auto s = convolve(bs);
      const BinomialSpec avg{n, total / n};
      for (int c = static_cast<int>(std::ceil(total + 1.0)); c <= n; ++c) {
        CHECK(s.survival(c) <= upper_tail(avg, c) + 1e-12);
      }
    }
  }
}

TEST_CASE("markov reduction examples") {
  const std::vector<double> two{1.0, 1.0};
  auto r = markov_reduction_check(two, 4.0);
  CHECK_THAT(r.value, WithinAbs(0.5, 1e-15));
  CHECK(r.eps_star == 0.0);
  CHECK(r.holds);

  const std::vector<double> one{0.3};
  r = markov_reduction_check(one, 2.0);
  CHECK_THAT(r.value, WithinAbs(0.15, 1e-15));
  CHECK(r.holds);

  const std::vector<double> three{0.5, 0.5, 0.5};
  r = markov_reduction_check(three, 2.0);
  CHECK_THAT(r.value, WithinAbs(0.75, 1e-15));
  CHECK(r.eps_star == 0.0);

  CHECK_THROWS_AS(markov_reduction_check(three, 1.5), DomainError);
  const std::vector<double> negative{-0.1};
  CHECK_THROWS_AS(markov_reduction_check(negative, 1.0), DomainError);
}
