#include "support.hpp"
#include "tailbound/classic.hpp"
#include "tailbound/errors.hpp"

using namespace tailbound;
using namespace testing;

TEST_CASE("markov bound clamps above one") {
  auto r = markov_bound(2, 4);
  CHECK(r.value == 0.5);
  r = markov_bound(5, 5);
  CHECK(r.value == 1.0);
  CHECK_FALSE(r.clamped);
  r = markov_bound(6, 5);
  CHECK(r.value == 1.0);
  CHECK(r.clamped);
  CHECK_THROWS_AS(markov_bound(1, 0), DomainError);
}

TEST_CASE("hoeffding reference values and witness") {
  auto r = hoeffding_bound({10, 0.5, 6});
  CHECK_THAT(r.value, WithinAbs(0.817622, 1e-6));
  REQUIRE(r.witness.h);
  CHECK_THAT(std::exp(*r.witness.h), WithinRel(6.0 * 0.5 / (0.5 * 4.0), 1e-14));
  CHECK_THAT(hoeffding_bound({10, 0.5, 8}).value, WithinAbs(0.145519, 1e-6));
  CHECK_THAT(hoeffding_bound({10, 0.5, 10 - 1e-6}).value, WithinAbs(std::pow(0.5, 10), 1e-4));
}

TEST_CASE("hoeffding rejects thresholds outside (np, n)") {
  CHECK_THROWS_AS(hoeffding_bound({10, 0.5, 5}), DomainError);
  CHECK_THROWS_AS(hoeffding_bound({10, 0.5, 10}), DomainError);
  CHECK_THROWS_AS(hoeffding_bound({10, 0.0, 5}), DomainError);
  CHECK_THROWS_AS(hoeffding_bound({0, 0.5, 0.2}), DomainError);
}

TEST_CASE("hoeffding matches grid minimisation on random instances") {
  std::mt19937_64 rng(101);
  for (int rep = 0; rep < 50; ++rep) {
    const auto inst = random_instance(rng, 60, false);
    const double grid = oracle::grid_min_chernoff(inst.n, inst.p, inst.t, 200'000, 60.0);
    CHECK_THAT(hoeffding_bound(inst).value, WithinRel(grid, 1e-9));
  }
}

TEST_CASE("no sampled sub-multiplicative exponential family member beats H at integer t") {
  // f(x) = e^{hx}(1 + cx): V_n = ((1-p) + p e^h (1+c))^n / (e^{ht}(1+ct)).
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const auto inst = random_instance(rng, 30, true);
    const double H = hoeffding_bound(inst).value;
    for (int k = 0; k < 200; ++k) {
      const double h = 6.0 * u(rng);
      const double c = k % 2 ? 0.0 : 5.0 * u(rng);
      const double log_v = inst.n * std::log((1 - inst.p) + inst.p * std::exp(h) * (1 + c)) - h * inst.t -
                           std::log1p(c * inst.t);
      CHECK(std::exp(log_v) >= H * (1 - 1e-12));
    }
  }
}

TEST_CASE("hoeffding exponential relaxation") {
  CHECK_THAT(hoeffding_exp_bound({10, 0.5, 6}).value, WithinAbs(std::exp(-0.2), 1e-15));
  CHECK_THAT(hoeffding_exp_bound({10, 0.5, 8}).value, WithinAbs(std::exp(-1.8), 1e-15));
  CHECK_THAT(hoeffding_exp_bound({10, 0.5, 5 + 1e-9}).value, WithinAbs(1.0, 1e-12));
}

TEST_CASE("bennett reference values") {
  auto r = bennett_bound(10, {0.5, 0.25}, 6);
  CHECK_THAT(r.value, WithinAbs(0.817622, 1e-6));
  REQUIRE(r.witness.alpha);
  CHECK_THAT(*r.witness.alpha, WithinAbs(0.5, 1e-15));
  CHECK_THAT(*r.witness.beta, WithinAbs(0.6, 1e-15));
  CHECK(bennett_bound(10, {0.5, 0.01}, 6).value < 0.817622);
  CHECK_THROWS_AS(bennett_bound(10, {0.5, 0.0}, 6), DomainError);
  CHECK_THROWS_AS(bennett_bound(10, {0.5, 0.3}, 6), DomainError);
  CHECK_THROWS_AS(bennett_bound(10, {0.5, 0.2}, 10), DomainError);
}

TEST_CASE("classic bound orderings on random instances") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const auto inst = random_instance(rng, 100, false);
    const double H = hoeffding_bound(inst).value;
    CHECK(H <= hoeffding_exp_bound(inst).value + 1e-15);
    const double full = inst.p * (1 - inst.p);
    CHECK_THAT(bennett_bound(inst.n, {inst.p, full}, inst.t).value, WithinRel(H, 1e-9));
    const double s2 = full * (0.01 + 0.99 * u(rng));
    const auto b = bennett_bound(inst.n, {inst.p, s2}, inst.t);
    CHECK(b.value <= H + 1e-12);
    CHECK(b.value >= 0.0);
    CHECK(b.value <= 1.0);
  }
}
