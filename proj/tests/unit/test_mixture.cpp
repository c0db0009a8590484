#include "support.hpp"
#include "tailbound/class_spec.hpp"
#include "tailbound/convex_opt.hpp"
#include "tailbound/errors.hpp"
#include "tailbound/mixture.hpp"
#include "tailbound/order.hpp"
#include "tailbound/validation.hpp"

using namespace tailbound;
using namespace testing;

namespace {
DiscreteDist random_law(std::mt19937_64& rng, int points) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<double, double>> pts;
  double total = 0.0;
  for (int k = 0; k < points; ++k) {
    const double w = u(rng) + 0.05;
    pts.emplace_back(u(rng), w);
    total += w;
  }
  for (auto& pt : pts) pt.second /= total;
  return DiscreteDist::from_points(pts);
}
}  // namespace

TEST_CASE("partition validation and cell lookup") {
  CHECK_THROWS_AS(PartitionSpec({0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(PartitionSpec({0.0, 0.6, 0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(PartitionSpec({0.1, 0.5, 1.0}), DomainError);
  const PartitionSpec part({0.0, 0.25, 0.75, 1.0});
  CHECK(part.cells() == 3);
  CHECK(part.cell_of(0.0) == 0);
  CHECK(part.cell_of(0.25) == 1);
  CHECK(part.cell_of(0.7499) == 1);
  CHECK(part.cell_of(1.0) == 2);
}

TEST_CASE("mixture envelope") {
  const PartitionSpec half({0.0, 0.5, 1.0});
  const DiscreteDist x({0.25, 0.75}, {0.5, 0.5});
  const auto env = mix_envelope(x, half);
  REQUIRE(env.size() == 3);
  CHECK_THAT(env.probs()[0], WithinAbs(0.25, 1e-15));
  CHECK_THAT(env.probs()[1], WithinAbs(0.5, 1e-15));
  CHECK_THAT(env.probs()[2], WithinAbs(0.25, 1e-15));

  const DiscreteDist on_breaks({0.0, 0.5, 1.0}, {0.2, 0.3, 0.5});
  const auto same = mix_envelope(on_breaks, half);
  REQUIRE(same.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK_THAT(same.probs()[i], WithinAbs(on_breaks.probs()[i], 1e-15));

  std::mt19937_64 rng(47);
  const PartitionSpec part({0.0, 0.2, 0.45, 0.8, 1.0});
  for (int rep = 0; rep < 100; ++rep) {
    const auto y = random_law(rng, 1 + static_cast<int>(rng() % 6));
    const auto e = mix_envelope(y, part);
    CHECK_THAT(e.mean(), WithinAbs(y.mean(), 1e-14));
    CHECK(check_convex_order(y, e).holds);
  }
}

TEST_CASE("conditional means weights and bound") {
  const PartitionSpec part({0.0, 0.25, 0.75, 1.0});
  const ConditionalMeansSpec spec{part, {0.2, 0.5, 0.8}, 0.5};
  const auto env = conditional_means_envelope(spec);
  const double expect[] = {0.1, 0.4, 0.4, 0.1};
  REQUIRE(env.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK_THAT(env.probs()[k], WithinAbs(expect[k], 1e-15));

  const std::vector<ConditionalMeansSpec> specs(10, spec);
  const auto r = conditional_means_bound(specs, 8);
  REQUIRE(r.witness.weights.size() == 4);
  double grid = INFINITY;
  for (int k = 1; k <= 400000; ++k) {
    const double h = 20.0 * k / 400000;
    const double mgf = 0.1 + 0.4 * std::exp(0.25 * h) + 0.4 * std::exp(0.75 * h) + 0.1 * std::exp(h);
    grid = std::min(grid, std::exp(-8 * h + 10 * std::log(mgf)));
  }
  CHECK_THAT(r.value, WithinRel(grid, 1e-8));
}

TEST_CASE("conditional means with mass on the extreme points reduces to Hoeffding") {
  const PartitionSpec part({0.0, 0.3, 0.6, 1.0});
  const std::vector<ConditionalMeansSpec> specs(12, ConditionalMeansSpec{part, {0.0, 0.4, 1.0}, 0.35});
  const auto r = conditional_means_bound(specs, 7);
  CHECK_THAT(r.witness.weights[1], WithinAbs(0.0, 1e-15));
  CHECK_THAT(r.witness.weights[2], WithinAbs(0.0, 1e-15));
  CHECK_THAT(r.value, WithinRel(hoeffding_bound({12, 0.35, 7}).value, 1e-9));
}

TEST_CASE("conditional means validation") {
  const PartitionSpec part({0.0, 0.5, 1.0});
  CHECK_THROWS_AS(validate(ConditionalMeansSpec{part, {0.5, 0.8}, 0.6}), DomainError);
  CHECK_THROWS_AS(validate(ConditionalMeansSpec{part, {0.2, 0.8}, 0.9}), DomainError);
  CHECK_THROWS_AS(validate(ConditionalMeansSpec{part, {0.2}, 0.5}), DomainError);
  const std::vector<ConditionalMeansSpec> degenerate(4, ConditionalMeansSpec{PartitionSpec({0.0, 0.6, 1.0}), {0.55, 0.55}, 0.55});
  CHECK_THROWS_AS(conditional_means_bound(degenerate, 3), DomainError);
}

TEST_CASE("conditional means weights sum to one") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const PartitionSpec part({0.0, 0.3, 0.7, 1.0});
  for (int rep = 0; rep < 100; ++rep) {
    const double mu1 = 0.3 * u(rng);
    const double mu3 = 0.7 + 0.3 * u(rng);
    const double p = mu1 + (mu3 - mu1) * u(rng);
    const auto env = conditional_means_envelope({part, {mu1, 0.5, mu3}, p});
    double total = 0.0;
    for (double w : env.probs()) total += w;
    CHECK_THAT(total, WithinAbs(1.0, 1e-14));
    CHECK_THAT(env.mean(), WithinAbs(p, 1e-14));
  }
}

TEST_CASE("conditional probabilities LP") {
  const PartitionSpec part({0.0, 0.4, 1.0});
  const ConditionalProbsSpec spec{part, {0.7, 0.3}, 0.3};
  const auto r = conditional_probs_bound(spec, 10, 6);
  CHECK(r.value <= hoeffding_bound({10, 0.3, 6}).value + 1e-12);
  REQUIRE(r.witness.envelope);
  CHECK_THAT(r.witness.envelope->mean(), WithinAbs(0.3, 1e-14));

  // q = (1-p, p) on a two-cell partition: the LP can put all mass on {0, 1}.
  const ConditionalProbsSpec bern{part, {0.6, 0.4}, 0.4};
  CHECK_THAT(conditional_probs_bound(bern, 10, 7).value, WithinRel(hoeffding_bound({10, 0.4, 7}).value, 1e-9));

  CHECK_THROWS_AS(validate(ConditionalProbsSpec{part, {0.9, 0.1}, 0.6}), DomainError);
  CHECK_THROWS_AS(validate(ConditionalProbsSpec{part, {0.5, 0.4}, 0.3}), DomainError);
}

TEST_CASE("conditional probabilities LP optimum is a vertex and beats every feasible point") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const PartitionSpec part({0.0, 0.2, 0.5, 0.9, 1.0});
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> q(4);
    double total = 0.0;
    for (auto& x : q) total += (x = u(rng) + 0.05);
    for (auto& x : q) x /= total;
    double lo = 0.0, hi = 0.0;
    for (int j = 0; j < 4; ++j) {
      lo += q[j] * part.lower(j);
      hi += q[j] * part.upper(j);
    }
    const ConditionalProbsSpec spec{part, q, lo + (hi - lo) * (0.05 + 0.9 * u(rng))};
    const double h = 0.5 + 3 * u(rng);
    const auto lp = solve_conditional_probs_lp(spec, h);
    int interior = 0;
    for (int j = 0; j < 4; ++j) {
      if (lp.mu[j] > part.lower(j) + 1e-12 && lp.mu[j] < part.upper(j) - 1e-12) ++interior;
    }
    CHECK(interior <= 1);
    auto objective = [&](const std::vector<double>& mu) {
      double s = 0.0;
      for (int j = 0; j < 4; ++j) {
        const double a = part.lower(j), b = part.upper(j);
        const double w = (b - mu[j]) / (b - a);
        s += q[j] * (w * std::exp(h * a) + (1 - w) * std::exp(h * b));
      }
      return s;
    };
    const double best = objective(lp.mu);
    for (int k = 0; k < 200; ++k) {
      // Random feasible point via the same box-shrinking used by the sampler.
      const auto member = sample_class_member(spec, static_cast<std::uint64_t>(rep * 1000 + k));
      std::vector<double> mu(4, 0.0), mass(4, 0.0);
      for (std::size_t i = 0; i < member.size(); ++i) {
        const int c = part.cell_of(member.support()[i]);
        mu[c] += member.probs()[i] * member.support()[i];
        mass[c] += member.probs()[i];
      }
      for (int j = 0; j < 4; ++j) mu[j] = mass[j] > 0 ? mu[j] / mass[j] : part.lower(j);
      CHECK(objective(mu) <= best * (1 + 1e-12));
    }
  }
}

TEST_CASE("xi distribution cases") {
  auto xi = xi_distribution({0.5, 0.0625});
  REQUIRE(xi.size() == 3);
  CHECK_THAT(xi.probs()[0], WithinAbs(0.25, 1e-15));
  CHECK_THAT(xi.probs()[1], WithinAbs(0.5, 1e-15));
  CHECK_THAT(xi.probs()[2], WithinAbs(0.25, 1e-15));

  xi = xi_distribution({0.9, 0.04});
  CHECK_THAT(xi.probs()[0], WithinAbs(0.08 / 0.9, 1e-14));
  CHECK_THAT(xi.probs()[1], WithinAbs(0.1 / 0.9, 1e-14));
  CHECK_THAT(xi.probs()[2], WithinAbs(0.8, 1e-14));
  CHECK_THAT(xi.mean(), WithinAbs(0.9, 1e-15));

  xi = xi_distribution({0.1, 0.04});
  CHECK_THAT(xi.mean(), WithinAbs(0.1, 1e-15));
  CHECK_THAT(xi.probs()[0], WithinAbs(0.8, 1e-14));

  for (double p : {0.1, 0.3, 0.5, 0.77}) {
    const auto full = xi_distribution({p, p * (1 - p)});
    CHECK(full.probs()[1] >= 0.0);
    CHECK_THAT(full.probs()[1], WithinAbs(0.0, 1e-12));
    CHECK_THAT(full.probs()[2], WithinAbs(p, 1e-12));
  }
  // At sigma = 1 - p the first two case formulas agree.
  const double p = 0.7;
  const double s = 0.3;
  const auto at_tie = xi_distribution({p, s * s});
  const auto just_above = xi_distribution({p, (s + 1e-9) * (s + 1e-9)});
  for (int k = 0; k < 3; ++k) CHECK_THAT(at_tie.probs()[k], WithinAbs(just_above.probs()[k], 1e-7));
  CHECK_THROWS_AS(xi_distribution({0.5, 0.3}), DomainError);
  CHECK_THROWS_AS(xi_distribution({0.5, 0.0}), DomainError);
}

TEST_CASE("xi sum bound") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 30; ++rep) {
    const auto inst = random_instance(rng, 25, false);
    const std::vector<VarianceClassSpec> vs(inst.n, VarianceClassSpec{inst.p, inst.p * (1 - inst.p)});
    CHECK_THAT(xi_sum_bound(vs, inst.t).value, WithinRel(bentkus_linear_bound(inst).value, 1e-12));
  }
  const std::vector<VarianceClassSpec> vs(20, VarianceClassSpec{0.5, 0.2});
  CHECK(xi_sum_bound(vs, 12).value < bennett_bound(20, {0.5, 0.2}, 12).value);

  const std::vector<VarianceClassSpec> one(1, VarianceClassSpec{0.5, 0.0625});
  const auto r = xi_sum_bound(one, 0.75);
  CHECK_THAT(r.value, WithinAbs(0.5, 1e-15));
  CHECK(*r.witness.eps == 0.5);
}

TEST_CASE("xi sum at p = 1/2 agrees with the half-integer candidate grid") {
  for (int n = 2; n <= 12; ++n) {
    const std::vector<VarianceClassSpec> vs(n, VarianceClassSpec{0.5, 0.1});
    std::vector<DiscreteDist> xis(n, xi_distribution(vs.front()));
    const auto sum = convolve(xis);
    for (double t = 0.5 * n + 0.5; t < n; t += 0.5) {
      double best = INFINITY;
      for (double k = 0.0; k < t; k += 0.5) best = std::min(best, sum.expected_positive_part(k) / (t - k));
      CHECK_THAT(xi_sum_bound(vs, t).value, WithinRel(best, 1e-13));
    }
  }
}

TEST_CASE("xi is sandwiched in convex order") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    const double p = 0.05 + 0.9 * u(rng);
    const double s2 = p * (1 - p) * (0.02 + 0.98 * u(rng));
    const VarianceClassSpec vc{p, s2};
    const auto xi = xi_distribution(vc);
    CHECK(check_convex_order(xi, DiscreteDist::bernoulli(p)).holds);
    for (int k = 0; k < 10; ++k) {
      const auto x = sample_class_member(vc, static_cast<std::uint64_t>(rep * 100 + k));
      CHECK(check_convex_order(x, xi).holds);
    }
  }
}

TEST_CASE("mixture bounds are sound against sampled members") {
  const PartitionSpec part({0.0, 0.3, 0.7, 1.0});
  const std::vector<ClassSpec> cm(4, ConditionalMeansSpec{part, {0.1, 0.5, 0.85}, 0.4});
  std::vector<ConditionalMeansSpec> cms(4, std::get<ConditionalMeansSpec>(cm.front()));
  for (double t : {2.0, 2.5, 3.0, 3.5}) {
    const double b = conditional_means_bound(cms, t).value;
    CHECK(validate_bound_serial(cm, t, b, 300, 71).passed());
  }
  const ConditionalProbsSpec cp{part, {0.5, 0.3, 0.2}, 0.35};
  const std::vector<ClassSpec> cps(4, cp);
  for (double t : {2.0, 3.0, 3.9}) {
    const double b = conditional_probs_bound(cp, 4, t).value;
    CHECK(validate_bound_serial(cps, t, b, 300, 73).passed());
  }
  const std::vector<ClassSpec> one(1, cp);
  CHECK(validate_bound_serial(one, 0.6, conditional_probs_bound(cp, 1, 0.6).value, 500, 79).passed());
}
