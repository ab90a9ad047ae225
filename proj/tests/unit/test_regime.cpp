#include <doctest.h>

#include <cmath>

#include "erldp/errors.hpp"
#include "erldp/regime.hpp"

using namespace erldp;

TEST_CASE("edge probability at theta = 0 is 1/n") {
  const Regime r = Regime::from_gamma(1'000'000, 0.4, 0.0);
  CHECK(edge_probability(r) == doctest::Approx(1e-6).epsilon(1e-15));
}

TEST_CASE("edge probability with a positive shift") {
  const Regime r(1'000'000, std::pow(10.0, 2.4), 1.0);
  CHECK(edge_probability(r) == doctest::Approx(1.398107e-6).epsilon(1e-6));
  CHECK(r.omega() == doctest::Approx(1.0 + std::pow(10.0, -0.4)));
}

TEST_CASE("p outside (0,1) is rejected") {
  CHECK_THROWS_AS(Regime(4, 10.0, 5.0), ParameterOutOfRange);
  CHECK_THROWS_AS(Regime(100, 10.0, -100.0), ParameterOutOfRange);
  CHECK_THROWS_AS(Regime(0, 1.0, 0.0), ParameterOutOfRange);
  CHECK_THROWS_AS(Regime(10, 0.0, 0.0), ParameterOutOfRange);
  CHECK_THROWS_AS(Regime(10, 1.0, 0.0, 0.0), ParameterOutOfRange);
  CHECK_THROWS_AS(Regime::from_gamma(10, 0.5, 0.0), ParameterOutOfRange);
}

TEST_CASE("thresholds") {
  const Regime r(1'000'000, 100.0, 0.0, 1.0);
  const auto t = thresholds(r);
  CHECK(t.alpha_n == doctest::Approx(215443.469).epsilon(1e-9));
  CHECK(t.beta_n == static_cast<std::int64_t>(std::ceil(std::pow(10.0, 4.25) * std::pow(10.0, 4.0 / 3.0))));
  // exact doubling in epsilon
  CHECK(thresholds(r.with_epsilon(2.0)).alpha_n == 2.0 * t.alpha_n);
}

TEST_CASE("edge probability increases with theta") {
  double prev = 0.0;
  for (double th = -1.5; th <= 2.0; th += 0.25) {
    const double p = edge_probability(Regime(10'000, 50.0, th));
    CHECK(p > prev);
    CHECK(p > 0.0);
    CHECK(p < 1.0);
    prev = p;
  }
}

TEST_CASE("hypothesis check is advisory") {
  auto h = check_hypothesis(Regime(10'000'000'000LL, 1e4, 0.0));
  CHECK(h.satisfies_lower);
  CHECK(h.satisfies_upper);
  h = check_hypothesis(Regime(10'000'000'000LL, 1e2, 0.0));
  CHECK_FALSE(h.satisfies_lower);
  h = check_hypothesis(Regime(10'000'000'000LL, 1e6, 0.0));
  CHECK_FALSE(h.satisfies_upper);
  CHECK(h.margin_upper == doctest::Approx(10.0));
}

TEST_CASE("asymptotic flag checks the band order") {
  CHECK_NOTHROW(Regime::from_gamma(1'000'000, 0.4, 1.0, 0.1, true));
  CHECK_THROWS_AS(Regime(10, 1.0, 0.0, 1e-6, true), ParameterOutOfRange);
}
