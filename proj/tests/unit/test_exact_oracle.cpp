#include <doctest.h>

#include "../support/brute_force.hpp"
#include "erldp/errors.hpp"
#include "erldp/exact_oracle.hpp"

using namespace erldp;

TEST_CASE("small connectivity values") {
  CHECK(connected_probability_exact(1, Rational(1, 3)) == 1);
  CHECK(connected_probability_exact(2, Rational(1, 3)) == Rational(1, 3));
  // p^3 + 3 p^2 (1-p) at p = 1/2
  CHECK(connected_probability_exact(3, Rational(1, 2)) == Rational(1, 2));
  CHECK(connected_probability_exact(5, Rational(0)) == 0);
  CHECK(connected_probability_exact(5, Rational(1)) == 1);
}

TEST_CASE("connectivity matches graph enumeration") {
  for (int K = 1; K <= 5; ++K) {
    for (const Rational p : {Rational(1, 2), Rational(1, 3), Rational(2, 7)}) {
      CHECK(connected_probability_exact(K, p) == brute::connected_probability(K, p));
    }
  }
}

TEST_CASE("connected counts match enumeration") {
  ConnectedCountTable table;
  for (int K = 1; K <= 6; ++K) {
    const auto brute = brute::connected_counts(K);
    const auto& row = table.row(K);
    REQUIRE(row.size() == brute.size());
    for (std::size_t m = 0; m < brute.size(); ++m) CHECK(row[m] == BigInt(std::to_string(brute[m])));
  }
}

TEST_CASE("Cayley") {
  ConnectedCountTable table;
  for (int K = 2; K <= 9; ++K) {
    BigInt expect = 1;
    for (int i = 0; i < K - 2; ++i) expect *= K;
    CHECK(table.count(K, K - 1) == expect);
    if (K > 2) CHECK(table.count(K, K - 2) == 0);
  }
}

TEST_CASE("caps and bad input") {
  CHECK_THROWS_AS(connected_probability_exact(65, Rational(1, 2)), TooLarge);
  CHECK_THROWS_AS(connected_probability_exact(0, Rational(1, 2)), ParameterOutOfRange);
  CHECK_THROWS_AS(connected_probability_exact(3, Rational(3, 2)), ParameterOutOfRange);
  CHECK_THROWS_AS(connected_count(3, 4), ParameterOutOfRange);
  CHECK_THROWS_AS(cluster_law_exact(41, Rational(1, 2)), TooLarge);
}

TEST_CASE("partition enumeration") {
  const std::size_t p_n[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int n = 1; n <= 10; ++n) {
    const auto parts = partition_enumerate(n);
    CHECK(parts.size() == p_n[n]);
    for (const auto& l : parts) CHECK(l.valid());
  }
}

TEST_CASE("law of n = 3 at p = 1/2") {
  const ExactLaw law = cluster_law_exact(3, Rational(1, 2));
  CHECK(law.entries.size() == 3);
  CHECK(law.at(ClusterCounts::from_pairs(3, {{3, 1}})) == Rational(1, 2));
  CHECK(law.at(ClusterCounts::from_pairs(3, {{1, 1}, {2, 1}})) == Rational(3, 8));
  CHECK(law.at(ClusterCounts::from_pairs(3, {{1, 3}})) == Rational(1, 8));
}

TEST_CASE("law matches graph enumeration") {
  for (int n = 1; n <= 6; ++n) {
    const Rational p(2, 5);
    const ExactLaw law = cluster_law_exact(n, p);
    const auto brute = brute::cluster_law(n, p);
    CHECK(law.entries.size() == brute.size());
    for (const auto& [sizes, prob] : brute) {
      ClusterCounts l(n);
      for (int s : sizes) l.add(s);
      CHECK(law.at(l) == prob);
    }
  }
}

TEST_CASE("law sums to one") {
  for (int n = 1; n <= 8; ++n) CHECK(cluster_law_exact(n, Rational(1, 3)).total() == 1);
}

TEST_CASE("no large component") {
  const Rational p(1, 3);
  // m > n: certain; m = 1: impossible for n >= 1
  CHECK(prob_all_components_below(6, 7, p) == 1);
  CHECK(prob_all_components_below(6, 1, p) == 0);
  // against the law
  for (int n = 2; n <= 7; ++n) {
    const ExactLaw law = cluster_law_exact(n, p);
    for (int m = 1; m <= n + 1; ++m) {
      Rational s(0);
      for (const auto& e : law.entries) {
        if (e.counts.largest() < m) s += e.probability;
      }
      CHECK(prob_all_components_below(n, m, p) == s);
    }
  }
}

TEST_CASE("high-precision recurrence agrees with the rational one") {
  const Rational p(1, 20);
  HighPrecisionConnectivity hp(p, 40, 256);
  for (int K = 1; K <= 40; ++K) {
    const double exact = static_cast<double>(log_hp(connected_probability_exact(K, p)));
    CHECK(hp.log_probability(K) == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("high-precision recurrence keeps bits for tiny probabilities") {
  // every P(K) here is far below 2^-256
  const double p = 1e-4;
  const int K = 120;
  const double hp = log_connected_probability_hp(K, p, 128);
  const double tree = log_spanning_tree_term(K, p);
  CHECK(hp >= tree);
  CHECK(hp - tree < 1.0);
  CHECK(log_prob_all_components_below_hp(30, 31, 0.1) == doctest::Approx(0.0).epsilon(1e-12));
}
