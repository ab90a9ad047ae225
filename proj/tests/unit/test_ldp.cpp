#include <doctest.h>

#include <cmath>
#include <random>

#include "erldp/errors.hpp"
#include "erldp/exact_oracle.hpp"
#include "erldp/ldp_core.hpp"

using namespace erldp;

TEST_CASE("rate function spot values") {
  CHECK(rate_function(MesoMeasure{}, 1.0) == 1.0 / 6.0);
  CHECK(rate_function(MesoMeasure::from_atoms({1.0}), 1.0) == 0.125);
  CHECK(rate_function(MesoMeasure{}, -1.0) == 0.0);
  CHECK(std::isinf(rate_function(MesoMeasure::infinite(), 0.5)));
  // above theta the cubic excess switches on
  const double r = rate_function(MesoMeasure::from_atoms({2.0}), 1.0);
  CHECK(r == doctest::Approx((-8.0 + 4.0 + 4.0) / 24.0));
}

TEST_CASE("measure construction") {
  const auto mu = MesoMeasure::from_atoms({0.5, 2.0, 0.5});
  CHECK(mu.size() == 3);
  CHECK(mu.atoms().size() == 2);
  CHECK(mu.moment(1) == doctest::Approx(3.0));
  CHECK(mu.moment(1, 1.0, 5.0) == doctest::Approx(2.0));
  const auto [neg, pos] = mu.canonical();
  CHECK(neg == std::vector<double>{0.5, 0.5});
  CHECK(pos == std::vector<double>{2.0});
  CHECK_THROWS_AS(MesoMeasure::from_atoms({0.0}), ParameterOutOfRange);
  CHECK_THROWS_AS(MesoMeasure::from_atoms({-1.0}), ParameterOutOfRange);
}

TEST_CASE("meso measure of cluster counts") {
  const Regime r(1000, 10.0, 0.0);
  ClusterCounts l(1000);
  l.set(1, 800);
  l.set(100, 2);
  REQUIRE(l.valid());
  const auto mu = meso_measure(l, r, 0.1);
  CHECK(mu.size() == 2);
  CHECK(mu.atoms()[0].first == doctest::Approx(100.0 / r.meso_scale()));
}

TEST_CASE("vague distance basics") {
  const auto a = MesoMeasure::from_atoms({0.5});
  const auto b = MesoMeasure::from_atoms({0.6});
  CHECK(vague_distance(a, a) == 0.0);
  CHECK(vague_distance(a, b) == doctest::Approx(0.05));
  CHECK(vague_distance(MesoMeasure::from_atoms({2.0}), MesoMeasure::from_atoms({3.0})) ==
        doctest::Approx(0.0855482).epsilon(1e-6));
  CHECK(vague_distance(MesoMeasure{}, MesoMeasure{}) == 0.0);
  CHECK(vague_distance(a, MesoMeasure{}) > 0.0);
}

TEST_CASE("vague distance symmetry and identity on random pairs") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> count(0, 12);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x, y;
    for (int i = count(rng); i > 0; --i) x.push_back(u(rng));
    for (int i = count(rng); i > 0; --i) y.push_back(u(rng));
    const auto mx = MesoMeasure::from_atoms(x), my = MesoMeasure::from_atoms(y);
    const double d = vague_distance(mx, my);
    CHECK(d == vague_distance(my, mx));
    CHECK((d == 0.0) == (mx == my));
  }
}

TEST_CASE("balls and compacts") {
  const auto a = MesoMeasure::from_atoms({0.5, 1.5});
  CHECK(ball_membership(a, a, 1e-9));
  CHECK_FALSE(ball_membership(MesoMeasure::from_atoms({5.0}), a, 1e-3));
  CHECK(compact_membership(a, 2.0));
  CHECK_FALSE(compact_membership(MesoMeasure::from_atoms({3.0}), 2.0));
}

TEST_CASE("meso limit formula restricts to [eps, C]") {
  const auto mu = MesoMeasure::from_atoms({0.05, 1.0, 50.0});
  CHECK(meso_limit_formula(mu, 1.0, 0.1, 10.0) ==
        doctest::Approx(meso_limit_formula(MesoMeasure::from_atoms({1.0}), 1.0, 0.1, 10.0)));
  CHECK(meso_limit_formula(MesoMeasure{}, 1.0, 0.1, 10.0) == 0.0);
  CHECK(meso_limit_formula(MesoMeasure::from_atoms({1.0}), 1.0, 0.1, 10.0) == -0.125);
}

TEST_CASE("rational decomposition regroups exactly") {
  for (int n = 1; n <= 7; ++n) {
    for (const Bands b : {Bands{2, 4}, Bands{3, 5}}) {
      for (const auto& l : partition_enumerate(n)) {
        const auto rep = decompose(l, Rational(1, 3), b);
        CHECK(rep.regroup_exact);
        CHECK(rep.regroup_identity_residual == 0.0);
        CHECK(rep.claim_residual == 0.0);
        CHECK(rep.N + rep.S_alpha == n);
      }
    }
  }
}

TEST_CASE("decomposition matches the exact law") {
  const Rational p(1, 4);
  const ExactLaw law = cluster_law_exact(6, p);
  for (const auto& e : law.entries) {
    const auto rep = decompose(e.counts, p, Bands{2, 3});
    REQUIRE(rep.P_exact);
    CHECK(parse_rational(*rep.P_exact) == e.probability);
  }
}

TEST_CASE("float decomposition agrees with rational mode") {
  const Regime r(30, 3.0, 0.5);
  ClusterCounts l = ClusterCounts::from_pairs(30, {{1, 10}, {2, 3}, {4, 1}, {6, 1}, {4, 1}});
  const auto f = decompose(l, r, DecomposeMode::Float);
  const auto q = decompose(l, r, DecomposeMode::Rational);
  CHECK(f.log_P == doctest::Approx(q.log_P).epsilon(1e-10));
  CHECK(f.log_F_Me == doctest::Approx(q.log_F_Me).epsilon(1e-10));
  CHECK(std::fabs(f.regroup_identity_residual) < 1e-10);
  CHECK_THROWS_AS(decompose(ClusterCounts::from_pairs(50, {{1, 50}}), Regime(50, 3.0, 0.5),
                            DecomposeMode::Rational),
                  TooLarge);
}
