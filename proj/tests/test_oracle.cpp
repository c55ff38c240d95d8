#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pass/oracle.hpp"

using namespace pass;

namespace {
const ScenarioConfig base;
const SemanticConfig sem;
}  // namespace

TEST_CASE("brute alpha agrees with the closed form") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> logg(-10, -6);
  const double tau = qos_threshold(base.R_B_min);
  for (int i = 0; i < 30; ++i) {
    const double g2_S = std::pow(10.0, logg(rng));
    const double g2_B = std::pow(10.0, logg(rng));
    const double closed = alpha_star(g2_S, g2_B, tau, base.P_max, base.sigma2);
    const double brute = brute_alpha(g2_S, g2_B, base, sem);
    if (closed == 0.0)
      CHECK(brute == 0.0);
    else
      CHECK(brute == Catch::Approx(closed).margin(1.1e-4));
  }
}

TEST_CASE("brute alpha: zero QoS pushes to the clamp") {
  ScenarioConfig cfg = base;
  cfg.R_B_min = 0.0;
  CHECK(brute_alpha(1e-8, 1e-8, cfg, sem) == Catch::Approx(0.5));
}

TEST_CASE("brute alpha: infeasible gains give the sentinel") {
  CHECK(brute_alpha(1e-15, 1e-15, base, sem) == 0.0);
}

TEST_CASE("brute beta basics") {
  SECTION("singleton") {
    QuadraticForm Q;
    Q.k = 1;
    Q.q = {1.0};
    const BruteBetaResult r = brute_beta(Q, Q, 0.0);
    REQUIRE(r.feasible);
    CHECK(r.point.beta == std::vector<double>{1.0});
  }
  SECTION("diagonal objective picks the max-entry vertex") {
    QuadraticForm Q;
    Q.k = 3;
    Q.q = {1, 0, 0, 0, 7, 0, 0, 0, 2};
    const BruteBetaResult r = brute_beta(Q, Q, 0.0);
    REQUIRE(r.feasible);
    CHECK(r.point.beta[1] == Catch::Approx(1.0));
    CHECK(r.q_S == Catch::Approx(7.0));
  }
  SECTION("infeasible threshold") {
    QuadraticForm Q;
    Q.k = 2;
    Q.q = {1, 0, 0, 1};
    const BruteBetaResult r = brute_beta(Q, Q, 10.0);
    CHECK_FALSE(r.feasible);
  }
}

TEST_CASE("brute lead position sanity") {
  SECTION("infeasible everywhere matches the optimizer outage") {
    ScenarioConfig cfg = base;
    cfg.P_max = dbm_to_watts(-60.0);
    const BruteLeadResult r = brute_lead_position({-5, 5, 0}, {5, -5, 0}, cfg, sem);
    CHECK_FALSE(r.feasible);
    const AoState st = ao_solve({-5, 5, 0}, {5, -5, 0}, cfg, sem);
    CHECK_FALSE(st.feasible);
  }
  SECTION("single antenna: peak near the semantic user under high power") {
    ScenarioConfig cfg = base;
    cfg.N = 1;
    cfg.P_max = dbm_to_watts(30.0);
    const Point3 s{-4, 0.5, 0}, b{4, 0.5, 0};
    const BruteLeadResult r = brute_lead_position(s, b, cfg, sem);
    REQUIRE(r.feasible);
    CHECK(std::abs(r.lead - s.x) < 0.01);
  }
}
