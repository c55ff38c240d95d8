#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pass/baselines.hpp"

using namespace pass;

namespace {
const ScenarioConfig base;
const SemanticConfig sem;
}  // namespace

TEST_CASE("cas layout geometry") {
  const SingleWgLayout l = cas_layout(base);
  REQUIRE(l.positions.size() == 3);
  const double gap = base.lambda() / 2;
  CHECK(l.positions[0] == Catch::Approx(-gap));
  CHECK(l.positions[1] == Catch::Approx(0.0).margin(1e-15));
  CHECK(l.positions[2] == Catch::Approx(gap));
  CHECK(l.height == base.d);
  // same geometry as the PASS initial layout at default spacing
  const SingleWgLayout init = initial_layout(base);
  for (int n = 0; n < 3; ++n)
    CHECK(l.positions[n] == Catch::Approx(init.positions[n]).margin(1e-15));
}

TEST_CASE("cas power gain: coherent vs incoherent") {
  const SingleWgLayout l = cas_layout(base);
  const Point3 user{4, 3, 0};
  const double coh = cas_power_gain(l, user, base, true);
  const double inc = cas_power_gain(l, user, base, false);
  CHECK(coh >= 0);
  CHECK(inc > 0);
  // coherent sum is bounded by N times the incoherent average
  CHECK(coh <= 3.0 * inc * (1 + 1e-12));
}

TEST_CASE("fixed pinch layout centers every antenna") {
  const auto offsets = default_offsets(base.K_wg, base.D);
  const MultiWgLayout l = fixed_pinch_layout(base, offsets);
  for (double x : l.positions) CHECK(x == 0.0);
  CHECK(l.offsets == offsets);
}

TEST_CASE("no-finetune with N = 1 matches pass-single") {
  ScenarioConfig cfg = base;
  cfg.N = 1;
  const Point3 s{2, 1, 0}, b{-3, 4, 0};
  const SchemeResult a = solve_realization(Scheme::PassSingle, s, b, cfg, sem);
  const SchemeResult c = solve_realization(Scheme::NoFineTune, s, b, cfg, sem);
  CHECK(a.semantic_se == Catch::Approx(c.semantic_se).margin(1e-15));
  CHECK(a.feasible == c.feasible);
}

TEST_CASE("scheme names round trip") {
  for (Scheme s : {Scheme::PassSingle, Scheme::PassMulti, Scheme::Cas, Scheme::FixedPinch,
                   Scheme::NoFineTune})
    CHECK(scheme_from_name(scheme_name(s)) == s);
  CHECK_THROWS_AS(scheme_from_name("bogus"), std::invalid_argument);
}

TEST_CASE("all schemes produce consistent results on random draws") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-base.D / 2, base.D / 2);
  for (int i = 0; i < 20; ++i) {
    const Point3 s{u(rng), u(rng), 0}, b{u(rng), u(rng), 0};
    for (Scheme scheme : {Scheme::PassSingle, Scheme::PassMulti, Scheme::Cas,
                          Scheme::FixedPinch, Scheme::NoFineTune}) {
      const SchemeResult r = solve_realization(scheme, s, b, base, sem);
      if (r.feasible) {
        CHECK(r.alpha_S > 0);
        CHECK(r.alpha_S <= 0.5);
        CHECK(r.semantic_se > 0);
        // QoS actually met at the returned operating point
        CHECK(r.bit_rate >= base.R_B_min - 1e-9);
      } else {
        CHECK(r.semantic_se == 0.0);
      }
    }
  }
}

TEST_CASE("optimized placement dominates fixed pinching per draw batch") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(-base.D / 2, base.D / 2);
  double opt = 0, fixed = 0;
  for (int i = 0; i < 25; ++i) {
    const Point3 s{u(rng), u(rng), 0}, b{u(rng), u(rng), 0};
    opt += solve_realization(Scheme::PassMulti, s, b, base, sem).semantic_se;
    fixed += solve_realization(Scheme::FixedPinch, s, b, base, sem).semantic_se;
  }
  CHECK(opt >= fixed * (1 - 1e-12));
}
