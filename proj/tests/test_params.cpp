#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "pass/params.hpp"

using namespace pass;

TEST_CASE("dbm conversion") {
  CHECK(dbm_to_watts(-90.0) == Catch::Approx(1e-12).epsilon(1e-12));
  CHECK(dbm_to_watts(0.0) == Catch::Approx(1e-3).epsilon(1e-12));
  CHECK(dbm_to_watts(10.0) == Catch::Approx(1e-2).epsilon(1e-12));
}

TEST_CASE("dbm round trip") {
  for (double p = -120.0; p <= 60.0; p += 0.37) {
    CHECK(watts_to_dbm(dbm_to_watts(p)) == Catch::Approx(p).margin(1e-12));
  }
}

TEST_CASE("derived constants at 28 GHz") {
  ScenarioConfig cfg;
  CHECK(cfg.lambda() == Catch::Approx(0.0107).margin(1e-4));  // ~10.7 mm
  CHECK(cfg.lambda_g() == Catch::Approx(cfg.lambda() / 1.4).epsilon(1e-14));
  CHECK(cfg.lambda_g() == Catch::Approx(7.648e-3).margin(5e-6));
  CHECK(cfg.eta() == Catch::Approx(7.26e-7).margin(1e-9));
  CHECK(cfg.lambda_g() < cfg.lambda());
}

TEST_CASE("defaults mirror the evaluation setup") {
  ScenarioConfig cfg;
  SemanticConfig sem;
  CHECK(cfg.sigma2 == Catch::Approx(dbm_to_watts(-90.0)));
  CHECK(cfg.fc == 28e9);
  CHECK(cfg.d == 3.0);
  CHECK(cfg.eta_eff == 1.4);
  CHECK(cfg.spacing() == Catch::Approx(cfg.lambda() / 2));
  CHECK(cfg.fine_step() == Catch::Approx(cfg.lambda() / 10));
  CHECK(cfg.R_B_min == 0.5);
  CHECK(sem.K == 5);
  CHECK(sem.A1 == 0.37);
  CHECK(sem.A2 == 0.98);
  CHECK(sem.C1 == 0.25);
  CHECK(sem.C2 == -0.7895);
  CHECK(cfg.delta_S == 0.02);
  CHECK(cfg.delta_B == 0.02);
  CHECK_NOTHROW(cfg.validate());
  CHECK_NOTHROW(sem.validate());
}

TEST_CASE("validation rejects bad values") {
  ScenarioConfig cfg;
  cfg.eta_eff = 0.9;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = ScenarioConfig{};
  cfg.delta_min = cfg.lambda() / 4;  // below lambda/2
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = ScenarioConfig{};
  cfg.mm_grid_step = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  SemanticConfig sem;
  sem.A1 = 0.99;
  CHECK_THROWS_AS(sem.validate(), std::invalid_argument);
}

TEST_CASE("config file parsing") {
  std::istringstream in(
      "# comment\n"
      "[scenario]\n"
      "P_max_dbm = 15\n"
      "D = 40\n"
      "N = 7\n"
      "[semantic]\n"
      "K = 3\n");
  const Config cfg = parse_config(in);
  CHECK(cfg.scenario.P_max == Catch::Approx(dbm_to_watts(15.0)));
  CHECK(cfg.scenario.D == 40.0);
  CHECK(cfg.scenario.N == 7);
  CHECK(cfg.semantic.K == 3);
  CHECK(cfg.semantic.A1 == 0.37);  // untouched default

  std::istringstream bad("[scenario]\nnot_a_key = 3\n");
  CHECK_THROWS_WITH(parse_config(bad), Catch::Matchers::ContainsSubstring("not_a_key"));
}
