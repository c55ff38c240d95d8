#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pass/channel.hpp"
#include "pass/multi_opt.hpp"
#include "pass/noma.hpp"

using namespace pass;

TEST_CASE("bit rate closed form") {
  CHECK(bit_rate(1e-9, 0.0, 1e-2, 1e-12) ==
        Catch::Approx(std::log2(1 + 1e-9 * 1e-2 / 1e-12)));
  CHECK(bit_rate(0.0, 0.3, 1e-2, 1e-12) == 0.0);
  // P*g2/sigma2 = 1, alpha = 0.25 -> log2(1 + 0.75/1.25)
  CHECK(bit_rate(1e-10, 0.25, 1e-2, 1e-12) == Catch::Approx(std::log2(1.6)).epsilon(1e-12));
}

TEST_CASE("sic rate mirrors bit rate algebra") {
  CHECK(sic_rate(3e-9, 0.2, 1e-2, 1e-12) == bit_rate(3e-9, 0.2, 1e-2, 1e-12));
  // alpha = 0.5, P*g2 = 2*sigma2 -> log2(1 + 1/2)
  CHECK(sic_rate(2e-12, 0.5, 1.0, 1e-12) == Catch::Approx(std::log2(1.5)).epsilon(1e-12));
  CHECK(sic_rate(0.0, 0.4, 1e-2, 1e-12) == 0.0);
}

TEST_CASE("gamma_s") {
  CHECK(gamma_s(1e-9, 0.0, 1e-2, 1e-12) == 0.0);
  CHECK(gamma_s(2e-12, 0.5, 1.0, 1e-12) == Catch::Approx(1.0));
  CHECK(gamma_s(1e-6, 0.3, 1e-2, 1e-12) == Catch::Approx(3000.0));
}

TEST_CASE("alpha bounds closed form") {
  const double sigma2 = 1e-12;
  // P*g2_B = tau*sigma2 exactly -> bound 0
  {
    const double tau = 1.0;
    const double g2 = tau * sigma2 / 1e-2;
    const AlphaBounds b = alpha_bounds(g2, g2, tau, 1e-2, sigma2);
    CHECK(b.qos == Catch::Approx(0.0).margin(1e-15));
  }
  // P*g2 -> inf: bound -> 1/(1+tau)
  {
    const double tau = 0.5;
    const AlphaBounds b = alpha_bounds(1e3, 1e3, tau, 1e6, sigma2);
    CHECK(b.qos == Catch::Approx(1.0 / 1.5).epsilon(1e-9));
  }
  // tau = 1, P*g2_B = 4*sigma2 -> (4-1)/(4*2) = 0.375
  {
    const double g2 = 4 * sigma2 / 1e-2;
    const AlphaBounds b = alpha_bounds(g2, g2, 1.0, 1e-2, sigma2);
    CHECK(b.qos == Catch::Approx(0.375));
  }
  // zero channel forces -inf
  {
    const AlphaBounds b = alpha_bounds(0.0, 1e-9, 1.0, 1e-2, sigma2);
    CHECK(b.sic == -std::numeric_limits<double>::infinity());
  }
}

TEST_CASE("alpha star clamps and sentinels") {
  CHECK(alpha_star(AlphaBounds{0.375, 0.6}) == Catch::Approx(0.375));
  CHECK(alpha_star(AlphaBounds{0.7071, 0.7071}) == 0.5);
  CHECK(alpha_star(AlphaBounds{-0.1, 0.3}) == 0.0);
}

TEST_CASE("t threshold") {
  CHECK(t_threshold(0.25, 1.0, 1.0, 1.0) == Catch::Approx(2.0));
  CHECK(t_threshold(0.3, 0.0, 1e-2, 1e-12) == 0.0);
  CHECK_THROWS_AS(t_threshold(0.5, 1.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("QoS bound is equivalent to the rate constraint") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> logg(-10, -6), ur(0, 0.5), uq(0.1, 2.0);
  const double P = 1e-2, sigma2 = 1e-12;
  for (int i = 0; i < 10000; ++i) {
    const double g2 = std::pow(10.0, logg(rng));
    const double rb = uq(rng);
    const double tau = qos_threshold(rb);
    const double bound = alpha_bounds(g2, g2, tau, P, sigma2).qos;
    // rate at the bound equals the QoS exactly
    if (bound > 0 && bound <= 0.5)
      CHECK(bit_rate(g2, bound, P, sigma2) == Catch::Approx(rb).margin(1e-9));
    const double a = ur(rng);
    if (a < bound - 1e-9) CHECK(bit_rate(g2, a, P, sigma2) >= rb - 1e-9);
    if (a > bound + 1e-9) CHECK(bit_rate(g2, a, P, sigma2) < rb + 1e-9);
  }
}

TEST_CASE("rate monotonicity in alpha") {
  const double P = 1e-2, sigma2 = 1e-12, g2 = 1e-8;
  double prev_bit = std::numeric_limits<double>::infinity();
  double prev_gam = -1;
  for (double a = 0.01; a <= 0.5; a += 0.01) {
    const double rb = bit_rate(g2, a, P, sigma2);
    const double gs = gamma_s(g2, a, P, sigma2);
    CHECK(rb <= prev_bit);
    CHECK(gs >= prev_gam);
    prev_bit = rb;
    prev_gam = gs;
  }
}

TEST_CASE("T_B threshold is equivalent to the bit rate constraint") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1, 1), ua(0.05, 0.45), uq(0.25, 1.5);
  const double P = 1e-2, sigma2 = 1e-12;
  for (int i = 0; i < 10000; ++i) {
    // random complex gains and a random simplex point
    std::vector<cdouble> h(3);
    for (auto& x : h) x = cdouble(u(rng), u(rng)) * 1e-4;
    std::vector<double> beta{std::abs(u(rng)), std::abs(u(rng)), std::abs(u(rng))};
    double s = beta[0] + beta[1] + beta[2];
    for (auto& b : beta) b /= s;
    const SimplexPoint z = SimplexPoint::from_beta(beta);
    const double alpha = ua(rng);
    const double rb = uq(rng);
    const double tau = qos_threshold(rb);
    if ((1 - alpha) - tau * alpha <= 0) continue;
    const double T_B = t_threshold(alpha, tau, P, sigma2);
    cdouble heff = 0;
    for (int k = 0; k < 3; ++k) heff += z.z[k] * h[k];
    const double q = build_q(h).quad(z.z);
    CHECK(q == Catch::Approx(std::norm(heff)).margin(1e-20));
    const double rate = bit_rate(std::norm(heff), alpha, P, sigma2);
    if (q > T_B * (1 + 1e-9)) CHECK(rate >= rb - 1e-9);
    if (q < T_B * (1 - 1e-9)) CHECK(rate < rb + 1e-9);
  }
}
