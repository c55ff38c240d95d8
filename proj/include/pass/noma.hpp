// NOMA rate algebra, closed-form user power allocation and feasibility
// thresholds shared by the single- and multi-waveguide optimizers.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pass/params.hpp"

namespace pass {

// Composite power gains |g_S|^2, |g_B|^2 seen by the two users. For the
// single-waveguide path the 1/N per-antenna normalization is already
// folded in by the caller; multi-waveguide gains carry beta through z.
struct EffectiveGain {
  double g2_S = 0;
  double g2_B = 0;
};

struct PowerSplit {
  double alpha_S = 0;
  double alpha_B() const { return 1.0 - alpha_S; }
};

// tau = 2^{R_B_min} - 1.
inline double qos_threshold(double r_b_min) { return std::exp2(r_b_min) - 1.0; }

// Bit user decodes directly, semantic signal is interference.
inline double bit_rate(double g2_B, double alpha_S, double P_max, double sigma2) {
  const double s = P_max * g2_B;
  return std::log2(1.0 + (1.0 - alpha_S) * s / (alpha_S * s + sigma2));
}

// Rate at which the semantic user decodes the bit signal before SIC.
inline double sic_rate(double g2_S, double alpha_S, double P_max, double sigma2) {
  return bit_rate(g2_S, alpha_S, P_max, sigma2);
}

// Interference-free semantic SNR after SIC.
inline double gamma_s(double g2_S, double alpha_S, double P_max, double sigma2) {
  return alpha_S * P_max * g2_S / sigma2;
}

struct AlphaBounds {
  double qos = 0;  // from the bit-user QoS constraint
  double sic = 0;  // from SIC decodability at the semantic user
};

// Closed-form upper bounds on alpha_S. Either may be negative when the
// geometry cannot support the QoS at any split; a zero channel maps to
// -inf so the sentinel path is forced.
inline AlphaBounds alpha_bounds(double g2_S, double g2_B, double tau, double P_max,
                                double sigma2) {
  const double inf = std::numeric_limits<double>::infinity();
  auto bound = [&](double g2) {
    const double s = P_max * g2;
    if (s <= 0) return -inf;
    return (s - tau * sigma2) / (s * (1.0 + tau));
  };
  return {bound(g2_B), bound(g2_S)};
}

// alpha_S* = max{0, min{alpha_qos, alpha_sic, 0.5}}; 0 is the canonical
// infeasibility sentinel (counted as outage by the Monte Carlo engine).
inline double alpha_star(const AlphaBounds& b) {
  return std::max(0.0, std::min({b.qos, b.sic, 0.5}));
}

inline double alpha_star(double g2_S, double g2_B, double tau, double P_max, double sigma2) {
  return alpha_star(alpha_bounds(g2_S, g2_B, tau, P_max, sigma2));
}

// Minimum composite power gain T_B = tau*sigma2 / (P_max*(alpha_B - tau*alpha_S))
// such that q_m(z) >= T_B is equivalent to the corresponding rate constraint.
inline double t_threshold(double alpha_S, double tau, double P_max, double sigma2) {
  const double denom = (1.0 - alpha_S) - tau * alpha_S;
  if (denom <= 0) throw std::domain_error("t_threshold: infeasible power split");
  return tau * sigma2 / (P_max * denom);
}

}  // namespace pass
