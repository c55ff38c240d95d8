// Semantic similarity (generalized logistic approximation) and the
// semantic rate in suts/s/Hz.
#pragma once

#include <cmath>
#include <stdexcept>

#include "pass/params.hpp"

namespace pass {

// epsilon_K(gamma) = A1 + (A2 - A1) / (1 + exp(-(C1*gamma + C2))).
// gamma is a linear SNR. Evaluated branch-wise so large gamma saturates
// to A2 instead of overflowing.
inline double epsilon_k(double gamma, const SemanticConfig& cfg) {
  if (gamma < 0) throw std::domain_error("epsilon_k: negative SNR");
  const double t = cfg.C1 * gamma + cfg.C2;
  double sig;
  if (t >= 0) {
    sig = 1.0 / (1.0 + std::exp(-t));
  } else {
    const double e = std::exp(t);
    sig = e / (1.0 + e);
  }
  return cfg.A1 + (cfg.A2 - cfg.A1) * sig;
}

// R_S = (I / (K L)) * epsilon_K(gamma_S), unit bandwidth.
inline double semantic_rate(double gamma_s, const SemanticConfig& cfg) {
  return cfg.I_over_L / static_cast<double>(cfg.K) * epsilon_k(gamma_s, cfg);
}

}  // namespace pass
