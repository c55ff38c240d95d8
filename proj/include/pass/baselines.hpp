// Comparison schemes and the single per-realization entry point shared by
// every scheme, so all of them go through the same rate algebra.
#pragma once

#include <stdexcept>
#include <string>

#include "pass/multi_opt.hpp"
#include "pass/noma.hpp"
#include "pass/single_opt.hpp"

namespace pass {

enum class Scheme { PassSingle, PassMulti, Cas, FixedPinch, NoFineTune };

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::PassSingle: return "pass-single";
    case Scheme::PassMulti: return "pass-multi";
    case Scheme::Cas: return "cas";
    case Scheme::FixedPinch: return "fixed-pinch";
    case Scheme::NoFineTune: return "no-finetune";
  }
  return "?";
}

inline Scheme scheme_from_name(const std::string& name) {
  if (name == "pass-single") return Scheme::PassSingle;
  if (name == "pass-multi") return Scheme::PassMulti;
  if (name == "cas") return Scheme::Cas;
  if (name == "fixed-pinch") return Scheme::FixedPinch;
  if (name == "no-finetune") return Scheme::NoFineTune;
  throw std::invalid_argument("unknown scheme: " + name);
}

// Fixed conventional array: N antennas centered at the origin with
// half-wavelength spacing at height d. No waveguide, so no guided phase.
inline SingleWgLayout cas_layout(const ScenarioConfig& cfg) {
  SingleWgLayout layout;
  layout.height = cfg.d;
  const double gap = cfg.lambda() / 2.0;
  const double c0 = -(cfg.N - 1) * gap / 2.0;
  for (int n = 0; n < cfg.N; ++n) layout.positions.push_back(c0 + n * gap);
  return layout;
}

// |sum_n h_n|^2 / N for the coherent reading, (sum_n |h_n|^2) / N for the
// incoherent alternative.
inline double cas_power_gain(const SingleWgLayout& layout, const Point3& user,
                             const ScenarioConfig& cfg, bool coherent = true) {
  const double n_ant = static_cast<double>(layout.positions.size());
  if (coherent) {
    cdouble g = 0;
    for (std::size_t n = 0; n < layout.positions.size(); ++n)
      g += free_space_gain(user, layout.antenna(n), cfg.lambda(), cfg.eta());
    return std::norm(g) / n_ant;
  }
  double p = 0;
  for (std::size_t n = 0; n < layout.positions.size(); ++n)
    p += std::norm(free_space_gain(user, layout.antenna(n), cfg.lambda(), cfg.eta()));
  return p / n_ant;
}

// Single pinching antenna frozen at the center of each waveguide; the
// waveguide power split stays optimized.
inline MultiWgLayout fixed_pinch_layout(const ScenarioConfig& cfg,
                                        const std::vector<double>& offsets) {
  return initial_multi_layout(cfg, offsets);
}

struct SchemeResult {
  double semantic_se = 0;
  double bit_rate = 0;
  double alpha_S = 0;
  int iterations = 0;
  bool feasible = false;
};

struct SchemeOptions {
  bool cas_coherent = true;
  std::vector<double> offsets;  // multi-waveguide lateral offsets; empty -> defaults
};

inline SchemeResult solve_realization(Scheme scheme, const Point3& user_S, const Point3& user_B,
                                      const ScenarioConfig& cfg, const SemanticConfig& sem,
                                      const SchemeOptions& opts = {}) {
  SchemeResult out;
  const double tau = qos_threshold(cfg.R_B_min);
  switch (scheme) {
    case Scheme::PassSingle:
    case Scheme::NoFineTune: {
      AoOptions ao;
      ao.fine_tune = (scheme == Scheme::PassSingle);
      const AoState st = ao_solve(user_S, user_B, cfg, sem, ao);
      out.semantic_se = st.semantic_se;
      out.alpha_S = st.alpha_S;
      out.iterations = st.iterations;
      out.feasible = st.feasible;
      if (st.feasible) {
        const double g2_B = normalized_power_gain(st.layout, user_B, cfg);
        out.bit_rate = bit_rate(g2_B, st.alpha_S, cfg.P_max, cfg.sigma2);
      }
      break;
    }
    case Scheme::PassMulti:
    case Scheme::FixedPinch: {
      MultiAoOptions mo;
      mo.optimize_positions = (scheme == Scheme::PassMulti);
      mo.offsets = opts.offsets;
      const MultiAoState st = ao_solve_multi(user_S, user_B, cfg, sem, mo);
      out.semantic_se = st.semantic_se;
      out.alpha_S = st.alpha_S;
      out.iterations = st.iterations;
      out.feasible = st.feasible;
      if (st.feasible) {
        const cdouble hB = effective_gain_multi(st.layout, st.power.z, user_B, cfg.lambda(),
                                                cfg.lambda_g(), cfg.eta());
        out.bit_rate = bit_rate(std::norm(hB), st.alpha_S, cfg.P_max, cfg.sigma2);
      }
      break;
    }
    case Scheme::Cas: {
      const SingleWgLayout layout = cas_layout(cfg);
      const double g2_S = cas_power_gain(layout, user_S, cfg, opts.cas_coherent);
      const double g2_B = cas_power_gain(layout, user_B, cfg, opts.cas_coherent);
      out.alpha_S = alpha_star(g2_S, g2_B, tau, cfg.P_max, cfg.sigma2);
      out.feasible = out.alpha_S > 0;
      out.iterations = 1;
      if (out.feasible) {
        out.semantic_se =
            semantic_rate(gamma_s(g2_S, out.alpha_S, cfg.P_max, cfg.sigma2), sem);
        out.bit_rate = bit_rate(g2_B, out.alpha_S, cfg.P_max, cfg.sigma2);
      }
      break;
    }
  }
  return out;
}

}  // namespace pass
