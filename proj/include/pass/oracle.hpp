// Brute-force references for certifying the closed forms and optimizers on
// small instances. These share only the channel/rate primitives with the
// optimizers, never their search logic.
#pragma once

#include <cmath>
#include <vector>

#include "pass/channel.hpp"
#include "pass/multi_opt.hpp"
#include "pass/noma.hpp"
#include "pass/semantics.hpp"
#include "pass/single_opt.hpp"

namespace pass {

// Exhaustive 1-D scan of alpha_S over (0, 0.5]; returns the feasible
// maximizer of the semantic rate, or the sentinel 0.
inline double brute_alpha(double g2_S, double g2_B, const ScenarioConfig& cfg,
                          const SemanticConfig& sem, double step = 1e-4) {
  double best_alpha = 0;
  double best_rate = -1;
  const int n = static_cast<int>(std::lround(0.5 / step));
  for (int i = 1; i <= n; ++i) {
    const double a = i * step;
    if (a > 0.5) break;
    if (bit_rate(g2_B, a, cfg.P_max, cfg.sigma2) < cfg.R_B_min) continue;
    if (sic_rate(g2_S, a, cfg.P_max, cfg.sigma2) < cfg.R_B_min) continue;
    const double r = semantic_rate(gamma_s(g2_S, a, cfg.P_max, cfg.sigma2), sem);
    // >= so saturation plateaus resolve to the largest feasible alpha
    if (r >= best_rate) {
      best_rate = r;
      best_alpha = a;
    }
  }
  return best_alpha;
}

struct BruteBetaResult {
  SimplexPoint point = SimplexPoint::uniform(1);
  double q_S = 0;
  bool feasible = false;
};

// Exhaustive simplex-grid maximization of the true q_S under the true
// constraints q_B >= T_B, q_S >= T_B.
inline BruteBetaResult brute_beta(const QuadraticForm& Qs, const QuadraticForm& Qb, double T_B,
                                  double grid_step = 0.01) {
  BruteBetaResult res;
  const SimplexGrid grid = simplex_grid(Qs.k, grid_step);
  double best = -1;
  for (const SimplexPoint& cand : grid.points) {
    if (Qb.quad(cand.z) < T_B) continue;
    const double qs = Qs.quad(cand.z);
    if (qs < T_B) continue;
    if (qs > best) {
      best = qs;
      res.point = cand;
      res.feasible = true;
    }
  }
  res.q_S = res.feasible ? best : 0.0;
  return res;
}

struct BruteLeadResult {
  double lead = 0;
  double g2_S = 0;
  double semantic_se = 0;
  bool feasible = false;
};

// Dense scan of the lead-antenna coordinate over the inter-user segment;
// keeps the feasible grid point maximizing |g_S|^2. Both rates are
// decreasing in alpha_S (a tested invariant of the rate algebra), so a
// point is feasible iff the rate constraints hold at the smallest alpha of
// the oracle grid; the winning point's rate is then certified with the
// exhaustive alpha scan.
inline BruteLeadResult brute_lead_position(const Point3& user_S, const Point3& user_B,
                                           const ScenarioConfig& cfg, const SemanticConfig& sem,
                                           double grid_step_m = 0.0, double alpha_step = 1e-4) {
  if (grid_step_m <= 0) grid_step_m = cfg.lambda() / 20.0;
  const double half = cfg.D / 2.0;
  const double lo = std::clamp(std::min(user_S.x, user_B.x), -half, half);
  const double hi = std::clamp(std::max(user_S.x, user_B.x), -half, half);
  BruteLeadResult res;
  const int n = static_cast<int>(std::floor((hi - lo) / grid_step_m)) + 1;
  for (int i = 0; i <= n; ++i) {
    const double c = std::min(lo + i * grid_step_m, hi);
    const SingleWgLayout layout = layout_from_lead(c, cfg);
    const double g2_S = normalized_power_gain(layout, user_S, cfg);
    const double g2_B = normalized_power_gain(layout, user_B, cfg);
    const bool ok =
        bit_rate(g2_B, alpha_step, cfg.P_max, cfg.sigma2) >= cfg.R_B_min &&
        sic_rate(g2_S, alpha_step, cfg.P_max, cfg.sigma2) >= cfg.R_B_min;
    if (ok && (!res.feasible || g2_S > res.g2_S)) {
      res.feasible = true;
      res.lead = c;
      res.g2_S = g2_S;
    }
    if (c >= hi) break;
  }
  if (res.feasible) {
    const SingleWgLayout layout = layout_from_lead(res.lead, cfg);
    const double g2_S = normalized_power_gain(layout, user_S, cfg);
    const double g2_B = normalized_power_gain(layout, user_B, cfg);
    const double a = brute_alpha(g2_S, g2_B, cfg, sem, alpha_step);
    res.feasible = a > 0;
    if (res.feasible)
      res.semantic_se = semantic_rate(gamma_s(g2_S, a, cfg.P_max, cfg.sigma2), sem);
  }
  return res;
}

}  // namespace pass
