// Multi-waveguide scenario: quadratic reformulation of the coherent
// combining power, MM surrogate over the waveguide power simplex and the
// three-block alternating optimization.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pass/channel.hpp"
#include "pass/noma.hpp"
#include "pass/params.hpp"
#include "pass/semantics.hpp"
#include "pass/single_opt.hpp"

namespace pass {

struct SimplexPoint {
  std::vector<double> beta;  // power fractions, sum to 1
  std::vector<double> z;     // amplitude weights, z_k = sqrt(beta_k)

  static SimplexPoint from_beta(std::vector<double> b) {
    SimplexPoint p;
    double sum = 0;
    for (double x : b) {
      if (x < 0) throw std::invalid_argument("SimplexPoint: negative fraction");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("SimplexPoint: fractions do not sum to 1");
    p.z.reserve(b.size());
    for (double x : b) p.z.push_back(std::sqrt(x));
    p.beta = std::move(b);
    return p;
  }

  static SimplexPoint uniform(int k) {
    return from_beta(std::vector<double>(k, 1.0 / static_cast<double>(k)));
  }
};

// Real symmetric PSD matrix Q_m = Re(h~* h~^T); q_m(z) = z^T Q z equals the
// coherently combined power |h~^T z|^2.
struct QuadraticForm {
  int k = 0;
  std::vector<double> q;  // row-major k x k

  double at(int a, int b) const { return q[static_cast<std::size_t>(a) * k + b]; }

  double quad(const std::vector<double>& z) const {
    double s = 0;
    for (int a = 0; a < k; ++a) {
      double row = 0;
      for (int b = 0; b < k; ++b) row += at(a, b) * z[b];
      s += z[a] * row;
    }
    return s;
  }

  std::vector<double> mul(const std::vector<double>& z) const {
    std::vector<double> out(k, 0.0);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) out[a] += at(a, b) * z[b];
    return out;
  }
};

inline QuadraticForm build_q(const std::vector<cdouble>& h) {
  QuadraticForm Q;
  Q.k = static_cast<int>(h.size());
  Q.q.resize(h.size() * h.size());
  for (int a = 0; a < Q.k; ++a)
    for (int b = 0; b < Q.k; ++b)
      Q.q[static_cast<std::size_t>(a) * Q.k + b] = std::real(std::conj(h[a]) * h[b]);
  return Q;
}

// First-order Taylor lower bound of the convex quadratic at z_i:
// 2 (Q z_i)^T z - z_i^T Q z_i.
inline double surrogate(const QuadraticForm& Q, const std::vector<double>& z_i,
                        const std::vector<double>& z) {
  const std::vector<double> g = Q.mul(z_i);
  double lin = 0, base = 0;
  for (int a = 0; a < Q.k; ++a) {
    lin += g[a] * z[a];
    base += z_i[a] * g[a];
  }
  return 2.0 * lin - base;
}

// Uniform grid over the probability simplex with step 1/m, enumerated in
// lexicographic order of the composition counts.
struct SimplexGrid {
  int k = 0;
  int m = 0;
  std::vector<SimplexPoint> points;
};

inline SimplexGrid simplex_grid(int k, double step) {
  if (!(step > 0 && step <= 1)) throw std::invalid_argument("simplex_grid: bad step");
  SimplexGrid grid;
  grid.k = k;
  grid.m = std::max(1, static_cast<int>(std::lround(1.0 / step)));
  std::vector<int> counts(k, 0);
  std::vector<double> beta(k, 0.0);
  auto emit = [&]() {
    for (int a = 0; a < k; ++a) beta[a] = static_cast<double>(counts[a]) / grid.m;
    grid.points.push_back(SimplexPoint::from_beta(beta));
  };
  // recursive composition of m into k parts
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == k - 1) {
      counts[pos] = remaining;
      emit();
      return;
    }
    for (int n = 0; n <= remaining; ++n) {
      counts[pos] = n;
      self(self, pos + 1, remaining - n);
    }
  };
  rec(rec, 0, grid.m);
  return grid;
}

// One MM update: maximize the affine surrogate of q_S over the simplex grid,
// with feasibility judged conservatively through the same lower bounds.
// Ties keep the lexicographically first candidate; with no feasible
// candidate the previous iterate is returned unchanged.
inline SimplexPoint mm_step(const QuadraticForm& Qs, const QuadraticForm& Qb,
                            const SimplexPoint& z_i, double T_B, const SimplexGrid& grid) {
  const std::vector<double> gs = Qs.mul(z_i.z);
  const std::vector<double> gb = Qb.mul(z_i.z);
  double base_s = 0, base_b = 0;
  for (int a = 0; a < Qs.k; ++a) {
    base_s += z_i.z[a] * gs[a];
    base_b += z_i.z[a] * gb[a];
  }
  const SimplexPoint* best = nullptr;
  double best_val = -std::numeric_limits<double>::infinity();
  for (const SimplexPoint& cand : grid.points) {
    double lin_s = 0, lin_b = 0;
    for (int a = 0; a < Qs.k; ++a) {
      lin_s += gs[a] * cand.z[a];
      lin_b += gb[a] * cand.z[a];
    }
    const double sur_s = 2.0 * lin_s - base_s;
    const double sur_b = 2.0 * lin_b - base_b;
    if (sur_b < T_B || sur_s < T_B) continue;
    if (sur_s > best_val) {
      best_val = sur_s;
      best = &cand;
    }
  }
  return best ? *best : z_i;
}

struct MmResult {
  SimplexPoint point = SimplexPoint::uniform(1);
  bool feasible = false;
  std::vector<double> qs_history;  // true objective per accepted iterate
  int iterations = 0;
};

inline constexpr double kMmConvergenceTol = 1e-9;

// Iterate mm_step from the uniform split. The surrogate construction makes
// each accepted iterate truly feasible and non-decreasing in q_S; a guard
// on the true objective enforces that literally.
namespace detail {

inline MmResult mm_descend(const QuadraticForm& Qs, const QuadraticForm& Qb, double T_B,
                           const ScenarioConfig& cfg, const SimplexGrid& grid,
                           SimplexPoint start) {
  MmResult res;
  res.point = std::move(start);
  res.feasible = true;
  double qs_cur = Qs.quad(res.point.z);
  res.qs_history.push_back(qs_cur);
  for (int i = 0; i < cfg.max_iters; ++i) {
    SimplexPoint next = mm_step(Qs, Qb, res.point, T_B, grid);
    const double qs_next = Qs.quad(next.z);
    ++res.iterations;
    if (qs_next < qs_cur - 1e-15) break;  // true-objective guard
    res.point = std::move(next);
    res.qs_history.push_back(qs_next);
    if (qs_next - qs_cur < kMmConvergenceTol) break;
    qs_cur = qs_next;
  }
  return res;
}

}  // namespace detail

// MM from the uniform split, plus one deterministic restart per simplex
// vertex. The iteration z <- argmax (Qs z)^T z can stall on a secondary
// face when the dominant eigenvector of Qs has mixed signs; the vertex
// restarts cover the face basins. The uniform run is kept on ties so the
// single-start behavior is preserved whenever it already attains the best
// final q_S.
inline MmResult waveguide_power_allocate(const QuadraticForm& Qs, const QuadraticForm& Qb,
                                         double T_B, const ScenarioConfig& cfg,
                                         const SimplexGrid& grid) {
  const SimplexPoint u = SimplexPoint::uniform(Qs.k);
  if (Qb.quad(u.z) < T_B || Qs.quad(u.z) < T_B) {
    MmResult res;
    res.point = u;
    res.feasible = false;  // caller counts the realization as an outage
    return res;
  }
  MmResult best = detail::mm_descend(Qs, Qb, T_B, cfg, grid, u);
  for (int k = 0; k < Qs.k; ++k) {
    SimplexPoint v = u;
    v.beta.assign(Qs.k, 0.0);
    v.z.assign(Qs.k, 0.0);
    v.beta[k] = 1.0;
    v.z[k] = 1.0;
    if (Qb.quad(v.z) < T_B || Qs.quad(v.z) < T_B) continue;
    MmResult cand = detail::mm_descend(Qs, Qb, T_B, cfg, grid, v);
    if (Qs.quad(cand.point.z) > Qs.quad(best.point.z)) best = std::move(cand);
  }
  return best;
}

// Evenly spaced lateral offsets spanning [-D/4, D/4]; {-D/4, 0, D/4} for
// three waveguides.
inline std::vector<double> default_offsets(int k_wg, double D) {
  std::vector<double> y(k_wg, 0.0);
  if (k_wg == 1) return y;
  for (int k = 0; k < k_wg; ++k)
    y[k] = -D / 4.0 + static_cast<double>(k) * (D / 2.0) / (k_wg - 1);
  return y;
}

inline MultiWgLayout initial_multi_layout(const ScenarioConfig& cfg,
                                          const std::vector<double>& offsets) {
  MultiWgLayout layout;
  layout.positions.assign(cfg.K_wg, 0.0);
  layout.offsets = offsets;
  layout.feed_x = -cfg.D / 2.0;
  layout.height = cfg.d;
  return layout;
}

struct MultiAoState {
  MultiWgLayout layout;
  SimplexPoint power = SimplexPoint::uniform(1);
  double alpha_S = 0;
  double semantic_se = 0;
  int iterations = 0;
  bool feasible = false;
  std::vector<double> history;
};

struct MultiAoOptions {
  bool optimize_positions = true;
  std::vector<double> offsets;  // empty -> default_offsets
};

namespace detail {

struct MultiEval {
  double g2_S = 0, g2_B = 0, alpha_S = 0, se = 0;
  bool feasible = false;
};

inline MultiEval evaluate_multi(const MultiWgLayout& layout, const std::vector<double>& z,
                                const Point3& user_S, const Point3& user_B,
                                const ScenarioConfig& cfg, const SemanticConfig& sem) {
  MultiEval ev;
  const cdouble hS =
      effective_gain_multi(layout, z, user_S, cfg.lambda(), cfg.lambda_g(), cfg.eta());
  const cdouble hB =
      effective_gain_multi(layout, z, user_B, cfg.lambda(), cfg.lambda_g(), cfg.eta());
  ev.g2_S = std::norm(hS);
  ev.g2_B = std::norm(hB);
  const double tau = qos_threshold(cfg.R_B_min);
  ev.alpha_S = alpha_star(ev.g2_S, ev.g2_B, tau, cfg.P_max, cfg.sigma2);
  ev.feasible = ev.alpha_S > 0;
  if (ev.feasible)
    ev.se = semantic_rate(gamma_s(ev.g2_S, ev.alpha_S, cfg.P_max, cfg.sigma2), sem);
  return ev;
}

}  // namespace detail

// Three-block AO: users power split (closed form), per-waveguide bisection
// placement (no phase fine-tuning) and MM waveguide power allocation.
inline MultiAoState ao_solve_multi(const Point3& user_S, const Point3& user_B,
                                   const ScenarioConfig& cfg, const SemanticConfig& sem,
                                   const MultiAoOptions& opts = {}) {
  const std::vector<double> offsets =
      opts.offsets.empty() ? default_offsets(cfg.K_wg, cfg.D) : opts.offsets;
  if (static_cast<int>(offsets.size()) != cfg.K_wg)
    throw std::invalid_argument("ao_solve_multi: offsets size != K_wg");
  for (std::size_t a = 0; a < offsets.size(); ++a)
    for (std::size_t b = a + 1; b < offsets.size(); ++b)
      if (offsets[a] == offsets[b])
        throw std::invalid_argument("ao_solve_multi: lateral offsets must be distinct");

  MultiAoState st;
  st.layout = initial_multi_layout(cfg, offsets);
  st.power = SimplexPoint::uniform(cfg.K_wg);
  const SimplexGrid grid = simplex_grid(cfg.K_wg, cfg.mm_grid_step);
  const double tau = qos_threshold(cfg.R_B_min);
  const double half = cfg.D / 2.0;
  double prev_se = -1.0;

  for (int t = 0; t < cfg.max_iters; ++t) {
    detail::MultiEval cur = detail::evaluate_multi(st.layout, st.power.z, user_S, user_B, cfg, sem);
    st.alpha_S = cur.alpha_S;
    double se = cur.se;
    bool any_feasible_seen = cur.feasible;

    if (opts.optimize_positions) {
      for (int k = 0; k < cfg.K_wg; ++k) {
        auto feasible_at = [&](double c) {
          MultiWgLayout cand = st.layout;
          cand.positions[k] = std::clamp(c, -half, half);
          const detail::MultiEval ev =
              detail::evaluate_multi(cand, st.power.z, user_S, user_B, cfg, sem);
          if (cur.feasible)
            return bit_rate(ev.g2_B, cur.alpha_S, cfg.P_max, cfg.sigma2) >= cfg.R_B_min &&
                   sic_rate(ev.g2_S, cur.alpha_S, cfg.P_max, cfg.sigma2) >= cfg.R_B_min;
          return alpha_star(ev.g2_S, ev.g2_B, tau, cfg.P_max, cfg.sigma2) > 0;
        };
        const BisectionResult bis = bisect_lead(user_S.x, user_B.x, cfg, feasible_at);
        if (!bis.feasible) continue;
        MultiWgLayout cand = st.layout;
        cand.positions[k] = std::clamp(bis.lead, -half, half);
        const detail::MultiEval ev =
            detail::evaluate_multi(cand, st.power.z, user_S, user_B, cfg, sem);
        if (ev.se >= se - 1e-15) {
          st.layout = cand;
          st.alpha_S = ev.alpha_S;
          se = ev.se;
          cur = ev;
          any_feasible_seen = any_feasible_seen || ev.feasible;
        }
      }
    }

    if (cur.feasible) {
      const std::vector<cdouble> hS =
          waveguide_gains(st.layout, user_S, cfg.lambda(), cfg.lambda_g(), cfg.eta());
      const std::vector<cdouble> hB =
          waveguide_gains(st.layout, user_B, cfg.lambda(), cfg.lambda_g(), cfg.eta());
      const QuadraticForm Qs = build_q(hS);
      const QuadraticForm Qb = build_q(hB);
      const double T_B = t_threshold(cur.alpha_S, tau, cfg.P_max, cfg.sigma2);
      const MmResult mm = waveguide_power_allocate(Qs, Qb, T_B, cfg, grid);
      if (mm.feasible) {
        const detail::MultiEval ev =
            detail::evaluate_multi(st.layout, mm.point.z, user_S, user_B, cfg, sem);
        if (ev.se >= se - 1e-15) {
          st.power = mm.point;
          st.alpha_S = ev.alpha_S;
          se = ev.se;
          any_feasible_seen = any_feasible_seen || ev.feasible;
        }
      }
    }

    st.history.push_back(se);
    st.iterations = t + 1;
    st.feasible = st.alpha_S > 0;
    if (!st.feasible && !any_feasible_seen) break;
    if (st.feasible && std::abs(se - prev_se) < kAoConvergenceTol) break;
    prev_se = se;
  }
  st.semantic_se = st.feasible && !st.history.empty() ? st.history.back() : 0.0;
  return st;
}

}  // namespace pass
