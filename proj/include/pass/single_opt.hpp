// Alternating optimization for the single-waveguide scenario: closed-form
// user power split, bisection antenna placement and fine-scale phase
// alignment.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pass/channel.hpp"
#include "pass/noma.hpp"
#include "pass/params.hpp"
#include "pass/semantics.hpp"

namespace pass {

inline constexpr double kAoConvergenceTol = 1e-6;   // suts/s/Hz
inline constexpr int kFineTuneMaxSweeps = 20;

struct AoState {
  SingleWgLayout layout;
  double alpha_S = 0;
  double semantic_se = 0;
  int iterations = 0;
  bool feasible = false;
  std::vector<double> history;  // semantic SE per AO iteration
};

struct SingleEval {
  double g2_S = 0;  // |g_S|^2 / N
  double g2_B = 0;
  double alpha_S = 0;
  double semantic_se = 0;
  double bit = 0;
  bool feasible = false;
};

inline Point3 single_wg_feed(const ScenarioConfig& cfg) { return {-cfg.D / 2.0, 0.0, cfg.d}; }

// N antennas centered at x = 0 with the minimum spacing.
inline SingleWgLayout initial_layout(const ScenarioConfig& cfg) {
  const double gap = cfg.spacing();
  if (cfg.N * gap > cfg.D)
    throw std::invalid_argument("initial_layout: N antennas at minimum spacing exceed D");
  SingleWgLayout layout;
  layout.feed = single_wg_feed(cfg);
  layout.height = cfg.d;
  const double c0 = -(cfg.N - 1) * gap / 2.0;
  for (int n = 0; n < cfg.N; ++n) layout.positions.push_back(c0 + n * gap);
  return layout;
}

// Lead antenna at c (clamped to the region), the remaining N-1 at multiples
// of the spacing extending away from the nearest region edge.
inline SingleWgLayout layout_from_lead(double c, const ScenarioConfig& cfg) {
  const double gap = cfg.spacing();
  const double half = cfg.D / 2.0;
  if (cfg.N * gap > cfg.D)
    throw std::invalid_argument("layout_from_lead: N antennas at minimum spacing exceed D");
  c = std::clamp(c, -half, half);
  double dir = (c < 0) ? 1.0 : -1.0;
  if (c + dir * (cfg.N - 1) * gap > half || c + dir * (cfg.N - 1) * gap < -half) dir = -dir;
  SingleWgLayout layout;
  layout.feed = single_wg_feed(cfg);
  layout.height = cfg.d;
  for (int n = 0; n < cfg.N; ++n) layout.positions.push_back(c + dir * n * gap);
  std::sort(layout.positions.begin(), layout.positions.end());
  return layout;
}

// Composite power gain |g_m|^2 / N (uniform per-antenna power).
inline double normalized_power_gain(const SingleWgLayout& layout, const Point3& user,
                                    const ScenarioConfig& cfg) {
  const cdouble g =
      composite_gain_single(layout, user, cfg.lambda(), cfg.lambda_g(), cfg.eta());
  return std::norm(g) / static_cast<double>(layout.positions.size());
}

inline SingleEval evaluate_single(const SingleWgLayout& layout, const Point3& user_S,
                                  const Point3& user_B, const ScenarioConfig& cfg,
                                  const SemanticConfig& sem) {
  SingleEval ev;
  ev.g2_S = normalized_power_gain(layout, user_S, cfg);
  ev.g2_B = normalized_power_gain(layout, user_B, cfg);
  const double tau = qos_threshold(cfg.R_B_min);
  ev.alpha_S = alpha_star(ev.g2_S, ev.g2_B, tau, cfg.P_max, cfg.sigma2);
  ev.feasible = ev.alpha_S > 0;
  if (ev.feasible) {
    ev.semantic_se = semantic_rate(gamma_s(ev.g2_S, ev.alpha_S, cfg.P_max, cfg.sigma2), sem);
    ev.bit = bit_rate(ev.g2_B, ev.alpha_S, cfg.P_max, cfg.sigma2);
  }
  return ev;
}

struct BisectionResult {
  SingleWgLayout layout;
  bool feasible = false;
  int iterations = 0;
  double lead = 0;
};

// One-dimensional bisection of the lead-antenna coordinate over the segment
// between the two users. A feasible midpoint moves the bit-user end of the
// bracket toward the midpoint, biasing the survivor toward the semantic
// user; an infeasible midpoint retreats the semantic-user end.
template <class Feasible>
inline BisectionResult bisect_lead(double x_sem, double x_bit, const ScenarioConfig& cfg,
                                   Feasible&& feasible_at) {
  const double half = cfg.D / 2.0;
  double a = std::clamp(x_sem, -half, half);  // semantic-user end
  double b = std::clamp(x_bit, -half, half);  // bit-user end
  const double tol = cfg.bisection_tol();
  BisectionResult res;
  if (feasible_at(a)) {
    res.lead = a;
    res.feasible = true;
    res.layout = layout_from_lead(a, cfg);
    return res;
  }
  bool have = false;
  double best = b;
  if (feasible_at(b)) have = true;
  int iters = 0;
  const int cap = 64;
  while (std::abs(a - b) > tol && iters < cap) {
    const double mid = (a + b) / 2.0;
    if (feasible_at(mid)) {
      b = mid;
      best = mid;
      have = true;
    } else {
      a = mid;
    }
    ++iters;
  }
  res.iterations = iters;
  res.feasible = have;
  res.lead = have ? best : b;
  res.layout = layout_from_lead(res.lead, cfg);
  return res;
}

inline BisectionResult bisection_position(const Point3& user_S, const Point3& user_B,
                                          double alpha_fixed, const ScenarioConfig& cfg) {
  const double tau = qos_threshold(cfg.R_B_min);
  auto feasible_at = [&](double c) {
    const SingleWgLayout cand = layout_from_lead(c, cfg);
    const double g2_S = normalized_power_gain(cand, user_S, cfg);
    const double g2_B = normalized_power_gain(cand, user_B, cfg);
    if (alpha_fixed > 0) {
      return bit_rate(g2_B, alpha_fixed, cfg.P_max, cfg.sigma2) >= cfg.R_B_min &&
             sic_rate(g2_S, alpha_fixed, cfg.P_max, cfg.sigma2) >= cfg.R_B_min;
    }
    return alpha_star(g2_S, g2_B, tau, cfg.P_max, cfg.sigma2) > 0;
  };
  return bisect_lead(user_S.x, user_B.x, cfg, feasible_at);
}

// Largest wrapped inter-antenna residual-phase difference toward a user.
inline double alignment_error(const SingleWgLayout& layout, const Point3& user,
                              const ScenarioConfig& cfg) {
  double e = 0;
  for (std::size_t n = 1; n < layout.positions.size(); ++n) {
    const double p1 = phase_residual(user, layout.antenna(n), layout.feed, cfg.lambda(),
                                     cfg.lambda_g());
    const double p0 = phase_residual(user, layout.antenna(n - 1), layout.feed, cfg.lambda(),
                                     cfg.lambda_g());
    e = std::max(e, std::abs(wrap_pi(p1 - p0)));
  }
  return e;
}

// Greedy fine-scale alignment: each non-lead antenna is nudged by multiples
// of the fine step; a move is kept only when spacing holds, the semantic
// alignment error does not grow and |g_S|^2 strictly improves. The antenna
// nearest the semantic user (the lead) stays put.
inline SingleWgLayout fine_tune_phases(const SingleWgLayout& input, const Point3& user_S,
                                       const Point3& user_B, const ScenarioConfig& cfg) {
  const std::size_t n_ant = input.positions.size();
  if (n_ant <= 1) return input;
  SingleWgLayout layout = input;
  const double step = cfg.fine_step();
  const double gap = cfg.spacing();
  const double half = cfg.D / 2.0;

  std::size_t lead = 0;
  for (std::size_t n = 1; n < n_ant; ++n)
    if (std::abs(layout.positions[n] - user_S.x) < std::abs(layout.positions[lead] - user_S.x))
      lead = n;
  std::vector<std::size_t> order;
  for (std::size_t n = 0; n < n_ant; ++n)
    if (n != lead) order.push_back(n);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(layout.positions[a] - user_S.x) < std::abs(layout.positions[b] - user_S.x);
  });

  auto spacing_ok = [&](const std::vector<double>& pos) {
    for (std::size_t n = 1; n < pos.size(); ++n)
      if (pos[n] - pos[n - 1] < gap * (1.0 - 1e-12)) return false;
    return true;
  };

  double g2 = normalized_power_gain(layout, user_S, cfg);
  const double g2_in = g2;
  double err_S = alignment_error(layout, user_S, cfg);
  double err_B = alignment_error(layout, user_B, cfg);

  // candidate offsets are integer multiples of the fine step inside a small
  // window, so a move can jump across a local dip in |g_S|^2
  const int k_max = std::max(1, static_cast<int>(std::lround(4.0 * cfg.lambda() / step)));

  // snap antennas outward from the lead so each residual phase matches its
  // inner neighbour's; the greedy sweep below cannot do this on its own,
  // because a move through an unaligned neighbour raises the pairwise error
  // before lowering it and gets vetoed
  if (err_S > cfg.delta_S) {
    SingleWgLayout snap = layout;
    // outermost antennas first: they free up spacing room for the packed
    // ones next to the lead
    std::vector<std::size_t> chain;
    for (std::size_t d = n_ant - 1; d >= 1; --d) {
      if (lead + d < n_ant) chain.push_back(lead + d);
      if (lead >= d) chain.push_back(lead - d);
    }
    auto residual = [&](const SingleWgLayout& l, std::size_t n) {
      return phase_residual(user_S, l.antenna(n), l.feed, cfg.lambda(), cfg.lambda_g());
    };
    // aligning to the lead rather than the inner neighbour keeps signed
    // per-pair errors from accumulating into decoherence across the chain
    const double target = residual(snap, lead);
    for (std::size_t idx : chain) {
      double best_pos = snap.positions[idx];
      double best_mis = std::abs(wrap_pi(residual(snap, idx) - target));
      for (int k = 1; k <= k_max; ++k) {
        for (double delta : {k * step, -k * step}) {
          std::vector<double> pos = snap.positions;
          pos[idx] += delta;
          if (pos[idx] < -half || pos[idx] > half) continue;
          if (!spacing_ok(pos)) continue;
          SingleWgLayout cand = snap;
          cand.positions = pos;
          const double mis = std::abs(wrap_pi(residual(cand, idx) - target));
          if (mis < best_mis - 1e-12) {
            best_mis = mis;
            best_pos = pos[idx];
          }
        }
      }
      snap.positions[idx] = best_pos;
    }
    const double sg2 = normalized_power_gain(snap, user_S, cfg);
    const double serr = alignment_error(snap, user_S, cfg);
    if (sg2 >= g2 && serr <= err_S + 1e-12) {
      layout = snap;
      g2 = sg2;
      err_S = serr;
      err_B = alignment_error(layout, user_B, cfg);
    }
  }

  for (int sweep = 0; sweep < kFineTuneMaxSweeps; ++sweep) {
    if (err_S <= cfg.delta_S && err_B <= cfg.delta_B) break;
    bool any = false;
    for (std::size_t idx : order) {
      double best_g2 = g2;
      double best_err = err_S;
      double best_pos = layout.positions[idx];
      bool moved = false;
      for (int k = 1; k <= k_max; ++k) {
        for (double delta : {k * step, -k * step}) {
          std::vector<double> pos = layout.positions;
          pos[idx] += delta;
          if (pos[idx] < -half || pos[idx] > half) continue;
          if (!spacing_ok(pos)) continue;
          SingleWgLayout cand = layout;
          cand.positions = pos;
          const double cg2 = normalized_power_gain(cand, user_S, cfg);
          const double cerr = alignment_error(cand, user_S, cfg);
          if (cerr <= err_S + 1e-12 && cg2 > best_g2) {
            best_g2 = cg2;
            best_err = cerr;
            best_pos = layout.positions[idx] + delta;
            moved = true;
          }
        }
      }
      if (!moved) continue;
      layout.positions[idx] = best_pos;
      g2 = best_g2;
      err_S = best_err;
      err_B = alignment_error(layout, user_B, cfg);
      any = true;
      if (err_S <= cfg.delta_S && err_B <= cfg.delta_B) break;
    }
    if (!any) break;
  }

  // second stage: trade surplus semantic coherence for bit-user alignment.
  // The first stage leaves |g_S|^2 well above the input value, so antennas
  // may hop between semantic-coherent spots picking whichever phase helps
  // the bit user; hops are scored by the post-SIC semantic SNR that the
  // closed-form power split would deliver, which couples both gains.
  const double g2_floor = std::max(g2_in, g2 * 0.5);
  const double tau = qos_threshold(cfg.R_B_min);
  auto score = [&](double g2_s, double g2_b) {
    const double a = alpha_star(g2_s, g2_b, tau, cfg.P_max, cfg.sigma2);
    if (a <= 0) return -1.0;
    return a * g2_s;  // gamma_S up to the fixed P/sigma^2 factor
  };
  double g2_B = normalized_power_gain(layout, user_B, cfg);
  double cur_score = score(g2, g2_B);
  for (int sweep = 0; sweep < kFineTuneMaxSweeps && err_B > cfg.delta_B; ++sweep) {
    bool any = false;
    for (std::size_t idx : order) {
      double best_g2 = g2;
      double best_g2_b = g2_B;
      double best_score = cur_score;
      double best_pos = layout.positions[idx];
      bool moved = false;
      for (int k = 1; k <= k_max; ++k) {
        for (double delta : {k * step, -k * step}) {
          std::vector<double> pos = layout.positions;
          pos[idx] += delta;
          if (pos[idx] < -half || pos[idx] > half) continue;
          if (!spacing_ok(pos)) continue;
          SingleWgLayout cand = layout;
          cand.positions = pos;
          const double cg2 = normalized_power_gain(cand, user_S, cfg);
          if (cg2 < g2_floor) continue;
          const double cerr_s = alignment_error(cand, user_S, cfg);
          if (cerr_s > std::max(err_S, cfg.delta_S) + 1e-12) continue;
          const double cg2_b = normalized_power_gain(cand, user_B, cfg);
          const double cscore = score(cg2, cg2_b);
          if (cscore > best_score + 1e-15) {
            best_g2 = cg2;
            best_g2_b = cg2_b;
            best_score = cscore;
            best_pos = pos[idx];
            moved = true;
          }
        }
      }
      if (!moved) continue;
      layout.positions[idx] = best_pos;
      g2 = best_g2;
      g2_B = best_g2_b;
      cur_score = best_score;
      err_S = alignment_error(layout, user_S, cfg);
      err_B = alignment_error(layout, user_B, cfg);
      any = true;
      if (err_B <= cfg.delta_B) break;
    }
    if (!any) break;
  }
  return layout;
}

struct AoOptions {
  bool fine_tune = true;
};

// Algorithm skeleton: alternate the closed-form power split with the
// bisection placement (plus optional phase fine-tuning) until the semantic
// SE stalls. A candidate layout is adopted only when it does not lower the
// SE, so the history is non-decreasing by construction.
inline AoState ao_solve(const Point3& user_S, const Point3& user_B, const ScenarioConfig& cfg,
                        const SemanticConfig& sem, const AoOptions& opts = {}) {
  AoState st;
  st.layout = initial_layout(cfg);
  double prev_se = -1.0;
  for (int t = 0; t < cfg.max_iters; ++t) {
    const SingleEval cur = evaluate_single(st.layout, user_S, user_B, cfg, sem);
    double se = cur.semantic_se;
    st.alpha_S = cur.alpha_S;

    // run the placement both with the power split frozen at the current
    // iterate and with the closed-form split recomputed per trial lead; a
    // frozen split can rule out the semantic end of the segment even though
    // re-optimizing the split there would be feasible
    const BisectionResult bis_cur = bisection_position(user_S, user_B, cur.alpha_S, cfg);
    const BisectionResult bis_free = bisection_position(user_S, user_B, 0.0, cfg);
    const BisectionResult& bis = bis_cur.feasible ? bis_cur : bis_free;
    if (bis_cur.feasible || bis_free.feasible) {
      // fine-tuning raises |g_S|^2 but can shrink the bit-user gain (and with
      // it alpha), so keep whichever of the plain and tuned layouts scores
      // higher end to end
      SingleWgLayout cand{};
      SingleEval ev{};
      bool have = false;
      for (const BisectionResult* b : {&bis_cur, &bis_free}) {
        if (!b->feasible) continue;
        if (b == &bis_free && bis_cur.feasible &&
            std::abs(bis_free.lead - bis_cur.lead) < 1e-12)
          continue;
        const SingleEval ev_p = evaluate_single(b->layout, user_S, user_B, cfg, sem);
        if (!have || ev_p.semantic_se > ev.semantic_se) {
          cand = b->layout;
          ev = ev_p;
          have = true;
        }
        if (opts.fine_tune) {
          const SingleWgLayout tuned = fine_tune_phases(b->layout, user_S, user_B, cfg);
          const SingleEval ev_t = evaluate_single(tuned, user_S, user_B, cfg, sem);
          if (ev_t.semantic_se > ev.semantic_se) {
            cand = tuned;
            ev = ev_t;
          }
        }
      }
      // the bisection drops the semantic end when the rigid array there is
      // QoS-infeasible, but a tuned array at that spot often is feasible and
      // strictly better than a rigid one parked near the bit user
      const bool at_sem_end =
          (bis_cur.feasible && std::abs(bis_cur.lead - user_S.x) < 1e-9) ||
          (bis_free.feasible && std::abs(bis_free.lead - user_S.x) < 1e-9);
      if (opts.fine_tune && !at_sem_end) {
        const SingleWgLayout anchor = layout_from_lead(user_S.x, cfg);
        const SingleWgLayout tuned = fine_tune_phases(anchor, user_S, user_B, cfg);
        const SingleEval ev_t = evaluate_single(tuned, user_S, user_B, cfg, sem);
        if (ev_t.feasible && ev_t.semantic_se > ev.semantic_se) {
          cand = tuned;
          ev = ev_t;
        }
      }
      if (ev.semantic_se >= se - 1e-15) {
        st.layout = cand;
        st.alpha_S = ev.alpha_S;
        se = ev.semantic_se;
      }
    } else if (opts.fine_tune) {
      // no feasible lead for the rigid array: alignment can still create
      // feasibility; try it from both ends of the search segment
      for (const double anchor_x : {user_S.x, bis.lead}) {
        const SingleWgLayout anchor = layout_from_lead(anchor_x, cfg);
        const SingleWgLayout tuned = fine_tune_phases(anchor, user_S, user_B, cfg);
        const SingleEval ev = evaluate_single(tuned, user_S, user_B, cfg, sem);
        if (ev.feasible && ev.semantic_se >= se - 1e-15) {
          st.layout = tuned;
          st.alpha_S = ev.alpha_S;
          se = ev.semantic_se;
        }
      }
    }

    st.history.push_back(se);
    st.iterations = t + 1;
    st.feasible = st.alpha_S > 0;
    if (!st.feasible && !bis.feasible) break;  // nothing can change the iterate
    if (st.feasible && std::abs(se - prev_se) < kAoConvergenceTol) break;
    prev_se = se;
  }
  st.semantic_se = st.feasible && !st.history.empty() ? st.history.back() : 0.0;
  return st;
}

}  // namespace pass
