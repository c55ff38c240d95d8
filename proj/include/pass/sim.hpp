// Seeded Monte Carlo engine: per-realization RNG substreams, sweeps over
// transmit power / QoS, distance-ratio binning and CSV emission.
#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pass/baselines.hpp"
#include "pass/params.hpp"

namespace pass {

// Counter-based substream generator (SplitMix64 over a mixed (seed, index)
// state) so realization i is the same regardless of execution order.
struct SubstreamRng {
  std::uint64_t state;

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  SubstreamRng(std::uint64_t seed, std::uint64_t index)
      : state(mix(seed) ^ mix(index * 0xd1342543de82ef95ULL + 1)) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform on [lo, hi]
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
};

struct UserPair {
  Point3 S;
  Point3 B;
};

inline UserPair sample_users(SubstreamRng& rng, double D) {
  if (!(D > 0)) throw std::invalid_argument("sample_users: D must be positive");
  UserPair u;
  u.S = {rng.uniform(-D / 2, D / 2), rng.uniform(-D / 2, D / 2), 0.0};
  u.B = {rng.uniform(-D / 2, D / 2), rng.uniform(-D / 2, D / 2), 0.0};
  return u;
}

inline UserPair sample_users(std::uint64_t seed, std::uint64_t index, double D) {
  SubstreamRng rng(seed, index);
  return sample_users(rng, D);
}

struct RealizationResult {
  Point3 user_S;
  Point3 user_B;
  Scheme scheme = Scheme::PassSingle;
  double semantic_se = 0;
  double bit_rate = 0;
  double alpha_S = 0;
  int iterations = 0;
  bool feasible = false;
};

enum class InfeasiblePolicy { ZeroFill, ConditionOnFeasible };

struct MetricsRow {
  double sweep_value = 0;  // P_max in dBm, R_B_min in bps/Hz, or bin center
  std::string scheme;
  double mean_se = 0;
  double outage = 0;
  long n = 0;
};

struct MetricsTable {
  std::string sweep_name;
  std::vector<MetricsRow> rows;
};

enum class SweepVariable { PowerDbm, QosBpsHz };

struct SweepSpec {
  SweepVariable variable = SweepVariable::PowerDbm;
  std::vector<double> values;
  long realizations = 10000;
  InfeasiblePolicy policy = InfeasiblePolicy::ZeroFill;
};

inline RealizationResult run_realization(Scheme scheme, const UserPair& users,
                                         const ScenarioConfig& cfg, const SemanticConfig& sem,
                                         const SchemeOptions& opts = {}) {
  RealizationResult r;
  r.user_S = users.S;
  r.user_B = users.B;
  r.scheme = scheme;
  const SchemeResult s = solve_realization(scheme, users.S, users.B, cfg, sem, opts);
  r.semantic_se = s.feasible ? s.semantic_se : 0.0;
  r.bit_rate = s.bit_rate;
  r.alpha_S = s.alpha_S;
  r.iterations = s.iterations;
  r.feasible = s.feasible;
  return r;
}

// FNV-1a over the raw coordinate bytes; used to assert common random
// numbers across scheme comparisons.
inline std::uint64_t draw_hash(std::uint64_t seed, long realizations, double D) {
  std::uint64_t h = 1469598103934665603ULL;
  auto absorb = [&](double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    __builtin_memcpy(&bits, &v, sizeof(bits));
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  for (long i = 0; i < realizations; ++i) {
    const UserPair u = sample_users(seed, static_cast<std::uint64_t>(i), D);
    absorb(u.S.x);
    absorb(u.S.y);
    absorb(u.B.x);
    absorb(u.B.y);
  }
  return h;
}

// One sweep point: R realizations of one scheme, common random numbers
// guaranteed by (seed, index) substreams.
inline MetricsRow run_point(Scheme scheme, const ScenarioConfig& cfg, const SemanticConfig& sem,
                            long realizations, InfeasiblePolicy policy,
                            const SchemeOptions& opts = {}) {
  double se_sum = 0;
  long feasible_n = 0;
  for (long i = 0; i < realizations; ++i) {
    const UserPair users = sample_users(cfg.rng_seed, static_cast<std::uint64_t>(i), cfg.D);
    const RealizationResult r = run_realization(scheme, users, cfg, sem, opts);
    if (r.feasible) {
      se_sum += r.semantic_se;
      ++feasible_n;
    }
  }
  MetricsRow row;
  row.scheme = scheme_name(scheme);
  row.n = realizations;
  row.outage = realizations > 0
                   ? static_cast<double>(realizations - feasible_n) / realizations
                   : 0.0;
  if (policy == InfeasiblePolicy::ZeroFill) {
    row.mean_se = realizations > 0 ? se_sum / realizations : 0.0;
  } else {
    row.mean_se = feasible_n > 0 ? se_sum / feasible_n : 0.0;
  }
  return row;
}

inline MetricsTable run_sweep(const ScenarioConfig& base_cfg, const SemanticConfig& sem,
                              const std::vector<Scheme>& schemes, const SweepSpec& spec,
                              const SchemeOptions& opts = {}) {
  MetricsTable table;
  table.sweep_name = spec.variable == SweepVariable::PowerDbm ? "P_max_dbm" : "R_B_min";
  for (double v : spec.values) {
    ScenarioConfig cfg = base_cfg;
    if (spec.variable == SweepVariable::PowerDbm)
      cfg.P_max = dbm_to_watts(v);
    else
      cfg.R_B_min = v;
    for (Scheme s : schemes) {
      MetricsRow row = run_point(s, cfg, sem, spec.realizations, spec.policy, opts);
      row.sweep_value = v;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

// Bin realizations by |phi_S| / |phi_B| (Euclidean distance from the
// origin) and average the semantic SE within each bin. Empty bins are
// emitted with count 0.
inline MetricsTable ratio_binned_se(const std::vector<RealizationResult>& results,
                                    double bin_width, double max_ratio = 2.0) {
  if (!(bin_width > 0)) throw std::invalid_argument("ratio_binned_se: bin_width must be > 0");
  const int n_bins = static_cast<int>(std::ceil(max_ratio / bin_width));
  std::vector<double> se_sum(n_bins, 0.0);
  std::vector<long> count(n_bins, 0);
  std::vector<long> infeasible(n_bins, 0);
  std::string scheme = results.empty() ? "" : scheme_name(results.front().scheme);
  for (const RealizationResult& r : results) {
    const double db = norm(r.user_B);
    if (db <= 0) continue;
    const double ratio = norm(r.user_S) / db;
    const int bin = std::min(n_bins - 1, static_cast<int>(ratio / bin_width));
    if (ratio > max_ratio) continue;
    se_sum[bin] += r.semantic_se;
    ++count[bin];
    if (!r.feasible) ++infeasible[bin];
  }
  MetricsTable table;
  table.sweep_name = "ratio_bin_center";
  for (int b = 0; b < n_bins; ++b) {
    MetricsRow row;
    row.sweep_value = (b + 0.5) * bin_width;
    row.scheme = scheme;
    row.mean_se = count[b] > 0 ? se_sum[b] / count[b] : 0.0;
    row.outage = count[b] > 0 ? static_cast<double>(infeasible[b]) / count[b] : 0.0;
    row.n = count[b];
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline void write_metrics_csv(const MetricsTable& table, std::ostream& out) {
  out << table.sweep_name << ",scheme,mean_se,outage,n\n";
  for (const MetricsRow& row : table.rows) {
    out << format_double(row.sweep_value) << ',' << row.scheme << ','
        << format_double(row.mean_se) << ',' << format_double(row.outage) << ',' << row.n
        << '\n';
  }
}

inline void write_metrics_csv(const MetricsTable& table, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  write_metrics_csv(table, f);
}

}  // namespace pass
