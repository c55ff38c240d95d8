// Command-line front end for the simulation engine. Subcommands cover the
// power sweep, the QoS sweep, distance-ratio binning, a config/consistency
// check and a single-realization trace.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pass/sim.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::vector<std::string> scheme_names{"pass-single", "cas"};
  long realizations = 10000;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool condition_on_feasible = false;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config_path, "INI config file (sections [scenario], [semantic])")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", a.out_path, "output CSV path (default: stdout)");
  cmd->add_option("--scheme", a.scheme_names,
                  "schemes to run: pass-single, pass-multi, cas, fixed-pinch, no-finetune");
  cmd->add_option("--realizations", a.realizations, "Monte Carlo draws per sweep point")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a.seed, "RNG seed override")->each([&a](const std::string&) {
    a.seed_set = true;
  });
  cmd->add_flag("--condition-on-feasible", a.condition_on_feasible,
                "average SE over feasible draws only (default counts outages as 0)");
}

pass::Config load_or_default(const CommonArgs& a) {
  pass::Config cfg;
  if (!a.config_path.empty()) cfg = pass::load_config(a.config_path);
  if (a.seed_set) cfg.scenario.rng_seed = a.seed;
  cfg.scenario.validate();
  cfg.semantic.validate();
  return cfg;
}

std::vector<pass::Scheme> parse_schemes(const std::vector<std::string>& names) {
  std::vector<pass::Scheme> out;
  for (const std::string& n : names) out.push_back(pass::scheme_from_name(n));
  return out;
}

// PASS_OUT_DIR, when set, prefixes relative --out paths.
std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("PASS_OUT_DIR");
  if (!dir || !*dir) return path;
  std::string d(dir);
  if (d.back() != '/') d += '/';
  return d + path;
}

void emit(const pass::MetricsTable& table, const std::string& out_path) {
  if (out_path.empty()) {
    pass::write_metrics_csv(table, std::cout);
  } else {
    const std::string path = resolve_out(out_path);
    pass::write_metrics_csv(table, path);
    std::cerr << "wrote " << path << "\n";
  }
}

std::vector<double> make_range(double from, double to, double step) {
  if (!(step > 0)) throw std::invalid_argument("sweep step must be positive");
  std::vector<double> v;
  for (double x = from; x <= to + 1e-9; x += step) v.push_back(x);
  if (v.empty()) throw std::invalid_argument("empty sweep range");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pinching-antenna semantic NOMA simulator"};
  app.require_subcommand(1);

  CommonArgs sweep_a, qos_a, ratio_a, verify_a, trace_a;

  // power sweep
  auto* sweep = app.add_subcommand("sweep-power", "mean SE and outage vs transmit power (dBm)");
  add_common(sweep, sweep_a);
  double p_from = 0, p_to = 20, p_step = 5;
  sweep->add_option("--from", p_from, "first power value (dBm)");
  sweep->add_option("--to", p_to, "last power value (dBm)");
  sweep->add_option("--step", p_step, "power increment (dBm)");

  // QoS sweep
  auto* qos = app.add_subcommand("sweep-qos", "mean SE and outage vs bit-rate QoS (bps/Hz)");
  add_common(qos, qos_a);
  double q_from = 0.25, q_to = 2.0, q_step = 0.25;
  qos->add_option("--from", q_from, "first QoS value (bps/Hz)");
  qos->add_option("--to", q_to, "last QoS value (bps/Hz)");
  qos->add_option("--step", q_step, "QoS increment (bps/Hz)");

  // distance-ratio bins
  auto* ratio = app.add_subcommand("ratio-bins", "mean SE binned by |phi_S| / |phi_B|");
  add_common(ratio, ratio_a);
  double bin_width = 0.25, max_ratio = 2.0;
  ratio->add_option("--bin-width", bin_width, "ratio bin width")->check(CLI::PositiveNumber);
  ratio->add_option("--max-ratio", max_ratio, "largest binned ratio")->check(CLI::PositiveNumber);

  // config check
  auto* verify = app.add_subcommand("verify", "validate the config and print derived quantities");
  add_common(verify, verify_a);

  // one realization, verbose
  auto* trace = app.add_subcommand("trace", "solve one realization and print the details");
  add_common(trace, trace_a);
  long trace_index = 0;
  trace->add_option("--index", trace_index, "realization index within the seed stream");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed() || qos->parsed()) {
      const bool is_power = sweep->parsed();
      CommonArgs& a = is_power ? sweep_a : qos_a;
      const pass::Config cfg = load_or_default(a);
      pass::SweepSpec spec;
      spec.variable = is_power ? pass::SweepVariable::PowerDbm : pass::SweepVariable::QosBpsHz;
      spec.values = is_power ? make_range(p_from, p_to, p_step) : make_range(q_from, q_to, q_step);
      spec.realizations = a.realizations;
      spec.policy = a.condition_on_feasible ? pass::InfeasiblePolicy::ConditionOnFeasible
                                            : pass::InfeasiblePolicy::ZeroFill;
      const pass::MetricsTable table =
          pass::run_sweep(cfg.scenario, cfg.semantic, parse_schemes(a.scheme_names), spec);
      emit(table, a.out_path);
    } else if (ratio->parsed()) {
      const pass::Config cfg = load_or_default(ratio_a);
      pass::MetricsTable table;
      table.sweep_name = "ratio_bin_center";
      for (pass::Scheme s : parse_schemes(ratio_a.scheme_names)) {
        std::vector<pass::RealizationResult> results;
        results.reserve(static_cast<std::size_t>(ratio_a.realizations));
        for (long i = 0; i < ratio_a.realizations; ++i) {
          const pass::UserPair u = pass::sample_users(
              cfg.scenario.rng_seed, static_cast<std::uint64_t>(i), cfg.scenario.D);
          results.push_back(pass::run_realization(s, u, cfg.scenario, cfg.semantic));
        }
        const pass::MetricsTable part = pass::ratio_binned_se(results, bin_width, max_ratio);
        table.rows.insert(table.rows.end(), part.rows.begin(), part.rows.end());
      }
      emit(table, ratio_a.out_path);
    } else if (verify->parsed()) {
      const pass::Config cfg = load_or_default(verify_a);
      std::cout << "config ok\n"
                << "lambda      = " << cfg.scenario.lambda() << " m\n"
                << "lambda_g    = " << cfg.scenario.lambda_g() << " m\n"
                << "eta         = " << cfg.scenario.eta() << "\n"
                << "spacing     = " << cfg.scenario.spacing() << " m\n"
                << "P_max       = " << pass::watts_to_dbm(cfg.scenario.P_max) << " dBm\n"
                << "sigma2      = " << pass::watts_to_dbm(cfg.scenario.sigma2) << " dBm\n"
                << "qos tau     = " << pass::qos_threshold(cfg.scenario.R_B_min) << "\n";
    } else if (trace->parsed()) {
      const pass::Config cfg = load_or_default(trace_a);
      const pass::UserPair u = pass::sample_users(
          cfg.scenario.rng_seed, static_cast<std::uint64_t>(trace_index), cfg.scenario.D);
      std::cout << "user_S = (" << u.S.x << ", " << u.S.y << ")\n"
                << "user_B = (" << u.B.x << ", " << u.B.y << ")\n";
      for (pass::Scheme s : parse_schemes(trace_a.scheme_names)) {
        const pass::RealizationResult r =
            pass::run_realization(s, u, cfg.scenario, cfg.semantic);
        std::cout << pass::scheme_name(s) << ": feasible=" << (r.feasible ? "yes" : "no")
                  << " semantic_se=" << r.semantic_se << " bit_rate=" << r.bit_rate
                  << " alpha_S=" << r.alpha_S << " iterations=" << r.iterations << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
