// Scenario and semantic-model configuration shared by every module.
// All internal quantities are SI (meters, watts, Hz, radians); dBm/dB
// conversions happen only at the CLI/config boundary.
#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pass {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

inline double dbm_to_watts(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double p_w) { return 10.0 * std::log10(p_w) + 30.0; }

struct ScenarioConfig {
  double fc = 28e9;          // carrier frequency (Hz)
  double d = 3.0;            // antenna height (m)
  double D = 20.0;           // square service region side (m)
  int N = 3;                 // pinching antennas on the single waveguide
  int K_wg = 3;              // waveguide count (multi-waveguide scenario)
  double eta_eff = 1.4;      // effective refractive index of the waveguide
  double delta_min = 0.0;    // adjacent antenna spacing (m); 0 -> lambda/2
  double delta_fine = 0.0;   // fine-tuning step (m); 0 -> lambda/10
  double P_max = 1e-2;       // transmit power (W); 10 dBm default
  double sigma2 = 1e-12;     // noise power (W); -90 dBm default
  double R_B_min = 0.5;      // bit-user QoS (bps/Hz)
  double delta_S = 0.02;     // semantic-user phase precision (rad)
  double delta_B = 0.02;     // bit-user phase precision (rad)
  double bisect_tol = 0.0;   // bisection tolerance (m); 0 -> lambda/100
  double mm_grid_step = 0.01;  // simplex grid step r
  int max_iters = 50;          // AO / MM iteration cap
  std::uint64_t rng_seed = 1;

  double lambda() const { return kSpeedOfLight / fc; }
  double lambda_g() const { return lambda() / eta_eff; }
  double eta() const { return lambda() * lambda() / (16.0 * kPi * kPi); }
  double spacing() const { return delta_min > 0 ? delta_min : lambda() / 2.0; }
  double fine_step() const { return delta_fine > 0 ? delta_fine : lambda() / 10.0; }
  double bisection_tol() const { return bisect_tol > 0 ? bisect_tol : lambda() / 100.0; }

  void validate() const {
    auto bad = [](const std::string& key) {
      throw std::invalid_argument("ScenarioConfig: invalid value for " + key);
    };
    if (!(fc > 0)) bad("fc");
    if (!(d > 0)) bad("d");
    if (!(D > 0)) bad("D");
    if (N < 1) bad("N");
    if (K_wg < 1) bad("K_wg");
    if (!(eta_eff > 1)) bad("eta_eff");
    if (!(sigma2 > 0)) bad("sigma2");
    if (!(P_max > 0)) bad("P_max");
    if (!(mm_grid_step > 0 && mm_grid_step <= 1)) bad("mm_grid_step");
    if (!(R_B_min >= 0)) bad("R_B_min");
    if (spacing() < lambda() / 2.0 * (1.0 - 1e-12)) bad("delta_min");
    if (max_iters < 1) bad("max_iters");
  }
};

struct SemanticConfig {
  int K = 5;               // semantic symbols per word
  double I_over_L = 1.0;   // semantic information per word (suts)
  double A1 = 0.37;        // logistic lower asymptote
  double A2 = 0.98;        // logistic upper asymptote
  double C1 = 0.25;        // logistic growth rate
  double C2 = -0.7895;     // logistic midpoint
  double mu = 40.0;        // stored for completeness, not used by any rate formula

  void validate() const {
    auto bad = [](const std::string& key) {
      throw std::invalid_argument("SemanticConfig: invalid value for " + key);
    };
    if (!(0 <= A1 && A1 < A2 && A2 <= 1)) bad("A1/A2");
    if (K < 1) bad("K");
    if (!(I_over_L > 0)) bad("I_over_L");
  }
};

// Minimal "key = value" config file with optional [scenario] / [semantic]
// sections. Every key is optional; unknown keys are rejected.
struct Config {
  ScenarioConfig scenario;
  SemanticConfig semantic;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace detail

inline Config parse_config(std::istream& in) {
  Config cfg;
  std::string line;
  std::string section = "scenario";
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section != "scenario" && section != "semantic")
        throw std::invalid_argument("config: unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value at line " + std::to_string(lineno));
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    double x = 0;
    try {
      x = std::stod(val);
    } catch (const std::exception&) {
      throw std::invalid_argument("config: bad numeric value for key " + key);
    }
    ScenarioConfig& s = cfg.scenario;
    SemanticConfig& m = cfg.semantic;
    if (section == "scenario") {
      if (key == "fc") s.fc = x;
      else if (key == "d") s.d = x;
      else if (key == "D") s.D = x;
      else if (key == "N") s.N = static_cast<int>(x);
      else if (key == "K_wg") s.K_wg = static_cast<int>(x);
      else if (key == "eta_eff") s.eta_eff = x;
      else if (key == "delta_min") s.delta_min = x;
      else if (key == "delta_fine") s.delta_fine = x;
      else if (key == "P_max_dbm") s.P_max = dbm_to_watts(x);
      else if (key == "sigma2_dbm") s.sigma2 = dbm_to_watts(x);
      else if (key == "R_B_min") s.R_B_min = x;
      else if (key == "delta_S") s.delta_S = x;
      else if (key == "delta_B") s.delta_B = x;
      else if (key == "bisect_tol") s.bisect_tol = x;
      else if (key == "mm_grid_step") s.mm_grid_step = x;
      else if (key == "max_iters") s.max_iters = static_cast<int>(x);
      else if (key == "rng_seed") s.rng_seed = static_cast<std::uint64_t>(x);
      else throw std::invalid_argument("config: unknown key " + key);
    } else {
      if (key == "K") m.K = static_cast<int>(x);
      else if (key == "I_over_L") m.I_over_L = x;
      else if (key == "A1") m.A1 = x;
      else if (key == "A2") m.A2 = x;
      else if (key == "C1") m.C1 = x;
      else if (key == "C2") m.C2 = x;
      else if (key == "mu") m.mu = x;
      else throw std::invalid_argument("config: unknown key " + key);
    }
  }
  cfg.scenario.validate();
  cfg.semantic.validate();
  return cfg;
}

inline Config load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("config: cannot open " + path);
  return parse_config(f);
}

}  // namespace pass
