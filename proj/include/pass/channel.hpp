// Spherical-wave channel model, waveguide phase propagation and the
// composite/effective gains for single- and multi-waveguide layouts.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pass/params.hpp"

namespace pass {

using cdouble = std::complex<double>;

struct Point3 {
  double x = 0, y = 0, z = 0;
};

inline double distance(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline double norm(const Point3& a) { return distance(a, Point3{}); }

// Wrap an angle to (-pi, pi].
inline double wrap_pi(double x) {
  double y = std::remainder(x, 2.0 * kPi);
  if (y <= -kPi) y += 2.0 * kPi;
  return y;
}

// Single waveguide along the x-axis at height d; antenna n sits at
// (positions[n], 0, d). Positions are kept strictly increasing.
struct SingleWgLayout {
  std::vector<double> positions;  // antenna x-coordinates (m), increasing
  Point3 feed;                    // waveguide feed point
  double height = 0;              // d (m)

  Point3 antenna(std::size_t n) const { return {positions[n], 0.0, height}; }

  double min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n < positions.size(); ++n)
      g = std::min(g, positions[n] - positions[n - 1]);
    return g;
  }
};

// One pinching antenna per waveguide; waveguide k runs along x at lateral
// offset offsets[k].
struct MultiWgLayout {
  std::vector<double> positions;  // longitudinal coordinate per waveguide (m)
  std::vector<double> offsets;    // lateral offset y^(k) per waveguide (m)
  double feed_x = 0;              // feeds sit at (feed_x, y^(k), d)
  double height = 0;

  Point3 antenna(std::size_t k) const { return {positions[k], offsets[k], height}; }
  Point3 feed(std::size_t k) const { return {feed_x, offsets[k], height}; }
};

inline cdouble free_space_gain(const Point3& user, const Point3& antenna, double lambda,
                               double eta) {
  const double r = distance(user, antenna);
  if (r <= 0) throw std::domain_error("free_space_gain: coincident user and antenna");
  const double phase = -2.0 * kPi * r / lambda;
  return std::sqrt(eta) / r * std::polar(1.0, phase);
}

inline double waveguide_phase(const Point3& feed, const Point3& antenna, double lambda_g) {
  return 2.0 * kPi * distance(feed, antenna) / lambda_g;
}

// g_m = sum_n h_{n,m} e^{-j theta_n}. The caller applies the uniform
// per-antenna power normalization 1/N when forming |g|^2 for the rate
// formulas.
inline cdouble composite_gain_single(const SingleWgLayout& layout, const Point3& user,
                                     double lambda, double lambda_g, double eta) {
  cdouble g = 0;
  for (std::size_t n = 0; n < layout.positions.size(); ++n) {
    const Point3 a = layout.antenna(n);
    const double theta = waveguide_phase(layout.feed, a, lambda_g);
    g += free_space_gain(user, a, lambda, eta) * std::polar(1.0, -theta);
  }
  return g;
}

// Residual between free-space and in-waveguide propagation phase, wrapped
// to (-pi, pi].
inline double phase_residual(const Point3& user, const Point3& antenna, const Point3& feed,
                             double lambda, double lambda_g) {
  const double raw =
      2.0 * kPi * (distance(user, antenna) / lambda - distance(feed, antenna) / lambda_g);
  return wrap_pi(raw);
}

// Per-waveguide complex gain h~_{k,m} (unit power split).
inline cdouble waveguide_gain(const MultiWgLayout& layout, std::size_t k, const Point3& user,
                              double lambda, double lambda_g, double eta) {
  const Point3 a = layout.antenna(k);
  const double theta = waveguide_phase(layout.feed(k), a, lambda_g);
  return free_space_gain(user, a, lambda, eta) * std::polar(1.0, -theta);
}

inline std::vector<cdouble> waveguide_gains(const MultiWgLayout& layout, const Point3& user,
                                            double lambda, double lambda_g, double eta) {
  std::vector<cdouble> h(layout.positions.size());
  for (std::size_t k = 0; k < h.size(); ++k)
    h[k] = waveguide_gain(layout, k, user, lambda, lambda_g, eta);
  return h;
}

// h_eff = sum_k z_k h~_{k,m}, with z the amplitude weights (z_k = sqrt(beta_k)).
inline cdouble effective_gain_multi(const MultiWgLayout& layout, const std::vector<double>& z,
                                    const Point3& user, double lambda, double lambda_g,
                                    double eta) {
  if (z.size() != layout.positions.size())
    throw std::invalid_argument("effective_gain_multi: weight/layout size mismatch");
  double z2 = 0;
  for (double zk : z) {
    if (zk < 0) throw std::invalid_argument("effective_gain_multi: negative weight");
    z2 += zk * zk;
  }
  if (std::abs(z2 - 1.0) > 1e-9)
    throw std::invalid_argument("effective_gain_multi: weights not on the unit sphere");
  cdouble h = 0;
  for (std::size_t k = 0; k < z.size(); ++k)
    h += z[k] * waveguide_gain(layout, k, user, lambda, lambda_g, eta);
  return h;
}

}  // namespace pass
