#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "homog/circle_field.hpp"

namespace homog::interp {

/// Location of theta on the uniform grid theta_j = -pi + j h: theta lies in
/// [theta_base, theta_base + h) with theta_base = -pi + base * h (base may be
/// outside [0, n) when theta is not reduced).
struct GridPosition {
  long base;
  double frac;
};

inline GridPosition locate(double theta, std::size_t n) {
  const double h = kTwoPi / static_cast<double>(n);
  const double x = (theta + kPi) / h;
  const double fl = std::floor(x);
  return {static_cast<long>(fl), x - fl};
}

inline std::size_t wrap_index(long i, std::size_t n) {
  const long ni = static_cast<long>(n);
  long r = i % ni;
  if (r < 0) r += ni;
  return static_cast<std::size_t>(r);
}

/// 4-point Lagrange weights for the stencil base-1 .. base+2 at offset s.
inline void cubic_weights(double s, double w[4]) {
  w[0] = -s * (s - 1.0) * (s - 2.0) / 6.0;
  w[1] = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
  w[2] = -(s + 1.0) * s * (s - 2.0) / 2.0;
  w[3] = (s + 1.0) * s * (s - 1.0) / 6.0;
}

/// d/ds of the weights above.
inline void cubic_weight_derivatives(double s, double w[4]) {
  w[0] = -(3.0 * s * s - 6.0 * s + 2.0) / 6.0;
  w[1] = (3.0 * s * s - 4.0 * s - 1.0) / 2.0;
  w[2] = -(3.0 * s * s - 2.0 * s - 2.0) / 2.0;
  w[3] = (3.0 * s * s - 1.0) / 6.0;
}

/// Periodic cubic interpolation of node data q at theta.
inline double periodic_cubic(std::span<const double> q, double theta) {
  const auto p = locate(theta, q.size());
  double w[4];
  cubic_weights(p.frac, w);
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += w[i] * q[wrap_index(p.base - 1 + i, q.size())];
  return sum;
}

/// Derivative of the periodic cubic interpolant.
inline double periodic_cubic_derivative(std::span<const double> q, double theta) {
  const auto p = locate(theta, q.size());
  double w[4];
  cubic_weight_derivatives(p.frac, w);
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += w[i] * q[wrap_index(p.base - 1 + i, q.size())];
  const double h = kTwoPi / static_cast<double>(q.size());
  return sum / h;
}

/// Cubic interpolation clamped to the two bracketing node values.
inline double periodic_cubic_limited(std::span<const double> q, double theta) {
  const auto p = locate(theta, q.size());
  double w[4];
  cubic_weights(p.frac, w);
  double v[4];
  for (int i = 0; i < 4; ++i) v[i] = q[wrap_index(p.base - 1 + i, q.size())];
  double sum = w[0] * v[0] + w[1] * v[1] + w[2] * v[2] + w[3] * v[3];
  const double lo = std::min(v[1], v[2]);
  const double hi = std::max(v[1], v[2]);
  return std::clamp(sum, lo, hi);
}

}  // namespace homog::interp
