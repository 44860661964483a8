#pragma once

#include <optional>
#include <string>

#include "homog/circle_field.hpp"

namespace homog {

/// 1/(4 - k^2) for |k| != 2, zero at |k| = 2.
double euler_multiplier(long k);

/// 1/(-|k| - 3|k|/(k^2 - 1)) for |k| >= 2, zero for |k| <= 1.
double sqg_multiplier(long k);

/// Closed-form 1D Biot-Savart kernel of the radially homogeneous Euler
/// problem, theta reduced to [-pi, pi):
///   (pi/2) sin(2t) sign(t) - (1/2) t sin(2t) - (1/8) cos(2t).
double k_circle(double theta);

/// m-fold average (1/m) sum_j k_circle(theta + 2 pi j / m). Requires m >= 3.
double k_circle_symmetrized(double theta, int m);

struct StreamSolution {
  CircleField stream;
  /// max |h_{+-2}| of the input.
  double mode2_amplitude = 0.0;
  /// Set when the input carries modes +-2 above 1e-8; those modes are dropped.
  std::optional<std::string> warning;
};

/// Solves 4H + H'' = h with H orthogonal to exp(+-2i theta).
StreamSolution solve_stream_euler(const CircleField& h);

/// G_k = sqg_multiplier(k) g_k. Throws PreconditionError unless
/// g_0 = g_{+-1} = 0 to 1e-10.
CircleField solve_stream_sqg(const CircleField& g);

struct HPrimeEndpoints {
  double at_zero = 0.0;
  double at_quarter = 0.0;
};

/// H'(0) = -\int_0^{pi/4} cos(2t) h dt and H'(pi/4) = \int_0^{pi/4} sin(2t) h dt
/// for 4-fold data odd about 0. Throws DomainError otherwise.
HPrimeEndpoints h_prime_endpoints(const CircleField& h);

}  // namespace homog
