#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace homog {

inline constexpr double kSectorWidth = 1.5707963267948966;  // pi/2

/// Point vortices on the fundamental sector [0, pi/2) of a 4-fold symmetric
/// configuration. Angles are strictly increasing; the cyclic gap closes
/// through pi/2.
struct VortexSystem {
  std::vector<double> theta;
  std::vector<double> weights;
  double t = 0.0;

  std::size_t size() const { return theta.size(); }
};

/// Validates sizes, range and ordering. Throws DomainError.
VortexSystem make_vortex_system(std::vector<double> theta, std::vector<double> weights);

/// d theta_j / dt = (2/pi) sum_l a_l sin|2 theta_l - 2 theta_j|.
std::vector<double> vortex_rhs(const VortexSystem& v);

/// Adjacent gaps theta_{j+1} - theta_j, j = 0..N-2.
std::vector<double> gaps(const VortexSystem& v);

/// Smallest gap including the cyclic one.
double min_cyclic_gap(const VortexSystem& v);

inline constexpr double kVortexDtCap = 1e-2;
inline constexpr double kMinGap = 1e-9;

/// Classical RK4. Angles are reduced to [0, pi/2) by cyclic relabeling.
/// Throws PreconditionError when dt > dt_cap and PhysicsAbort when the
/// ordering breaks or a gap falls below 1e-9.
VortexSystem step_rk4(const VortexSystem& v, double dt, double dt_cap = kVortexDtCap);

struct GapPoint {
  double z1 = 0.0;
  double z2 = 0.0;
};

/// Whether (z1, z2) lies in the open triangle z1, z2 > 0, z1 + z2 < pi/2.
bool in_gap_triangle(double z1, double z2);

/// (sin(2z1+2z2) - sin 2z2, sin 2z1 - sin(2z1+2z2)). Throws DomainError
/// outside the triangle.
GapPoint gap_rhs(double z1, double z2);

/// cos 2z1 + cos 2z2 - cos(2z1 + 2z2).
double hamiltonian(double z1, double z2);

GapPoint step_gap_rk4(const GapPoint& z, double dt);

/// Factor c with d z/dt (three equal vortices of weight a) = c * gap_rhs(z),
/// measured from the vortex equations at a sample point.
double gap_time_scale(double weight = 1.0);

/// Point (s, s) on the diagonal with hamiltonian = energy, for energy in
/// (1, 3/2]. Throws DomainError otherwise.
GapPoint diagonal_point(double energy);

struct GapOrbit {
  std::vector<double> t;
  std::vector<double> z1;
  std::vector<double> z2;
};

/// RK4 samples of the gap system at every step.
GapOrbit integrate_gap(const GapPoint& z0, double dt, double t_end);

struct PeriodReport {
  enum class Kind { Periodic, FixedPoint, NotFound };
  Kind kind = Kind::NotFound;
  double period = 0.0;
  /// Distance of the refined return point from the start.
  double closure = 0.0;
};

/// First return to the section {z1 = z1(0)} with the initial crossing
/// direction, refined by bisection on the cubic Hermite interpolant. A start
/// within 1e-9 of the maximum energy 3/2 is reported as a fixed point.
PeriodReport detect_period(const GapOrbit& orbit, double tol = 1e-5);

}  // namespace homog
