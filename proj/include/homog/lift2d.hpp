#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "homog/circle_field.hpp"

namespace homog {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }

struct PlanePoint {
  double r = 0.0;
  double theta = 0.0;

  static PlanePoint from_cartesian(double x1, double x2);
  double x1() const;
  double x2() const;
};

struct LiftedEuler {
  double omega = 0.0;
  Vec2 u;
  double psi = 0.0;
};

/// Degree-0 vorticity omega = h(theta) with its degree-1 velocity and degree-2
/// stream function Psi = r^2 H(theta). Precomputes H and H'.
class EulerLift {
 public:
  explicit EulerLift(const CircleField& h);
  LiftedEuler at(const PlanePoint& p) const;

 private:
  CircleField h_, H_, dH_;
};

/// u = 2H r(-sin, cos) - H' r(cos, sin).
LiftedEuler lift_euler(const CircleField& h, const PlanePoint& p);

struct LiftedSQG {
  double scalar = 0.0;
  Vec2 u;
  double psi = 0.0;
};

/// Theta = r^{2 - 2 alpha} g, u = -2G r(-sin, cos) + G' r(cos, sin), Psi =
/// r^2 G. For alpha = 1/2 G defaults to solve_stream_sqg(g); other alpha
/// need G from the caller (ConfigError otherwise).
class SQGLift {
 public:
  SQGLift(const CircleField& g, double alpha, std::optional<CircleField> G = std::nullopt);
  LiftedSQG at(const PlanePoint& p) const;

 private:
  double alpha_;
  CircleField g_, G_, dG_;
};

LiftedSQG lift_sqg(const CircleField& g, double alpha, const PlanePoint& p,
                   std::optional<CircleField> G = std::nullopt);

/// Biot-Savart kernel K(z) = z^perp / (2 pi |z|^2).
Vec2 biot_savart(double z1, double z2);

/// (1/m) sum_i K(x - O^i y), O the rotation by 2 pi / m. Throws DomainError
/// when x coincides with a rotated image of y.
Vec2 k2d_symmetrized(const PlanePoint& x, const PlanePoint& y, int m);

struct DecayRow {
  /// |y| / |x|.
  double distance_ratio = 0.0;
  /// max over sampled directions of |K^(m)| |y|^m / |x|^{m-1}.
  double max_ratio = 0.0;
  /// \int_{2|x| < |y| < distance_ratio |x|} |K^(m)(x, y)| dy for |x| = 1.
  double tail_integral = 0.0;
};

/// Decay of the symmetrized kernel over the given |y|/|x| values, with
/// `directions` random direction pairs per row.
std::vector<DecayRow> kernel_decay_study(int m, const std::vector<double>& distance_ratios,
                                         int directions = 1000, std::uint64_t seed = 1);

/// Samples on a log-radial x angular grid: values[i * n_theta + j] at radius
/// radii[i] and angle 2 pi j / n_theta.
struct RingGrid {
  std::vector<double> radii;
  std::size_t n_theta = 0;
  std::vector<double> values;

  double angle(std::size_t j) const {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(n_theta);
  }
  double at(std::size_t i, std::size_t j) const { return values[i * n_theta + j]; }
};

RingGrid sample_rings(const std::vector<double>& radii, std::size_t n_theta,
                      const std::function<double(const PlanePoint&)>& f);

/// sup |f| + sup over pairs of min(|x|, |x'|)^alpha |f(x) - f(x')| / |x - x'|^alpha,
/// pairs taken within each ring and between adjacent rings. Throws DomainError
/// for a degenerate grid.
double ring_norm(const RingGrid& f, double alpha);

/// The same pair supremum without the min(|x|, |x'|)^alpha weight, over ring i.
double ring_holder_unweighted(const RingGrid& f, std::size_t ring, double alpha);

}  // namespace homog
