#include "homog/pointvortex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "homog/circle_field.hpp"
#include "homog/error.hpp"

namespace homog {
namespace {

void check_ordering(const VortexSystem& v) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!std::isfinite(v.theta[j])) throw PhysicsAbort("non-finite vortex angle");
  }
  const double gap = min_cyclic_gap(v);
  if (!(gap > kMinGap)) {
    std::ostringstream msg;
    msg << "vortex ordering lost at t = " << v.t << " (min gap " << gap
        << "); the step size is too large";
    throw PhysicsAbort(msg.str());
  }
}

// Moves angles that left [0, pi/2) to the other end, keeping cyclic order.
void reduce_to_sector(VortexSystem& v) {
  const std::size_t n = v.size();
  if (n == 0) return;
  for (std::size_t guard = 0; guard < n; ++guard) {
    if (v.theta.back() >= kSectorWidth) {
      std::rotate(v.theta.rbegin(), v.theta.rbegin() + 1, v.theta.rend());
      std::rotate(v.weights.rbegin(), v.weights.rbegin() + 1, v.weights.rend());
      v.theta.front() -= kSectorWidth;
    } else if (v.theta.front() < 0.0) {
      std::rotate(v.theta.begin(), v.theta.begin() + 1, v.theta.end());
      std::rotate(v.weights.begin(), v.weights.begin() + 1, v.weights.end());
      v.theta.back() += kSectorWidth;
    } else {
      break;
    }
  }
}

double hermite(double y0, double y1, double d0, double d1, double h, double s) {
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * y1 +
         (s3 - s2) * h * d1;
}

}  // namespace

VortexSystem make_vortex_system(std::vector<double> theta, std::vector<double> weights) {
  if (theta.empty()) throw DomainError("a vortex system needs at least one vortex");
  if (theta.size() != weights.size()) {
    throw DomainError("theta and weights must have the same length");
  }
  for (std::size_t j = 0; j < theta.size(); ++j) {
    if (!(theta[j] >= 0.0 && theta[j] < kSectorWidth)) {
      throw DomainError("vortex angles must lie in [0, pi/2)");
    }
    if (j > 0 && !(theta[j] > theta[j - 1])) {
      throw DomainError("vortex angles must be strictly increasing");
    }
  }
  return VortexSystem{std::move(theta), std::move(weights), 0.0};
}

std::vector<double> vortex_rhs(const VortexSystem& v) {
  std::vector<double> rate(v.size(), 0.0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    double sum = 0.0;
    for (std::size_t l = 0; l < v.size(); ++l) {
      sum += v.weights[l] * std::sin(std::abs(2.0 * v.theta[l] - 2.0 * v.theta[j]));
    }
    rate[j] = 2.0 / kPi * sum;
  }
  return rate;
}

std::vector<double> gaps(const VortexSystem& v) {
  std::vector<double> z;
  for (std::size_t j = 0; j + 1 < v.size(); ++j) z.push_back(v.theta[j + 1] - v.theta[j]);
  return z;
}

double min_cyclic_gap(const VortexSystem& v) {
  if (v.size() < 2) return kSectorWidth;
  double gap = v.theta.front() + kSectorWidth - v.theta.back();
  for (double z : gaps(v)) gap = std::min(gap, z);
  return gap;
}

VortexSystem step_rk4(const VortexSystem& v, double dt, double dt_cap) {
  if (!(dt > 0.0) || dt > dt_cap) {
    std::ostringstream msg;
    msg << "vortex dt must lie in (0, " << dt_cap << "], got " << dt;
    throw PreconditionError(msg.str());
  }
  const std::size_t n = v.size();
  auto shifted = [&](const std::vector<double>& k, double c) {
    VortexSystem w = v;
    for (std::size_t j = 0; j < n; ++j) w.theta[j] += c * k[j];
    return w;
  };
  const auto k1 = vortex_rhs(v);
  const auto k2 = vortex_rhs(shifted(k1, 0.5 * dt));
  const auto k3 = vortex_rhs(shifted(k2, 0.5 * dt));
  const auto k4 = vortex_rhs(shifted(k3, dt));
  VortexSystem out = v;
  for (std::size_t j = 0; j < n; ++j) {
    out.theta[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  out.t = v.t + dt;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (!(out.theta[j + 1] > out.theta[j])) {
      throw PhysicsAbort("vortex ordering lost; the step size is too large");
    }
  }
  reduce_to_sector(out);
  check_ordering(out);
  return out;
}

bool in_gap_triangle(double z1, double z2) {
  return z1 > 0.0 && z2 > 0.0 && z1 + z2 < kSectorWidth;
}

GapPoint gap_rhs(double z1, double z2) {
  if (!in_gap_triangle(z1, z2)) {
    std::ostringstream msg;
    msg << "gap point (" << z1 << ", " << z2 << ") outside the triangle z1, z2 > 0, z1 + z2 < pi/2";
    throw DomainError(msg.str());
  }
  const double s12 = std::sin(2.0 * z1 + 2.0 * z2);
  return {s12 - std::sin(2.0 * z2), std::sin(2.0 * z1) - s12};
}

double hamiltonian(double z1, double z2) {
  return std::cos(2.0 * z1) + std::cos(2.0 * z2) - std::cos(2.0 * z1 + 2.0 * z2);
}

GapPoint step_gap_rk4(const GapPoint& z, double dt) {
  const auto k1 = gap_rhs(z.z1, z.z2);
  const auto k2 = gap_rhs(z.z1 + 0.5 * dt * k1.z1, z.z2 + 0.5 * dt * k1.z2);
  const auto k3 = gap_rhs(z.z1 + 0.5 * dt * k2.z1, z.z2 + 0.5 * dt * k2.z2);
  const auto k4 = gap_rhs(z.z1 + dt * k3.z1, z.z2 + dt * k3.z2);
  return {z.z1 + dt / 6.0 * (k1.z1 + 2.0 * k2.z1 + 2.0 * k3.z1 + k4.z1),
          z.z2 + dt / 6.0 * (k1.z2 + 2.0 * k2.z2 + 2.0 * k3.z2 + k4.z2)};
}

double gap_time_scale(double weight) {
  const double z1 = 0.3, z2 = 0.5;
  const auto v = make_vortex_system({0.1, 0.1 + z1, 0.1 + z1 + z2}, {weight, weight, weight});
  const auto rate = vortex_rhs(v);
  const auto g = gap_rhs(z1, z2);
  return (rate[1] - rate[0]) / g.z1;
}

GapPoint diagonal_point(double energy) {
  if (!(energy > 1.0 && energy <= 1.5)) {
    throw DomainError("diagonal energy must lie in (1, 3/2]");
  }
  // E(s, s) = 2 cos 2s - cos 4s increases from 1 to 3/2 on (0, pi/6].
  double lo = 0.0, hi = kPi / 6.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hamiltonian(mid, mid) < energy) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double s = 0.5 * (lo + hi);
  return {s, s};
}

GapOrbit integrate_gap(const GapPoint& z0, double dt, double t_end) {
  if (!(dt > 0.0)) throw PreconditionError("gap dt must be positive");
  GapOrbit orbit;
  GapPoint z = z0;
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  orbit.t.reserve(steps + 1);
  orbit.z1.reserve(steps + 1);
  orbit.z2.reserve(steps + 1);
  orbit.t.push_back(0.0);
  orbit.z1.push_back(z.z1);
  orbit.z2.push_back(z.z2);
  for (std::size_t i = 1; i <= steps; ++i) {
    z = step_gap_rk4(z, dt);
    orbit.t.push_back(static_cast<double>(i) * dt);
    orbit.z1.push_back(z.z1);
    orbit.z2.push_back(z.z2);
  }
  return orbit;
}

PeriodReport detect_period(const GapOrbit& orbit, double tol) {
  PeriodReport rep;
  if (orbit.t.size() < 3) return rep;
  const double a1 = orbit.z1[0], a2 = orbit.z2[0];
  if (1.5 - hamiltonian(a1, a2) <= 1e-9) {
    rep.kind = PeriodReport::Kind::FixedPoint;
    return rep;
  }
  const auto d0 = gap_rhs(a1, a2);
  // Section z1 = z1(0), crossed in the starting direction of z1; the z2
  // section when z1 starts at a turning point.
  const bool use_z1 = std::abs(d0.z1) >= std::abs(d0.z2);
  const double level = use_z1 ? a1 : a2;
  const double dir = use_z1 ? d0.z1 : d0.z2;
  const auto coord = [&](std::size_t i) { return use_z1 ? orbit.z1[i] : orbit.z2[i]; };
  const auto other = [&](std::size_t i) { return use_z1 ? orbit.z2[i] : orbit.z1[i]; };

  for (std::size_t i = 1; i + 1 < orbit.t.size(); ++i) {
    const double f0 = (coord(i) - level) * dir;
    const double f1 = (coord(i + 1) - level) * dir;
    if (!(f0 < 0.0 && f1 >= 0.0)) continue;
    const double h = orbit.t[i + 1] - orbit.t[i];
    const auto r0 = gap_rhs(orbit.z1[i], orbit.z2[i]);
    const auto r1 = gap_rhs(orbit.z1[i + 1], orbit.z2[i + 1]);
    const double c0 = use_z1 ? r0.z1 : r0.z2, c1 = use_z1 ? r1.z1 : r1.z2;
    const double o0 = use_z1 ? r0.z2 : r0.z1, o1 = use_z1 ? r1.z2 : r1.z1;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double f = (hermite(coord(i), coord(i + 1), c0, c1, h, mid) - level) * dir;
      if (f < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double s = 0.5 * (lo + hi);
    const double t_cross = orbit.t[i] + s * h;
    const double o_cross = hermite(other(i), other(i + 1), o0, o1, h, s);
    const double start_other = use_z1 ? a2 : a1;
    const double closure = std::abs(o_cross - start_other);
    if (closure <= tol) {
      rep.kind = PeriodReport::Kind::Periodic;
      rep.period = t_cross - orbit.t[0];
      rep.closure = closure;
      return rep;
    }
  }
  return rep;
}

}  // namespace homog
