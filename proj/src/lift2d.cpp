#include "homog/lift2d.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "homog/error.hpp"
#include "homog/kernels.hpp"

namespace homog {
namespace {

Vec2 polar_velocity(double radial, double angular, double r, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {r * (radial * c - angular * s), r * (radial * s + angular * c)};
}

double pair_quotient(const RingGrid& f, std::size_t i, std::size_t j, std::size_t k,
                     std::size_t l, double alpha, bool weighted) {
  const double ri = f.radii[i], rk = f.radii[k];
  const double ti = f.angle(j), tk = f.angle(l);
  const double dx = ri * std::cos(ti) - rk * std::cos(tk);
  const double dy = ri * std::sin(ti) - rk * std::sin(tk);
  const double dist = std::hypot(dx, dy);
  if (dist == 0.0) return 0.0;
  const double diff = std::abs(f.at(i, j) - f.at(k, l));
  const double w = weighted ? std::pow(std::min(ri, rk), alpha) : 1.0;
  return w * diff / std::pow(dist, alpha);
}

void check_grid(const RingGrid& f) {
  if (f.radii.size() < 2 || f.n_theta < 4) {
    throw DomainError("ring grid needs at least 2 radii and 4 angles");
  }
  if (f.values.size() != f.radii.size() * f.n_theta) {
    throw DomainError("ring grid values do not match radii x angles");
  }
  for (std::size_t i = 0; i < f.radii.size(); ++i) {
    if (!(f.radii[i] > 0.0) || (i > 0 && !(f.radii[i] > f.radii[i - 1]))) {
      throw DomainError("ring radii must be positive and strictly increasing");
    }
  }
}

}  // namespace

PlanePoint PlanePoint::from_cartesian(double x1, double x2) {
  return {std::hypot(x1, x2), std::atan2(x2, x1)};
}

double PlanePoint::x1() const { return r * std::cos(theta); }
double PlanePoint::x2() const { return r * std::sin(theta); }

EulerLift::EulerLift(const CircleField& h)
    : h_(h), H_(solve_stream_euler(h).stream), dH_(derivative(H_)) {}

LiftedEuler EulerLift::at(const PlanePoint& p) const {
  const double H = H_.evaluate(p.theta);
  LiftedEuler out;
  out.omega = h_.evaluate(p.theta);
  out.u = polar_velocity(-dH_.evaluate(p.theta), 2.0 * H, p.r, p.theta);
  out.psi = p.r * p.r * H;
  return out;
}

LiftedEuler lift_euler(const CircleField& h, const PlanePoint& p) { return EulerLift(h).at(p); }

SQGLift::SQGLift(const CircleField& g, double alpha, std::optional<CircleField> G)
    : alpha_(alpha), g_(g) {
  if (G) {
    if (G->size() != g.size()) throw ConfigError("G", "stream profile size differs from g");
    G_ = *G;
  } else if (alpha == 0.5) {
    G_ = solve_stream_sqg(g);
  } else {
    throw ConfigError("G", "alpha != 1/2 needs a caller-supplied stream profile");
  }
  dG_ = derivative(G_);
}

LiftedSQG SQGLift::at(const PlanePoint& p) const {
  const double G = G_.evaluate(p.theta);
  LiftedSQG out;
  out.scalar = std::pow(p.r, 2.0 - 2.0 * alpha_) * g_.evaluate(p.theta);
  out.u = polar_velocity(dG_.evaluate(p.theta), -2.0 * G, p.r, p.theta);
  out.psi = p.r * p.r * G;
  return out;
}

LiftedSQG lift_sqg(const CircleField& g, double alpha, const PlanePoint& p,
                   std::optional<CircleField> G) {
  return SQGLift(g, alpha, std::move(G)).at(p);
}

Vec2 biot_savart(double z1, double z2) {
  const double r2 = z1 * z1 + z2 * z2;
  return {-z2 / (kTwoPi * r2), z1 / (kTwoPi * r2)};
}

Vec2 k2d_symmetrized(const PlanePoint& x, const PlanePoint& y, int m) {
  if (m < 1) throw DomainError("symmetry order must be >= 1");
  const double x1 = x.x1(), x2 = x.x2();
  Vec2 sum;
  for (int i = 0; i < m; ++i) {
    const double a = y.theta + kTwoPi * i / m;
    const double z1 = x1 - y.r * std::cos(a);
    const double z2 = x2 - y.r * std::sin(a);
    if (std::hypot(z1, z2) <= 1e-14 * std::max(1.0, x.r)) {
      std::ostringstream msg;
      msg << "x coincides with the rotated image " << i << " of y";
      throw DomainError(msg.str());
    }
    const auto k = biot_savart(z1, z2);
    sum.x += k.x;
    sum.y += k.y;
  }
  return {sum.x / m, sum.y / m};
}

std::vector<DecayRow> kernel_decay_study(int m, const std::vector<double>& distance_ratios,
                                         int directions, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::vector<std::pair<double, double>> dirs(static_cast<std::size_t>(directions));
  for (auto& d : dirs) d = {angle(rng), angle(rng)};

  // |K^(m)| is integrated over the annulus in log-radius (Simpson) and angle
  // (trapezoid, periodic) with x = (1, 0).
  const int n_phi = 256;
  auto ring_mean = [&](double rho) {
    double acc = 0.0;
    for (int k = 0; k < n_phi; ++k) {
      const double phi = -kPi + kTwoPi * (k + 0.5) / n_phi;
      acc += norm(k2d_symmetrized({1.0, 0.0}, {rho, phi}, m));
    }
    return acc * kTwoPi / n_phi;
  };
  auto tail = [&](double upper) {
    if (upper <= 2.0) return 0.0;
    const double a = std::log(2.0), b = std::log(upper);
    int panels = 2 * static_cast<int>(std::ceil(16.0 * (b - a)));
    const double h = (b - a) / panels;
    double acc = 0.0;
    for (int i = 0; i <= panels; ++i) {
      const double s = a + i * h;
      const double rho = std::exp(s);
      const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += w * ring_mean(rho) * rho * rho;
    }
    return acc * h / 3.0;
  };

  std::vector<DecayRow> rows;
  for (double ratio : distance_ratios) {
    DecayRow row;
    row.distance_ratio = ratio;
    for (const auto& [tx, ty] : dirs) {
      const PlanePoint x{1.0, tx};
      const PlanePoint y{ratio, ty};
      const double k = norm(k2d_symmetrized(x, y, m));
      row.max_ratio = std::max(row.max_ratio, k * std::pow(ratio, m));
    }
    row.tail_integral = tail(ratio);
    rows.push_back(row);
  }
  return rows;
}

RingGrid sample_rings(const std::vector<double>& radii, std::size_t n_theta,
                      const std::function<double(const PlanePoint&)>& f) {
  RingGrid g;
  g.radii = radii;
  g.n_theta = n_theta;
  g.values.resize(radii.size() * n_theta);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    for (std::size_t j = 0; j < n_theta; ++j) g.values[i * n_theta + j] = f({radii[i], g.angle(j)});
  }
  return g;
}

double ring_norm(const RingGrid& f, double alpha) {
  check_grid(f);
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  double sup = 0.0;
  for (double v : f.values) sup = std::max(sup, std::abs(v));
  double quotient = 0.0;
  const std::size_t nr = f.radii.size(), nt = f.n_theta;
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      for (std::size_t l = j + 1; l < nt; ++l) {
        quotient = std::max(quotient, pair_quotient(f, i, j, i, l, alpha, true));
      }
      if (i + 1 < nr) {
        for (std::size_t l = 0; l < nt; ++l) {
          quotient = std::max(quotient, pair_quotient(f, i, j, i + 1, l, alpha, true));
        }
      }
    }
  }
  return sup + quotient;
}

double ring_holder_unweighted(const RingGrid& f, std::size_t ring, double alpha) {
  check_grid(f);
  if (ring >= f.radii.size()) throw DomainError("ring index out of range");
  double quotient = 0.0;
  for (std::size_t j = 0; j < f.n_theta; ++j) {
    for (std::size_t l = j + 1; l < f.n_theta; ++l) {
      quotient = std::max(quotient, pair_quotient(f, ring, j, ring, l, alpha, false));
    }
  }
  return quotient;
}

}  // namespace homog
