#include "homog/euler1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "homog/error.hpp"
#include "homog/interp.hpp"

namespace homog {
namespace {

constexpr double kSpeedFloor = 1e-12;

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

CircleField stream_of(const CircleField& h) { return solve_stream_euler(h).stream; }

struct NodeSymmetry {
  long rotation_shift = 0;  // n/m when the rotation maps nodes to nodes
  bool rotation_exact = false;
  long mirror_offset = 0;   // j -> (offset - j) mod n
  bool mirror_exact = false;
};

NodeSymmetry node_symmetry(const SymmetrySpec& s, std::size_t n) {
  NodeSymmetry ns;
  if (s.m > 1 && n % static_cast<std::size_t>(s.m) == 0) {
    ns.rotation_exact = true;
    ns.rotation_shift = static_cast<long>(n / static_cast<std::size_t>(s.m));
  }
  if (s.odd_axis) {
    const double c = 2.0 * *s.odd_axis / (kTwoPi / static_cast<double>(n));
    if (std::abs(c - std::round(c)) < 1e-9) {
      ns.mirror_exact = true;
      ns.mirror_offset = static_cast<long>(std::llround(c));
    }
  }
  return ns;
}

std::vector<double> spectral_project(const std::vector<double>& v, const SymmetrySpec& s,
                                     Parity parity) {
  auto f = project_symmetry(CircleField::from_samples(v), SymmetrySpec{s.m, std::nullopt});
  if (s.odd_axis) f = project_parity(f, *s.odd_axis, parity);
  return {f.values().begin(), f.values().end()};
}

// Enforces the symmetry of the flow map: the displacement is m-periodic and
// odd about the axis, the stretch m-periodic and even about it.
void symmetrize_map(std::vector<double>& disp, std::vector<double>& stretch,
                    const SymmetrySpec& s) {
  const std::size_t n = disp.size();
  if (s.m <= 1 && !s.odd_axis) return;
  const auto ns = node_symmetry(s, n);
  const bool rotation_ok = s.m <= 1 || ns.rotation_exact;
  const bool mirror_ok = !s.odd_axis || ns.mirror_exact;
  if (!rotation_ok || !mirror_ok) {
    disp = spectral_project(disp, s, Parity::Odd);
    stretch = spectral_project(stretch, s, Parity::Even);
    return;
  }
  if (s.m > 1) {
    std::vector<double> d(n, 0.0), st(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      for (int l = 0; l < s.m; ++l) {
        const auto jj = interp::wrap_index(static_cast<long>(j) + l * ns.rotation_shift, n);
        d[j] += disp[jj];
        st[j] += stretch[jj];
      }
      d[j] /= s.m;
      st[j] /= s.m;
    }
    disp.swap(d);
    stretch.swap(st);
  }
  if (s.odd_axis) {
    std::vector<double> d(n), st(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto jm = interp::wrap_index(ns.mirror_offset - static_cast<long>(j), n);
      d[j] = 0.5 * (disp[j] - disp[jm]);
      st[j] = 0.5 * (stretch[j] + stretch[jm]);
    }
    disp.swap(d);
    stretch.swap(st);
  }
}

struct Preimage {
  double label;
  double stretch;  // phi'(label)
};

// Inverts the monotone label map phi(a) = a + disp(a) by cubic Hermite
// interpolation between labels.
Preimage invert_map(std::span<const double> disp, std::span<const double> stretch,
                    double theta) {
  const std::size_t n = disp.size();
  const double da = kTwoPi / static_cast<double>(n);
  auto phi = [&](std::size_t j) { return CircleField::node(j, n) + disp[j]; };
  const double phi0 = phi(0);
  const double shift = kTwoPi * std::floor((theta - phi0) / kTwoPi);
  const double target = theta - shift;

  std::size_t lo = 0, hi = n;  // phi(lo) <= target < phi(hi), phi(n) = phi0 + 2pi
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (phi(mid) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double p0 = phi(lo);
  const double p1 = hi == n ? phi0 + kTwoPi : phi(hi);
  const double m0 = stretch[lo] * da;
  const double m1 = stretch[hi % n] * da;
  auto hermite = [&](double x) {
    const double x2 = x * x, x3 = x2 * x;
    return (2 * x3 - 3 * x2 + 1) * p0 + (x3 - 2 * x2 + x) * m0 + (-2 * x3 + 3 * x2) * p1 +
           (x3 - x2) * m1;
  };
  auto hermite_slope = [&](double x) {
    const double x2 = x * x;
    return (6 * x2 - 6 * x) * p0 + (3 * x2 - 4 * x + 1) * m0 + (-6 * x2 + 6 * x) * p1 +
           (3 * x2 - 2 * x) * m1;
  };
  double a = 0.0, b = 1.0;
  double x = p1 > p0 ? std::clamp((target - p0) / (p1 - p0), 0.0, 1.0) : 0.0;
  for (int it = 0; it < 60; ++it) {
    const double r = hermite(x) - target;
    if (std::abs(r) <= 1e-15 * std::max(1.0, std::abs(target))) break;
    if (r > 0) {
      b = x;
    } else {
      a = x;
    }
    const double slope = hermite_slope(x);
    double next = slope > 0 ? x - r / slope : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (b - a < 1e-16) break;
    x = next;
  }
  return {CircleField::node(lo, n) + x * da + shift, hermite_slope(x) / da};
}

// Spectrum k = 0..n/2 of h(t) = initial o phi^{-1}, by the trapezoid rule in
// the labels: h_k = (1/2pi) sum_j initial(a_j) exp(i k phi_j) phi'_j da.
// Only multiples of m are formed; the Nyquist entry is left at zero.
std::vector<cplx> label_spectrum(const EulerState& s, std::span<const double> disp,
                                 std::span<const double> stretch) {
  const std::size_t n = disp.size();
  const long m = std::max(1, s.symmetry.m);
  const double da = kTwoPi / static_cast<double>(n);
  std::vector<cplx> weight(n), power(n, cplx(1.0, 0.0)), step(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double phi = CircleField::node(j, n) + disp[j];
    weight[j] = s.label_value[j] * stretch[j] * da / kTwoPi;
    step[j] = std::polar(1.0, static_cast<double>(m) * phi);
  }
  const std::size_t kmax = n / 2;
  std::vector<cplx> half(kmax + 1, cplx(0.0, 0.0));
  for (std::size_t j = 0; j < n; ++j) half[0] += weight[j];
  for (long k = m; k < static_cast<long>(kmax); k += m) {
    cplx sum(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      power[j] *= step[j];
      sum += weight[j] * power[j];
    }
    half[static_cast<std::size_t>(k)] = sum;
  }
  half[0] = cplx(half[0].real(), 0.0);
  return half;
}

// h at the nodes: label values carried to each node's preimage by cubic
// Hermite interpolation between labels. The mean is reset to the label mass,
// which the map conserves exactly.
CircleField field_from_labels(const EulerState& s) {
  const std::size_t n = s.displacement.size();
  const double da = kTwoPi / static_cast<double>(n);
  std::vector<double> v(n);
  double mass = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    mass += s.label_value[j] * s.stretch[j];
    const double a = invert_map(s.displacement, s.stretch, CircleField::node(j, n)).label;
    const double u = (a - CircleField::node(0, n)) / da;
    const double cell = std::floor(u);
    const double x = u - cell;
    const auto lo = interp::wrap_index(static_cast<long>(cell), n);
    const auto hi = interp::wrap_index(static_cast<long>(cell) + 1, n);
    const double x2 = x * x, x3 = x2 * x;
    v[j] = (2 * x3 - 3 * x2 + 1) * s.label_value[lo] + (x3 - 2 * x2 + x) * s.label_slope[lo] * da +
           (-2 * x3 + 3 * x2) * s.label_value[hi] + (x3 - x2) * s.label_slope[hi] * da;
  }
  auto h = project_symmetry(CircleField::from_samples(std::move(v)), s.symmetry);
  if (!s.symmetry.odd_axis) h = add_constant(h, mass / static_cast<double>(n) - mean(h));
  return h;
}

struct MapRate {
  std::vector<double> disp;
  std::vector<double> stretch;
};

// d/dt phi = 2H(phi), d/dt phi' = 2H'(phi) phi', with H summed exactly at the
// particle positions from the label spectrum.
MapRate map_rate(const EulerState& s, std::span<const double> disp,
                 std::span<const double> stretch) {
  const std::size_t n = disp.size();
  const long m = std::max(1, s.symmetry.m);
  auto half = label_spectrum(s, disp, stretch);
  for (std::size_t k = 0; k < half.size(); ++k) {
    half[k] *= euler_multiplier(static_cast<long>(k));
  }
  MapRate rate{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const double phi = CircleField::node(j, n) + disp[j];
    const cplx step = std::polar(1.0, -static_cast<double>(m) * phi);
    cplx power(1.0, 0.0), u(0.0, 0.0), du(0.0, 0.0);
    for (long k = m; k < static_cast<long>(half.size() - 1); k += m) {
      power *= step;
      const cplx term = half[static_cast<std::size_t>(k)] * power;
      u += term;
      du += cplx(0.0, -static_cast<double>(k)) * term;
    }
    const double vel = 2.0 * (half[0].real() + 2.0 * u.real());
    const double dvel = 4.0 * du.real();
    rate.disp[j] = vel;
    rate.stretch[j] = dvel * stretch[j];
  }
  return rate;
}

// Label stretch beyond which the map is restarted from the identity.
constexpr double kRemeshStretch = 4.0;

void symmetrize_labels(EulerState& s) {
  std::vector<double> value = s.label_value, slope = s.label_slope;
  // Values share the parity of the displacement, slopes that of the stretch.
  symmetrize_map(value, slope, s.symmetry);
  s.label_value = std::move(value);
  s.label_slope = std::move(slope);
}

// Folds the current map into the profile, h(t) = initial o phi^{-1}, and
// restarts from uniform labels. Values and the chain-rule slope are exact.
void remesh(EulerState& s) {
  const auto disp = std::make_shared<const std::vector<double>>(s.displacement);
  const auto stretch = std::make_shared<const std::vector<double>>(s.stretch);
  const auto old = s.initial;
  Profile next;
  next.value = [old, disp, stretch](double th) {
    return old->value(invert_map(*disp, *stretch, th).label);
  };
  next.derivative = [old, disp, stretch](double th) {
    const auto pre = invert_map(*disp, *stretch, th);
    return old->derivative(pre.label) / pre.stretch;
  };
  const std::size_t n = s.displacement.size();
  for (std::size_t j = 0; j < n; ++j) {
    // At labels the preimage slope is the tracked stretch itself.
    const auto pre = invert_map(*disp, *stretch, CircleField::node(j, n));
    s.label_value[j] = old->value(pre.label);
    s.label_slope[j] = old->derivative(pre.label) / pre.stretch;
  }
  s.initial = std::make_shared<const Profile>(std::move(next));
  s.displacement.assign(n, 0.0);
  s.stretch.assign(n, 1.0);
  symmetrize_labels(s);
  ++s.remesh_count;
}

EulerState step_semi_lagrangian(const EulerState& s, double dt) {
  const std::size_t n = s.displacement.size();
  auto shifted = [n](const std::vector<double>& base, const std::vector<double>& rate,
                     double c) {
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = base[j] + c * rate[j];
    return out;
  };
  const auto k1 = map_rate(s, s.displacement, s.stretch);
  const auto d2 = shifted(s.displacement, k1.disp, 0.5 * dt);
  const auto s2 = shifted(s.stretch, k1.stretch, 0.5 * dt);
  const auto k2 = map_rate(s, d2, s2);
  const auto d3 = shifted(s.displacement, k2.disp, 0.5 * dt);
  const auto s3 = shifted(s.stretch, k2.stretch, 0.5 * dt);
  const auto k3 = map_rate(s, d3, s3);
  const auto d4 = shifted(s.displacement, k3.disp, dt);
  const auto s4 = shifted(s.stretch, k3.stretch, dt);
  const auto k4 = map_rate(s, d4, s4);

  EulerState out = s;
  for (std::size_t j = 0; j < n; ++j) {
    out.displacement[j] +=
        dt / 6.0 * (k1.disp[j] + 2.0 * k2.disp[j] + 2.0 * k3.disp[j] + k4.disp[j]);
    out.stretch[j] +=
        dt / 6.0 * (k1.stretch[j] + 2.0 * k2.stretch[j] + 2.0 * k3.stretch[j] + k4.stretch[j]);
  }
  symmetrize_map(out.displacement, out.stretch, s.symmetry);
  if (*std::max_element(out.stretch.begin(), out.stretch.end()) > kRemeshStretch) remesh(out);
  out.h = field_from_labels(out);
  out.t = s.t + dt;
  return out;
}

EulerState step_pseudospectral(const EulerState& s, double dt) {
  const auto& h = s.h;
  const auto k1 = euler_rhs(h, s.dealias);
  const auto k2 = euler_rhs(h + (0.5 * dt) * k1, s.dealias);
  const auto k3 = euler_rhs(h + (0.5 * dt) * k2, s.dealias);
  const auto k4 = euler_rhs(h + dt * k3, s.dealias);
  std::vector<double> v(h.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = h[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  EulerState out = s;
  auto next = project_symmetry(CircleField::from_samples(std::move(v)), s.symmetry);
  if (s.filter) next = exponential_filter(next);
  out.h = std::move(next);
  out.t = s.t + dt;
  return out;
}

double golden_max(const std::function<double(double)>& f, double lo, double hi) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::max(f1, f2);
}

}  // namespace

std::string to_string(EulerStepper s) {
  return s == EulerStepper::PseudospectralRK4 ? "pseudospectral-rk4" : "semi-lagrangian";
}

EulerStepper parse_euler_stepper(const std::string& name) {
  if (name == "pseudospectral-rk4" || name == "pseudospectral") {
    return EulerStepper::PseudospectralRK4;
  }
  if (name == "semi-lagrangian") return EulerStepper::SemiLagrangian;
  throw DomainError("unknown stepper '" + name + "'");
}

Profile Profile::from_field(const CircleField& f) {
  auto samples = std::make_shared<std::vector<double>>(f.values().begin(), f.values().end());
  Profile p;
  p.value = [samples](double th) { return interp::periodic_cubic(*samples, th); };
  p.derivative = [samples](double th) { return interp::periodic_cubic_derivative(*samples, th); };
  return p;
}

double EulerState::value_at(double theta) const {
  if (stepper == EulerStepper::PseudospectralRK4) return h.evaluate(theta);
  return initial->value(map_at(theta));
}

double EulerState::map_at(double theta) const {
  if (stepper != EulerStepper::SemiLagrangian) {
    throw PreconditionError("the backward map is only tracked by the semi-Lagrangian stepper");
  }
  return invert_map(displacement, stretch, theta).label;
}

std::vector<double> EulerState::fine_values(int factor) const {
  const std::size_t nf = size() * static_cast<std::size_t>(factor);
  if (stepper == EulerStepper::PseudospectralRK4) {
    const auto fine = resample(h, nf);
    return {fine.values().begin(), fine.values().end()};
  }
  std::vector<double> v(nf);
  for (std::size_t j = 0; j < nf; ++j) v[j] = value_at(CircleField::node(j, nf));
  return v;
}

EulerState make_pseudospectral_state(const CircleField& h0, const SymmetrySpec& symmetry,
                                     bool dealias_products) {
  EulerState s;
  s.h = project_symmetry(h0, symmetry);
  s.symmetry = symmetry;
  s.stepper = EulerStepper::PseudospectralRK4;
  s.dealias = dealias_products;
  return s;
}

EulerState make_semi_lagrangian_state(std::size_t n, Profile h0, const SymmetrySpec& symmetry) {
  EulerState s;
  s.symmetry = symmetry;
  s.stepper = EulerStepper::SemiLagrangian;
  s.dealias = false;
  s.initial = std::make_shared<const Profile>(std::move(h0));
  s.displacement.assign(n, 0.0);
  s.stretch.assign(n, 1.0);
  s.label_value.resize(n);
  s.label_slope.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    s.label_value[j] = s.initial->value(CircleField::node(j, n));
    s.label_slope[j] = s.initial->derivative(CircleField::node(j, n));
  }
  symmetrize_labels(s);
  s.h = field_from_labels(s);
  return s;
}

CircleField euler_rhs(const CircleField& h, bool dealias_products) {
  const auto H = stream_of(h);
  return -2.0 * multiply(H, derivative(h), dealias_products);
}

double max_transport_speed(const EulerState& s) {
  return 2.0 * node_max_abs(stream_of(s.h));
}

double admissible_dt(const EulerState& s, double cfl) {
  return cfl * s.h.spacing() / std::max(max_transport_speed(s), kSpeedFloor);
}

EulerState step(const EulerState& s, double dt, double cfl) {
  if (!(dt > 0.0)) throw PreconditionError("euler step requires dt > 0");
  const double limit = admissible_dt(s, cfl);
  if (dt > limit) {
    std::ostringstream msg;
    msg << "dt = " << dt << " violates the CFL bound; admissible dt = " << limit;
    throw StepRejected(msg.str(), limit);
  }
  return s.stepper == EulerStepper::PseudospectralRK4 ? step_pseudospectral(s, dt)
                                                      : step_semi_lagrangian(s, dt);
}

EulerDiagnostics diagnose(const EulerState& s) {
  EulerDiagnostics d;
  d.t = s.t;
  const std::size_t n = s.size();
  const auto H = stream_of(s.h);
  const auto dH = derivative(H);
  d.hprime0 = dH.evaluate(0.0);
  d.hprime_quarter = dH.evaluate(0.25 * kPi);
  d.hprime_linf = sup_norm(dH);
  d.spectral_tail = max_coeff_from(s.h, static_cast<long>(n / 4));

  constexpr int kFine = 4;
  if (s.stepper == EulerStepper::PseudospectralRK4) {
    d.linf = sup_norm(s.h);
    d.mean = mean(s.h);
    d.grad_linf = sup_norm(derivative(s.h));
    const auto fine = s.fine_values(kFine);
    double l1 = 0.0;
    for (double v : fine) l1 += std::abs(v);
    d.l1 = l1 * kTwoPi / static_cast<double>(fine.size());
    return d;
  }

  // h(t, phi(a)) = initial(a): norms become label quadratures.
  const double da = kTwoPi / static_cast<double>(n);
  d.mean = mean(s.h);
  std::vector<double> label_abs(n);
  for (std::size_t j = 0; j < n; ++j) {
    label_abs[j] = std::abs(s.label_value[j]);
    d.l1 += label_abs[j] * s.stretch[j] * da;
    d.grad_linf = std::max(d.grad_linf, std::abs(s.label_slope[j] / s.stretch[j]));
  }
  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < n; ++j) order[j] = j;
  const std::size_t top = std::min<std::size_t>(3, n);
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(top), order.end(),
                    [&](std::size_t a, std::size_t b) { return label_abs[a] > label_abs[b]; });
  d.linf = label_abs[order[0]];
  const auto abs_value = [&s](double a) { return std::abs(s.initial->value(a)); };
  for (std::size_t r = 0; r < top; ++r) {
    const double a = CircleField::node(order[r], n);
    d.linf = std::max(d.linf, golden_max(abs_value, a - da, a));
    d.linf = std::max(d.linf, golden_max(abs_value, a, a + da));
  }
  return d;
}

EulerRunResult run_euler(EulerState s, const EulerRunOptions& opt, const EulerObserver& observer) {
  if (!(opt.sample_interval > 0.0)) throw PreconditionError("sample_interval must be > 0");
  EulerRunResult res;
  bool tail_warned = false;
  bool mode2_warned = false;

  auto sample = [&](const EulerState& st) {
    const auto d = diagnose(st);
    if (!tail_warned && d.spectral_tail > 1e-3 * std::max(d.linf, 1e-300) && d.linf > 0.0) {
      std::ostringstream msg;
      msg << "under-resolved at t = " << st.t << ": spectral tail " << d.spectral_tail
          << " exceeds 1e-3 * |h|_inf";
      res.warnings.push_back(msg.str());
      tail_warned = true;
    }
    if (!mode2_warned) {
      if (auto w = solve_stream_euler(st.h).warning) {
        res.warnings.push_back("t = " + std::to_string(st.t) + ": " + *w);
        mode2_warned = true;
      }
    }
    ++res.samples;
    if (observer) observer(st, d);
  };

  sample(s);
  double next_sample = s.t + opt.sample_interval;
  const double eps = 1e-12 * std::max(1.0, opt.t_end);
  while (s.t < opt.t_end - eps) {
    const double target = std::min(next_sample, opt.t_end);
    double dt = opt.dt ? *opt.dt : std::min(opt.dt_max, 0.95 * admissible_dt(s, opt.cfl));
    dt = std::min(dt, target - s.t);
    EulerState next = step(s, dt, opt.cfl);
    const bool finite = all_finite(next.h.values()) && all_finite(next.displacement) &&
                        all_finite(next.stretch);
    if (!finite) {
      res.aborted = true;
      std::ostringstream msg;
      msg << "non-finite state after step at t = " << s.t;
      res.abort_reason = msg.str();
      break;
    }
    s = std::move(next);
    ++res.steps;
    if (s.filter) ++res.filter_events;
    if (s.t >= target - eps) {
      sample(s);
      if (target >= next_sample - eps) next_sample += opt.sample_interval;
    }
  }
  res.final_state = std::move(s);
  return res;
}

EulerObserver EulerTrajectory::recorder() {
  return [this](const EulerState& s, const EulerDiagnostics&) {
    times.push_back(s.t);
    streams.push_back(stream_of(s.h));
    fields.push_back(s.h);
  };
}

FlowPath flow_trace(const EulerTrajectory& traj, double theta0, int substeps) {
  if (traj.times.empty()) throw PreconditionError("flow_trace needs a non-empty trajectory");
  if (substeps < 1) throw PreconditionError("substeps must be >= 1");
  FlowPath path;
  auto record = [&path](double t, double phi) {
    path.times.push_back(t);
    path.unwrapped.push_back(phi);
    path.angles.push_back(wrap_angle(phi));
    path.winding.push_back(static_cast<long>(std::floor((phi + kPi) / kTwoPi)));
  };
  double phi = theta0;
  record(traj.times.front(), phi);
  for (std::size_t i = 0; i + 1 < traj.times.size(); ++i) {
    const double t0 = traj.times[i];
    const double t1 = traj.times[i + 1];
    const auto& a = traj.streams[i];
    const auto& b = traj.streams[i + 1];
    auto velocity = [&](double t, double th) {
      const double w = (t - t0) / (t1 - t0);
      return 2.0 * ((1.0 - w) * a.evaluate(th) + w * b.evaluate(th));
    };
    const double h = (t1 - t0) / substeps;
    double t = t0;
    for (int k = 0; k < substeps; ++k) {
      const double v1 = velocity(t, phi);
      const double v2 = velocity(t + 0.5 * h, phi + 0.5 * h * v1);
      const double v3 = velocity(t + 0.5 * h, phi + 0.5 * h * v2);
      const double v4 = velocity(t + h, phi + h * v3);
      phi += h / 6.0 * (v1 + 2.0 * v2 + 2.0 * v3 + v4);
      t += h;
    }
    record(t1, phi);
  }
  return path;
}

}  // namespace homog
