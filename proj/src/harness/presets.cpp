#include "homog/harness/presets.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "homog/error.hpp"

namespace homog::harness {
namespace {

struct Mode {
  bool is_sin = true;
  long k = 0;
  double amp = 0.0;
};

std::vector<Mode> parse_modes(const std::string& text) {
  std::vector<Mode> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (item.size() < 2 || (item[0] != 's' && item[0] != 'c') || colon == std::string::npos) {
      throw ConfigError("modes", "expected terms like s4:1.0 or c8:0.3, got '" + item + "'");
    }
    Mode m;
    m.is_sin = item[0] == 's';
    try {
      std::size_t used = 0;
      m.k = std::stol(item.substr(1, colon - 1), &used);
      if (used != colon - 1) throw std::invalid_argument("k");
      m.amp = std::stod(item.substr(colon + 1), &used);
      if (used != item.size() - colon - 1) throw std::invalid_argument("amp");
    } catch (const std::logic_error&) {
      throw ConfigError("modes", "malformed term '" + item + "'");
    }
    if (m.k < 0) throw ConfigError("modes", "wavenumbers must be nonnegative");
    out.push_back(m);
  }
  if (out.empty()) throw ConfigError("modes", "no terms");
  return out;
}

bool wants(const ExperimentConfig& cfg, const char* check) { return cfg.checks == check; }

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Profile symmetric_extension(std::function<double(double)> base,
                            std::function<double(double)> base_derivative,
                            const SymmetrySpec& symmetry) {
  const double m = static_cast<double>(std::max(symmetry.m, 1));
  const double period = kTwoPi / m;
  Profile p;
  if (!symmetry.odd_axis) {
    auto reduce = [period](double th) { return th - period * std::floor(th / period); };
    p.value = [base, reduce](double th) { return base(reduce(th)); };
    p.derivative = [base_derivative, reduce](double th) { return base_derivative(reduce(th)); };
    return p;
  }
  const double a = *symmetry.odd_axis;
  const double half = 0.5 * period;
  // r in [-half, half) measured from the nearest rotated copy of the axis.
  auto reduce = [a, period, half](double th) {
    return th - a - period * std::floor((th - a + half) / period);
  };
  // Tight: late in a front-steepening run, preimages crowd within a few ulps
  // of the sector edge.
  const double edge_tol = 1e-15;
  p.value = [base, reduce, a, half, edge_tol](double th) {
    const double r = reduce(th);
    if (std::abs(std::abs(r) - half) <= edge_tol) return 0.0;
    return r >= 0.0 ? base(a + r) : -base(a - r);
  };
  p.derivative = [base_derivative, reduce, a](double th) {
    const double r = reduce(th);
    return base_derivative(a + std::abs(r));
  };
  return p;
}

Profile initial_profile(const ExperimentConfig& cfg) {
  const auto sym = symmetry_of(cfg);
  const double amp = cfg.amplitude;
  if (cfg.initial == "constant") {
    const double c = cfg.constant;
    return Profile{[c](double) { return c; }, [](double) { return 0.0; }};
  }
  if (cfg.initial == "modes") {
    const auto modes = parse_modes(cfg.modes);
    Profile p;
    p.value = [modes](double th) {
      double v = 0.0;
      for (const auto& m : modes) v += m.amp * (m.is_sin ? std::sin(m.k * th) : std::cos(m.k * th));
      return v;
    };
    p.derivative = [modes](double th) {
      double v = 0.0;
      for (const auto& m : modes) {
        v += m.amp * m.k * (m.is_sin ? std::cos(m.k * th) : -std::sin(m.k * th));
      }
      return v;
    };
    return p;
  }
  if (cfg.initial == "bump") {
    const double eps = cfg.epsilon;
    const double a = *cfg.odd_axis;
    auto value = [amp, eps, a](double th) {
      const double t = th - a;
      if (t <= 0.0 || t >= eps) return 0.0;
      const double x = kPi * t / eps;
      return 0.5 * amp * (std::sin(x) + 0.5 * std::sin(2.0 * x));
    };
    auto slope = [amp, eps, a](double th) {
      const double t = th - a;
      if (t < 0.0 || t >= eps) return 0.0;
      const double x = kPi * t / eps;
      return 0.5 * amp * (std::cos(x) + std::cos(2.0 * x)) * kPi / eps;
    };
    return symmetric_extension(value, slope, sym);
  }
  if (cfg.initial == "sector") {
    const double a = *cfg.odd_axis;
    const double k = 0.5 * sym.m;
    return symmetric_extension([amp, a, k](double th) { return amp * std::sin(k * (th - a)); },
                               [amp, a, k](double th) { return amp * k * std::cos(k * (th - a)); },
                               sym);
  }
  if (cfg.initial == "pattern") {
    const double c1 = cfg.c1, c2 = cfg.c2;
    const double m = cfg.symmetry_m;
    Profile p;
    p.value = [c1, c2, m](double th) {
      const double s = std::sin(m * th);
      if (std::abs(s) < 1e-14) return 0.5 * (c1 + c2);
      return s > 0.0 ? c1 : c2;
    };
    p.derivative = [](double) { return 0.0; };
    return p;
  }
  throw ConfigError("initial", "unknown initial data '" + cfg.initial + "'");
}

CircleField initial_field(const ExperimentConfig& cfg) {
  const auto p = initial_profile(cfg);
  return project_symmetry(CircleField::sample(cfg.n, p.value), symmetry_of(cfg));
}

ExperimentConfig preset_theorem_growth(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.25)) {
    throw ConfigError("epsilon", "must lie in (0, 1/4]");
  }
  ExperimentConfig c;
  c.model = Model::Euler1d;
  c.name = "thm-growth";
  c.initial = "bump";
  c.epsilon = epsilon;
  c.amplitude = 1.0;
  c.n = 1024;
  c.symmetry_m = 4;
  c.odd_axis = 0.0;
  c.stepper = "semi-lagrangian";
  c.t_end = 50.0;
  c.dt_max = 0.05;
  c.sample_interval = 0.5;
  c.fit = "power";
  c.fit_clock = "shifted";
  c.checks = "thm-growth";
  return c;
}

ExperimentConfig preset_theorem_boundary() {
  ExperimentConfig c;
  c.model = Model::Euler1d;
  c.name = "thm-boundary";
  c.initial = "sector";
  c.amplitude = 1.0;
  c.n = 1024;
  c.symmetry_m = 4;
  c.odd_axis = 0.0;
  c.stepper = "semi-lagrangian";
  c.t_end = 30.0;
  c.dt_max = 0.01;
  c.sample_interval = 0.25;
  c.fit = "exponential";
  c.checks = "thm-boundary";
  return c;
}

ExperimentConfig preset_rotating_pattern(double c1, double c2) {
  ExperimentConfig c;
  c.model = Model::Euler1d;
  c.name = "rotating-pattern";
  c.initial = "pattern";
  c.c1 = c1;
  c.c2 = c2;
  c.n = 512;
  c.symmetry_m = 4;
  c.odd_axis = std::nullopt;
  c.stepper = "semi-lagrangian";
  c.t_end = 4.0;
  c.dt_max = 0.01;
  c.sample_interval = 0.05;
  c.checks = "rotating-pattern";
  return c;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"thm-growth", "thm-boundary",
                                                 "rotating-pattern"};
  return names;
}

ExperimentConfig preset(const std::string& name) {
  if (name == "thm-growth") return preset_theorem_growth();
  if (name == "thm-boundary") return preset_theorem_boundary();
  if (name == "rotating-pattern") return preset_rotating_pattern();
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

std::vector<double> EulerRecord::times() const { return column(&EulerDiagnostics::t); }

std::vector<double> EulerRecord::column(double EulerDiagnostics::*member) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.*member);
  return out;
}

double plateau_distance(const EulerState& s, double delta) {
  const int samples = 2000;
  const double lo = delta, width = 0.25 * kPi - 2.0 * delta;
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    acc += std::abs(s.value_at(lo + width * (i + 0.5) / samples) - 1.0);
  }
  return acc * width / samples;
}

EulerRecord run_euler_record(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.model != Model::Euler1d) throw ConfigError("model", "expected euler1d");
  const auto sym = symmetry_of(cfg);
  const auto kind = parse_euler_stepper(cfg.stepper);
  EulerState s = kind == EulerStepper::SemiLagrangian
                     ? make_semi_lagrangian_state(cfg.n, initial_profile(cfg), sym)
                     : make_pseudospectral_state(initial_field(cfg), sym, cfg.dealias);
  s.filter = cfg.filter && kind == EulerStepper::PseudospectralRK4;
  if (cfg.dt) {
    const double limit = admissible_dt(s, cfg.cfl);
    if (*cfg.dt > limit) {
      std::ostringstream msg;
      msg << "fixed dt = " << *cfg.dt << " violates the CFL bound " << limit;
      throw ConfigError("dt", msg.str());
    }
  }
  EulerRunOptions opt;
  opt.t_end = cfg.t_end;
  opt.dt = cfg.dt;
  opt.cfl = cfg.cfl;
  opt.dt_max = cfg.dt_max;
  opt.sample_interval = cfg.sample_interval;

  EulerRecord rec;
  const bool plateau = wants(cfg, "thm-boundary");
  const bool mode = wants(cfg, "rotating-pattern");
  const long m = cfg.symmetry_m;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    rec.result = run_euler(std::move(s), opt, [&](const EulerState& st, const EulerDiagnostics& d) {
      rec.rows.push_back(d);
      if (plateau) rec.plateau_distance.push_back(plateau_distance(st));
      if (mode) rec.mode.push_back(st.h.coeff(m));
      if (cfg.snapshots) rec.snapshots.push_back(st.h);
    });
  } catch (const StepRejected& e) {
    throw ConfigError("dt", e.what());
  }
  rec.wall_seconds = elapsed(t0);
  return rec;
}

double sector_mass(const EulerDiagnostics& d, int m) { return d.l1 / (2.0 * m); }

std::optional<FitReport> fit_record(const ExperimentConfig& cfg, const EulerRecord& rec) {
  if (cfg.fit == "none") return std::nullopt;
  const auto t = rec.times();
  const auto grad = rec.column(&EulerDiagnostics::grad_linf);
  Window w = default_window(t, grad);
  if (cfg.fit_t_lo) w.t_lo = *cfg.fit_t_lo;
  if (cfg.fit_t_hi) w.t_hi = *cfg.fit_t_hi;
  if (cfg.fit == "exponential") return fit_exponential(t, grad, w.t_lo, w.t_hi);
  double shift = 0.0;
  if (cfg.fit_clock == "shifted") {
    if (!cfg.odd_axis) throw ConfigError("fit_clock", "the shifted clock needs odd data");
    const double m0 = sector_mass(rec.rows.front(), cfg.symmetry_m);
    if (!(m0 > 0.0)) throw ConfigError("fit_clock", "initial sector mass is zero");
    shift = 1.0 / m0;
  }
  return fit_power(t, grad, w.t_lo, w.t_hi, shift);
}

std::vector<CheckResult> check_theorem_growth(const ExperimentConfig& cfg, const EulerRecord& rec) {
  const double eps = cfg.epsilon;
  const double m0 = sector_mass(rec.rows.front(), cfg.symmetry_m);
  double worst_lo = 1e300, worst_hi = 0.0;
  for (const auto& d : rec.rows) {
    const double m = sector_mass(d, cfg.symmetry_m);
    const double lo = 1.0 / (d.t + 1.0 / m0);
    const double hi = 1.0 / ((1.0 - 8.0 * eps * eps) * d.t + 1.0 / m0);
    worst_lo = std::min(worst_lo, m / lo);
    worst_hi = std::max(worst_hi, m / hi);
  }
  CheckResult bracket;
  bracket.name = "l1-bracket";
  bracket.pass = worst_lo >= 0.95 && worst_hi <= 1.05;
  bracket.value = worst_lo;
  std::ostringstream b;
  b << "min mass/lower = " << worst_lo << ", max mass/upper = " << worst_hi
    << " (slack 5%, " << rec.rows.size() << " samples)";
  bracket.detail = b.str();

  CheckResult expo;
  expo.name = "growth-exponent";
  const double lo = 2.0 * (1.0 - 2.0 * eps * eps) - 0.1;
  const double hi = 2.0 / (1.0 - 8.0 * eps * eps) + 0.1;
  std::ostringstream e;
  try {
    ExperimentConfig fc = cfg;
    fc.fit = "power";
    fc.fit_clock = "shifted";
    const auto fit = fit_record(fc, rec);
    expo.value = fit->exponent_or_rate;
    expo.pass = expo.value >= lo && expo.value <= hi;
    e << "exponent " << expo.value << " in [" << lo << ", " << hi << "], r2 = " << fit->r_squared
      << ", window [" << fit->t_lo << ", " << fit->t_hi << "]";
  } catch (const DomainError& err) {
    e << "fit failed: " << err.what();
  }
  expo.detail = e.str();
  return {bracket, expo};
}

std::vector<CheckResult> check_theorem_boundary(const ExperimentConfig& cfg,
                                                const EulerRecord& rec) {
  std::vector<CheckResult> out;
  CheckResult fit_check;
  fit_check.name = "gradient-exponential-fit";
  std::ostringstream f;
  try {
    ExperimentConfig fc = cfg;
    fc.fit = "exponential";
    const auto fit = fit_record(fc, rec);
    fit_check.value = fit->exponent_or_rate;
    fit_check.pass = fit->r_squared >= 0.99 && fit->exponent_or_rate > 0.0;
    f << "rate " << fit->exponent_or_rate << ", r2 = " << fit->r_squared << " (>= 0.99), window ["
      << fit->t_lo << ", " << fit->t_hi << "]";
  } catch (const DomainError& err) {
    f << "fit failed: " << err.what();
  }
  fit_check.detail = f.str();
  out.push_back(fit_check);

  CheckResult plateau;
  plateau.name = "plateau-distance-decreasing";
  std::ostringstream p;
  if (rec.plateau_distance.size() != rec.rows.size()) {
    p << "plateau distance was not recorded";
  } else {
    bool mono = true;
    std::size_t first = rec.rows.size();
    for (std::size_t i = 0; i < rec.rows.size(); ++i) {
      if (rec.rows[i].t < kPlateauTransient) continue;
      if (first == rec.rows.size()) first = i;
      if (i > first &&
          rec.plateau_distance[i] > rec.plateau_distance[i - 1] * (1.0 + 1e-9) + 1e-14) {
        mono = false;
        p << "increase at t = " << rec.rows[i].t << "; ";
        break;
      }
    }
    plateau.pass = mono && first + 1 < rec.rows.size();
    plateau.value = rec.plateau_distance.back();
    p << "distance " << (first < rec.rows.size() ? rec.plateau_distance[first] : 0.0)
      << " at t = " << kPlateauTransient << " -> " << plateau.value << " at t = "
      << rec.rows.back().t;
  }
  plateau.detail = p.str();
  out.push_back(plateau);

  CheckResult hp;
  hp.name = "minus-hprime0-late";
  const double t_late = rec.rows.back().t * 2.0 / 3.0;
  double worst = 1e300;
  for (const auto& d : rec.rows) {
    if (d.t >= t_late) worst = std::min(worst, -d.hprime0);
  }
  hp.value = worst;
  hp.pass = worst >= 0.25;
  std::ostringstream h;
  h << "min -H'(0) over t >= " << t_late << " is " << worst << " (>= 0.25)";
  hp.detail = h.str();
  out.push_back(hp);
  return out;
}

std::vector<CheckResult> check_rotating_pattern(const ExperimentConfig& cfg,
                                                const EulerRecord& rec) {
  CheckResult r;
  r.name = "rotation-speed";
  r.informational = true;
  std::ostringstream d;
  if (rec.mode.size() < 2 || std::abs(rec.mode.front()) == 0.0) {
    d << "mode " << cfg.symmetry_m << " not recorded or zero";
    r.detail = d.str();
    return {r};
  }
  double phase = 0.0;
  for (std::size_t i = 1; i < rec.mode.size(); ++i) phase += std::arg(rec.mode[i] / rec.mode[i - 1]);
  const double dt = rec.rows.back().t - rec.rows.front().t;
  r.value = phase / (cfg.symmetry_m * dt);
  r.pass = std::isfinite(r.value);
  d << "measured " << r.value << "; candidates (c1+c2)/2 = " << 0.5 * (cfg.c1 + cfg.c2)
    << ", (c1+c2)/4 = " << 0.25 * (cfg.c1 + cfg.c2);
  r.detail = d.str();
  return {r};
}

std::vector<CheckResult> run_checks(const ExperimentConfig& cfg, const EulerRecord& rec) {
  if (rec.rows.empty()) return {};
  if (cfg.checks == "thm-growth") return check_theorem_growth(cfg, rec);
  if (cfg.checks == "thm-boundary") return check_theorem_boundary(cfg, rec);
  if (cfg.checks == "rotating-pattern") return check_rotating_pattern(cfg, rec);
  return {};
}

}  // namespace homog::harness
