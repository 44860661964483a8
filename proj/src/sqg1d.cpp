#include "homog/sqg1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "homog/error.hpp"
#include "homog/kernels.hpp"

namespace homog {
namespace {

constexpr double kSpeedFloor = 1e-12;

CircleField transport_rhs(const CircleField& G, const CircleField& g, double stretch_coeff,
                          bool dealias) {
  return 2.0 * multiply(G, derivative(g), dealias) -
         stretch_coeff * multiply(derivative(G), g, dealias);
}

bool finite(const CircleField& f) {
  return std::all_of(f.values().begin(), f.values().end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace

std::string to_string(const SQGModel& m) {
  switch (m.variant) {
    case SQGVariant::Exact:
      return "sqg-exact";
    case SQGVariant::Approx:
      return "sqg-approx";
    case SQGVariant::DeGregorio: {
      std::ostringstream os;
      os << "degregorio(" << m.a << ")";
      return os.str();
    }
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Resolved:
      return "resolved";
    case Verdict::SuspectedBlowup:
      return "suspected-blowup";
    case Verdict::UnderResolved:
      return "under-resolved";
  }
  return "unknown";
}

CircleField rhs_sqg_exact(const CircleField& g, bool dealias) {
  return transport_rhs(solve_stream_sqg(g), g, 1.0, dealias);
}

CircleField rhs_sqg_approx(const CircleField& g, bool dealias) {
  return transport_rhs(-1.0 * inv_modulus(g), g, 1.0, dealias);
}

CircleField rhs_degregorio(const CircleField& f, double a, bool dealias) {
  return a * multiply(inv_modulus(f), derivative(f), dealias) +
         multiply(hilbert(f), f, dealias);
}

CircleField rhs_sqg_general(const CircleField& g, double alpha, const StreamSolver& solve,
                            bool dealias) {
  if (!solve) throw ConfigError("stream", "a stream solver is required");
  return transport_rhs(solve(g), g, 2.0 - 2.0 * alpha, dealias);
}

SQGState make_sqg_state(const CircleField& g0, const SQGModel& model,
                        const SymmetrySpec& symmetry, bool dealias) {
  if (model.variant == SQGVariant::Exact && symmetry.m < 2) {
    throw PreconditionError("sqg-exact needs m >= 2 so that modes 0 and +-1 vanish");
  }
  SQGState s;
  s.g = project_symmetry(g0, symmetry);
  s.model = model;
  s.symmetry = symmetry;
  s.dealias = dealias;
  return s;
}

CircleField sqg_rhs(const SQGState& s) {
  switch (s.model.variant) {
    case SQGVariant::Exact:
      return rhs_sqg_exact(s.g, s.dealias);
    case SQGVariant::Approx:
      return rhs_sqg_approx(s.g, s.dealias);
    case SQGVariant::DeGregorio:
      return rhs_degregorio(s.g, s.model.a, s.dealias);
  }
  throw PreconditionError("unknown SQG variant");
}

CircleField sqg_transport_stream(const SQGState& s) {
  switch (s.model.variant) {
    case SQGVariant::Exact:
      return solve_stream_sqg(s.g);
    case SQGVariant::Approx:
      return -1.0 * inv_modulus(s.g);
    case SQGVariant::DeGregorio:
      return (0.5 * s.model.a) * inv_modulus(s.g);
  }
  throw PreconditionError("unknown SQG variant");
}

double sqg_admissible_dt(const SQGState& s, double cfl) {
  const double speed = 2.0 * node_max_abs(sqg_transport_stream(s));
  return cfl * s.g.spacing() / std::max(speed, kSpeedFloor);
}

SQGState step(const SQGState& s, double dt, double cfl) {
  if (dt == 0.0 || !std::isfinite(dt)) throw PreconditionError("sqg step requires dt != 0");
  const double limit = sqg_admissible_dt(s, cfl);
  if (std::abs(dt) > limit) {
    std::ostringstream msg;
    msg << "|dt| = " << std::abs(dt) << " violates the CFL bound; admissible dt = " << limit;
    throw StepRejected(msg.str(), limit);
  }
  auto at = [&s](const CircleField& g) {
    SQGState w = s;
    w.g = g;
    return sqg_rhs(w);
  };
  const auto& g = s.g;
  const auto k1 = at(g);
  const auto k2 = at(g + (0.5 * dt) * k1);
  const auto k3 = at(g + (0.5 * dt) * k2);
  const auto k4 = at(g + dt * k3);
  std::vector<double> v(g.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = g[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  SQGState out = s;
  out.g = project_symmetry(CircleField::from_samples(std::move(v)), s.symmetry);
  out.t = s.t + dt;
  return out;
}

double tail_ratio(const CircleField& g) {
  return energy_fraction_from(g, static_cast<long>(g.size() / 4));
}

SQGDiagnostics diagnose(const SQGState& s, const BlowupMonitor& m) {
  SQGDiagnostics d;
  d.t = s.t;
  d.linf = sup_norm(s.g);
  d.mean = mean(s.g);
  d.grad_linf = sup_norm(derivative(s.g));
  const auto fine = resample(s.g, 4 * s.g.size());
  double l1 = 0.0;
  for (double v : fine.values()) l1 += std::abs(v);
  d.l1 = l1 * kTwoPi / static_cast<double>(fine.size());
  const auto dG = derivative(sqg_transport_stream(s));
  d.hprime0 = dG.evaluate(0.0);
  d.hprime_quarter = dG.evaluate(0.25 * kPi);
  d.spectral_tail = max_coeff_from(s.g, static_cast<long>(s.g.size() / 4));
  d.bkm_integral = m.bkm_integral;
  d.tail_ratio = m.tail_ratio;
  d.verdict = m.verdict;
  return d;
}

std::optional<double> estimate_blowup_time(const std::vector<double>& t,
                                           const std::vector<double>& grad, double fraction) {
  const std::size_t n = t.size();
  if (n < 8 || grad.size() != n) return std::nullopt;
  const std::size_t first = static_cast<std::size_t>(static_cast<double>(n) * (1.0 - fraction));
  std::vector<double> x, y;
  for (std::size_t i = std::max<std::size_t>(first, 1); i + 1 < n; ++i) {
    const double rate =
        (std::log(grad[i + 1]) - std::log(grad[i - 1])) / (t[i + 1] - t[i - 1]);
    if (!(rate > 0.0)) continue;
    x.push_back(t[i]);
    y.push_back(1.0 / rate);
  }
  if (x.size() < 3) return std::nullopt;
  const double k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / k;
  if (!(slope < 0.0)) return std::nullopt;
  return -intercept / slope;
}

SQGRunResult run_sqg(SQGState s, const SQGRunOptions& opt, const SQGObserver& observer) {
  if (!(opt.sample_interval > 0.0)) throw PreconditionError("sample_interval must be > 0");
  SQGRunResult res;
  BlowupMonitor& mon = res.monitor;
  mon.initial_grad = sup_norm(derivative(s.g));
  mon.last_grad = mon.initial_grad;
  mon.last_t = s.t;
  mon.tail_ratio = tail_ratio(s.g);

  std::vector<double> rec_t{s.t}, rec_grad{mon.initial_grad};
  auto sample = [&](const SQGState& st) {
    ++res.samples;
    if (observer) observer(st, diagnose(st, mon));
  };

  sample(s);
  double next_sample = s.t + opt.sample_interval;
  const double eps = 1e-12 * std::max(1.0, opt.t_end);
  while (s.t < opt.t_end - eps) {
    const double target = std::min(next_sample, opt.t_end);
    double dt = opt.dt ? *opt.dt : std::min(opt.dt_max, 0.95 * sqg_admissible_dt(s, opt.cfl));
    dt = std::min(dt, target - s.t);
    SQGState next = step(s, dt, opt.cfl);
    if (!finite(next.g)) {
      res.aborted = true;
      std::ostringstream msg;
      msg << "non-finite state after step at t = " << s.t;
      res.abort_reason = msg.str();
      break;
    }
    s = std::move(next);
    ++res.steps;

    const double grad = sup_norm(derivative(s.g));
    mon.bkm_integral += 0.5 * (grad + mon.last_grad) * (s.t - mon.last_t);
    mon.last_grad = grad;
    mon.last_t = s.t;
    mon.tail_ratio = tail_ratio(s.g);
    rec_t.push_back(s.t);
    rec_grad.push_back(grad);

    bool halt = false;
    if (mon.tail_ratio >= opt.tail_limit) {
      mon.verdict = Verdict::UnderResolved;
      halt = true;
    } else if (grad >= opt.blowup_factor * mon.initial_grad) {
      mon.verdict = Verdict::SuspectedBlowup;
      res.blowup_time = estimate_blowup_time(rec_t, rec_grad);
      halt = true;
    }
    if (halt || s.t >= target - eps) {
      sample(s);
      if (!halt && target >= next_sample - eps) next_sample += opt.sample_interval;
    }
    if (halt) break;
  }
  res.final_state = std::move(s);
  return res;
}

}  // namespace homog
