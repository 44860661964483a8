#include "homog/harness/runners.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "homog/error.hpp"
#include "homog/harness/output.hpp"
#include "homog/lift2d.hpp"
#include "homog/pointvortex.hpp"

namespace homog::harness {
namespace {

using nlohmann::json;

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json checks_json(const std::vector<CheckResult>& checks) {
  json out = json::array();
  for (const auto& c : checks) {
    out.push_back({{"name", c.name},
                   {"pass", c.pass},
                   {"informational", c.informational},
                   {"value", c.value},
                   {"detail", c.detail}});
  }
  return out;
}

std::string checks_summary(const std::vector<CheckResult>& checks) {
  if (checks.empty()) return "";
  std::size_t pass = 0, graded = 0;
  std::string info;
  for (const auto& c : checks) {
    if (c.informational) {
      info += " " + c.name + "=" + format_number(c.value);
      continue;
    }
    ++graded;
    if (c.pass) ++pass;
  }
  std::string out;
  if (graded) out += " checks " + std::to_string(pass) + "/" + std::to_string(graded) + " pass";
  return out + info;
}

// Common tail: write files, commit, fill outcome.
RunOutcome finish(const ExperimentConfig& cfg, RunDirectory& dir, json manifest,
                  const CsvTable& table, const std::optional<FitReport>& fit,
                  std::vector<CheckResult> checks, bool aborted, const std::string& headline) {
  RunOutcome out;
  out.fit = fit;
  out.checks = std::move(checks);
  if (fit) manifest["fit"] = json::parse(fit->to_json());
  if (!out.checks.empty()) manifest["checks"] = checks_json(out.checks);
  dir.write("config.txt", to_text(cfg));
  dir.write("trajectory.csv", table.str());
  if (fit) dir.write("fit.json", fit->to_json() + "\n");
  dir.write("manifest.json", manifest.dump(2) + "\n");
  out.directory = dir.commit();
  out.manifest = std::move(manifest);
  out.exit_code = aborted ? kExitPhysicsAbort : kExitOk;
  std::ostringstream s;
  s << run_name(cfg) << ": " << headline;
  if (fit) {
    s << " fit " << to_string(fit->kind) << " " << format_number(fit->exponent_or_rate)
      << " (r2 " << format_number(fit->r_squared) << ")";
  }
  s << checks_summary(out.checks) << " -> " << out.directory.string();
  out.summary = s.str();
  return out;
}

RunOutcome run_euler_experiment(const ExperimentConfig& cfg) {
  const auto rec = run_euler_record(cfg);
  RunDirectory dir(output_root(cfg), run_name(cfg));
  CsvTable table({"t", "linf", "l1", "mean", "grad_linf", "hprime0", "hprime_quarter",
                  "spectral_tail"});
  for (const auto& d : rec.rows) {
    table.add_row(std::vector<double>{d.t, d.linf, d.l1, d.mean, d.grad_linf, d.hprime0,
                                      d.hprime_quarter, d.spectral_tail});
  }
  for (std::size_t i = 0; i < rec.snapshots.size(); ++i) {
    char name[48];
    std::snprintf(name, sizeof name, "fields/field_%05zu.csv", i);
    std::filesystem::create_directories(dir.file("fields"));
    write_csv(rec.snapshots[i], dir.file(name).string());
  }
  std::optional<FitReport> fit;
  std::vector<CheckResult> checks;
  const auto& res = rec.result;
  if (!res.aborted && !rec.rows.empty()) {
    fit = fit_record(cfg, rec);
    checks = run_checks(cfg, rec);
  }
  json m = base_manifest(cfg);
  m["stepper"] = cfg.stepper;
  m["filter_events"] = res.filter_events;
  m["remesh_count"] = res.final_state.remesh_count;
  m["wall_time_s"] = rec.wall_seconds;
  m["steps"] = res.steps;
  m["samples"] = res.samples;
  m["aborted"] = res.aborted;
  m["abort_reason"] = res.abort_reason;
  m["warnings"] = res.warnings;
  std::ostringstream h;
  if (res.aborted) {
    h << "aborted: " << res.abort_reason;
  } else {
    const auto& last = rec.rows.back();
    h << "t = " << format_number(last.t) << " steps " << res.steps << " linf "
      << format_number(last.linf) << " grad " << format_number(last.grad_linf);
  }
  return finish(cfg, dir, m, table, fit, checks, res.aborted, h.str());
}

void sqg_manifest(json& m, const ExperimentConfig& cfg) {
  m["blowup_factor"] = cfg.blowup_factor;
  m["tail_limit"] = cfg.tail_limit;
  if (cfg.model != Model::SqgExact) {
    m["sign_resolution"] =
        "degregorio rhs = a (|grad|^-1 f) f' + H(f) f; sqg-approx stream = -|grad|^-1 g; "
        "degregorio(a=2) equals sqg-approx composed with theta -> -theta";
  }
}

RunOutcome run_sqg_experiment(const ExperimentConfig& cfg) {
  if (!cfg.resolutions.empty()) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto search = blowup_search(cfg);
    RunDirectory dir(output_root(cfg), run_name(cfg));
    CsvTable table({"n", "verdict", "blowup_time"});
    json runs = json::array();
    for (std::size_t i = 0; i < search.n.size(); ++i) {
      const auto& bt = search.times[i];
      table.add_row({std::to_string(search.n[i]), to_string(search.verdicts[i]),
                     bt ? format_number(*bt) : "nan"});
    }
    json m = base_manifest(cfg);
    sqg_manifest(m, cfg);
    m["blowup_search"] = {{"agree", search.agree},
                          {"spread", search.spread},
                          {"tolerance", kBlowupAgreement}};
    m["wall_time_s"] = elapsed(t0);
    std::ostringstream h;
    h << "blow-up search over " << search.n.size() << " resolutions: "
      << (search.agree ? "consistent" : "not consistent") << " (spread "
      << format_number(search.spread) << ")";
    return finish(cfg, dir, m, table, std::nullopt, {}, false, h.str());
  }

  const auto rec = run_sqg_record(cfg);
  RunDirectory dir(output_root(cfg), run_name(cfg));
  CsvTable table({"t", "linf", "l1", "mean", "grad_linf", "hprime0", "hprime_quarter",
                  "spectral_tail", "bkm_integral", "tail_ratio", "verdict"});
  std::vector<double> t, grad;
  for (const auto& d : rec.rows) {
    table.add_row({format_number(d.t), format_number(d.linf), format_number(d.l1),
                   format_number(d.mean), format_number(d.grad_linf), format_number(d.hprime0),
                   format_number(d.hprime_quarter), format_number(d.spectral_tail),
                   format_number(d.bkm_integral), format_number(d.tail_ratio),
                   to_string(d.verdict)});
    t.push_back(d.t);
    grad.push_back(d.grad_linf);
  }
  const auto& res = rec.result;
  std::optional<FitReport> fit;
  if (cfg.fit != "none" && !res.aborted) {
    Window w = default_window(t, grad);
    if (cfg.fit_t_lo) w.t_lo = *cfg.fit_t_lo;
    if (cfg.fit_t_hi) w.t_hi = *cfg.fit_t_hi;
    try {
      fit = cfg.fit == "power" ? fit_power(t, grad, w.t_lo, w.t_hi)
                               : fit_exponential(t, grad, w.t_lo, w.t_hi);
    } catch (const DomainError& e) {
      throw ConfigError("fit", e.what());
    }
  }
  json m = base_manifest(cfg);
  sqg_manifest(m, cfg);
  m["variant"] = to_string(sqg_model_of(cfg));
  m["verdict"] = to_string(res.monitor.verdict);
  m["bkm_integral"] = res.monitor.bkm_integral;
  m["blowup_time"] = res.blowup_time ? json(*res.blowup_time) : json(nullptr);
  m["wall_time_s"] = rec.wall_seconds;
  m["steps"] = res.steps;
  m["samples"] = res.samples;
  m["aborted"] = res.aborted;
  m["abort_reason"] = res.abort_reason;
  std::ostringstream h;
  if (res.aborted) {
    h << "aborted: " << res.abort_reason;
  } else {
    h << "t = " << format_number(res.final_state.t) << " verdict "
      << to_string(res.monitor.verdict);
    if (res.blowup_time) h << " blowup_time " << format_number(*res.blowup_time);
  }
  return finish(cfg, dir, m, table, fit, {}, res.aborted, h.str());
}

RunOutcome run_vortex_experiment(const ExperimentConfig& cfg) {
  std::vector<double> weights = cfg.vortex_weights;
  if (weights.empty()) weights.assign(cfg.vortex_theta.size(), 1.0);
  VortexSystem v;
  try {
    v = make_vortex_system(cfg.vortex_theta, weights);
  } catch (const DomainError& e) {
    throw ConfigError("vortex_theta", e.what());
  }
  const double dt = cfg.dt ? *cfg.dt : std::min(cfg.dt_max, kVortexDtCap);
  std::vector<std::string> header{"t"};
  for (std::size_t j = 0; j < v.size(); ++j) header.push_back("theta" + std::to_string(j + 1));
  CsvTable table(header);
  auto record = [&table](const VortexSystem& s) {
    std::vector<double> row{s.t};
    row.insert(row.end(), s.theta.begin(), s.theta.end());
    table.add_row(row);
  };

  const auto t0 = std::chrono::steady_clock::now();
  record(v);
  const double initial_gap = min_cyclic_gap(v);
  double next = cfg.sample_interval;
  const double eps = 1e-12 * std::max(1.0, cfg.t_end);
  std::size_t steps = 0;
  bool aborted = false;
  std::string reason;
  try {
    while (v.t < cfg.t_end - eps) {
      const double target = std::min(next, cfg.t_end);
      v = step_rk4(v, std::min(dt, target - v.t));
      ++steps;
      if (v.t >= target - eps) {
        record(v);
        next += cfg.sample_interval;
      }
    }
  } catch (const PhysicsAbort& e) {
    aborted = true;
    reason = e.what();
  }
  RunDirectory dir(output_root(cfg), run_name(cfg));
  json m = base_manifest(cfg);
  m["steps"] = steps;
  m["dt"] = dt;
  m["aborted"] = aborted;
  m["abort_reason"] = reason;
  m["initial_min_gap"] = initial_gap;
  m["final_min_gap"] = aborted ? json(nullptr) : json(min_cyclic_gap(v));
  m["wall_time_s"] = elapsed(t0);
  std::ostringstream h;
  if (aborted) {
    h << "aborted: " << reason;
  } else {
    h << "t = " << format_number(v.t) << " min gap " << format_number(min_cyclic_gap(v));
  }
  return finish(cfg, dir, m, table, std::nullopt, {}, aborted, h.str());
}

std::string kind_name(PeriodReport::Kind k) {
  switch (k) {
    case PeriodReport::Kind::Periodic:
      return "periodic";
    case PeriodReport::Kind::FixedPoint:
      return "fixed-point";
    case PeriodReport::Kind::NotFound:
      return "not-found";
  }
  return "unknown";
}

RunOutcome run_gap_experiment(const ExperimentConfig& cfg) {
  const double dt = cfg.dt ? *cfg.dt : std::min(cfg.dt_max, kVortexDtCap);
  const auto t0 = std::chrono::steady_clock::now();
  json m = base_manifest(cfg);
  m["dt"] = dt;
  // Equal unit weights: vortex-time gap velocity = gap_time_scale * gap_rhs.
  m["gap_time_scale"] = gap_time_scale(1.0);
  if (!cfg.energies.empty()) {
    CsvTable table({"E_level", "period"});
    json scan = json::array();
    std::size_t found = 0;
    for (double e : cfg.energies) {
      const auto z0 = diagonal_point(e);
      const auto rep = detect_period(integrate_gap(z0, dt, cfg.max_time));
      const bool has = rep.kind != PeriodReport::Kind::NotFound;
      if (has) ++found;
      table.add_row({format_number(e), has ? format_number(rep.period) : "nan"});
      scan.push_back({{"energy", e},
                      {"kind", kind_name(rep.kind)},
                      {"period", has ? json(rep.period) : json(nullptr)},
                      {"closure", rep.closure}});
    }
    m["period_scan"] = scan;
    m["wall_time_s"] = elapsed(t0);
    RunDirectory dir(output_root(cfg), run_name(cfg));
    std::ostringstream h;
    h << "period scan: " << found << "/" << cfg.energies.size() << " levels closed";
    return finish(cfg, dir, m, table, std::nullopt, {}, false, h.str());
  }

  const GapPoint z0{cfg.z1, cfg.z2};
  const auto orbit = integrate_gap(z0, dt, std::max(cfg.t_end, cfg.max_time));
  const auto rep = detect_period(orbit);
  CsvTable table({"t", "z1", "z2", "E"});
  double next = 0.0;
  const double eps = 1e-9 * dt;
  for (std::size_t i = 0; i < orbit.t.size() && orbit.t[i] <= cfg.t_end + eps; ++i) {
    if (orbit.t[i] + eps < next) continue;
    table.add_row(std::vector<double>{orbit.t[i], orbit.z1[i], orbit.z2[i],
                                      hamiltonian(orbit.z1[i], orbit.z2[i])});
    next += cfg.sample_interval;
  }
  const double e0 = hamiltonian(z0.z1, z0.z2);
  m["energy"] = e0;
  m["period_kind"] = kind_name(rep.kind);
  m["period"] = rep.kind == PeriodReport::Kind::NotFound ? json(nullptr) : json(rep.period);
  m["closure"] = rep.closure;
  m["wall_time_s"] = elapsed(t0);
  RunDirectory dir(output_root(cfg), run_name(cfg));
  std::ostringstream h;
  h << "E = " << format_number(e0) << " " << kind_name(rep.kind);
  if (rep.kind != PeriodReport::Kind::NotFound) h << " period " << format_number(rep.period);
  return finish(cfg, dir, m, table, std::nullopt, {}, false, h.str());
}

RunOutcome run_lift_experiment(const ExperimentConfig& cfg) {
  const auto field = initial_field(cfg);
  CsvTable table({"x1", "x2", "omega", "u1", "u2", "psi"});
  json points = json::array();
  std::optional<EulerLift> euler;
  std::optional<SQGLift> sqg;
  if (cfg.lift == "euler") {
    euler.emplace(field);
  } else {
    sqg.emplace(field, cfg.alpha);
  }
  for (std::size_t i = 0; i < cfg.query_r.size(); ++i) {
    const PlanePoint p{cfg.query_r[i], cfg.query_theta[i]};
    double scalar = 0.0, psi = 0.0;
    Vec2 u;
    if (euler) {
      const auto l = euler->at(p);
      scalar = l.omega;
      u = l.u;
      psi = l.psi;
    } else {
      const auto l = sqg->at(p);
      scalar = l.scalar;
      u = l.u;
      psi = l.psi;
    }
    table.add_row(std::vector<double>{p.x1(), p.x2(), scalar, u.x, u.y, psi});
    points.push_back(
        {{"x1", p.x1()}, {"x2", p.x2()}, {"omega", scalar}, {"u1", u.x}, {"u2", u.y}, {"psi", psi}});
  }
  json m = base_manifest(cfg);
  m["points"] = points;
  RunDirectory dir(output_root(cfg), run_name(cfg));
  return finish(cfg, dir, m, table, std::nullopt, {}, false,
                std::to_string(points.size()) + " " + cfg.lift + " lift points");
}

RunOutcome run_kernel_experiment(const ExperimentConfig& cfg) {
  std::vector<double> ratios = cfg.ratios;
  if (ratios.empty()) ratios = {2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 1000.0};
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = kernel_decay_study(cfg.symmetry_m, ratios, cfg.directions, cfg.seed);
  CsvTable table({"ratio", "max_ratio", "tail_integral"});
  for (const auto& r : rows) {
    table.add_row(std::vector<double>{r.distance_ratio, r.max_ratio, r.tail_integral});
  }
  json m = base_manifest(cfg);
  m["wall_time_s"] = elapsed(t0);
  RunDirectory dir(output_root(cfg), run_name(cfg));
  std::ostringstream h;
  h << "m = " << cfg.symmetry_m << " max ratio " << format_number(rows.back().max_ratio)
    << " tail " << format_number(rows.back().tail_integral) << " at |y|/|x| = "
    << format_number(rows.back().distance_ratio);
  return finish(cfg, dir, m, table, std::nullopt, {}, false, h.str());
}

}  // namespace

SQGModel sqg_model_of(const ExperimentConfig& cfg) {
  switch (cfg.model) {
    case Model::SqgExact:
      return {SQGVariant::Exact, 0.0};
    case Model::SqgApprox:
      return {SQGVariant::Approx, 0.0};
    case Model::DeGregorio:
      return {SQGVariant::DeGregorio, cfg.a};
    default:
      throw ConfigError("model", "not an sqg model");
  }
}

SQGRecord run_sqg_record(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto model = sqg_model_of(cfg);
  SQGState s;
  try {
    s = make_sqg_state(initial_field(cfg), model, symmetry_of(cfg), cfg.dealias);
  } catch (const PreconditionError& e) {
    throw ConfigError("symmetry_m", e.what());
  }
  if (cfg.dt) {
    const double limit = sqg_admissible_dt(s, cfg.cfl);
    if (*cfg.dt > limit) {
      std::ostringstream msg;
      msg << "fixed dt = " << *cfg.dt << " violates the CFL bound " << limit;
      throw ConfigError("dt", msg.str());
    }
  }
  SQGRunOptions opt;
  opt.t_end = cfg.t_end;
  opt.dt = cfg.dt;
  opt.cfl = cfg.cfl;
  opt.dt_max = cfg.dt_max;
  opt.sample_interval = cfg.sample_interval;
  opt.blowup_factor = cfg.blowup_factor;
  opt.tail_limit = cfg.tail_limit;
  SQGRecord rec;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    rec.result = run_sqg(std::move(s), opt, [&rec](const SQGState&, const SQGDiagnostics& d) {
      rec.rows.push_back(d);
    });
  } catch (const StepRejected& e) {
    throw ConfigError("dt", e.what());
  }
  rec.wall_seconds = elapsed(t0);
  return rec;
}

BlowupSearch blowup_search(const ExperimentConfig& cfg) {
  BlowupSearch out;
  if (cfg.resolutions.size() < 3) {
    throw ConfigError("resolutions", "a blow-up search needs at least 3 resolutions");
  }
  for (double r : cfg.resolutions) {
    ExperimentConfig c = cfg;
    c.n = static_cast<std::size_t>(r);
    c.resolutions.clear();
    const auto rec = run_sqg_record(c);
    out.n.push_back(c.n);
    out.verdicts.push_back(rec.result.monitor.verdict);
    out.times.push_back(rec.result.blowup_time);
  }
  bool all = true;
  double sum = 0.0, lo = 1e300, hi = -1e300;
  for (std::size_t i = 0; i < out.n.size(); ++i) {
    if (out.verdicts[i] != Verdict::SuspectedBlowup || !out.times[i]) {
      all = false;
      continue;
    }
    sum += *out.times[i];
    lo = std::min(lo, *out.times[i]);
    hi = std::max(hi, *out.times[i]);
  }
  if (all) {
    const double mean = sum / static_cast<double>(out.n.size());
    out.spread = std::max(hi - mean, mean - lo) / mean;
    out.agree = out.spread <= kBlowupAgreement;
  } else {
    out.spread = std::nan("");
  }
  return out;
}

RunOutcome run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  switch (cfg.model) {
    case Model::Euler1d:
      return run_euler_experiment(cfg);
    case Model::SqgExact:
    case Model::SqgApprox:
    case Model::DeGregorio:
      return run_sqg_experiment(cfg);
    case Model::Vortex:
      return run_vortex_experiment(cfg);
    case Model::Gap3:
      return run_gap_experiment(cfg);
    case Model::LiftQuery:
      return run_lift_experiment(cfg);
    case Model::KernelDecay:
      return run_kernel_experiment(cfg);
  }
  throw ConfigError("model", "unhandled model");
}

}  // namespace homog::harness
