#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "homog/circle_field.hpp"
#include "homog/error.hpp"
#include "homog/euler1d.hpp"
#include "homog/harness/presets.hpp"
#include "homog/kernels.hpp"

using namespace homog;

namespace {

double max_diff(const CircleField& a, const CircleField& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
  return d;
}

double l1_nodes(const CircleField& f) {
  double s = 0.0;
  for (double v : f.values()) s += std::abs(v);
  return s * f.spacing();
}

// Smooth nonnegative 4-fold data.
double gentle(double t) { return 1.0 + 0.25 * std::cos(4 * t) + 0.1 * std::sin(8 * t); }
double gentle_d(double t) { return -std::sin(4 * t) + 0.8 * std::cos(8 * t); }

EulerState advance(EulerState s, double t_end, double dt) {
  while (s.t < t_end - 1e-12) s = step(s, std::min(dt, t_end - s.t));
  return s;
}

struct Trace {
  std::vector<EulerDiagnostics> rows;
};

Trace run_trace(EulerState s, double t_end, double sample, double dt_max = 1e-2) {
  Trace tr;
  EulerRunOptions opt;
  opt.t_end = t_end;
  opt.sample_interval = sample;
  opt.dt_max = dt_max;
  run_euler(std::move(s), opt, [&](const EulerState&, const EulerDiagnostics& d) {
    tr.rows.push_back(d);
  });
  return tr;
}

const SymmetrySpec kFour{4, std::nullopt};
const SymmetrySpec kFourOdd{4, 0.0};

}  // namespace

TEST_CASE("rhs of constant data vanishes") {
  for (double c : {0.0, 1.0, -2.5}) {
    const auto h = CircleField::sample(64, [c](double) { return c; });
    CHECK(node_max_abs(euler_rhs(h, true)) < 1e-14);
    CHECK(node_max_abs(euler_rhs(h, false)) < 1e-14);
  }
}

TEST_CASE("rhs of cos 4theta is -sin(8 theta)/3") {
  const auto h = CircleField::sample(128, [](double t) { return std::cos(4 * t); });
  const auto want = CircleField::sample(128, [](double t) { return -std::sin(8 * t) / 3.0; });
  CHECK(max_diff(euler_rhs(h, true), want) < 1e-10);
  CHECK(max_diff(euler_rhs(h, false), want) < 1e-10);
}

TEST_CASE("mollified odd 4-fold sign pattern is stationary in the limit") {
  // Weak form: rhs mass relative to the jump mass shrinks linearly with the
  // mollification width.
  auto ratio = [](double w) {
    const auto h = CircleField::sample(
        4096, [w](double t) { return std::tanh(std::sin(4 * t) / (4 * w)); });
    return l1_nodes(euler_rhs(h, true)) / l1_nodes(derivative(h));
  };
  const double r1 = ratio(0.05), r2 = ratio(0.025);
  CHECK(r1 <= 0.05);
  CHECK(r2 / r1 == doctest::Approx(0.5).epsilon(0.25));
}

TEST_CASE("constant data is unchanged by a step") {
  const auto h = CircleField::sample(64, [](double) { return 0.7; });
  const auto ps = step(make_pseudospectral_state(h, kFour), 0.01);
  CHECK(max_diff(ps.h, h) < 1e-15);
  CHECK(ps.t == doctest::Approx(0.01));

  Profile p{[](double) { return 0.7; }, [](double) { return 0.0; }};
  const auto sl = step(make_semi_lagrangian_state(64, p, kFour), 0.01);
  CHECK(max_diff(sl.h, h) < 1e-14);
}

TEST_CASE("pseudospectral RK4 converges at order 4") {
  const auto h0 = CircleField::sample(64, [](double t) { return std::cos(4 * t); });
  const auto s0 = make_pseudospectral_state(h0, kFour);
  const double T = 1.0;
  const auto ref = advance(s0, T, 0.1 / 32);
  const double e1 = max_diff(advance(s0, T, 0.1).h, ref.h);
  const double e2 = max_diff(advance(s0, T, 0.05).h, ref.h);
  const double e3 = max_diff(advance(s0, T, 0.025).h, ref.h);
  CHECK(std::log2(e1 / e2) == doctest::Approx(4.0).epsilon(0.025));
  CHECK(std::log2(e2 / e3) == doctest::Approx(4.0).epsilon(0.025));
}

TEST_CASE("adding 2c rotates the solution with speed c") {
  const double c = 0.3;
  const auto h0 = CircleField::sample(128, [](double t) { return 0.5 * std::cos(4 * t); });
  const auto base = advance(make_pseudospectral_state(h0, kFour), 1.0, 1e-3);
  const auto shifted = advance(make_pseudospectral_state(add_constant(h0, 2 * c), kFour), 1.0, 1e-3);
  const auto want = add_constant(translate(base.h, c * 1.0), 2 * c);
  CHECK(max_diff(shifted.h, want) < 1e-6);
}

TEST_CASE("CFL violation throws StepRejected with the admissible dt") {
  const auto h0 = CircleField::sample(64, [](double t) { return 10.0 + std::cos(4 * t); });
  const auto s = make_pseudospectral_state(h0, kFour);
  const double limit = admissible_dt(s);
  CHECK(limit == doctest::Approx(0.5 * h0.spacing() / max_transport_speed(s)));
  try {
    step(s, 2 * limit);
    FAIL("expected StepRejected");
  } catch (const StepRejected& e) {
    CHECK(e.admissible_dt() == doctest::Approx(limit));
  }
  CHECK_NOTHROW(step(s, 0.9 * limit));
  CHECK_THROWS_AS(step(s, 0.0), PreconditionError);
}

TEST_CASE("zero data keeps all diagnostics zero") {
  const auto h0 = CircleField::sample(64, [](double) { return 0.0; });
  for (auto s : {make_pseudospectral_state(h0, kFourOdd),
                 make_semi_lagrangian_state(64, Profile{[](double) { return 0.0; },
                                                        [](double) { return 0.0; }},
                                            kFourOdd)}) {
    const auto tr = run_trace(s, 2.0, 0.5, 0.1);
    CHECK(tr.rows.size() == 5);
    for (const auto& d : tr.rows) {
      CHECK(d.linf == 0.0);
      CHECK(d.l1 == 0.0);
      CHECK(d.mean == 0.0);
      CHECK(d.grad_linf == 0.0);
      CHECK(d.hprime0 == 0.0);
      CHECK(d.hprime_quarter == 0.0);
      CHECK(d.spectral_tail == 0.0);
    }
  }
}

TEST_CASE("diagnostics are finite and l1 bounds the mean") {
  const auto h0 = CircleField::sample(128, [](double t) { return std::sin(4 * t) + 0.2; });
  const auto tr = run_trace(make_pseudospectral_state(h0, kFour), 1.0, 0.25);
  for (const auto& d : tr.rows) {
    CHECK(std::isfinite(d.linf));
    CHECK(std::isfinite(d.grad_linf));
    CHECK(d.l1 >= std::abs(kTwoPi * d.mean) - 1e-12);
  }
}

TEST_CASE("Linf, L1 and mean are conserved for smooth nonnegative data") {
  const auto h0 = CircleField::sample(256, gentle);
  const auto ps = run_trace(make_pseudospectral_state(h0, kFour), 5.0, 0.5);
  const auto sl =
      run_trace(make_semi_lagrangian_state(256, Profile{gentle, gentle_d}, kFour), 5.0, 0.5);
  auto drift = [](const Trace& tr, double EulerDiagnostics::*m, bool relative) {
    const double v0 = tr.rows.front().*m;
    double d = 0.0;
    for (const auto& r : tr.rows) d = std::max(d, std::abs(r.*m - v0));
    return relative ? d / std::abs(v0) : d;
  };
  CHECK(drift(ps, &EulerDiagnostics::linf, false) <= 1e-6);
  CHECK(drift(sl, &EulerDiagnostics::linf, false) <= 1e-8);
  CHECK(drift(ps, &EulerDiagnostics::l1, true) <= 1e-6);
  CHECK(drift(sl, &EulerDiagnostics::l1, true) <= 1e-6);
  CHECK(drift(ps, &EulerDiagnostics::mean, false) <= 1e-10);
  CHECK(drift(sl, &EulerDiagnostics::mean, false) <= 1e-10);
}

TEST_CASE("semi-Lagrangian values obey the max principle") {
  auto f = [](double t) { return std::tanh(3 * std::sin(4 * t)); };
  auto df = [](double t) {
    const double c = std::cosh(3 * std::sin(4 * t));
    return 12 * std::cos(4 * t) / (c * c);
  };
  auto s = make_semi_lagrangian_state(256, Profile{f, df}, kFourOdd);
  const double top = std::tanh(3.0);
  for (int i = 0; i < 200; ++i) {
    s = step(s, 0.02);
    const auto fine = s.fine_values(2);
    const double sup = *std::max_element(fine.begin(), fine.end(), [](double a, double b) {
      return std::abs(a) < std::abs(b);
    });
    REQUIRE(std::abs(sup) <= top);
    REQUIRE(symmetry_residual(s.h, s.symmetry) <= 1e-10);
  }
  CHECK(s.remesh_count > 0);
}

TEST_CASE("pseudospectral steps keep the symmetry class") {
  const auto h0 = CircleField::sample(
      256, [](double t) { return std::sin(4 * t) + 0.3 * std::sin(8 * t); });
  auto s = make_pseudospectral_state(h0, kFourOdd);
  for (int i = 0; i < 50; ++i) {
    s = step(s, 0.01);
    REQUIRE(symmetry_residual(s.h, kFourOdd) <= 1e-10);
  }
}

TEST_CASE("steppers agree on smooth data") {
  auto f = [](double t) { return std::sin(4 * t) + 0.3 * std::cos(8 * t); };
  auto df = [](double t) { return 4 * std::cos(4 * t) - 2.4 * std::sin(8 * t); };
  const auto ps = advance(make_pseudospectral_state(CircleField::sample(512, f), kFour), 1.0, 2e-3);
  const auto sl = advance(make_semi_lagrangian_state(512, Profile{f, df}, kFour), 1.0, 2e-3);
  CHECK(max_diff(ps.h, sl.h) <= 1e-4);
}

namespace {

harness::ExperimentConfig short_growth() {
  auto cfg = harness::preset_theorem_growth(0.1);
  cfg.t_end = 6.0;
  cfg.sample_interval = 0.05;
  return cfg;
}

}  // namespace

TEST_CASE("bump data: L1 and sector mass decrease") {
  const auto cfg = short_growth();
  const auto s = make_semi_lagrangian_state(cfg.n, harness::initial_profile(cfg), kFourOdd);
  const auto tr = run_trace(s, cfg.t_end, cfg.sample_interval, cfg.dt_max);
  for (std::size_t i = 1; i < tr.rows.size(); ++i) {
    REQUIRE(tr.rows[i].l1 < tr.rows[i - 1].l1);
  }
}

TEST_CASE("sector mass derivative equals -H'(0)^2 + H'(pi/4)^2") {
  const auto cfg = short_growth();
  const auto s = make_semi_lagrangian_state(cfg.n, harness::initial_profile(cfg), kFourOdd);
  const auto tr = run_trace(s, cfg.t_end, cfg.sample_interval, cfg.dt_max);
  const auto& r = tr.rows;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    const double dm = (harness::sector_mass(r[i + 1], 4) - harness::sector_mass(r[i - 1], 4)) /
                      (r[i + 1].t - r[i - 1].t);
    const double want = -r[i].hprime0 * r[i].hprime0 + r[i].hprime_quarter * r[i].hprime_quarter;
    worst = std::max(worst, std::abs(dm - want) / std::abs(want));
  }
  CHECK(worst <= 0.01);
}

TEST_CASE("gradient stays under the exponential a priori bound") {
  const auto cfg = short_growth();
  const auto s = make_semi_lagrangian_state(cfg.n, harness::initial_profile(cfg), kFourOdd);
  const auto tr = run_trace(s, cfg.t_end, cfg.sample_interval, cfg.dt_max);
  const auto& r = tr.rows;
  double integral = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    integral += 0.5 * (r[i].hprime_linf + r[i - 1].hprime_linf) * (r[i].t - r[i - 1].t);
    REQUIRE(r[i].grad_linf <= 1.05 * r[0].grad_linf * std::exp(2.0 * integral));
  }
  // h'(0) grows while H'(0) < 0.
  for (std::size_t i = 1; i < r.size(); ++i) REQUIRE(r[i].grad_linf >= r[i - 1].grad_linf);
  CHECK(r.back().grad_linf > 1.2 * r.front().grad_linf);
}

TEST_CASE("sector data: gradient grows") {
  auto cfg = harness::preset_theorem_boundary();
  cfg.n = 256;
  const auto s = make_semi_lagrangian_state(cfg.n, harness::initial_profile(cfg), kFourOdd);
  const auto tr = run_trace(s, 4.0, 0.5, cfg.dt_max);
  for (std::size_t i = 1; i < tr.rows.size(); ++i) {
    CHECK(tr.rows[i].grad_linf > tr.rows[i - 1].grad_linf);
  }
}

TEST_CASE("fixed-dt run samples every interval") {
  const auto h0 = CircleField::sample(64, [](double t) { return std::cos(4 * t); });
  EulerRunOptions opt;
  opt.t_end = 1.0;
  opt.dt = 0.01;
  std::size_t calls = 0;
  auto res = run_euler(make_pseudospectral_state(h0, kFour), opt,
                       [&](const EulerState&, const EulerDiagnostics&) { ++calls; });
  CHECK_FALSE(res.aborted);
  CHECK(res.steps == 100);
  CHECK(calls == 11);
  CHECK(res.final_state.t == doctest::Approx(1.0));
}

TEST_CASE("flow_trace: constant field rotates particles at c/2") {
  const double c = 0.8;
  const auto h0 = CircleField::sample(64, [c](double) { return c; });
  EulerTrajectory traj;
  EulerRunOptions opt;
  opt.t_end = 3.0;
  opt.sample_interval = 0.1;
  run_euler(make_pseudospectral_state(h0, kFour), opt, traj.recorder());
  const auto path = flow_trace(traj, 0.5);
  REQUIRE(path.times.size() == path.angles.size());
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    const double want = 0.5 + 0.5 * c * path.times[i];
    CHECK(path.unwrapped[i] == doctest::Approx(want).epsilon(1e-12));
    CHECK(path.angles[i] == doctest::Approx(wrap_angle(want)).epsilon(1e-12));
  }
}

TEST_CASE("flow_trace: particles on the bump move toward 0 and carry h") {
  const auto cfg = short_growth();
  auto s = make_semi_lagrangian_state(cfg.n, harness::initial_profile(cfg), kFourOdd);
  EulerTrajectory traj;
  EulerRunOptions opt;
  opt.t_end = cfg.t_end;
  opt.sample_interval = 0.02;
  opt.dt_max = cfg.dt_max;
  run_euler(s, opt, traj.recorder());

  const double theta0 = 0.05;
  const auto path = flow_trace(traj, theta0);
  const double h0 = traj.fields.front().evaluate(theta0);
  REQUIRE(h0 > 0.1);
  for (std::size_t i = 1; i < path.times.size(); ++i) {
    REQUIRE(path.angles[i] <= path.angles[i - 1]);
    REQUIRE(path.angles[i] > 0.0);
  }
  // Compare at the snapshot times.
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); k += 10) {
    const auto it = std::lower_bound(path.times.begin(), path.times.end(), traj.times[k] - 1e-12);
    const auto i = static_cast<std::size_t>(it - path.times.begin());
    worst = std::max(worst, std::abs(traj.fields[k].evaluate(path.angles[i]) - h0));
  }
  CHECK(worst <= 1e-4);

  // pi/8 sits outside the bump's support and still drifts toward 0.
  const auto far = flow_trace(traj, kPi / 8);
  CHECK(far.angles.back() < kPi / 8);
  CHECK(far.angles.back() > 0.0);
}

TEST_CASE("stepper names round-trip") {
  CHECK(parse_euler_stepper(to_string(EulerStepper::SemiLagrangian)) ==
        EulerStepper::SemiLagrangian);
  CHECK(parse_euler_stepper("pseudospectral-rk4") == EulerStepper::PseudospectralRK4);
  CHECK_THROWS(parse_euler_stepper("euler-forward"));
}
