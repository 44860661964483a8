#include <doctest.h>

#include <cmath>
#include <vector>

#include "homog/circle_field.hpp"
#include "homog/error.hpp"
#include "homog/kernels.hpp"
#include "homog/sqg1d.hpp"

using namespace homog;

namespace {

double max_diff(const CircleField& a, const CircleField& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
  return d;
}

const SymmetrySpec kTwoOdd{2, 0.0};
const SQGModel kExact{SQGVariant::Exact, 0.0};
const SQGModel kApprox{SQGVariant::Approx, 0.0};

SQGState advance(SQGState s, double t_end, double dt) {
  const auto steps = static_cast<long>(std::llround(std::abs(t_end - s.t) / std::abs(dt)));
  for (long i = 0; i < steps; ++i) s = step(s, dt);
  return s;
}

}  // namespace

TEST_CASE("rhs of zero data vanishes") {
  const auto z = CircleField::sample(64, [](double) { return 0.0; });
  CHECK(node_max_abs(rhs_sqg_exact(z)) == 0.0);
  CHECK(node_max_abs(rhs_sqg_approx(z)) == 0.0);
  CHECK(node_max_abs(rhs_degregorio(z, 2.0)) == 0.0);
  CHECK(node_max_abs(rhs_degregorio(z, -1.0)) == 0.0);
}

TEST_CASE("exact rhs of sin 2theta is -sin(4 theta)/4") {
  const auto g = CircleField::sample(128, [](double t) { return std::sin(2 * t); });
  const auto want = CircleField::sample(128, [](double t) { return -std::sin(4 * t) / 4.0; });
  CHECK(max_diff(rhs_sqg_exact(g), want) < 1e-10);
  const auto G = solve_stream_sqg(g);
  CHECK(max_diff(G, -0.25 * g) < 1e-15);
}

TEST_CASE("approximate rhs of sin 2theta is -sin(4 theta)/2") {
  // Leading-order stream -|grad|^{-1} g = -sin(2 theta)/2.
  const auto g = CircleField::sample(128, [](double t) { return std::sin(2 * t); });
  const auto want = CircleField::sample(128, [](double t) { return -std::sin(4 * t) / 2.0; });
  CHECK(max_diff(rhs_sqg_approx(g), want) < 1e-10);
}

TEST_CASE("De Gregorio at a = 0 is H(f) f") {
  const auto f = CircleField::sample(64, [](double t) { return std::cos(t); });
  const auto want = CircleField::sample(64, [](double t) { return std::sin(2 * t) / 2.0; });
  CHECK(max_diff(rhs_degregorio(f, 0.0), want) < 1e-12);
}

TEST_CASE("De Gregorio at a = 2 is the reflected approximate model") {
  const auto g = CircleField::sample(256, [](double t) {
    return std::sin(2 * t) + 0.3 * std::sin(4 * t) - 0.1 * std::cos(6 * t);
  });
  const auto lhs = rhs_degregorio(g, 2.0);
  const auto rhs = reflect(rhs_sqg_approx(reflect(g)));
  CHECK(max_diff(lhs, rhs) <= 1e-12);
}

TEST_CASE("general rhs reduces to the exact one at alpha = 1/2") {
  const auto g = CircleField::sample(128, [](double t) { return std::sin(2 * t) + 0.2 * std::sin(6 * t); });
  const auto gen = rhs_sqg_general(g, 0.5, [](const CircleField& f) { return solve_stream_sqg(f); });
  CHECK(max_diff(gen, rhs_sqg_exact(g)) < 1e-15);
  CHECK_THROWS_AS(rhs_sqg_general(g, 0.5, StreamSolver{}), ConfigError);
}

TEST_CASE("exact model requires m >= 2") {
  const auto g = CircleField::sample(64, [](double t) { return std::sin(t); });
  CHECK_THROWS_AS(make_sqg_state(g, kExact, SymmetrySpec{1, 0.0}), PreconditionError);
  CHECK_NOTHROW(make_sqg_state(g, SQGModel{SQGVariant::DeGregorio, -1.0}, SymmetrySpec{1, 0.0}));
}

TEST_CASE("odd symmetry survives a raw RK4 step") {
  const auto g = CircleField::sample(256, [](double t) { return std::sin(2 * t) + 0.3 * std::sin(4 * t); });
  const double dt = 1e-2;
  // RK4 without re-projection.
  const auto k1 = rhs_sqg_exact(g);
  const auto k2 = rhs_sqg_exact(g + (0.5 * dt) * k1);
  const auto k3 = rhs_sqg_exact(g + (0.5 * dt) * k2);
  const auto k4 = rhs_sqg_exact(g + dt * k3);
  const auto next = g + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  CHECK(node_max_abs(project_parity(next, 0.0, Parity::Even)) <= 1e-12);
  CHECK(symmetry_residual(next, kTwoOdd) <= 1e-10);

  auto s = make_sqg_state(g, kExact, kTwoOdd);
  for (int i = 0; i < 20; ++i) {
    s = step(s, dt);
    REQUIRE(std::abs(s.g.coeff(0)) <= 1e-10);
    REQUIRE(std::abs(s.g.coeff(1)) <= 1e-10);
  }
}

TEST_CASE("RK4 self-convergence is order 4") {
  const auto g = CircleField::sample(64, [](double t) { return std::sin(2 * t) + 0.2 * std::sin(4 * t); });
  const auto s0 = make_sqg_state(g, kExact, kTwoOdd);
  const auto ref = advance(s0, 1.0, 0.05 / 32);
  const double e1 = max_diff(advance(s0, 1.0, 0.05).g, ref.g);
  const double e2 = max_diff(advance(s0, 1.0, 0.025).g, ref.g);
  const double e3 = max_diff(advance(s0, 1.0, 0.0125).g, ref.g);
  CHECK(std::log2(e1 / e2) == doctest::Approx(4.0).epsilon(0.025));
  CHECK(std::log2(e2 / e3) == doctest::Approx(4.0).epsilon(0.025));
}

TEST_CASE("time reversal returns the initial data") {
  const auto g = CircleField::sample(128, [](double t) { return std::sin(2 * t) + 0.3 * std::sin(4 * t); });
  auto s = make_sqg_state(g, kExact, kTwoOdd);
  s = advance(s, 0.2, 1e-3);
  s = advance(s, 0.0, -1e-3);
  CHECK(max_diff(s.g, g) <= 1e-7);
}

TEST_CASE("step rejects CFL violations") {
  const auto g = CircleField::sample(64, [](double t) { return 5 * std::sin(2 * t); });
  const auto s = make_sqg_state(g, kExact, kTwoOdd);
  const double limit = sqg_admissible_dt(s);
  try {
    step(s, 1.5 * limit);
    FAIL("expected StepRejected");
  } catch (const StepRejected& e) {
    CHECK(e.admissible_dt() == doctest::Approx(limit));
  }
  CHECK_THROWS_AS(step(s, 0.0), PreconditionError);
}

TEST_CASE("exact run from sin 2theta stays resolved") {
  const auto g = CircleField::sample(512, [](double t) { return std::sin(2 * t); });
  SQGRunOptions opt;
  opt.t_end = 1.0;
  opt.sample_interval = 0.1;
  std::vector<double> bkm;
  const auto res = run_sqg(make_sqg_state(g, kExact, kTwoOdd), opt,
                           [&](const SQGState&, const SQGDiagnostics& d) {
                             CHECK(std::isfinite(d.bkm_integral));
                             bkm.push_back(d.bkm_integral);
                           });
  CHECK(res.monitor.verdict == Verdict::Resolved);
  CHECK_FALSE(res.aborted);
  CHECK(res.final_state.t == doctest::Approx(1.0));
  CHECK(bkm.size() == 11);
  for (std::size_t i = 1; i < bkm.size(); ++i) CHECK(bkm[i] >= bkm[i - 1]);
}

TEST_CASE("approximate and exact trajectories separate by the multiplier gap") {
  const auto g = CircleField::sample(256, [](double t) { return std::sin(2 * t); });
  auto a = make_sqg_state(g, kExact, kTwoOdd);
  auto b = make_sqg_state(g, kApprox, kTwoOdd);
  const double rate = max_diff(rhs_sqg_exact(g), rhs_sqg_approx(g));
  CHECK(rate == doctest::Approx(0.25).epsilon(1e-10));
  a = advance(a, 0.5, 1e-3);
  b = advance(b, 0.5, 1e-3);
  const double d = max_diff(a.g, b.g);
  CHECK(d >= 0.8 * 0.5 * rate);
  CHECK(d <= 1.2 * 0.5 * rate);
}

TEST_CASE("tail ratio") {
  const auto smooth = CircleField::sample(64, [](double t) { return std::sin(2 * t); });
  CHECK(tail_ratio(smooth) < 1e-28);
  const auto high = CircleField::sample(64, [](double t) { return std::sin(2 * t) + std::sin(20 * t); });
  CHECK(tail_ratio(high) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("blow-up time from an exact 1/(T - t) profile") {
  const double T = 2.0;
  std::vector<double> t, grad;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(1.9 * i / 100.0);
    grad.push_back(1.0 / (T - t.back()));
  }
  const auto est = estimate_blowup_time(t, grad);
  REQUIRE(est.has_value());
  CHECK(*est == doctest::Approx(T).epsilon(1e-3));

  std::vector<double> flat(t.size(), 1.0);
  CHECK_FALSE(estimate_blowup_time(t, flat).has_value());
  CHECK_FALSE(estimate_blowup_time({0, 1, 2}, {1, 2, 3}).has_value());
}

TEST_CASE("monitor halts on growth or under-resolution") {
  const auto f = CircleField::sample(128, [](double t) { return std::sin(t); });
  SQGRunOptions opt;
  opt.t_end = 10.0;
  opt.dt_max = 1e-3;
  opt.blowup_factor = 3.0;
  opt.sample_interval = 0.5;
  const auto res = run_sqg(make_sqg_state(f, SQGModel{SQGVariant::DeGregorio, -1.0},
                                          SymmetrySpec{1, 0.0}),
                           opt, nullptr);
  CHECK(res.monitor.verdict == Verdict::SuspectedBlowup);
  CHECK(res.final_state.t < opt.t_end);
  CHECK(res.monitor.last_grad >= 3.0 * res.monitor.initial_grad);

  opt.blowup_factor = 1e6;
  opt.tail_limit = 1e-30;
  const auto tight = run_sqg(make_sqg_state(f, SQGModel{SQGVariant::DeGregorio, -1.0},
                                            SymmetrySpec{1, 0.0}),
                             opt, nullptr);
  CHECK(tight.monitor.verdict == Verdict::UnderResolved);
}

TEST_CASE("names") {
  CHECK(to_string(kExact) == "sqg-exact");
  CHECK(to_string(kApprox) == "sqg-approx");
  CHECK(to_string(SQGModel{SQGVariant::DeGregorio, -1.0}) == "degregorio(-1)");
  CHECK(to_string(Verdict::SuspectedBlowup) == "suspected-blowup");
  CHECK(to_string(Verdict::UnderResolved) == "under-resolved");
  CHECK(to_string(Verdict::Resolved) == "resolved");
}
