#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "homog/circle_field.hpp"
#include "homog/error.hpp"
#include "homog/kernels.hpp"
#include "homog/lift2d.hpp"

using namespace homog;

namespace {

CircleField band_limited(std::size_t n) {
  return CircleField::sample(n, [](double t) {
    return 1.0 + 0.5 * std::cos(4 * t) - 0.3 * std::sin(8 * t) + 0.2 * std::cos(3 * t);
  });
}

// Divergence and curl of a planar field by centered differences.
template <class U>
std::pair<double, double> div_curl(const U& u, double x1, double x2, double h) {
  const auto px = u(x1 + h, x2), mx = u(x1 - h, x2);
  const auto py = u(x1, x2 + h), my = u(x1, x2 - h);
  const double div = (px.x - mx.x) / (2 * h) + (py.y - my.y) / (2 * h);
  const double curl = (px.y - mx.y) / (2 * h) - (py.x - my.x) / (2 * h);
  return {div, curl};
}

}  // namespace

TEST_CASE("polar and Cartesian coordinates round-trip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(-kPi, kPi), lg(-8.0, 8.0);
  for (int k = 0; k < 200; ++k) {
    const PlanePoint p{std::pow(10.0, lg(rng)), ang(rng)};
    const auto q = PlanePoint::from_cartesian(p.x1(), p.x2());
    CHECK(q.r == doctest::Approx(p.r).epsilon(1e-14));
    CHECK(std::abs(q.theta - p.theta) <= 1e-14 * std::max(1.0, std::abs(p.theta)));
  }
}

TEST_CASE("h = 1 lifts to solid-body rotation x^perp / 2") {
  const auto h = CircleField::sample(32, [](double) { return 1.0; });
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  for (int k = 0; k < 50; ++k) {
    const double x1 = c(rng), x2 = c(rng);
    const auto l = lift_euler(h, PlanePoint::from_cartesian(x1, x2));
    CHECK(std::abs(l.u.x + 0.5 * x2) <= 1e-10);
    CHECK(std::abs(l.u.y - 0.5 * x1) <= 1e-10);
    CHECK(l.omega == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(l.psi == doctest::Approx(0.25 * (x1 * x1 + x2 * x2)).epsilon(1e-12));
  }
}

TEST_CASE("origin is fixed") {
  const auto h = band_limited(64);
  const auto l = lift_euler(h, {0.0, 0.7});
  CHECK(l.u.x == 0.0);
  CHECK(l.u.y == 0.0);
  CHECK(l.psi == 0.0);
}

TEST_CASE("Euler lift is divergence-free with curl omega") {
  const EulerLift lift(band_limited(64));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(-kPi, kPi), rad(0.5, 2.0);
  double worst_div = 0.0, worst_curl = 0.0;
  for (int k = 0; k < 100; ++k) {
    const PlanePoint p{rad(rng), ang(rng)};
    auto u = [&](double a, double b) { return lift.at(PlanePoint::from_cartesian(a, b)).u; };
    const auto [div, curl] = div_curl(u, p.x1(), p.x2(), 1e-5 * p.r);
    worst_div = std::max(worst_div, std::abs(div));
    worst_curl = std::max(worst_curl, std::abs(curl - lift.at(p).omega));
  }
  CHECK(worst_div <= 1e-6);
  CHECK(worst_curl <= 1e-6);
}

TEST_CASE("homogeneity degrees 0, 1, 2") {
  const EulerLift lift(band_limited(64));
  for (double th : {-2.0, 0.3, 1.1}) {
    const auto a = lift.at({0.7, th}), b = lift.at({1.4, th});
    CHECK(b.omega == doctest::Approx(a.omega).epsilon(1e-14));
    CHECK(b.u.x == doctest::Approx(2 * a.u.x).epsilon(1e-14));
    CHECK(b.u.y == doctest::Approx(2 * a.u.y).epsilon(1e-14));
    CHECK(b.psi == doctest::Approx(4 * a.psi).epsilon(1e-14));
  }
}

TEST_CASE("m-fold data gives an equivariant velocity") {
  const auto h = CircleField::sample(64, [](double t) { return 1.0 + 0.5 * std::cos(4 * t) + 0.2 * std::sin(8 * t); });
  const EulerLift lift(h);
  const double a = kTwoPi / 4;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ang(-kPi, kPi), rad(0.1, 3.0);
  for (int k = 0; k < 50; ++k) {
    const PlanePoint p{rad(rng), ang(rng)};
    const auto u = lift.at(p).u;
    const auto v = lift.at({p.r, p.theta + a}).u;
    CHECK(std::abs(v.x - (std::cos(a) * u.x - std::sin(a) * u.y)) <= 1e-10);
    CHECK(std::abs(v.y - (std::sin(a) * u.x + std::cos(a) * u.y)) <= 1e-10);
  }
}

TEST_CASE("velocity grows at most linearly") {
  std::vector<CircleField> corpus{
      band_limited(128),
      CircleField::sample(128, [](double t) { return std::sin(4 * t); }),
      CircleField::sample(128, [](double t) { return std::tanh(5 * std::sin(4 * t)); }),
      CircleField::sample(128, [](double t) { return std::cos(t) + std::sin(3 * t); })};
  double worst = 0.0;
  for (const auto& h : corpus) {
    const EulerLift lift(h);
    const double sup = sup_norm(h);
    for (int j = 0; j < 256; ++j) {
      const double th = -kPi + kTwoPi * j / 256.0;
      worst = std::max(worst, norm(lift.at({2.0, th}).u) / (sup * 2.0));
    }
  }
  CHECK(worst <= 10.0);
  CHECK(worst > 0.1);
}

TEST_CASE("SQG lift") {
  SUBCASE("zero data") {
    const auto g = CircleField::sample(32, [](double) { return 0.0; });
    const auto l = lift_sqg(g, 0.5, {1.3, 0.4});
    CHECK(l.scalar == 0.0);
    CHECK(l.u.x == 0.0);
    CHECK(l.u.y == 0.0);
    CHECK(l.psi == 0.0);
  }
  SUBCASE("scalar value") {
    const auto g = CircleField::sample(32, [](double t) { return std::sin(2 * t); });
    CHECK(lift_sqg(g, 0.5, {1.0, kPi / 4}).scalar == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lift_sqg(g, 0.5, {3.0, kPi / 4}).scalar == doctest::Approx(3.0).epsilon(1e-14));
  }
  SUBCASE("divergence-free") {
    const auto g = CircleField::sample(64, [](double t) { return std::sin(2 * t) + 0.4 * std::sin(6 * t); });
    const SQGLift lift(g, 0.5);
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> ang(-kPi, kPi), rad(0.5, 2.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const PlanePoint p{rad(rng), ang(rng)};
      auto u = [&](double a, double b) { return lift.at(PlanePoint::from_cartesian(a, b)).u; };
      worst = std::max(worst, std::abs(div_curl(u, p.x1(), p.x2(), 1e-5 * p.r).first));
    }
    CHECK(worst <= 1e-6);
  }
  SUBCASE("other alpha needs a stream profile") {
    const auto g = CircleField::sample(32, [](double t) { return std::sin(2 * t); });
    CHECK_THROWS_AS(SQGLift(g, 0.3), ConfigError);
    const auto G = -0.1 * g;
    const SQGLift lift(g, 0.3, G);
    const auto l = lift.at({2.0, kPi / 4});
    CHECK(l.scalar == doctest::Approx(std::pow(2.0, 1.4)).epsilon(1e-13));
    CHECK(l.psi == doctest::Approx(4.0 * -0.1).epsilon(1e-13));
    CHECK_THROWS_AS(SQGLift(g, 0.3, CircleField::sample(64, [](double) { return 0.0; })),
                    ConfigError);
  }
}

TEST_CASE("Biot-Savart and the symmetrized kernel") {
  const auto k = k2d_symmetrized({1.0, 0.0}, {0.0, 0.0}, 1);
  CHECK(std::abs(k.x) < 1e-17);
  CHECK(k.y == doctest::Approx(1.0 / kTwoPi).epsilon(1e-15));
  // Direct average against the m-fold formula.
  const PlanePoint x{1.2, 0.3}, y{2.5, -1.0};
  Vec2 sum;
  for (int i = 0; i < 3; ++i) {
    const double a = y.theta + kTwoPi * i / 3;
    const auto b = biot_savart(x.x1() - y.r * std::cos(a), x.x2() - y.r * std::sin(a));
    sum.x += b.x / 3;
    sum.y += b.y / 3;
  }
  const auto s = k2d_symmetrized(x, y, 3);
  CHECK(s.x == doctest::Approx(sum.x).epsilon(1e-14));
  CHECK(s.y == doctest::Approx(sum.y).epsilon(1e-14));

  CHECK_THROWS_AS(k2d_symmetrized({1.0, 0.5}, {1.0, 0.5 + kTwoPi / 4}, 4), DomainError);
  CHECK_THROWS_AS(k2d_symmetrized({1.0, 0.5}, {1.0, 0.5}, 0), DomainError);
}

TEST_CASE("symmetrized kernel decay") {
  const std::vector<double> ratios{2, 5, 10, 20, 50, 100};
  for (int m : {3, 4}) {
    const auto rows = kernel_decay_study(m, ratios, 1000, 1);
    for (const auto& r : rows) CHECK(std::isfinite(r.max_ratio));
    // Non-increasing beyond |y|/|x| = 10 (up to sampling noise).
    for (std::size_t i = 3; i < rows.size(); ++i) {
      CHECK(rows[i].max_ratio <= rows[i - 1].max_ratio * 1.02);
    }
  }
  // The far-field mass saturates for m = 3 and grows by a fixed amount per
  // decade for m = 2.
  const auto m3 = kernel_decay_study(3, {10, 100, 1000}, 200, 1);
  const auto m2 = kernel_decay_study(2, {10, 100, 1000}, 200, 1);
  CHECK(m3[2].tail_integral - m3[1].tail_integral < 1e-2);
  CHECK(m2[2].tail_integral - m2[1].tail_integral > 1.0);
  CHECK(m2[1].tail_integral - m2[0].tail_integral > 1.0);
  CHECK(m2[2].tail_integral > 10.0 * m3[2].tail_integral);
}

TEST_CASE("ring_norm") {
  const std::vector<double> radii{0.25, 0.5, 1.0, 2.0, 4.0};
  SUBCASE("constant") {
    const auto f = sample_rings(radii, 32, [](const PlanePoint&) { return -1.5; });
    CHECK(ring_norm(f, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
  }
  SUBCASE("radially homogeneous data matches the circle norm") {
    auto h = [](double t) { return std::sin(4 * t); };
    const auto f = sample_rings(radii, 128, [&](const PlanePoint& p) { return h(p.theta); });
    // Circle Hölder norm by brute force on a fine grid.
    const int N = 1024;
    double q = 0.0;
    for (int i = 0; i < N; ++i) {
      for (int j = i + 1; j < N; ++j) {
        const double a = kTwoPi * i / N, b = kTwoPi * j / N;
        const double d = std::min(b - a, kTwoPi - (b - a));
        q = std::max(q, std::abs(h(a) - h(b)) / std::sqrt(d));
      }
    }
    const double ratio = ring_norm(f, 0.5) / (1.0 + q);
    CHECK(ratio >= 0.25);
    CHECK(ratio <= 4.0);
  }
  SUBCASE("angular step: weighted norm finite, plain quotient blows up at the origin") {
    std::vector<double> fine;
    for (int e = -8; e <= 0; ++e) fine.push_back(std::pow(10.0, e));
    const auto f = sample_rings(fine, 64, [](const PlanePoint& p) {
      return wrap_angle(p.theta) >= 0.0 ? 1.0 : -1.0;
    });
    CHECK(ring_norm(f, 0.5) <= 10.0);
    CHECK(ring_holder_unweighted(f, 0, 0.5) > 1e3);
  }
  SUBCASE("degenerate grids") {
    CHECK_THROWS_AS(ring_norm(sample_rings({1.0}, 16, [](const PlanePoint&) { return 0.0; }), 0.5),
                    DomainError);
    CHECK_THROWS_AS(
        ring_norm(sample_rings({1.0, 0.5}, 16, [](const PlanePoint&) { return 0.0; }), 0.5),
        DomainError);
    CHECK_THROWS_AS(
        ring_norm(sample_rings({0.5, 1.0}, 16, [](const PlanePoint&) { return 0.0; }), 1.5),
        DomainError);
    CHECK_THROWS_AS(
        ring_holder_unweighted(sample_rings({0.5, 1.0}, 16, [](const PlanePoint&) { return 0.0; }),
                               2, 0.5),
        DomainError);
  }
}
