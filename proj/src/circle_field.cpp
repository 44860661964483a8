#include "homog/circle_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "homog/error.hpp"
#include "homog/fft.hpp"

namespace homog {
namespace {

bool is_valid_size(std::size_t n) { return n >= 8 && (n & (n - 1)) == 0; }

void require_size(std::size_t n) {
  if (!is_valid_size(n)) {
    throw SizeError("circle field size must be a power of two >= 8, got " + std::to_string(n));
  }
}

double sign_of(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// Grid values -> coefficients k = 0..n/2 with the e^{+ik theta} sign.
std::vector<cplx> analyze(std::span<const double> values) {
  const std::size_t n = values.size();
  auto raw = fft::forward(values);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    raw[k] = sign_of(static_cast<long>(k)) * inv_n * std::conj(raw[k]);
  }
  return raw;
}

std::vector<double> synthesize(std::span<const cplx> half, std::size_t n) {
  std::vector<cplx> c(half.size());
  for (std::size_t k = 0; k <= n / 2; ++k) {
    c[k] = sign_of(static_cast<long>(k)) * std::conj(half[k]);
  }
  c[n / 2] = {c[n / 2].real(), 0.0};
  c[0] = {c[0].real(), 0.0};
  return fft::inverse(c, n);
}

void require_same_size(const CircleField& a, const CircleField& b) {
  if (a.size() != b.size()) throw SizeError("circle fields have different sizes");
}

}  // namespace

double wrap_angle(double theta) {
  double t = std::fmod(theta + kPi, kTwoPi);
  if (t < 0) t += kTwoPi;
  t -= kPi;
  if (t >= kPi) t -= kTwoPi;
  return t;
}

CircleField CircleField::from_samples(std::vector<double> samples) {
  require_size(samples.size());
  auto half = analyze(samples);
  return CircleField(std::move(samples), std::move(half));
}

CircleField CircleField::from_half_spectrum(std::size_t n, std::vector<cplx> half) {
  require_size(n);
  if (half.size() != n / 2 + 1) throw SizeError("half spectrum must have n/2 + 1 entries");
  half[0] = {half[0].real(), 0.0};
  half[n / 2] = {half[n / 2].real(), 0.0};
  auto values = synthesize(half, n);
  return CircleField(std::move(values), std::move(half));
}

CircleField CircleField::sample(std::size_t n, const std::function<double(double)>& f) {
  require_size(n);
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = f(node(j, n));
  return from_samples(std::move(v));
}

cplx CircleField::coeff(long k) const {
  const long half_n = static_cast<long>(size() / 2);
  if (k > half_n || k < -half_n) return 0.0;
  if (k >= 0) return half_[static_cast<std::size_t>(k)];
  return std::conj(half_[static_cast<std::size_t>(-k)]);
}

double CircleField::evaluate(double theta) const {
  const std::size_t nh = size() / 2;
  double sum = half_[0].real();
  const cplx step = std::polar(1.0, -theta);
  cplx e = step;
  for (std::size_t k = 1; k < nh; ++k) {
    sum += 2.0 * (half_[k] * e).real();
    e *= step;
  }
  sum += half_[nh].real() * std::cos(static_cast<double>(nh) * theta);
  return sum;
}

double CircleField::evaluate_derivative(double theta) const {
  const std::size_t nh = size() / 2;
  double sum = 0.0;
  const cplx step = std::polar(1.0, -theta);
  cplx e = step;
  for (std::size_t k = 1; k < nh; ++k) {
    sum += 2.0 * (cplx(0.0, -static_cast<double>(k)) * half_[k] * e).real();
    e *= step;
  }
  return sum;
}

CircleField make_field(std::vector<double> samples) {
  return CircleField::from_samples(std::move(samples));
}

CircleField apply_multiplier(const CircleField& f,
                             const std::function<cplx(long k, bool nyquist)>& mult) {
  const std::size_t n = f.size();
  std::vector<cplx> half(f.half_spectrum().begin(), f.half_spectrum().end());
  for (std::size_t k = 0; k <= n / 2; ++k) {
    half[k] *= mult(static_cast<long>(k), k == n / 2);
  }
  return CircleField::from_half_spectrum(n, std::move(half));
}

CircleField project_parity(const CircleField& f, double axis, Parity parity) {
  const double s = parity == Parity::Odd ? -1.0 : 1.0;
  const std::size_t n = f.size();
  std::vector<cplx> half(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const cplx fk = f.half_spectrum()[k];
    // Reflection about `axis` maps f_k to conj(f_k) exp(2 i k axis).
    const cplx rk = std::conj(fk) * std::polar(1.0, 2.0 * static_cast<double>(k) * axis);
    half[k] = 0.5 * (fk + s * rk);
  }
  if (parity == Parity::Odd) half[n / 2] = 0.0;
  return CircleField::from_half_spectrum(n, std::move(half));
}

CircleField project_symmetry(const CircleField& f, const SymmetrySpec& s) {
  if (s.m < 1) throw PreconditionError("symmetry order m must be >= 1");
  const std::size_t n = f.size();
  std::vector<cplx> half(f.half_spectrum().begin(), f.half_spectrum().end());
  for (std::size_t k = 0; k <= n / 2; ++k) {
    if (k % static_cast<std::size_t>(s.m) != 0) half[k] = 0.0;
  }
  auto rotated = CircleField::from_half_spectrum(n, std::move(half));
  if (!s.odd_axis) return rotated;
  return project_parity(rotated, *s.odd_axis, Parity::Odd);
}

double symmetry_residual(const CircleField& f, const SymmetrySpec& s) {
  const auto p = project_symmetry(f, s);
  double r = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) r = std::max(r, std::abs(f[j] - p[j]));
  return r;
}

CircleField derivative(const CircleField& f) {
  return apply_multiplier(f, [](long k, bool nyq) -> cplx {
    if (nyq) return 0.0;
    return {0.0, -static_cast<double>(k)};
  });
}

CircleField hilbert(const CircleField& f) {
  // |nabla| = d/dtheta o H with d/dtheta <-> -ik forces H <-> i sgn(k).
  return apply_multiplier(f, [](long k, bool nyq) -> cplx {
    if (nyq || k == 0) return 0.0;
    return {0.0, 1.0};
  });
}

CircleField abs_derivative(const CircleField& f) {
  return apply_multiplier(f, [](long k, bool) -> cplx { return static_cast<double>(k); });
}

CircleField inv_modulus(const CircleField& f) {
  const double f0 = f.half_spectrum()[0].real();
  if (std::abs(f0) > 1e-10) {
    std::ostringstream msg;
    msg << "inv_modulus requires a mean-zero field; coefficient k=0 is " << f0;
    throw PreconditionError(msg.str());
  }
  return apply_multiplier(f, [](long k, bool) -> cplx {
    if (k == 0) return 0.0;
    return 1.0 / static_cast<double>(k);
  });
}

CircleField dealias(const CircleField& f) {
  const long cut = static_cast<long>(f.size() / 3);
  return apply_multiplier(f, [cut](long k, bool) -> cplx { return k <= cut ? 1.0 : 0.0; });
}

CircleField exponential_filter(const CircleField& f) {
  const double nh = static_cast<double>(f.size() / 2);
  return apply_multiplier(f, [nh](long k, bool) -> cplx {
    return std::exp(-36.0 * std::pow(static_cast<double>(k) / nh, 36.0));
  });
}

CircleField resample(const CircleField& f, std::size_t n_new) {
  require_size(n_new);
  const std::size_t n = f.size();
  std::vector<cplx> half(n_new / 2 + 1, 0.0);
  const auto src = f.half_spectrum();
  if (n_new >= n) {
    for (std::size_t k = 0; k < n / 2; ++k) half[k] = src[k];
    // Split the Nyquist cosine evenly between +-n/2 of the finer grid.
    if (n_new > n) {
      half[n / 2] = 0.5 * src[n / 2];
    } else {
      half[n / 2] = src[n / 2];
    }
  } else {
    for (std::size_t k = 0; k < n_new / 2; ++k) half[k] = src[k];
    half[n_new / 2] = 2.0 * cplx(src[n_new / 2].real(), 0.0);
  }
  return CircleField::from_half_spectrum(n_new, std::move(half));
}

CircleField reflect(const CircleField& f, double axis) {
  const std::size_t n = f.size();
  if (axis == 0.0) {
    // Exact node permutation theta_j -> theta_{n-j}.
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = f[(n - j) % n];
    return CircleField::from_samples(std::move(v));
  }
  std::vector<cplx> half(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    half[k] = std::conj(f.half_spectrum()[k]) *
              std::polar(1.0, 2.0 * static_cast<double>(k) * axis);
  }
  return CircleField::from_half_spectrum(n, std::move(half));
}

CircleField translate(const CircleField& f, double angle) {
  return apply_multiplier(f, [angle](long k, bool nyq) -> cplx {
    if (nyq) return std::cos(static_cast<double>(k) * angle);
    return std::polar(1.0, static_cast<double>(k) * angle);
  });
}

CircleField operator+(const CircleField& a, const CircleField& b) {
  require_same_size(a, b);
  std::vector<double> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a[j] + b[j];
  return CircleField::from_samples(std::move(v));
}

CircleField operator-(const CircleField& a, const CircleField& b) {
  require_same_size(a, b);
  std::vector<double> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a[j] - b[j];
  return CircleField::from_samples(std::move(v));
}

CircleField operator*(double s, const CircleField& a) {
  std::vector<double> v(a.values().begin(), a.values().end());
  for (double& x : v) x *= s;
  return CircleField::from_samples(std::move(v));
}

CircleField add_constant(const CircleField& a, double c) {
  std::vector<double> v(a.values().begin(), a.values().end());
  for (double& x : v) x += c;
  return CircleField::from_samples(std::move(v));
}

CircleField multiply(const CircleField& a, const CircleField& b, bool dealias_product) {
  require_same_size(a, b);
  const CircleField& fa = a;
  const CircleField& fb = b;
  if (dealias_product) {
    auto ta = dealias(fa);
    auto tb = dealias(fb);
    std::vector<double> v(a.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = ta[j] * tb[j];
    return dealias(CircleField::from_samples(std::move(v)));
  }
  std::vector<double> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = fa[j] * fb[j];
  return CircleField::from_samples(std::move(v));
}

double mean(const CircleField& f) { return f.half_spectrum()[0].real(); }

double node_max_abs(const CircleField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double sup_norm(const CircleField& f) {
  const std::size_t n = f.size();
  if (n == 0) return 0.0;
  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < n; ++j) order[j] = j;
  const std::size_t top = std::min<std::size_t>(3, n);
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(top), order.end(),
                    [&](std::size_t i, std::size_t j) {
                      return std::abs(f[i]) > std::abs(f[j]);
                    });
  double best = std::abs(f[order[0]]);
  const double h = f.spacing();
  for (std::size_t r = 0; r < top; ++r) {
    // Golden-section search for max |f| on [theta_j - h, theta_j + h].
    double lo = f.theta(order[r]) - h;
    double hi = f.theta(order[r]) + h;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = std::abs(f.evaluate(x1));
    double f2 = std::abs(f.evaluate(x2));
    for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
      if (f1 > f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = std::abs(f.evaluate(x1));
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = std::abs(f.evaluate(x2));
      }
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

cplx integrate_mode(const CircleField& f, double a, double b, long p) {
  // \int_a^b exp(i w theta) dtheta
  auto ie = [a, b](double w) -> cplx {
    if (w == 0.0) return b - a;
    return (std::polar(1.0, w * b) - std::polar(1.0, w * a)) / cplx(0.0, w);
  };
  const long nh = static_cast<long>(f.size() / 2);
  cplx sum = 0.0;
  for (long k = -(nh - 1); k <= nh - 1; ++k) {
    sum += f.coeff(k) * ie(static_cast<double>(p - k));
  }
  const double fn = f.half_spectrum()[static_cast<std::size_t>(nh)].real();
  sum += 0.5 * fn * (ie(static_cast<double>(p + nh)) + ie(static_cast<double>(p - nh)));
  return sum;
}

double integrate(const CircleField& f, double a, double b) {
  return integrate_mode(f, a, b, 0).real();
}

double spectral_energy(const CircleField& f) {
  const std::size_t nh = f.size() / 2;
  double e = std::norm(f.half_spectrum()[0]) + std::norm(f.half_spectrum()[nh]);
  for (std::size_t k = 1; k < nh; ++k) e += 2.0 * std::norm(f.half_spectrum()[k]);
  return e;
}

double max_coeff_from(const CircleField& f, long kmin) {
  double m = 0.0;
  const auto half = f.half_spectrum();
  for (std::size_t k = static_cast<std::size_t>(std::max(0L, kmin)); k < half.size(); ++k) {
    m = std::max(m, std::abs(half[k]));
  }
  return m;
}

double energy_fraction_from(const CircleField& f, long kmin) {
  const double total = spectral_energy(f);
  if (total == 0.0) return 0.0;
  const std::size_t nh = f.size() / 2;
  double tail = 0.0;
  for (std::size_t k = static_cast<std::size_t>(std::max(1L, kmin)); k <= nh; ++k) {
    tail += (k == nh ? 1.0 : 2.0) * std::norm(f.half_spectrum()[k]);
  }
  return tail / total;
}

}  // namespace homog
