#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace homog {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Reduce an angle to [-pi, pi).
double wrap_angle(double theta);

/// m-fold rotational symmetry, optionally combined with odd reflection
/// symmetry f(2 axis - theta) = -f(theta).
struct SymmetrySpec {
  int m = 1;
  std::optional<double> odd_axis;

  bool operator==(const SymmetrySpec&) const = default;
};

/// A real 2pi-periodic profile sampled at theta_j = -pi + 2 pi j / n.
///
/// Values and spectrum are both held and always consistent. Coefficients use
///   f_k = (1/2pi) \int f(theta) exp(+i k theta) dtheta,
/// so that f(theta) = sum_k f_k exp(-i k theta). Only k = 0..n/2 is stored;
/// negative modes follow from f_{-k} = conj(f_k). The k = n/2 entry is the
/// (real) Nyquist coefficient and interpolates as f_{n/2} cos(n theta / 2).
///
/// Immutable after construction.
class CircleField {
 public:
  CircleField() = default;

  /// Takes samples verbatim. Throws SizeError unless the length is a power
  /// of two and at least 8.
  static CircleField from_samples(std::vector<double> samples);

  /// Builds from coefficients k = 0..n/2 (size n/2 + 1).
  static CircleField from_half_spectrum(std::size_t n, std::vector<cplx> half);

  /// Samples `f` at the n nodes.
  static CircleField sample(std::size_t n, const std::function<double(double)>& f);

  static double node(std::size_t j, std::size_t n) {
    return -kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(n);
  }

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double spacing() const { return kTwoPi / static_cast<double>(size()); }
  double theta(std::size_t j) const { return node(j, size()); }

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }

  std::span<const cplx> half_spectrum() const noexcept { return half_; }

  /// Coefficient f_k for any integer k; zero outside [-n/2, n/2].
  cplx coeff(long k) const;

  /// Trigonometric interpolant and its derivative at an arbitrary angle.
  double evaluate(double theta) const;
  double evaluate_derivative(double theta) const;

 private:
  CircleField(std::vector<double> values, std::vector<cplx> half)
      : values_(std::move(values)), half_(std::move(half)) {}

  std::vector<double> values_;
  std::vector<cplx> half_;
};

/// Validating constructor; see CircleField::from_samples.
CircleField make_field(std::vector<double> samples);

/// Applies mult(k) to each coefficient k = 0..n/2 (negative modes follow by
/// conjugation). `nyquist` is passed true for k = n/2.
CircleField apply_multiplier(const CircleField& f,
                             const std::function<cplx(long k, bool nyquist)>& mult);

CircleField project_symmetry(const CircleField& f, const SymmetrySpec& s);

enum class Parity { Odd, Even };
/// Odd or even part of f about `axis`.
CircleField project_parity(const CircleField& f, double axis, Parity parity);

/// Max node residual of f against its own symmetry projection.
double symmetry_residual(const CircleField& f, const SymmetrySpec& s);

CircleField derivative(const CircleField& f);
CircleField hilbert(const CircleField& f);
/// Multiplier |k|.
CircleField abs_derivative(const CircleField& f);
/// Multiplier 1/|k|, zero mean. Throws PreconditionError when |f_0| > 1e-10.
CircleField inv_modulus(const CircleField& f);

/// Keeps |k| <= n/3.
CircleField dealias(const CircleField& f);
/// exp(-36 (|k| / (n/2))^36).
CircleField exponential_filter(const CircleField& f);
/// Zero-pad or truncate to n_new samples.
CircleField resample(const CircleField& f, std::size_t n_new);
/// theta -> f(2 axis - theta).
CircleField reflect(const CircleField& f, double axis = 0.0);
/// theta -> f(theta - angle).
CircleField translate(const CircleField& f, double angle);

CircleField operator+(const CircleField& a, const CircleField& b);
CircleField operator-(const CircleField& a, const CircleField& b);
CircleField operator*(double s, const CircleField& a);
CircleField add_constant(const CircleField& a, double c);
/// Pointwise product at the nodes. With `dealias` both factors and the result
/// are truncated to |k| <= n/3.
CircleField multiply(const CircleField& a, const CircleField& b, bool dealias = false);

double mean(const CircleField& f);
double node_max_abs(const CircleField& f);
/// sup |f| of the trigonometric interpolant, refined around the largest nodes.
double sup_norm(const CircleField& f);
/// \int_a^b f(theta) exp(i p theta) dtheta, exact for the interpolant.
cplx integrate_mode(const CircleField& f, double a, double b, long p);
/// \int_a^b f(theta) dtheta, exact for the interpolant.
double integrate(const CircleField& f, double a, double b);
/// Discrete l2 energy sum_k |f_k|^2 over all k in [-n/2, n/2).
double spectral_energy(const CircleField& f);
/// Largest |f_k| with |k| >= kmin.
double max_coeff_from(const CircleField& f, long kmin);
/// Energy fraction sum_{|k| >= kmin} |f_k|^2 / sum_k |f_k|^2 (0 for f = 0).
double energy_fraction_from(const CircleField& f, long kmin);

// Serialization.
void write_csv(const CircleField& f, const std::string& path);
CircleField read_csv(const std::string& path);
std::string spectrum_json(const CircleField& f);

}  // namespace homog
