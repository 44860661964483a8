#pragma once

#include <string>
#include <vector>

namespace homog::harness {

enum class FitKind { Power, Exponential };

std::string to_string(FitKind k);

/// Least-squares fit of values ~ C t^p (power, log-log) or C e^{r t}
/// (exponential, semi-log) over the samples with t in [t_lo, t_hi].
struct FitReport {
  FitKind kind = FitKind::Power;
  /// p or r.
  double exponent_or_rate = 0.0;
  /// C.
  double prefactor = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double r_squared = 0.0;
  std::size_t samples = 0;
  /// Offset added to t before a power fit (0 for plain t).
  double clock_shift = 0.0;

  std::string to_json() const;
};

inline constexpr std::size_t kMinFitSamples = 10;

/// Power law values = C (t + shift)^p. Throws DomainError with fewer than 10
/// samples in the window, nonpositive values, or nonpositive t + shift.
FitReport fit_power(const std::vector<double>& t, const std::vector<double>& values,
                    double t_lo, double t_hi, double shift = 0.0);

FitReport fit_exponential(const std::vector<double>& t, const std::vector<double>& values,
                          double t_lo, double t_hi);

struct Window {
  double t_lo = 0.0;
  double t_hi = 0.0;
};

/// Final third of [t.front(), t.back()], starting no earlier than the first
/// time grad reaches twice its initial value.
Window default_window(const std::vector<double>& t, const std::vector<double>& grad);

}  // namespace homog::harness
