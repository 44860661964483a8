#include "homog/kernels.hpp"

#include <cmath>
#include <sstream>

#include "homog/error.hpp"

namespace homog {

double euler_multiplier(long k) {
  const long a = std::labs(k);
  if (a == 2) return 0.0;
  return 1.0 / (4.0 - static_cast<double>(a * a));
}

double sqg_multiplier(long k) {
  const double a = static_cast<double>(std::labs(k));
  if (a <= 1.0) return 0.0;
  return 1.0 / (-a - 3.0 * a / (a * a - 1.0));
}

double k_circle(double theta) {
  const double t = wrap_angle(theta);
  const double s2 = std::sin(2.0 * t);
  const double sign = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
  return 0.5 * kPi * s2 * sign - 0.5 * s2 * t - 0.125 * std::cos(2.0 * t);
}

double k_circle_symmetrized(double theta, int m) {
  if (m < 3) throw PreconditionError("k_circle_symmetrized requires m >= 3");
  double sum = 0.0;
  for (int j = 0; j < m; ++j) sum += k_circle(theta + kTwoPi * j / m);
  return sum / m;
}

StreamSolution solve_stream_euler(const CircleField& h) {
  StreamSolution out;
  if (h.size() > 4) out.mode2_amplitude = std::abs(h.coeff(2));
  if (out.mode2_amplitude > 1e-8) {
    std::ostringstream msg;
    msg << "input has |h_(+-2)| = " << out.mode2_amplitude
        << " > 1e-8 (outside the m >= 3 regime); modes +-2 dropped";
    out.warning = msg.str();
  }
  out.stream = apply_multiplier(h, [](long k, bool) -> cplx { return euler_multiplier(k); });
  return out;
}

CircleField solve_stream_sqg(const CircleField& g) {
  const double a0 = std::abs(g.coeff(0));
  const double a1 = std::abs(g.coeff(1));
  if (a0 > 1e-10 || a1 > 1e-10) {
    std::ostringstream msg;
    msg << "solve_stream_sqg requires g orthogonal to 1 and exp(+-i theta); |g_0| = " << a0
        << ", |g_1| = " << a1;
    throw PreconditionError(msg.str());
  }
  return apply_multiplier(g, [](long k, bool) -> cplx { return sqg_multiplier(k); });
}

HPrimeEndpoints h_prime_endpoints(const CircleField& h) {
  const SymmetrySpec s{4, 0.0};
  const double scale = std::max(1.0, node_max_abs(h));
  const double r = symmetry_residual(h, s);
  if (r > 1e-8 * scale) {
    std::ostringstream msg;
    msg << "h_prime_endpoints needs 4-fold data odd about 0; symmetry residual " << r;
    throw DomainError(msg.str());
  }
  const double quarter = 0.25 * kPi;
  // cos(2t) = Re e^{2it}, sin(2t) = Im e^{2it} for real h.
  const cplx w = integrate_mode(h, 0.0, quarter, 2);
  return {-w.real(), w.imag()};
}

}  // namespace homog
