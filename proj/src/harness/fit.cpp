#include "homog/harness/fit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "homog/error.hpp"

namespace homog::harness {
namespace {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit window has no spread in the abscissa");
  Line l;
  l.slope = sxy / sxx;
  l.intercept = my - l.slope * mx;
  l.r_squared = syy > 0.0 ? std::min(1.0, sxy * sxy / (sxx * syy)) : 1.0;
  return l;
}

template <class X>
FitReport fit_log(FitKind kind, const std::vector<double>& t, const std::vector<double>& values,
                  double t_lo, double t_hi, X abscissa) {
  if (t.size() != values.size()) throw DomainError("times and values differ in length");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (!(values[i] > 0.0)) {
      std::ostringstream msg;
      msg << "fit needs positive values; got " << values[i] << " at t = " << t[i];
      throw DomainError(msg.str());
    }
    x.push_back(abscissa(t[i]));
    y.push_back(std::log(values[i]));
  }
  if (x.size() < kMinFitSamples) {
    std::ostringstream msg;
    msg << "fit needs at least " << kMinFitSamples << " samples in [" << t_lo << ", " << t_hi
        << "], got " << x.size();
    throw DomainError(msg.str());
  }
  const Line l = least_squares(x, y);
  FitReport r;
  r.kind = kind;
  r.exponent_or_rate = l.slope;
  r.prefactor = std::exp(l.intercept);
  r.t_lo = t_lo;
  r.t_hi = t_hi;
  r.r_squared = l.r_squared;
  r.samples = x.size();
  return r;
}

}  // namespace

std::string to_string(FitKind k) { return k == FitKind::Power ? "power" : "exponential"; }

std::string FitReport::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind);
  j["exponent_or_rate"] = exponent_or_rate;
  j["prefactor"] = prefactor;
  j["window"] = {t_lo, t_hi};
  j["r_squared"] = r_squared;
  j["samples"] = samples;
  j["clock_shift"] = clock_shift;
  return j.dump(2);
}

FitReport fit_power(const std::vector<double>& t, const std::vector<double>& values, double t_lo,
                    double t_hi, double shift) {
  for (double ti : t) {
    if (ti >= t_lo && ti <= t_hi && !(ti + shift > 0.0)) {
      throw DomainError("power fit needs t + shift > 0 in the window");
    }
  }
  auto r = fit_log(FitKind::Power, t, values, t_lo, t_hi,
                   [shift](double ti) { return std::log(ti + shift); });
  r.clock_shift = shift;
  return r;
}

FitReport fit_exponential(const std::vector<double>& t, const std::vector<double>& values,
                          double t_lo, double t_hi) {
  return fit_log(FitKind::Exponential, t, values, t_lo, t_hi, [](double ti) { return ti; });
}

Window default_window(const std::vector<double>& t, const std::vector<double>& grad) {
  if (t.empty() || t.size() != grad.size()) throw DomainError("empty or mismatched record");
  Window w;
  w.t_hi = t.back();
  w.t_lo = t.back() - (t.back() - t.front()) / 3.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (grad[i] >= 2.0 * grad.front()) {
      w.t_lo = std::max(w.t_lo, t[i]);
      break;
    }
  }
  return w;
}

}  // namespace homog::harness
