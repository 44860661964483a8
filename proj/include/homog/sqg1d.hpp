#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "homog/circle_field.hpp"

namespace homog {

enum class SQGVariant { Exact, Approx, DeGregorio };

struct SQGModel {
  SQGVariant variant = SQGVariant::Exact;
  /// De Gregorio parameter (DeGregorio only).
  double a = 0.0;
};

/// "sqg-exact", "sqg-approx", "degregorio(a)".
std::string to_string(const SQGModel& m);

/// g_t = 2 G g' - G' g with G = solve_stream_sqg(g).
CircleField rhs_sqg_exact(const CircleField& g, bool dealias = true);

/// Same transport structure with the leading-order stream -|grad|^{-1} g.
CircleField rhs_sqg_approx(const CircleField& g, bool dealias = true);

/// f_t = a (|grad|^{-1} f) f' + H(f) f. Requires mean-zero f.
CircleField rhs_degregorio(const CircleField& f, double a, bool dealias = true);

using StreamSolver = std::function<CircleField(const CircleField&)>;

/// g_t = 2 G g' - (2 - 2 alpha) G' g with a caller-supplied G = solve(g).
CircleField rhs_sqg_general(const CircleField& g, double alpha, const StreamSolver& solve,
                            bool dealias = true);

struct SQGState {
  double t = 0.0;
  CircleField g;
  SQGModel model;
  SymmetrySpec symmetry;
  bool dealias = true;
};

/// Projects g onto the symmetry class. The exact model needs m >= 2 (modes
/// 0 and +-1 must vanish); throws PreconditionError otherwise.
SQGState make_sqg_state(const CircleField& g0, const SQGModel& model,
                        const SymmetrySpec& symmetry, bool dealias = true);

CircleField sqg_rhs(const SQGState& s);

/// Stream G with transport velocity -2G: the exact G, -|grad|^{-1} g, or
/// (a/2) |grad|^{-1} f.
CircleField sqg_transport_stream(const SQGState& s);

/// cfl * dtheta / max(|2G|, 1e-12).
double sqg_admissible_dt(const SQGState& s, double cfl = 0.5);

/// RK4 step; dt may be negative. Throws StepRejected if |dt| exceeds the
/// CFL bound.
SQGState step(const SQGState& s, double dt, double cfl = 0.5);

enum class Verdict { Resolved, SuspectedBlowup, UnderResolved };
std::string to_string(Verdict v);

/// Continuation monitor: accumulated time integral of sup |g'| and the
/// spectral tail energy fraction.
struct BlowupMonitor {
  double bkm_integral = 0.0;
  double tail_ratio = 0.0;
  Verdict verdict = Verdict::Resolved;
  double initial_grad = 0.0;
  double last_grad = 0.0;
  double last_t = 0.0;
};

/// Energy fraction of |k| >= n/4.
double tail_ratio(const CircleField& g);

struct SQGDiagnostics {
  double t = 0.0;
  double linf = 0.0;
  double l1 = 0.0;
  double mean = 0.0;
  double grad_linf = 0.0;
  /// G'(0) and G'(pi/4) of the transport stream.
  double hprime0 = 0.0;
  double hprime_quarter = 0.0;
  double spectral_tail = 0.0;
  double bkm_integral = 0.0;
  double tail_ratio = 0.0;
  Verdict verdict = Verdict::Resolved;
};

SQGDiagnostics diagnose(const SQGState& s, const BlowupMonitor& m);

struct SQGRunOptions {
  double t_end = 1.0;
  std::optional<double> dt;
  double cfl = 0.5;
  double dt_max = 1e-2;
  double sample_interval = 0.1;
  /// Halt with SuspectedBlowup once sup |g'| exceeds this factor times its
  /// initial value while the tail ratio is below tail_limit.
  double blowup_factor = 1e6;
  double tail_limit = 1e-4;
};

struct SQGRunResult {
  SQGState final_state;
  BlowupMonitor monitor;
  std::size_t steps = 0;
  std::size_t samples = 0;
  bool aborted = false;
  std::string abort_reason;
  /// Extrapolated zero of 1/(d ln sup|g'| / dt), when the run halted on
  /// suspected blow-up.
  std::optional<double> blowup_time;
};

using SQGObserver = std::function<void(const SQGState&, const SQGDiagnostics&)>;

/// Integrates to t_end or until the monitor halts the run. The observer sees
/// t = 0, every sample_interval, and the halting state.
SQGRunResult run_sqg(SQGState s, const SQGRunOptions& opt, const SQGObserver& observer);

/// Zero of the least-squares line through (t, 1/(d ln grad/dt)) over the
/// last `fraction` of the record. Empty when the rate is not positive.
std::optional<double> estimate_blowup_time(const std::vector<double>& t,
                                           const std::vector<double>& grad,
                                           double fraction = 0.3);

}  // namespace homog
