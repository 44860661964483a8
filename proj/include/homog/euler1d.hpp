#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homog/circle_field.hpp"
#include "homog/kernels.hpp"

namespace homog {

enum class EulerStepper { PseudospectralRK4, SemiLagrangian };

std::string to_string(EulerStepper s);
EulerStepper parse_euler_stepper(const std::string& name);

/// An initial profile known at every angle, with its derivative. The
/// semi-Lagrangian stepper composes it with the backward flow map, so an
/// exact profile keeps the max principle exact.
struct Profile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;

  /// Periodic cubic interpolation of the samples.
  static Profile from_field(const CircleField& f);
};

/// State of the 1D Euler system h_t + 2 H h_theta = 0.
///
/// For the pseudospectral stepper `h` is the state. For the semi-Lagrangian
/// stepper the state is the forward label map phi(t, a_j) = a_j +
/// displacement[j] on the node labels a_j, with its derivative `stretch`;
/// h(t, phi(a)) = initial(a), so h(t, theta) = initial(phi^{-1}(theta)). When
/// labels spread apart the map is folded into `initial` and restarted. `h`
/// then holds the n-mode projection of that field, computed by quadrature in
/// the labels.
struct EulerState {
  double t = 0.0;
  CircleField h;
  SymmetrySpec symmetry;
  EulerStepper stepper = EulerStepper::PseudospectralRK4;
  bool dealias = true;
  bool filter = false;

  std::shared_ptr<const Profile> initial;
  std::vector<double> displacement;
  std::vector<double> stretch;
  /// initial and its derivative at the labels.
  std::vector<double> label_value;
  std::vector<double> label_slope;
  /// Times the label map was folded into the profile (see remesh in step).
  std::size_t remesh_count = 0;

  std::size_t size() const { return h.size(); }

  /// h(t, theta) at an arbitrary angle.
  double value_at(double theta) const;
  /// Label carried to theta, phi^{-1}(t, theta) (semi-Lagrangian only).
  double map_at(double theta) const;
  /// h on a grid `factor` times finer than the state grid.
  std::vector<double> fine_values(int factor) const;
};

EulerState make_pseudospectral_state(const CircleField& h0, const SymmetrySpec& symmetry,
                                     bool dealias = true);
EulerState make_semi_lagrangian_state(std::size_t n, Profile h0, const SymmetrySpec& symmetry);

struct EulerDiagnostics {
  double t = 0.0;
  double linf = 0.0;
  double l1 = 0.0;
  double mean = 0.0;
  double grad_linf = 0.0;
  double hprime0 = 0.0;
  double hprime_quarter = 0.0;
  double spectral_tail = 0.0;
  /// sup |H'| (not part of the trajectory CSV).
  double hprime_linf = 0.0;
};

/// -2 H h_theta, with the product dealiased when requested.
CircleField euler_rhs(const CircleField& h, bool dealias);

/// max |2H| at the nodes.
double max_transport_speed(const EulerState& s);

/// cfl * dtheta / max(|2H|, 1e-12).
double admissible_dt(const EulerState& s, double cfl = 0.5);

/// Advances by dt. Throws StepRejected if dt exceeds admissible_dt(s, cfl).
EulerState step(const EulerState& s, double dt, double cfl = 0.5);

EulerDiagnostics diagnose(const EulerState& s);

struct EulerRunOptions {
  double t_end = 1.0;
  /// Fixed step; CFL-adaptive when empty.
  std::optional<double> dt;
  double cfl = 0.5;
  double dt_max = 1e-2;
  double sample_interval = 0.1;
};

struct EulerRunResult {
  EulerState final_state;
  std::size_t steps = 0;
  std::size_t samples = 0;
  bool aborted = false;
  std::string abort_reason;
  std::vector<std::string> warnings;
  std::size_t filter_events = 0;
};

using EulerObserver = std::function<void(const EulerState&, const EulerDiagnostics&)>;

/// Integrates to t_end, calling `observer` at t = 0 and every sample_interval.
/// A NaN aborts the run; final_state is then the last good state.
EulerRunResult run_euler(EulerState s, const EulerRunOptions& opt, const EulerObserver& observer);

/// Snapshots of H kept for particle tracing.
struct EulerTrajectory {
  std::vector<double> times;
  std::vector<CircleField> streams;
  std::vector<CircleField> fields;

  EulerObserver recorder();
};

struct FlowPath {
  std::vector<double> times;
  /// Angles reduced to [-pi, pi).
  std::vector<double> angles;
  /// Continuous angle; angles[i] = wrap(unwrapped[i]).
  std::vector<double> unwrapped;
  /// Net turns: floor((unwrapped + pi) / 2pi).
  std::vector<long> winding;
};

/// Traces d/dt phi = 2 H(t, phi), phi(t_0) = theta0, with RK4 through H
/// linearly interpolated in time between snapshots.
FlowPath flow_trace(const EulerTrajectory& traj, double theta0, int substeps = 4);

}  // namespace homog
