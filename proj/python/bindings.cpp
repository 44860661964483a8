#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <vector>

#include "homog/circle_field.hpp"
#include "homog/error.hpp"
#include "homog/euler1d.hpp"
#include "homog/harness/config.hpp"
#include "homog/harness/presets.hpp"
#include "homog/harness/runners.hpp"
#include "homog/kernels.hpp"
#include "homog/lift2d.hpp"
#include "homog/pointvortex.hpp"
#include "homog/sqg1d.hpp"

namespace py = pybind11;
using namespace homog;

namespace {

py::array_t<double> to_array(std::span<const double> v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

CircleField field_of(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw SizeError("expected a 1-d array of samples");
  return CircleField::from_samples(std::vector<double>(a.data(), a.data() + a.size()));
}

py::dict euler_row(const EulerDiagnostics& d) {
  py::dict r;
  r["t"] = d.t;
  r["linf"] = d.linf;
  r["l1"] = d.l1;
  r["mean"] = d.mean;
  r["grad_linf"] = d.grad_linf;
  r["hprime0"] = d.hprime0;
  r["hprime_quarter"] = d.hprime_quarter;
  r["spectral_tail"] = d.spectral_tail;
  r["hprime_linf"] = d.hprime_linf;
  return r;
}

py::dict sqg_row(const SQGDiagnostics& d) {
  py::dict r;
  r["t"] = d.t;
  r["linf"] = d.linf;
  r["l1"] = d.l1;
  r["grad_linf"] = d.grad_linf;
  r["bkm_integral"] = d.bkm_integral;
  r["tail_ratio"] = d.tail_ratio;
  r["verdict"] = to_string(d.verdict);
  return r;
}

// Python dicts on both sides of the json boundary.
py::object from_json(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "1D homogeneous reductions of 2D Euler and SQG";

  py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<StepRejected>(m, "StepRejected", PyExc_RuntimeError);
  py::register_exception<PhysicsAbort>(m, "PhysicsAbort", PyExc_RuntimeError);

  // circle_field
  py::class_<SymmetrySpec>(m, "SymmetrySpec")
      .def(py::init([](int m_, std::optional<double> axis) { return SymmetrySpec{m_, axis}; }),
           py::arg("m") = 1, py::arg("odd_axis") = py::none())
      .def_readwrite("m", &SymmetrySpec::m)
      .def_readwrite("odd_axis", &SymmetrySpec::odd_axis);

  py::class_<CircleField>(m, "CircleField")
      .def(py::init(&field_of), py::arg("samples"))
      .def_static("sample", &CircleField::sample, py::arg("n"), py::arg("f"))
      .def_static("nodes", [](std::size_t n) {
        std::vector<double> t(n);
        for (std::size_t j = 0; j < n; ++j) t[j] = CircleField::node(j, n);
        return to_array(t);
      })
      .def("__len__", &CircleField::size)
      .def_property_readonly("values", [](const CircleField& f) { return to_array(f.values()); })
      .def("coeff", &CircleField::coeff, py::arg("k"))
      .def("evaluate", &CircleField::evaluate, py::arg("theta"))
      .def("evaluate_derivative", &CircleField::evaluate_derivative, py::arg("theta"));

  m.def("derivative", &derivative);
  m.def("hilbert", &hilbert);
  m.def("abs_derivative", &abs_derivative);
  m.def("project_symmetry", &project_symmetry);
  m.def("symmetry_residual", &symmetry_residual);
  m.def("resample", &resample);

  // kernels
  m.def("euler_multiplier", &euler_multiplier);
  m.def("sqg_multiplier", &sqg_multiplier);
  m.def("k_circle", &k_circle);
  m.def("k_circle_symmetrized", &k_circle_symmetrized, py::arg("theta"), py::arg("m"));
  m.def("solve_stream_euler", [](const CircleField& h) { return solve_stream_euler(h).stream; });
  m.def("solve_stream_sqg", &solve_stream_sqg);

  // euler1d
  m.def(
      "run_euler",
      [](const CircleField& h0, const SymmetrySpec& sym, double t_end, double sample_interval,
         const std::string& stepper, double dt_max) {
        EulerState s = parse_euler_stepper(stepper) == EulerStepper::SemiLagrangian
                           ? make_semi_lagrangian_state(h0.size(), Profile::from_field(h0), sym)
                           : make_pseudospectral_state(h0, sym);
        EulerRunOptions opt;
        opt.t_end = t_end;
        opt.sample_interval = sample_interval;
        opt.dt_max = dt_max;
        py::list rows;
        const auto res = run_euler(std::move(s), opt, [&](const EulerState&, const EulerDiagnostics& d) {
          rows.append(euler_row(d));
        });
        py::dict out;
        out["rows"] = rows;
        out["final"] = res.final_state.h;
        out["steps"] = res.steps;
        out["aborted"] = res.aborted;
        out["warnings"] = res.warnings;
        return out;
      },
      py::arg("h0"), py::arg("symmetry"), py::arg("t_end"), py::arg("sample_interval") = 0.1,
      py::arg("stepper") = "pseudospectral", py::arg("dt_max") = 1e-2);

  // pointvortex
  m.def("vortex_rhs", [](const std::vector<double>& theta, const std::vector<double>& w) {
    return vortex_rhs(make_vortex_system(theta, w));
  });
  m.def("hamiltonian", &hamiltonian);
  m.def("gap_rhs", [](double z1, double z2) {
    const auto g = gap_rhs(z1, z2);
    return py::make_tuple(g.z1, g.z2);
  });
  m.def("gap_time_scale", &gap_time_scale, py::arg("weight") = 1.0);
  m.def("gap_period", [](double energy, double dt, double t_end) {
    const auto rep = detect_period(integrate_gap(diagonal_point(energy), dt, t_end));
    py::dict out;
    out["kind"] = rep.kind == PeriodReport::Kind::Periodic     ? "periodic"
                  : rep.kind == PeriodReport::Kind::FixedPoint ? "fixed-point"
                                                               : "not-found";
    out["period"] = rep.period;
    out["closure"] = rep.closure;
    return out;
  }, py::arg("energy"), py::arg("dt") = 1e-3, py::arg("t_end") = 60.0);

  // sqg1d
  m.def("rhs_sqg_exact", [](const CircleField& g) { return rhs_sqg_exact(g); });
  m.def("rhs_sqg_approx", [](const CircleField& g) { return rhs_sqg_approx(g); });
  m.def("rhs_degregorio", [](const CircleField& f, double a) { return rhs_degregorio(f, a); });
  m.def(
      "run_sqg",
      [](const CircleField& g0, const std::string& model, double a, const SymmetrySpec& sym,
         double t_end, double sample_interval, double blowup_factor) {
        SQGModel mod;
        if (model == "sqg-exact") {
          mod.variant = SQGVariant::Exact;
        } else if (model == "sqg-approx") {
          mod.variant = SQGVariant::Approx;
        } else if (model == "degregorio") {
          mod = SQGModel{SQGVariant::DeGregorio, a};
        } else {
          throw ConfigError("model", "unknown model '" + model + "'");
        }
        SQGRunOptions opt;
        opt.t_end = t_end;
        opt.sample_interval = sample_interval;
        opt.blowup_factor = blowup_factor;
        py::list rows;
        const auto res = run_sqg(make_sqg_state(g0, mod, sym), opt,
                                 [&](const SQGState&, const SQGDiagnostics& d) { rows.append(sqg_row(d)); });
        py::dict out;
        out["rows"] = rows;
        out["final"] = res.final_state.g;
        out["verdict"] = to_string(res.monitor.verdict);
        out["blowup_time"] = res.blowup_time;
        return out;
      },
      py::arg("g0"), py::arg("model"), py::arg("a") = 0.0, py::arg("symmetry") = SymmetrySpec{2, 0.0},
      py::arg("t_end") = 1.0, py::arg("sample_interval") = 0.1, py::arg("blowup_factor") = 1e6);

  // lift2d
  m.def("lift_euler", [](const CircleField& h, double x1, double x2) {
    const auto v = lift_euler(h, PlanePoint::from_cartesian(x1, x2));
    py::dict out;
    out["omega"] = v.omega;
    out["u"] = py::make_tuple(v.u.x, v.u.y);
    out["psi"] = v.psi;
    return out;
  });
  m.def("kernel_decay", [](int m_, const std::vector<double>& ratios, int directions) {
    py::list rows;
    for (const auto& r : kernel_decay_study(m_, ratios, directions)) {
      rows.append(py::make_tuple(r.distance_ratio, r.max_ratio, r.tail_integral));
    }
    return rows;
  }, py::arg("m"), py::arg("ratios"), py::arg("directions") = 1000);

  // harness
  m.def("config_text", [](const std::string& text) {
    auto cfg = harness::parse_config(text);
    harness::validate(cfg);
    return harness::to_text(cfg);
  });
  m.def("preset_text", [](const std::string& name) { return harness::to_text(harness::preset(name)); });
  m.def("run_experiment", [](const std::string& text) {
    auto cfg = harness::parse_config(text);
    const auto out = harness::run_experiment(cfg);
    py::dict d;
    d["exit_code"] = out.exit_code;
    d["summary"] = out.summary;
    d["directory"] = out.directory;
    d["manifest"] = from_json(out.manifest);
    return d;
  });
}
