// Python bindings for the qtur core.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qtur/cli.hpp"
#include "qtur/io.hpp"
#include "qtur/limits.hpp"
#include "qtur/observables.hpp"
#include "qtur/physics.hpp"
#include "qtur/quad.hpp"
#include "qtur/sweep.hpp"

namespace py = pybind11;
using namespace qtur;

namespace {

Axis make_axis(const std::string& name, double lo, double hi, std::size_t count) {
    Axis a{name, lo, hi, count};
    a.validate();
    return a;
}

}  // namespace

PYBIND11_MODULE(_qtur, m) {
    m.doc() = "Driven oscillator quantum thermal machine: currents, fluctuations and TUR trade-offs";

    py::register_exception<UnsupportedRegime>(m, "UnsupportedRegime", PyExc_ValueError);
    py::register_exception<MetricUndefined>(m, "MetricUndefined", PyExc_ArithmeticError);
    py::register_exception<EvaluationError>(m, "EvaluationError", PyExc_ArithmeticError);

    py::class_<LorentzianBath>(m, "LorentzianBath")
        .def(py::init<>())
        .def_readwrite("omega1", &LorentzianBath::omega1)
        .def_readwrite("gamma1", &LorentzianBath::gamma1)
        .def_readwrite("d1", &LorentzianBath::d1);

    py::class_<OhmicBath>(m, "OhmicBath").def(py::init<>()).def_readwrite("gamma2", &OhmicBath::gamma2);

    py::class_<MachineParams>(m, "MachineParams")
        .def(py::init<>())
        .def(py::init([](py::kwargs kw) {
            MachineParams p;
            for (auto [k, v] : kw) {
                const auto key = k.cast<std::string>();
                const auto x = v.cast<double>();
                if (key == "omega0") p.omega0 = x;
                else if (key == "m") p.m = x;
                else if (key == "T1") p.T1 = x;
                else if (key == "T2") p.T2 = x;
                else if (key == "Omega") p.Omega = x;
                else if (key == "omega1") p.bath1.omega1 = x;
                else if (key == "gamma1") p.bath1.gamma1 = x;
                else if (key == "d1") p.bath1.d1 = x;
                else if (key == "gamma2") p.bath2.gamma2 = x;
                else throw py::key_error("unknown parameter: " + key);
            }
            return p;
        }))
        .def_readwrite("omega0", &MachineParams::omega0)
        .def_readwrite("m", &MachineParams::m)
        .def_readwrite("T1", &MachineParams::T1)
        .def_readwrite("T2", &MachineParams::T2)
        .def_readwrite("Omega", &MachineParams::Omega)
        .def_readwrite("bath1", &MachineParams::bath1)
        .def_readwrite("bath2", &MachineParams::bath2)
        .def("validate", &MachineParams::validate)
        .def("validity_ratio", &MachineParams::validity_ratio)
        .def("perturbative_warning", &MachineParams::perturbative_warning);

    py::class_<QuadratureConfig>(m, "QuadratureConfig")
        .def(py::init<>())
        .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
        .def_readwrite("abs_tol", &QuadratureConfig::abs_tol)
        .def_readwrite("max_panels", &QuadratureConfig::max_panels)
        .def_readwrite("cluster_multipliers", &QuadratureConfig::cluster_multipliers)
        .def_readwrite("window_factor", &QuadratureConfig::window_factor)
        .def("validate", &QuadratureConfig::validate);

    py::class_<IntegralResult>(m, "IntegralResult")
        .def_readonly("value", &IntegralResult::value)
        .def_readonly("error_estimate", &IntegralResult::error_estimate)
        .def_readonly("panels_used", &IntegralResult::panels_used)
        .def_readonly("converged", &IntegralResult::converged);

    py::enum_<KernelKind>(m, "KernelKind")
        .value("HeatJ1", KernelKind::HeatJ1)
        .value("PowerP", KernelKind::PowerP)
        .value("FluctDJ1", KernelKind::FluctDJ1)
        .value("FluctDP", KernelKind::FluctDP);

    py::enum_<BathIndex>(m, "BathIndex").value("One", BathIndex::One).value("Two", BathIndex::Two);

    m.def("spectral_density", &spectral_density, py::arg("params"), py::arg("bath"), py::arg("omega"));
    m.def("chi0_im", &chi0_im, py::arg("params"), py::arg("omega"));
    m.def("kernel_eval", &kernel_eval, py::arg("params"), py::arg("kind"), py::arg("omega"));
    m.def("integration_window", &integration_window, py::arg("params"), py::arg("config") = QuadratureConfig{});
    m.def("build_breakpoints", &build_breakpoints, py::arg("params"), py::arg("config") = QuadratureConfig{});
    m.def(
        "adaptive_integrate",
        [](const std::function<double(double)>& f, const std::vector<double>& breakpoints,
           const QuadratureConfig& cfg) { return adaptive_integrate(f, breakpoints, cfg); },
        py::arg("f"), py::arg("breakpoints"), py::arg("config") = QuadratureConfig{});

    py::class_<Observables>(m, "Observables")
        .def_readonly("J1", &Observables::J1)
        .def_readonly("P", &Observables::P)
        .def_readonly("J2", &Observables::J2)
        .def_readonly("Sdot", &Observables::Sdot)
        .def_readonly("D_J1", &Observables::D_J1)
        .def_readonly("D_P", &Observables::D_P)
        .def_readonly("quad_converged", &Observables::quad_converged);

    py::enum_<ModeKind>(m, "ModeKind")
        .value("Engine", ModeKind::Engine)
        .value("Refrigerator", ModeKind::Refrigerator)
        .value("Other", ModeKind::Other);

    py::class_<OperatingMode>(m, "OperatingMode")
        .def_readonly("kind", &OperatingMode::kind)
        .def_readonly("sign_P", &OperatingMode::sign_P)
        .def_readonly("sign_J1", &OperatingMode::sign_J1)
        .def_readonly("sign_J2", &OperatingMode::sign_J2);

    py::class_<PerformanceMetrics>(m, "PerformanceMetrics")
        .def_readonly("Q_P", &PerformanceMetrics::Q_P)
        .def_readonly("Q_J1", &PerformanceMetrics::Q_J1)
        .def_readonly("eta", &PerformanceMetrics::eta)
        .def_readonly("cop", &PerformanceMetrics::cop)
        .def_readonly("eta_C", &PerformanceMetrics::eta_C)
        .def_readonly("cop_C", &PerformanceMetrics::cop_C)
        .def_readonly("eta_norm", &PerformanceMetrics::eta_norm)
        .def_readonly("cop_norm", &PerformanceMetrics::cop_norm)
        .def_readonly("mode", &PerformanceMetrics::mode);

    m.def("evaluate_point", &evaluate_point, py::arg("params"), py::arg("config") = QuadratureConfig{},
          py::call_guard<py::gil_scoped_release>());
    m.def("performance", &performance, py::arg("observables"), py::arg("params"),
          py::arg("threshold") = kModeThreshold);
    m.def("mode_name", [](ModeKind k) { return std::string(to_string(k)); });

    py::class_<ClosedFormPoint>(m, "ClosedFormPoint")
        .def_readonly("J1_cf", &ClosedFormPoint::J1_cf)
        .def_readonly("P_cf", &ClosedFormPoint::P_cf)
        .def_readonly("J2_cf", &ClosedFormPoint::J2_cf)
        .def_readonly("Sdot_cf", &ClosedFormPoint::Sdot_cf)
        .def_readonly("D_J1_cf", &ClosedFormPoint::D_J1_cf)
        .def_readonly("D_P_cf", &ClosedFormPoint::D_P_cf)
        .def_readonly("x", &ClosedFormPoint::x)
        .def_readonly("Omega_star", &ClosedFormPoint::Omega_star);

    py::class_<ResonantPoint>(m, "ResonantPoint")
        .def_readonly("J1", &ResonantPoint::J1)
        .def_readonly("P", &ResonantPoint::P)
        .def_readonly("J2", &ResonantPoint::J2)
        .def_readonly("Sdot", &ResonantPoint::Sdot)
        .def_readonly("D_J1", &ResonantPoint::D_J1)
        .def_readonly("D_P", &ResonantPoint::D_P)
        .def_readonly("N_tilde", &ResonantPoint::N_tilde)
        .def_readonly("R_tilde", &ResonantPoint::R_tilde)
        .def_readonly("eta_or_cop", &ResonantPoint::eta_or_cop)
        .def_readonly("engine_branch", &ResonantPoint::engine_branch);

    m.def("tur_argument", &tur_argument, py::arg("params"));
    m.def("closed_form_observables", &closed_form_observables, py::arg("params"));
    m.def("resonant_dominant", &resonant_dominant, py::arg("params"));
    m.def("q_closed_form", &q_closed_form, py::arg("params"));
    m.def("q_of_x", &q_of_x, py::arg("x"));
    m.def("turning_point", &turning_point, py::arg("params"));

    py::class_<Axis>(m, "Axis")
        .def(py::init(&make_axis), py::arg("name"), py::arg("min"), py::arg("max"), py::arg("count"))
        .def_readonly("name", &Axis::name)
        .def_readonly("min", &Axis::min)
        .def_readonly("max", &Axis::max)
        .def_readonly("count", &Axis::count)
        .def("values", &Axis::values);

    py::enum_<RowMode>(m, "RowMode")
        .value("Engine", RowMode::Engine)
        .value("Refrigerator", RowMode::Refrigerator)
        .value("Other", RowMode::Other)
        .value("Error", RowMode::Error);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("Omega", &SweepRow::Omega)
        .def_readonly("omega1", &SweepRow::omega1)
        .def_readonly("obs", &SweepRow::obs)
        .def_readonly("perf", &SweepRow::perf)
        .def_readonly("mode", &SweepRow::mode)
        .def_readonly("error", &SweepRow::error);

    py::class_<SweepTable>(m, "SweepTable")
        .def_readonly("axes", &SweepTable::axes)
        .def_readonly("rows", &SweepTable::rows)
        .def_readonly("params", &SweepTable::params)
        .def("all_ok", &SweepTable::all_ok)
        .def("to_csv", [](const SweepTable& t, bool normalize) {
            return emit_csv(t, normalize ? Normalize::Gamma2Squared : Normalize::None);
        }, py::arg("normalize") = false)
        .def("to_json", [](const SweepTable& t, bool normalize) {
            return emit_json(t, normalize ? Normalize::Gamma2Squared : Normalize::None);
        }, py::arg("normalize") = false);

    m.def("table_from_json", [](const std::string& s) { return table_from_json(s); }, py::arg("json"));

    m.def(
        "grid_sweep",
        [](const MachineParams& p, const Axis& Om, const Axis& om1, const QuadratureConfig& cfg, unsigned threads) {
            return grid_sweep(p, Om, om1, cfg, SweepOptions{threads});
        },
        py::arg("params"), py::arg("Omega_axis"), py::arg("omega1_axis"), py::arg("config") = QuadratureConfig{},
        py::arg("threads") = 0u, py::call_guard<py::gil_scoped_release>());
    m.def(
        "resonance_scan",
        [](const MachineParams& p, const Axis& Om, const QuadratureConfig& cfg, unsigned threads) {
            return resonance_scan(p, Om, cfg, SweepOptions{threads});
        },
        py::arg("params"), py::arg("Omega_axis"), py::arg("config") = QuadratureConfig{}, py::arg("threads") = 0u,
        py::call_guard<py::gil_scoped_release>());
    m.def("resonant_omega1", &resonant_omega1, py::arg("params"), py::arg("Omega"));

    py::class_<ModeInterval>(m, "ModeInterval")
        .def_readonly("mode", &ModeInterval::mode)
        .def_readonly("Omega_lo", &ModeInterval::Omega_lo)
        .def_readonly("Omega_hi", &ModeInterval::Omega_hi);
    py::class_<ModeBoundaries>(m, "ModeBoundaries")
        .def_readonly("intervals", &ModeBoundaries::intervals)
        .def_readonly("excluded_nodes", &ModeBoundaries::excluded_nodes);
    m.def("find_mode_boundaries", &find_mode_boundaries, py::arg("scan"));

    py::enum_<Metric>(m, "Metric")
        .value("Q_P", Metric::Q_P)
        .value("Q_J1", Metric::Q_J1)
        .value("EtaNorm", Metric::EtaNorm)
        .value("CopNorm", Metric::CopNorm);
    m.def("parse_metric", &parse_metric, py::arg("name"));

    py::class_<OptimumResult>(m, "OptimumResult")
        .def_readonly("Omega_opt", &OptimumResult::Omega_opt)
        .def_readonly("value", &OptimumResult::value)
        .def_readonly("metric", &OptimumResult::metric);
    m.def("optimize_metric", &optimize_metric, py::arg("params"), py::arg("metric"), py::arg("Omega_lo"),
          py::arg("Omega_hi"), py::arg("config") = QuadratureConfig{}, py::call_guard<py::gil_scoped_release>());

    py::class_<OracleComparison>(m, "OracleComparison")
        .def_readonly("max_dev_J1", &OracleComparison::max_dev_J1)
        .def_readonly("max_dev_P", &OracleComparison::max_dev_P)
        .def_readonly("max_dev_D_J1", &OracleComparison::max_dev_D_J1)
        .def_readonly("max_dev_D_P", &OracleComparison::max_dev_D_P)
        .def("max_dev", &OracleComparison::max_dev);
    m.def(
        "compare_oracle",
        [](const MachineParams& p, const Axis& Om, const QuadratureConfig& cfg, unsigned threads) {
            return compare_oracle(p, Om, cfg, SweepOptions{threads});
        },
        py::arg("params"), py::arg("Omega_axis"), py::arg("config") = QuadratureConfig{}, py::arg("threads") = 0u,
        py::call_guard<py::gil_scoped_release>());

    py::class_<RunConfig>(m, "RunConfig")
        .def_readonly("params", &RunConfig::params)
        .def_readonly("quad", &RunConfig::quad)
        .def_readonly("output", &RunConfig::output);
    m.def(
        "parse_config",
        [](const std::string& text, const std::vector<Override>& overrides) { return parse_config(text, overrides); },
        py::arg("text"), py::arg("overrides") = std::vector<Override>{});
    m.def("config_keys", &config_keys);
    m.def("table_columns", &table_columns);
}
