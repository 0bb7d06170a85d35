#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "epstein/analysis.hpp"
#include "epstein/io.hpp"
#include "epstein/special.hpp"
#include "epstein/qform.hpp"
#include "epstein/zeros.hpp"
#include "epstein/zeta.hpp"

namespace py = pybind11;

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

PYBIND11_MODULE(_core, m) {
  m.doc() = "Epstein zeta functions of positive-definite binary quadratic "
            "forms: evaluation, critical-line zeros, gap statistics and the "
            "supporting analytic machinery";

  py::register_exception<epstein::argument_error>(m, "ArgumentError",
                                                  PyExc_ValueError);
  py::register_exception<epstein::domain_error>(m, "DomainError",
                                                PyExc_ValueError);
  py::register_exception<epstein::resource_error>(m, "ResourceError",
                                                  PyExc_RuntimeError);

  py::class_<epstein::QuadraticForm>(m, "QuadraticForm")
      .def(py::init<std::int64_t, std::int64_t, std::int64_t>(), py::arg("a"),
           py::arg("b"), py::arg("c"))
      .def_readonly("a", &epstein::QuadraticForm::a)
      .def_readonly("b", &epstein::QuadraticForm::b)
      .def_readonly("c", &epstein::QuadraticForm::c)
      .def("discriminant", &epstein::QuadraticForm::discriminant)
      .def("square_disc", &epstein::QuadraticForm::square_disc)
      .def("stark_k", &epstein::QuadraticForm::stark_k)
      .def("eval", &epstein::QuadraticForm::eval, py::arg("x"), py::arg("y"))
      .def("adjoint", &epstein::QuadraticForm::adjoint)
      .def_static("parse", &epstein::QuadraticForm::parse, py::arg("text"))
      .def("__str__", &epstein::QuadraticForm::str)
      .def("__repr__", [](const epstein::QuadraticForm& f) {
        return "QuadraticForm(" + f.str() + ")";
      })
      .def("__eq__", [](const epstein::QuadraticForm& x,
                        const epstein::QuadraticForm& y) { return x == y; });

  py::class_<epstein::EvalConfig>(m, "EvalConfig")
      .def(py::init<>())
      .def_readwrite("target_rel_err", &epstein::EvalConfig::target_rel_err)
      .def_readwrite("max_terms", &epstein::EvalConfig::max_terms)
      .def_readwrite("incomplete_gamma_tol", &epstein::EvalConfig::incomplete_gamma_tol)
      .def_readwrite("series_sigma_floor", &epstein::EvalConfig::series_sigma_floor)
      .def_readwrite("reliable_height", &epstein::EvalConfig::reliable_height)
      .def_readwrite("crossover_height", &epstein::EvalConfig::crossover_height)
      .def_readwrite("max_table_bytes", &epstein::EvalConfig::max_table_bytes);

  py::class_<epstein::RepCountTable>(m, "RepCountTable")
      .def("limit", &epstein::RepCountTable::limit)
      .def("r", &epstein::RepCountTable::r, py::arg("n"))
      .def("counts", &epstein::RepCountTable::counts);

  m.def("rep_counts", &epstein::rep_counts, py::arg("form"), py::arg("limit"),
        py::arg("max_table_bytes") = std::size_t{1} << 28);
  m.def("gauss_sum", &epstein::gauss_sum, py::arg("form"), py::arg("k"), py::arg("h"));
  m.def("count_classes", &epstein::count_classes, py::arg("disc"));
  m.def("discriminant", py::overload_cast<const epstein::QuadraticForm&>(
                            &epstein::discriminant));
  m.def("stark_k",
        py::overload_cast<const epstein::QuadraticForm&>(&epstein::stark_k));

  py::class_<epstein::CompletedZetaValue>(m, "CompletedZetaValue")
      .def_readonly("s", &epstein::CompletedZetaValue::s)
      .def_readonly("lambda_value", &epstein::CompletedZetaValue::lambda)
      .def_readonly("zeta", &epstein::CompletedZetaValue::zeta)
      .def_readonly("est_err", &epstein::CompletedZetaValue::est_err);

  m.def("dirichlet_series", &epstein::dirichlet_series, py::arg("form"),
        py::arg("s"), py::arg("config") = epstein::EvalConfig{});
  m.def("zeta_q", &epstein::zeta_q, py::arg("form"), py::arg("s"),
        py::arg("config") = epstein::EvalConfig{});
  m.def("gamma_weight", &epstein::gamma_weight, py::arg("form"), py::arg("s"));
  m.def("chi", &epstein::chi, py::arg("s"));

  py::class_<epstein::HardyValue>(m, "HardyValue")
      .def_readonly("w", &epstein::HardyValue::w)
      .def_readonly("im_residual", &epstein::HardyValue::im_residual)
      .def_readonly("est_err", &epstein::HardyValue::est_err);
  m.def("hardy_w", &epstein::hardy_w, py::arg("form"), py::arg("t"),
        py::arg("config") = epstein::EvalConfig{});

  py::class_<epstein::CriticalLineApprox>(m, "CriticalLineApprox")
      .def_readonly("value", &epstein::CriticalLineApprox::value)
      .def_readonly("err_scale", &epstein::CriticalLineApprox::err_scale);
  m.def("approx_critical_line", &epstein::approx_critical_line, py::arg("form"),
        py::arg("t"), py::arg("X"), py::arg("config") = epstein::EvalConfig{});

  py::class_<epstein::ZeroRecord>(m, "ZeroRecord")
      .def_readonly("t", &epstein::ZeroRecord::t)
      .def_readonly("bracket", &epstein::ZeroRecord::bracket)
      .def_readonly("sign_left", &epstein::ZeroRecord::sign_left)
      .def_readonly("sign_right", &epstein::ZeroRecord::sign_right);

  py::class_<epstein::ScanOptions>(m, "ScanOptions")
      .def(py::init<>())
      .def_readwrite("step_base", &epstein::ScanOptions::step_base)
      .def_readwrite("refine_tol", &epstein::ScanOptions::refine_tol)
      .def_readwrite("workers", &epstein::ScanOptions::workers)
      .def_readwrite("second_pass", &epstein::ScanOptions::second_pass)
      .def_readwrite("eval_target_rel_err",
                     &epstein::ScanOptions::eval_target_rel_err);

  py::class_<epstein::ScanResult>(m, "ScanResult")
      .def_readonly("zeros", &epstein::ScanResult::zeros)
      .def_readonly("warning", &epstein::ScanResult::warning)
      .def_readonly("stark_main_delta", &epstein::ScanResult::stark_main_delta)
      .def_readonly("evaluations", &epstein::ScanResult::evaluations);

  m.def("scan_zeros", &epstein::scan_zeros, py::arg("form"), py::arg("t0"),
        py::arg("t1"), py::arg("options") = epstein::ScanOptions{},
        py::arg("config") = epstein::EvalConfig{},
        py::call_guard<py::gil_scoped_release>());

  py::class_<epstein::StarkPrediction>(m, "StarkPrediction")
      .def_readonly("main_term", &epstein::StarkPrediction::main_term)
      .def_readonly("error_scale", &epstein::StarkPrediction::error_scale);
  m.def("stark_prediction", &epstein::stark_prediction, py::arg("form"), py::arg("T"));

  m.def("real_zero_in_unit_interval", &epstein::real_zero_in_unit_interval,
        py::arg("form"), py::arg("config") = epstein::EvalConfig{});

  py::class_<epstein::GapTable>(m, "GapTable")
      .def(py::init<epstein::QuadraticForm, double, std::vector<epstein::ZeroRecord>>(),
           py::arg("form"), py::arg("T"), py::arg("zeros"))
      .def("range_bound", &epstein::GapTable::range_bound)
      .def("zeros", &epstein::GapTable::zeros)
      .def("gaps", &epstein::GapTable::gaps)
      .def("max_gap", &epstein::GapTable::max_gap);
  m.def("gap_stats", &epstein::gap_stats, py::arg("table"), py::arg("V"));

  py::class_<epstein::SmoothingParams>(m, "SmoothingParams")
      .def(py::init<>())
      .def_readwrite("T", &epstein::SmoothingParams::T)
      .def_readwrite("V", &epstein::SmoothingParams::V)
      .def_readwrite("eps", &epstein::SmoothingParams::eps)
      .def_readwrite("L", &epstein::SmoothingParams::L)
      .def_readwrite("G", &epstein::SmoothingParams::G)
      .def_readwrite("Y", &epstein::SmoothingParams::Y);
  m.def("make_smoothing", &epstein::make_smoothing, py::arg("T"), py::arg("V"),
        py::arg("eps"));

  py::class_<epstein::SmoothedIntegrals>(m, "SmoothedIntegrals")
      .def_readonly("i1", &epstein::SmoothedIntegrals::i1)
      .def_readonly("i2", &epstein::SmoothedIntegrals::i2);
  m.def("smoothed_integrals", &epstein::smoothed_integrals, py::arg("form"),
        py::arg("t"), py::arg("params"), py::arg("config") = epstein::EvalConfig{});

  m.def("eta_weight", &epstein::eta_weight, py::arg("x"), py::arg("center"),
        py::arg("Y"), py::arg("J"));

  py::class_<epstein::OscillatoryProblem>(m, "OscillatoryProblem")
      .def(py::init<>())
      .def_readwrite("phase", &epstein::OscillatoryProblem::phase)
      .def_readwrite("amplitude", &epstein::OscillatoryProblem::amplitude)
      .def_readwrite("m", &epstein::OscillatoryProblem::m)
      .def_readwrite("a", &epstein::OscillatoryProblem::a)
      .def_readwrite("b", &epstein::OscillatoryProblem::b)
      .def_readwrite("hypotheses_attested",
                     &epstein::OscillatoryProblem::hypotheses_attested);
  py::class_<epstein::OscillatoryBound>(m, "OscillatoryBound")
      .def_readonly("integral_mod", &epstein::OscillatoryBound::integral_mod)
      .def_readonly("bound", &epstein::OscillatoryBound::bound)
      .def_property_readonly(
          "passed", [](const epstein::OscillatoryBound& b) { return b.pass; });
  m.def("oscillatory_bound_check", &epstein::oscillatory_bound_check,
        py::arg("problem"), py::arg("config") = epstein::EvalConfig{});

  m.def("first_power_mean", &epstein::first_power_mean, py::arg("form"),
        py::arg("T"), py::arg("H"), py::arg("config") = epstein::EvalConfig{});

  py::class_<epstein::RationalApprox>(m, "RationalApprox")
      .def_readonly("h", &epstein::RationalApprox::h)
      .def_readonly("k", &epstein::RationalApprox::k)
      .def_readonly("err", &epstein::RationalApprox::err)
      .def_readonly("err_h2", &epstein::RationalApprox::err_h2)
      .def_readonly("fits_int64", &epstein::RationalApprox::fits_int64);
  m.def("cf_approx", &epstein::cf_approx, py::arg("disc"), py::arg("h_target"));
  m.def("cf_convergents", &epstein::cf_convergents, py::arg("disc"), py::arg("count"));

  m.def("phi", &epstein::phi, py::arg("x"));
  m.def("phi_deriv", &epstein::phi_deriv, py::arg("x"));
  m.def("n_j_values", &epstein::n_j_values, py::arg("disc0"), py::arg("h"),
        py::arg("m1"), py::arg("m2"), py::arg("M1"), py::arg("M2"));
  m.def("phase_F", &epstein::phase_F, py::arg("C2"), py::arg("m"), py::arg("n"),
        py::arg("x"));
  m.def("phase_deriv_F", &epstein::phase_deriv_F, py::arg("C2"), py::arg("m"),
        py::arg("n"), py::arg("x"));
  m.def("phase_amplitude", &epstein::phase_amplitude, py::arg("C2"), py::arg("m"),
        py::arg("n"), py::arg("x"));
  m.def("mean_square_coeffs", &epstein::mean_square_coeffs, py::arg("form"),
        py::arg("x"), py::arg("config") = epstein::EvalConfig{});
  m.def("mod_inverse", &epstein::mod_inverse, py::arg("a"), py::arg("k"));

  m.def("write_rep_counts_csv", &epstein::write_rep_counts_csv, py::arg("table"),
        py::arg("path"));
  m.def("write_zero_table", &epstein::write_zero_table, py::arg("path"),
        py::arg("zeros"));
  m.def("read_zero_table", &epstein::read_zero_table, py::arg("path"));

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
