#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "anlasso/geometry.hpp"
#include "anlasso/io.hpp"
#include "anlasso/ipm.hpp"
#include "anlasso/kkt.hpp"
#include "anlasso/oracle.hpp"
#include "anlasso/problem.hpp"

namespace py = pybind11;
using namespace anlasso;

PYBIND11_MODULE(_core, m) {
    m.doc() = "analysis-l1 regularized least squares: interior-point solver, "
              "solution-set geometry, and a brute-force oracle";

    py::class_<Problem>(m, "Problem")
        .def(py::init([](Eigen::MatrixXd phi, Eigen::MatrixXd d, Eigen::VectorXd y,
                         double lam) {
                 return Problem{std::move(phi), std::move(d), std::move(y), lam};
             }),
             py::arg("phi"), py::arg("d"), py::arg("y"), py::arg("lambda_"))
        .def_readonly("phi", &Problem::phi)
        .def_readonly("d", &Problem::dict)
        .def_readonly("y", &Problem::y)
        .def_readonly("lambda_", &Problem::lambda)
        .def_property_readonly("n", &Problem::n)
        .def_property_readonly("p", &Problem::p)
        .def_property_readonly("q", &Problem::q);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("lambda_positive", &ValidationReport::lambda_positive)
        .def_readonly("dims_consistent", &ValidationReport::dims_consistent)
        .def_readonly("injective", &ValidationReport::injective)
        .def_readonly("stacked_rank", &ValidationReport::stacked_rank)
        .def_readonly("pass_", &ValidationReport::pass)
        .def_readonly("message", &ValidationReport::message);

    py::class_<PrimalDualPoint>(m, "PrimalDualPoint")
        .def_readonly("x", &PrimalDualPoint::x)
        .def_readonly("z", &PrimalDualPoint::z)
        .def_readonly("u", &PrimalDualPoint::u)
        .def_readonly("s", &PrimalDualPoint::s);

    py::enum_<SolveStatus>(m, "SolveStatus")
        .value("converged", SolveStatus::converged)
        .value("max_iters", SolveStatus::max_iters)
        .value("numerical_failure", SolveStatus::numerical_failure);

    py::class_<SolveResult>(m, "SolveResult")
        .def_property_readonly("x",
                               [](const SolveResult& r) { return r.point.x; })
        .def_property_readonly("point",
                               [](const SolveResult& r) { return r.point; })
        .def_property_readonly(
            "status", [](const SolveResult& r) { return r.trace.status; })
        .def_property_readonly(
            "iterations", [](const SolveResult& r) { return r.trace.iterations(); })
        .def_property_readonly("mu_history", [](const SolveResult& r) {
            std::vector<double> mu;
            for (const auto& rec : r.trace.records) mu.push_back(rec.mu);
            return mu;
        });

    py::class_<SupportPattern>(m, "SupportPattern")
        .def_readonly("indices", &SupportPattern::indices)
        .def_readonly("signs", &SupportPattern::signs)
        .def_readonly("tol", &SupportPattern::tol);

    py::class_<CertificateReport>(m, "CertificateReport")
        .def_readonly("input_valid", &CertificateReport::input_valid)
        .def_readonly("support_inclusion", &CertificateReport::support_inclusion)
        .def_readonly("sign_consistency", &CertificateReport::sign_consistency)
        .def_readonly("same_image", &CertificateReport::same_image)
        .def_readonly("orthant", &CertificateReport::orthant)
        .def_readonly("pass_", &CertificateReport::pass)
        .def_readonly("objective_spread", &CertificateReport::objective_spread)
        .def("to_json", [](const CertificateReport& r) { return certificate_json(r); });

    py::class_<OracleResult>(m, "OracleResult")
        .def_readonly("optimal_value", &OracleResult::optimal_value)
        .def_readonly("vertices", &OracleResult::vertices)
        .def_readonly("witness", &OracleResult::witness)
        .def_readonly("analytic_center", &OracleResult::analytic_center);

    m.def("validate", &validate, py::arg("problem"));
    m.def("objective", &objective, py::arg("problem"), py::arg("x"));
    m.def("split_variable", &split_variable, py::arg("d_adj_x"));
    m.def(
        "solve",
        [](const Problem& problem, double eps, double eta, int max_iters,
           std::optional<Eigen::VectorXd> start_x) {
            SolverConfig config;
            config.eps = eps;
            config.eta = eta;
            config.max_iters = max_iters;
            std::optional<PrimalDualPoint> start;
            if (start_x) {
                const AugmentedQP qp = lift(problem);
                start = make_starting_point(qp, problem.dict, start_x);
            }
            return solve(problem, config, start);
        },
        py::arg("problem"), py::arg("eps") = 1e-8, py::arg("eta") = 0.95,
        py::arg("max_iters") = 200, py::arg("start_x") = std::nullopt);
    m.def("least_squares_x", &least_squares_x, py::arg("problem"));
    m.def("run_oracle",
          [](const Problem& problem) { return run_oracle(problem); },
          py::arg("problem"));
    m.def("d_support", &d_support, py::arg("x"), py::arg("d"), py::arg("tol"));
    m.def("default_support_tol", &default_support_tol, py::arg("d_adj_x"));
    m.def("sign_consistent", &sign_consistent, py::arg("x1"), py::arg("x2"),
          py::arg("d"), py::arg("tol"));
    m.def("same_image", &same_image, py::arg("x1"), py::arg("x2"), py::arg("problem"),
          py::arg("tol"));
    m.def("kernel_singleton_check", &kernel_singleton_check, py::arg("x"),
          py::arg("problem"), py::arg("tol"));
    m.def("certify_maximal", &certify_maximal, py::arg("candidate"),
          py::arg("vertices"), py::arg("problem"), py::arg("tol") = 1e-7);

    py::register_exception<OracleLimitError>(m, "OracleLimitError");
    py::register_exception<ParseError>(m, "ParseError");
}
