#pragma once

#include <Eigen/Dense>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "anlasso/geometry.hpp"
#include "anlasso/ipm.hpp"
#include "anlasso/oracle.hpp"
#include "anlasso/problem.hpp"

namespace anlasso {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parsed problem document: the instance plus an optional starting primal
/// point. The JSON schema is
///   {"phi": [[...]], "d": [[...]], "y": [...], "lambda": num, "start_x": [...]}
/// with phi given as q rows of length n, d as n rows of length p. Dimension
/// cross-checks mirror the in-memory validation; violations throw ParseError.
struct ProblemFile {
    Problem problem;
    std::optional<Eigen::VectorXd> start_x;
};

ProblemFile parse_problem_json(const std::string& text);
ProblemFile load_problem_file(const std::string& path);

/// Doubles are emitted with 17 significant digits so every value round-trips.
std::string format_double(double value);

/// Result document for a solve run: x, u, a summary of s, objective, support
/// (1-based indices), iteration count, final residual norms, and status.
std::string solve_result_json(const Problem& problem, const SolveResult& result,
                              double support_tol);

/// Per-iteration trace, one row per recorded iterate including the start:
///   iter,mu,r1,r2,r3,r4,step,sigma,x_1..x_n
void write_trace_csv(std::ostream& out, const SolveTrace& trace);

std::string certificate_json(const CertificateReport& report);

/// Combined document for certification runs; `solver` entries are omitted
/// when the run was oracle-only.
std::string certify_result_json(const Problem& problem, const OracleResult& oracle,
                                const SolveResult* solver_result,
                                const CertificateReport* certificate,
                                double support_tol);

}  // namespace anlasso
