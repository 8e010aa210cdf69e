// Command-line front end: `anlasso solve` runs the interior-point solver on a
// JSON problem file, `anlasso certify` additionally runs the brute-force
// oracle and emits the maximal-support certificate. Exit codes: 0 success,
// 1 parse/dimension error, 2 restricted-injectivity violation, 3 solver
// non-convergence, 4 oracle limits exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "anlasso/geometry.hpp"
#include "anlasso/io.hpp"
#include "anlasso/ipm.hpp"
#include "anlasso/oracle.hpp"

namespace {

constexpr int kExitParse = 1;
constexpr int kExitInjectivity = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitOracleLimit = 4;

struct CommonOptions {
    std::string path;
    double eps = 1e-8;
    double eta = 0.95;
    int max_iters = 200;
    double tol_support = -1.0;  // negative means scale-aware default
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("file", opts.path, "problem JSON file")->required();
    cmd->add_option("--eps", opts.eps, "stopping tolerance")->capture_default_str();
    cmd->add_option("--eta", opts.eta, "step relaxation in (0,1)")->capture_default_str();
    cmd->add_option("--max-iters", opts.max_iters, "iteration limit")->capture_default_str();
    cmd->add_option("--tol-support", opts.tol_support,
                    "support extraction tolerance (default: 1e-7 scaled by the "
                    "analysis image)");
}

anlasso::SolverConfig config_from(const CommonOptions& opts) {
    anlasso::SolverConfig config;
    config.eps = opts.eps;
    config.eta = opts.eta;
    config.max_iters = opts.max_iters;
    return config;
}

double support_tol_for(const CommonOptions& opts, const anlasso::Problem& problem,
                       const Eigen::VectorXd& x) {
    if (opts.tol_support >= 0.0) return opts.tol_support;
    return anlasso::default_support_tol(problem.dict.transpose() * x);
}

// Loads and validates; throws for parse errors, exits for injectivity.
anlasso::ProblemFile load_checked(const std::string& path) {
    anlasso::ProblemFile file = anlasso::load_problem_file(path);
    const anlasso::ValidationReport report = anlasso::validate(file.problem);
    if (!report.pass) {
        if (report.dims_consistent && report.lambda_positive && !report.injective) {
            std::cerr << "error: the problem violates the restricted injectivity "
                         "condition \"Ker D* ∩ Ker Φ = {0}\" ("
                      << report.message << ")\n";
            std::exit(kExitInjectivity);
        }
        std::cerr << "error: " << report.message << "\n";
        std::exit(kExitParse);
    }
    return file;
}

anlasso::SolveResult run_solver(const anlasso::ProblemFile& file,
                                const anlasso::SolverConfig& config) {
    std::optional<anlasso::PrimalDualPoint> start;
    if (file.start_x) {
        const anlasso::AugmentedQP qp = anlasso::lift(file.problem);
        start = anlasso::make_starting_point(qp, file.problem.dict, file.start_x);
    }
    return anlasso::solve(file.problem, config, start);
}

int cmd_solve(const CommonOptions& opts, const std::string& trace_path) {
    const anlasso::ProblemFile file = load_checked(opts.path);
    const anlasso::SolveResult result = run_solver(file, config_from(opts));

    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) {
            std::cerr << "error: cannot write trace file: " << trace_path << "\n";
            return kExitParse;
        }
        anlasso::write_trace_csv(out, result.trace);
    }

    const double tol = support_tol_for(opts, file.problem, result.point.x);
    std::cout << anlasso::solve_result_json(file.problem, result, tol) << "\n";

    if (result.trace.status != anlasso::SolveStatus::converged) {
        std::cerr << "error: solver did not converge (" << to_string(result.trace.status)
                  << ")\n";
        return kExitNoConvergence;
    }
    return 0;
}

int cmd_certify(const CommonOptions& opts, bool oracle_only) {
    const anlasso::ProblemFile file = load_checked(opts.path);

    anlasso::OracleResult oracle;
    try {
        oracle = anlasso::run_oracle(file.problem);
    } catch (const anlasso::OracleLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOracleLimit;
    }

    if (oracle_only) {
        std::cout << anlasso::certify_result_json(file.problem, oracle, nullptr, nullptr,
                                                  0.0)
                  << "\n";
        return 0;
    }

    const anlasso::SolveResult result = run_solver(file, config_from(opts));
    if (result.trace.status != anlasso::SolveStatus::converged) {
        std::cerr << "error: solver did not converge (" << to_string(result.trace.status)
                  << ")\n";
        return kExitNoConvergence;
    }

    const double tol = opts.tol_support >= 0.0 ? opts.tol_support : 1e-7;
    const anlasso::CertificateReport certificate = anlasso::certify_maximal(
        result.point.x, oracle.vertices, file.problem, tol);
    std::cout << anlasso::certify_result_json(file.problem, oracle, &result,
                                              &certificate,
                                              support_tol_for(opts, file.problem,
                                                              result.point.x))
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analysis-l1 regularized least squares: interior-point solver "
                 "with maximal-support certification"};
    app.require_subcommand(1);

    CommonOptions solve_opts;
    std::string trace_path;
    CLI::App* solve_cmd = app.add_subcommand(
        "solve", "solve one problem and print the result as JSON");
    add_common_flags(solve_cmd, solve_opts);
    solve_cmd->add_option("--trace", trace_path, "write a per-iteration CSV trace");

    CommonOptions certify_opts;
    bool oracle_only = false;
    CLI::App* certify_cmd = app.add_subcommand(
        "certify", "run the brute-force oracle and certify the solver limit");
    add_common_flags(certify_cmd, certify_opts);
    certify_cmd->add_flag("--oracle-only", oracle_only, "skip the solver");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitParse;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(solve_opts, trace_path);
        return cmd_certify(certify_opts, oracle_only);
    } catch (const anlasso::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
}
