#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "anlasso/kkt.hpp"
#include "anlasso/problem.hpp"

namespace anlasso {

struct SolverConfig {
    double eps = 1e-8;    // stopping tolerance on residual norms and mu
    double eta = 0.95;    // step relaxation, in (0,1)
    int max_iters = 200;
    double t_cap = 1.0;   // cap on the Newton step length
    double reg = 1e-12;   // diagonal regularization used on factorization retry
};

struct Direction {
    Eigen::VectorXd dx;
    Eigen::VectorXd dz;
    Eigen::VectorXd du;
    Eigen::VectorXd ds;
};

/// Right-hand-side quadruple for the Newton block system, shaped like the
/// residual blocks (r1: n, r2: 2p, r3: 2p, r4: p).
struct NewtonRhs {
    Eigen::VectorXd r1;
    Eigen::VectorXd r2;
    Eigen::VectorXd r3;
    Eigen::VectorXd r4;
};

enum class SolveStatus { converged, max_iters, numerical_failure };

std::string to_string(SolveStatus status);

struct IterationRecord {
    int iter = 0;
    Eigen::VectorXd x, z, u, s;
    double mu = 0.0;
    double r1_norm = 0.0, r2_norm = 0.0, r3_norm = 0.0, r4_norm = 0.0;
    double step = 0.0;
    double sigma = 0.0;
    // Relative block-equation residual of the combined direction taken at this
    // iteration (0 for the initial record).
    double dir_residual = 0.0;
};

struct SolveTrace {
    std::vector<IterationRecord> records;
    SolveStatus status = SolveStatus::max_iters;
    int iterations() const { return static_cast<int>(records.size()) - 1; }
};

struct SolveResult {
    PrimalDualPoint point;
    SolveTrace trace;
};

struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Solves the Newton block system
///   Q dx - dict du            = -rhs.r1
///   -ds - [I -I]^T du         = -rhs.r2
///   S dz + Z ds               = -rhs.r3
///   dict^T dx + [I -I] dz     = -rhs.r4
/// by eliminating ds = rhs.r2 - [I -I]^T du and dz = S^{-1}(-rhs.r3 - Z ds),
/// which reduces to a dense (n+p) x (n+p) system in (dx, du):
///   Q dx - dict du                        = -rhs.r1
///   dict^T dx + diag(z1/s1 + z2/s2) du    = -rhs.r4 + [I -I] S^{-1}(rhs.r3 + Z rhs.r2)
/// (subscripts 1/2 denote the two halves of z and s). Solved by LU; if the
/// solution is unreliable, retried with `reg` then 1e-8 added to both diagonal
/// blocks. Throws NumericalFailure if every attempt fails.
Direction newton_solve(const AugmentedQP& qp, const Eigen::MatrixXd& dict,
                       const PrimalDualPoint& pt, const NewtonRhs& rhs,
                       double reg = 1e-12);

/// Max relative violation of the four block equations by `dir` for the system
/// with right-hand side -rhs (the system newton_solve targets).
double newton_residual(const AugmentedQP& qp, const Eigen::MatrixXd& dict,
                       const PrimalDualPoint& pt, const NewtonRhs& rhs,
                       const Direction& dir);

/// Exact ratio test: largest t >= 0 with z + t dz >= 0 and s + t ds >= 0.
/// Returns +infinity when no component of the direction is negative.
double max_step(const PrimalDualPoint& pt, const Direction& dir);

/// clamp((mu_affine / mu)^3, 0, 1); 0 when mu == 0.
double centering_sigma(double mu, double mu_affine);

/// <z + t dz, s + t ds> / 2p at the trial step t.
double affine_mu(const PrimalDualPoint& pt, const Direction& dir, double t_affine);

/// Right-hand sides of the corrector system: (0, 0, -dz_a .* ds_a + sigma*mu*e, 0).
NewtonRhs corrector_rhs(const Direction& dir_affine, double sigma, double mu);

/// Strictly interior starting point. x0 defaults to the ridge solve
/// (Q + I) x = c; z is the signed split of dict^T x0 shifted by +1/2; u = 0;
/// s = lambda*e floored at lambda/2 (at 1 when lambda is tiny).
PrimalDualPoint make_starting_point(const AugmentedQP& qp, const Eigen::MatrixXd& dict,
                                    const std::optional<Eigen::VectorXd>& x0 = {});

/// Minimum-norm least-squares solution of ||y - phi x||; an alternative start.
Eigen::VectorXd least_squares_x(const Problem& problem);

/// Predictor-corrector interior-point solve of the lifted QP. Refuses invalid
/// problems (throws std::invalid_argument). Each iteration computes the affine
/// direction from the current residuals, the centering weight sigma from the
/// affine ratio-test step, the corrector direction, and advances all four
/// blocks by min(eta * t_max, t_cap) along the combined direction. Stops when
/// every residual block norm and mu are at most eps. The returned x is the
/// candidate solution of maximal analysis support.
SolveResult solve(const Problem& problem, const SolverConfig& config = {},
                  const std::optional<PrimalDualPoint>& start = {});

}  // namespace anlasso
