#pragma once

#include <Eigen/Dense>
#include <string>

namespace anlasso {

/// Analysis-regularized least-squares instance:
///   minimize over x in R^n:  1/2 ||y - phi*x||^2 + lambda * ||dict^T x||_1
/// phi is q x n, dict is n x p (its adjoint dict^T is p x n), y has length q.
struct Problem {
    Eigen::MatrixXd phi;
    Eigen::MatrixXd dict;
    Eigen::VectorXd y;
    double lambda = 0.0;

    Eigen::Index n() const { return phi.cols(); }
    Eigen::Index p() const { return dict.cols(); }
    Eigen::Index q() const { return phi.rows(); }
};

/// Outcome of checking the Problem invariants. `stacked_rank` is the computed
/// rank of the (q+p) x n matrix [phi; dict^T]; the instance is well-posed only
/// if that rank equals n (no vector is killed by both phi and dict^T).
struct ValidationReport {
    bool lambda_positive = false;
    bool dims_consistent = false;
    bool injective = false;
    Eigen::Index stacked_rank = 0;
    bool pass = false;
    std::string message;
};

ValidationReport validate(const Problem& problem);

/// h(x) = 1/2 ||y - phi*x||^2 + lambda ||dict^T x||_1
double objective(const Problem& problem, const Eigen::VectorXd& x);

/// Equality-constrained QP obtained by splitting dict^T x into signed parts:
///   minimize  1/2 <Qx,x> - <c,x> + lambda <e,z>
///   subject to dict^T x + [I -I] z = 0,  z >= 0,  z in R^{2p}
/// with Q = phi^T phi and c = phi^T y. The first p entries of z carry the
/// negative parts of dict^T x and the last p entries the positive parts, so
/// <e,z> = ||dict^T x||_1 on the constraint manifold. half_norm_y_sq is the
/// constant 1/2 ||y||^2 that reconnects the QP value to the original objective.
struct AugmentedQP {
    Eigen::MatrixXd q_mat;
    Eigen::VectorXd c;
    double lambda = 0.0;
    Eigen::Index n = 0;
    Eigen::Index p = 0;
    double half_norm_y_sq = 0.0;
};

AugmentedQP lift(const Problem& problem);

/// z = ((t - v)/2 ; (t + v)/2) with t = |v| componentwise, v = dict^T x.
/// That is z = (negative parts ; positive parts), the unique nonnegative split
/// with dict^T x + [I -I] z = 0 and <e,z> = ||v||_1.
Eigen::VectorXd split_variable(const Eigen::VectorXd& d_adj_x);

/// Coupling block [I -I] applied to a length-2p vector: head minus tail.
Eigen::VectorXd coupling_apply(const Eigen::VectorXd& z);

/// Adjoint of the coupling block: u -> (u ; -u).
Eigen::VectorXd coupling_adjoint(const Eigen::VectorXd& u);

/// Finite part of the lifted objective, 1/2 <Qx,x> - <c,x> + lambda <e,z>.
double augmented_objective(const AugmentedQP& qp, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& z);

}  // namespace anlasso
