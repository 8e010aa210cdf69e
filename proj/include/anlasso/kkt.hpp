#pragma once

#include <Eigen/Dense>

#include "anlasso/problem.hpp"

namespace anlasso {

/// Primal-dual iterate of the lifted QP: primal x (n) and z (2p), multiplier
/// u (p) of the coupling constraint, dual slack s (2p). Interior iterates keep
/// z > 0 and s > 0 strictly.
struct PrimalDualPoint {
    Eigen::VectorXd x;
    Eigen::VectorXd z;
    Eigen::VectorXd u;
    Eigen::VectorXd s;
};

/// First-order residual blocks of the lifted QP at a primal-dual point:
///   r1 = Q x - c - dict u          (dual stationarity in x, length n)
///   r2 = lambda e - s - [I -I]^T u (dual stationarity in z, length 2p)
///   r3 = z .* s                    (complementarity, length 2p)
///   r4 = dict^T x + [I -I] z       (primal feasibility, length p)
/// mu = <z,s> / 2p is the average complementarity product.
struct Residuals {
    Eigen::VectorXd r1;
    Eigen::VectorXd r2;
    Eigen::VectorXd r3;
    Eigen::VectorXd r4;
    double mu = 0.0;

    /// max of the per-block Euclidean norms (the stopping quantity).
    double max_norm() const;
};

double complementarity_mu(const Eigen::VectorXd& z, const Eigen::VectorXd& s);

Residuals residuals(const AugmentedQP& qp, const Eigen::MatrixXd& dict,
                    const PrimalDualPoint& pt);

/// Primal minus dual objective with the shared x:
///   f(x,z) - (-1/2 <Qx,x>) = <Qx,x> - <c,x> + lambda <e,z>.
/// On points with r1 = r2 = r4 = 0 this equals <z,s> exactly.
double duality_gap(const AugmentedQP& qp, const PrimalDualPoint& pt);

}  // namespace anlasso
