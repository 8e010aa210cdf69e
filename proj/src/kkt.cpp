#include "anlasso/kkt.hpp"

#include <algorithm>
#include <stdexcept>

namespace anlasso {

double Residuals::max_norm() const {
    return std::max({r1.norm(), r2.norm(), r3.norm(), r4.norm()});
}

double complementarity_mu(const Eigen::VectorXd& z, const Eigen::VectorXd& s) {
    if (z.size() != s.size() || z.size() == 0)
        throw std::invalid_argument("z and s must have equal positive length");
    return z.dot(s) / static_cast<double>(z.size());
}

Residuals residuals(const AugmentedQP& qp, const Eigen::MatrixXd& dict,
                    const PrimalDualPoint& pt) {
    const Eigen::Index p = qp.p;
    if (pt.x.size() != qp.n || pt.z.size() != 2 * p || pt.u.size() != p ||
        pt.s.size() != 2 * p || dict.cols() != p) {
        throw std::invalid_argument("primal-dual point has wrong dimensions");
    }
    Residuals res;
    res.r1 = qp.q_mat * pt.x - qp.c - dict * pt.u;
    res.r2 = Eigen::VectorXd::Constant(2 * p, qp.lambda) - pt.s - coupling_adjoint(pt.u);
    res.r3 = pt.z.cwiseProduct(pt.s);
    res.r4 = dict.transpose() * pt.x + coupling_apply(pt.z);
    res.mu = complementarity_mu(pt.z, pt.s);
    return res;
}

double duality_gap(const AugmentedQP& qp, const PrimalDualPoint& pt) {
    return augmented_objective(qp, pt.x, pt.z) + 0.5 * pt.x.dot(qp.q_mat * pt.x);
}

}  // namespace anlasso
