#include "anlasso/problem.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace anlasso {

namespace {

void require_dims(const Problem& problem) {
    if (problem.dict.rows() != problem.phi.cols() ||
        problem.y.size() != problem.phi.rows()) {
        throw std::invalid_argument("problem dimensions are inconsistent");
    }
}

// Rank of a matrix by column-pivoted QR with an absolute pivot threshold
// max(rows, cols) * eps * (largest column norm).
Eigen::Index rank_col_piv(const Eigen::MatrixXd& a) {
    if (a.size() == 0) return 0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    const double max_col_norm = a.colwise().norm().maxCoeff();
    const double tau = static_cast<double>(std::max(a.rows(), a.cols())) *
                       std::numeric_limits<double>::epsilon() * max_col_norm;
    const Eigen::Index k = std::min(a.rows(), a.cols());
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < k; ++i) {
        if (std::abs(qr.matrixR()(i, i)) > tau) ++rank;
    }
    return rank;
}

}  // namespace

ValidationReport validate(const Problem& problem) {
    ValidationReport report;
    report.lambda_positive = problem.lambda > 0.0;
    report.dims_consistent = problem.dict.rows() == problem.phi.cols() &&
                             problem.y.size() == problem.phi.rows() &&
                             problem.n() >= 1 && problem.p() >= 1 && problem.q() >= 1;
    if (!report.dims_consistent) {
        report.message = "inconsistent dimensions";
        return report;
    }

    const Eigen::Index n = problem.n();
    Eigen::MatrixXd stacked(problem.q() + problem.p(), n);
    stacked.topRows(problem.q()) = problem.phi;
    stacked.bottomRows(problem.p()) = problem.dict.transpose();
    report.stacked_rank = rank_col_piv(stacked);
    report.injective = report.stacked_rank == n;

    report.pass = report.lambda_positive && report.dims_consistent && report.injective;
    if (!report.lambda_positive) {
        report.message = "regularization weight must be positive";
    } else if (!report.injective) {
        std::ostringstream oss;
        oss << "restricted injectivity violated: rank of the stacked operator is "
            << report.stacked_rank << " < " << n;
        report.message = oss.str();
    }
    return report;
}

double objective(const Problem& problem, const Eigen::VectorXd& x) {
    require_dims(problem);
    if (x.size() != problem.n()) throw std::invalid_argument("x has wrong length");
    const double fit = (problem.y - problem.phi * x).squaredNorm();
    const double reg = (problem.dict.transpose() * x).lpNorm<1>();
    return 0.5 * fit + problem.lambda * reg;
}

AugmentedQP lift(const Problem& problem) {
    require_dims(problem);
    AugmentedQP qp;
    qp.q_mat = problem.phi.transpose() * problem.phi;
    // Gram products can pick up asymmetric rounding; force exact symmetry.
    qp.q_mat = 0.5 * (qp.q_mat + Eigen::MatrixXd(qp.q_mat.transpose()));
    qp.c = problem.phi.transpose() * problem.y;
    qp.lambda = problem.lambda;
    qp.n = problem.n();
    qp.p = problem.p();
    qp.half_norm_y_sq = 0.5 * problem.y.squaredNorm();
    return qp;
}

Eigen::VectorXd split_variable(const Eigen::VectorXd& d_adj_x) {
    const Eigen::Index p = d_adj_x.size();
    Eigen::VectorXd z(2 * p);
    for (Eigen::Index i = 0; i < p; ++i) {
        const double v = d_adj_x[i];
        const double t = std::abs(v);
        z[i] = 0.5 * (t - v);
        z[p + i] = 0.5 * (t + v);
    }
    return z;
}

Eigen::VectorXd coupling_apply(const Eigen::VectorXd& z) {
    const Eigen::Index p = z.size() / 2;
    return z.head(p) - z.tail(p);
}

Eigen::VectorXd coupling_adjoint(const Eigen::VectorXd& u) {
    const Eigen::Index p = u.size();
    Eigen::VectorXd out(2 * p);
    out.head(p) = u;
    out.tail(p) = -u;
    return out;
}

double augmented_objective(const AugmentedQP& qp, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& z) {
    return 0.5 * x.dot(qp.q_mat * x) - qp.c.dot(x) + qp.lambda * z.sum();
}

}  // namespace anlasso
