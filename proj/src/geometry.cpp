#include "anlasso/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace anlasso {

bool SupportPattern::contains(const SupportPattern& other) const {
    return std::includes(indices.begin(), indices.end(), other.indices.begin(),
                         other.indices.end());
}

double default_support_tol(const Eigen::VectorXd& d_adj_x) {
    return 1e-7 * (1.0 + d_adj_x.lpNorm<Eigen::Infinity>());
}

SupportPattern d_support(const Eigen::VectorXd& x, const Eigen::MatrixXd& dict,
                         double tol) {
    const Eigen::VectorXd v = dict.transpose() * x;
    SupportPattern pattern;
    pattern.tol = tol;
    pattern.signs = Eigen::VectorXi::Zero(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > tol) {
            pattern.indices.push_back(i);
            pattern.signs[i] = v[i] > 0.0 ? 1 : -1;
        }
    }
    return pattern;
}

bool sign_consistent(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2,
                     const Eigen::MatrixXd& dict, double tol) {
    const Eigen::VectorXd v1 = dict.transpose() * x1;
    const Eigen::VectorXd v2 = dict.transpose() * x2;
    return (v1.cwiseProduct(v2).array() >= -tol * tol).all();
}

bool same_image(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2,
                const Problem& problem, double tol) {
    const double image_gap = (problem.phi * (x1 - x2)).lpNorm<Eigen::Infinity>();
    const double norm_gap = std::abs((problem.dict.transpose() * x1).lpNorm<1>() -
                                     (problem.dict.transpose() * x2).lpNorm<1>());
    return image_gap <= tol && norm_gap <= tol;
}

OrthantTransform orthant_transform(const Eigen::VectorXd& x_plus,
                                   const Eigen::MatrixXd& dict, double tol) {
    const SupportPattern pattern = d_support(x_plus, dict, tol);
    const Eigen::Index p = dict.cols();
    OrthantTransform transform;
    transform.m = pattern.count();
    transform.lambda_diag = pattern.signs;
    transform.perm.assign(p, 0);
    Eigen::Index on = 0;
    Eigen::Index off = transform.m;
    for (Eigen::Index i = 0; i < p; ++i) {
        transform.perm[i] = pattern.signs[i] != 0 ? on++ : off++;
    }
    return transform;
}

Eigen::VectorXd apply_orthant_transform(const OrthantTransform& transform,
                                        const Eigen::VectorXd& v) {
    Eigen::VectorXd out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out[transform.perm[i]] = transform.lambda_diag[i] * v[i];
    }
    return out;
}

CertificateReport certify_maximal(const Eigen::VectorXd& candidate,
                                  const std::vector<Eigen::VectorXd>& vertices,
                                  const Problem& problem, double tol) {
    CertificateReport report;
    if (vertices.empty()) {
        report.message = "no vertices supplied";
        return report;
    }

    // All inputs must be optimal points of the same problem; a spread in
    // objective values means the certificate question is ill-posed.
    double h_min = objective(problem, candidate);
    double h_max = h_min;
    for (const auto& v : vertices) {
        const double h = objective(problem, v);
        h_min = std::min(h_min, h);
        h_max = std::max(h_max, h);
    }
    report.objective_spread = h_max - h_min;
    report.input_valid = report.objective_spread <= tol * (1.0 + std::abs(h_min));
    if (!report.input_valid) {
        std::ostringstream oss;
        oss << "inputs are not jointly optimal: objective spread " << report.objective_spread;
        report.message = oss.str();
    }

    // One absolute tolerance across all geometric checks, scaled by the
    // largest analysis image among the inputs.
    double scale = (problem.dict.transpose() * candidate).lpNorm<Eigen::Infinity>();
    for (const auto& v : vertices) {
        scale = std::max(scale, (problem.dict.transpose() * v).lpNorm<Eigen::Infinity>());
    }
    const double tol_abs = tol * (1.0 + scale);

    const SupportPattern candidate_support = d_support(candidate, problem.dict, tol_abs);
    report.support_inclusion = true;
    for (const auto& v : vertices) {
        if (!candidate_support.contains(d_support(v, problem.dict, tol_abs))) {
            report.support_inclusion = false;
            break;
        }
    }

    std::vector<const Eigen::VectorXd*> points;
    points.push_back(&candidate);
    for (const auto& v : vertices) points.push_back(&v);
    report.sign_consistency = true;
    report.same_image = true;
    for (size_t a = 0; a < points.size() && (report.sign_consistency || report.same_image); ++a) {
        for (size_t b = a + 1; b < points.size(); ++b) {
            if (!sign_consistent(*points[a], *points[b], problem.dict, tol_abs))
                report.sign_consistency = false;
            if (!same_image(*points[a], *points[b], problem, tol_abs))
                report.same_image = false;
        }
    }

    const OrthantTransform gamma = orthant_transform(candidate, problem.dict, tol_abs);
    report.orthant = true;
    for (const auto& v : vertices) {
        const Eigen::VectorXd image =
            apply_orthant_transform(gamma, problem.dict.transpose() * v);
        if (gamma.m > 0 && image.head(gamma.m).minCoeff() < -tol_abs) {
            report.orthant = false;
            break;
        }
        if (gamma.m < image.size() &&
            image.tail(image.size() - gamma.m).lpNorm<Eigen::Infinity>() > tol_abs) {
            report.orthant = false;
            break;
        }
    }

    report.pass = report.input_valid && report.support_inclusion &&
                  report.sign_consistency && report.same_image && report.orthant;
    return report;
}

bool kernel_singleton_check(const Eigen::VectorXd& x, const Problem& problem,
                            double tol) {
    return (problem.dict.transpose() * x).lpNorm<Eigen::Infinity>() <= tol;
}

}  // namespace anlasso
