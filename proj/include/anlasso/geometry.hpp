#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "anlasso/problem.hpp"

namespace anlasso {

/// Support of dict^T x under a tolerance: 0-based indices with
/// |(dict^T x)_i| > tol, and the full sign vector in {-1,0,+1}^p
/// (signs_i != 0 exactly for the listed indices).
struct SupportPattern {
    std::vector<Eigen::Index> indices;
    Eigen::VectorXi signs;
    double tol = 0.0;

    Eigen::Index count() const { return static_cast<Eigen::Index>(indices.size()); }
    bool contains(const SupportPattern& other) const;
};

/// Scale-aware default extraction tolerance, 1e-7 * (1 + ||dict^T x||_inf).
double default_support_tol(const Eigen::VectorXd& d_adj_x);

SupportPattern d_support(const Eigen::VectorXd& x, const Eigen::MatrixXd& dict,
                         double tol);

/// True iff (dict^T x1)_i (dict^T x2)_i >= -tol^2 for every i.
bool sign_consistent(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2,
                     const Eigen::MatrixXd& dict, double tol);

/// True iff phi x1 == phi x2 and ||dict^T x1||_1 == ||dict^T x2||_1, both
/// within tol.
bool same_image(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2,
                const Problem& problem, double tol);

/// Signed permutation built from a maximal-support candidate: perm sends the
/// support of dict^T x_plus to positions {0..m-1} (ascending original index)
/// and the complement to {m..p-1}; lambda_diag holds sign((dict^T x_plus)_i)
/// in ORIGINAL index order, zero off the support. Applying the transform maps
/// the analysis image of every solution into the nonnegative orthant of the
/// first m coordinates and preserves the l1 norm of any vector.
struct OrthantTransform {
    std::vector<Eigen::Index> perm;  // perm[original index] = new position
    Eigen::VectorXi lambda_diag;
    Eigen::Index m = 0;
};

OrthantTransform orthant_transform(const Eigen::VectorXd& x_plus,
                                   const Eigen::MatrixXd& dict, double tol);

/// (Gamma v)_{perm[i]} = lambda_diag[i] * v_i.
Eigen::VectorXd apply_orthant_transform(const OrthantTransform& transform,
                                        const Eigen::VectorXd& v);

/// Geometric evidence that `candidate` has maximal analysis support among the
/// given optimal points. pass requires input_valid plus all four checks.
struct CertificateReport {
    bool input_valid = false;
    bool support_inclusion = false;
    bool sign_consistency = false;
    bool same_image = false;
    bool orthant = false;
    bool pass = false;
    double objective_spread = 0.0;
    std::string message;
};

/// Checks, for every vertex v:
///  (a) supp(dict^T v) subset of supp(dict^T candidate),
///  (b) pairwise sign consistency over {candidate} + vertices,
///  (c) pairwise same_image over {candidate} + vertices,
///  (d) the candidate's orthant transform maps dict^T v into
///      (R_+)^m x {0}^{p-m} up to tolerance.
/// Inputs whose objectives disagree beyond tolerance are reported as invalid
/// input rather than as a failed certificate.
CertificateReport certify_maximal(const Eigen::VectorXd& candidate,
                                  const std::vector<Eigen::VectorXd>& vertices,
                                  const Problem& problem, double tol);

/// True iff ||dict^T x||_inf <= tol; such a solution forces the whole solution
/// set to be the singleton {x}.
bool kernel_singleton_check(const Eigen::VectorXd& x, const Problem& problem,
                            double tol);

}  // namespace anlasso
