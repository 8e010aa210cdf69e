#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "anlasso/problem.hpp"

namespace anlasso {

/// Size caps for the brute-force routines; they enumerate 3^p sign patterns
/// and subset systems, so they refuse anything beyond desk scale.
struct OracleLimits {
    Eigen::Index p_max = 10;
    Eigen::Index n_max = 8;
};

struct OracleLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ground truth for one instance: exact optimal value (in the units of the
/// original objective), the extremal points of the solution polytope sorted
/// lexicographically, one optimal witness, and the analytic center of the
/// optimal face.
struct OracleResult {
    double optimal_value = 0.0;
    std::vector<Eigen::VectorXd> vertices;
    Eigen::VectorXd witness;
    Eigen::VectorXd analytic_center;
};

/// Enumerates every sign pattern of dict^T x in {-1,0,+1}^p. For each pattern
/// it solves the stationarity system restricted to the pattern's zero set,
/// with free subgradient values on that set, and accepts the pattern when the
/// system is consistent, the free subgradients lie in [-1,1], and the signs
/// match (all at 1e-9 slack). Returns the minimum objective over accepted
/// patterns with one witness. Independent of the interior-point code path.
std::pair<double, Eigen::VectorXd> optimal_value_by_sign_enumeration(
    const Problem& problem, const OracleLimits& limits = {});

/// Vertex enumeration of the solution polytope
///   { x : phi x = phi witness, ||dict^T x||_1 = ||dict^T witness||_1 }.
/// The polytope is written with the optimal sign pattern of dict^T; pattern
/// entries that are zero at the witness are handled by enumerating both sign
/// closures. Vertices come from full-rank subsets of active constraints,
/// filtered for feasibility (1e-9 slack) and optimality, deduplicated at 1e-7
/// and sorted lexicographically. Throws std::invalid_argument if the witness
/// is not optimal.
std::vector<Eigen::VectorXd> enumerate_vertices(
    const Problem& problem, const Eigen::VectorXd& witness,
    const OracleLimits& limits = {},
    std::optional<double> known_optimal_value = {});

/// Maximizer of sum of log z_i over the optimal face, where z is the signed
/// split of dict^T x and i ranges over the union support of the vertices'
/// split variables. The face is parameterized as convex combinations of the
/// vertices; k = 2 is solved by golden-section to 1e-10, larger k by projected
/// gradient ascent on the simplex. Returns the single vertex when k = 1.
Eigen::VectorXd analytic_center_bruteforce(
    const Problem& problem, const std::vector<Eigen::VectorXd>& vertices);

/// Full pipeline: optimal value + witness, vertex enumeration, analytic center.
OracleResult run_oracle(const Problem& problem, const OracleLimits& limits = {});

}  // namespace anlasso
