#pragma once

// Shared instance builders for the test suites.

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "anlasso/problem.hpp"

namespace testutil {

// The 2-variable worked instance: a single duplicated measurement row, an
// identity dictionary, y = 1, lambda = 1/2. Its solution set is the segment
// between (1/2, 0) and (0, 1/2) with analytic center (1/4, 1/4) and optimal
// value 3/8.
inline anlasso::Problem segment_instance() {
    anlasso::Problem problem;
    problem.phi = Eigen::MatrixXd::Ones(1, 2);
    problem.dict = Eigen::MatrixXd::Identity(2, 2);
    problem.y = Eigen::VectorXd::Ones(1);
    problem.lambda = 0.5;
    return problem;
}

// Strictly convex instance with a unique solution (1, -1): identity operator,
// identity dictionary, y = (2, -2), lambda = 1 (componentwise soft threshold).
inline anlasso::Problem soft_threshold_instance() {
    anlasso::Problem problem;
    problem.phi = Eigen::MatrixXd::Identity(2, 2);
    problem.dict = Eigen::MatrixXd::Identity(2, 2);
    problem.y = (Eigen::VectorXd(2) << 2.0, -2.0).finished();
    problem.lambda = 1.0;
    return problem;
}

// Both observations below the threshold: the solution is 0, which lies in the
// kernel of the analysis operator, so the solution set is a singleton.
inline anlasso::Problem kernel_instance() {
    anlasso::Problem problem;
    problem.phi = Eigen::MatrixXd::Identity(2, 2);
    problem.dict = Eigen::MatrixXd::Identity(2, 2);
    problem.y = (Eigen::VectorXd(2) << 0.1, 0.1).finished();
    problem.lambda = 1.0;
    return problem;
}

// Small random instances drawn from fixed-seed standard normals. Every third
// instance duplicates one column of phi so the solution set has a positive
// probability of being a nontrivial polytope (segments or higher faces);
// every third uses a rectangular random dictionary. lambda is a fraction of
// ||phi^T y||_inf, occasionally above it to produce near-kernel solutions.
inline std::vector<anlasso::Problem> random_instances(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto draw_matrix = [&](Eigen::Index rows, Eigen::Index cols) {
        Eigen::MatrixXd m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
        return m;
    };

    const double ratios[4] = {0.3, 0.5, 0.8, 1.1};
    std::vector<anlasso::Problem> instances;
    for (int i = 0; static_cast<int>(instances.size()) < count; ++i) {
        anlasso::Problem problem;
        const Eigen::Index n = 2 + (i % 5);
        const Eigen::Index q = 1 + (i % 4);
        const int family = i % 3;

        problem.phi = draw_matrix(q, n);
        if (family == 2) {
            problem.dict = draw_matrix(n, n + 2);
        } else {
            problem.dict = Eigen::MatrixXd::Identity(n, n);
        }
        problem.y = draw_matrix(q, 1).col(0);
        if (family == 0) {
            // Duplicate the column that correlates most with the data: it is
            // active along most of the regularization path, and a duplicated
            // active column turns the solution set into a segment.
            Eigen::Index strongest = 0;
            (problem.phi.transpose() * problem.y).cwiseAbs().maxCoeff(&strongest);
            std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
            Eigen::Index other = pick(rng);
            if (other == strongest) other = (other + 1) % n;
            problem.phi.col(other) = problem.phi.col(strongest);
        }

        const double corr = (problem.phi.transpose() * problem.y).lpNorm<Eigen::Infinity>();
        problem.lambda = ratios[i % 4] * std::max(corr, 0.05);

        if (anlasso::validate(problem).pass) instances.push_back(problem);
    }
    return instances;
}

}  // namespace testutil
