#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "anlasso/geometry.hpp"
#include "anlasso/ipm.hpp"
#include "anlasso/oracle.hpp"
#include "test_instances.hpp"

using namespace anlasso;

namespace {

PrimalDualPoint segment_start_07() {
    const Problem problem = testutil::segment_instance();
    const AugmentedQP qp = lift(problem);
    return make_starting_point(qp, problem.dict,
                               (Eigen::VectorXd(2) << 0.7, 0.0).finished());
}

}  // namespace

TEST_CASE("zero rhs gives the zero direction") {
    const Problem problem = testutil::segment_instance();
    const AugmentedQP qp = lift(problem);
    const PrimalDualPoint pt = segment_start_07();
    NewtonRhs rhs{Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(4),
                  Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(2)};
    const Direction dir = newton_solve(qp, problem.dict, pt, rhs);
    CHECK(dir.dx.lpNorm<Eigen::Infinity>() <= 1e-14);
    CHECK(dir.dz.lpNorm<Eigen::Infinity>() <= 1e-14);
    CHECK(dir.du.lpNorm<Eigen::Infinity>() <= 1e-14);
    CHECK(dir.ds.lpNorm<Eigen::Infinity>() <= 1e-14);
}

TEST_CASE("newton solve recovers a planted direction") {
    // Scalar problem with q_mat = (2), dict = (1), z = s = ones. The rhs is
    // back-substituted from a chosen direction, so the solver must return it.
    AugmentedQP qp;
    qp.q_mat = Eigen::MatrixXd::Constant(1, 1, 2.0);
    qp.c = Eigen::VectorXd::Zero(1);
    qp.lambda = 1.0;
    qp.n = 1;
    qp.p = 1;
    const Eigen::MatrixXd dict = Eigen::MatrixXd::Identity(1, 1);

    PrimalDualPoint pt;
    pt.x = Eigen::VectorXd::Zero(1);
    pt.z = Eigen::VectorXd::Ones(2);
    pt.u = Eigen::VectorXd::Zero(1);
    pt.s = Eigen::VectorXd::Ones(2);

    Direction want;
    want.dx = Eigen::VectorXd::Constant(1, 1.0);
    want.du = Eigen::VectorXd::Zero(1);
    want.ds = (Eigen::VectorXd(2) << 0.25, -0.5).finished();
    want.dz = (Eigen::VectorXd(2) << -1.0, 0.75).finished();

    NewtonRhs rhs;
    rhs.r1 = -(qp.q_mat * want.dx - dict * want.du);
    rhs.r2 = want.ds + coupling_adjoint(want.du);
    rhs.r3 = -(pt.s.cwiseProduct(want.dz) + pt.z.cwiseProduct(want.ds));
    rhs.r4 = -(dict.transpose() * want.dx + coupling_apply(want.dz));

    const Direction got = newton_solve(qp, dict, pt, rhs);
    CHECK((got.dx - want.dx).lpNorm<Eigen::Infinity>() <= 1e-10);
    CHECK((got.du - want.du).lpNorm<Eigen::Infinity>() <= 1e-10);
    CHECK((got.dz - want.dz).lpNorm<Eigen::Infinity>() <= 1e-10);
    CHECK((got.ds - want.ds).lpNorm<Eigen::Infinity>() <= 1e-10);
    CHECK(newton_residual(qp, dict, pt, rhs, got) <= 1e-10);
}

TEST_CASE("affine direction satisfies the block equations at the first iterate") {
    const Problem problem = testutil::segment_instance();
    const AugmentedQP qp = lift(problem);
    const PrimalDualPoint pt = segment_start_07();
    const Residuals res = residuals(qp, problem.dict, pt);
    const NewtonRhs rhs{res.r1, res.r2, res.r3, res.r4};
    const Direction dir = newton_solve(qp, problem.dict, pt, rhs);
    CHECK(newton_residual(qp, problem.dict, pt, rhs, dir) <= 1e-8);
}

TEST_CASE("ratio test over both slack blocks") {
    PrimalDualPoint pt;
    pt.z = (Eigen::VectorXd(2) << 1.0, 1.0).finished();
    pt.s = Eigen::VectorXd::Ones(1);
    Direction dir;
    dir.dz = (Eigen::VectorXd(2) << -2.0, 1.0).finished();
    dir.ds = Eigen::VectorXd::Zero(1);
    CHECK(max_step(pt, dir) == doctest::Approx(0.5));

    dir.dz = (Eigen::VectorXd(2) << 0.0, 1.0).finished();
    CHECK(std::isinf(max_step(pt, dir)));

    pt.z = (Eigen::VectorXd(2) << 2.0, 4.0).finished();
    pt.s = Eigen::VectorXd::Constant(1, 3.0);
    dir.dz = (Eigen::VectorXd(2) << -1.0, -8.0).finished();
    dir.ds = Eigen::VectorXd::Constant(1, -3.0);
    CHECK(max_step(pt, dir) == doctest::Approx(0.5));
}

TEST_CASE("centering weight") {
    CHECK(centering_sigma(1e-2, 1e-3) == doctest::Approx(1e-3));
    CHECK(centering_sigma(0.7, 0.7) == doctest::Approx(1.0));
    CHECK(centering_sigma(0.3, 0.0) == 0.0);
    CHECK(centering_sigma(0.0, 0.0) == 0.0);
    // poor affine steps do not overweight the centering term
    CHECK(centering_sigma(1.0, 2.0) == 1.0);
}

TEST_CASE("complementarity along a trial step") {
    PrimalDualPoint pt;
    pt.z = Eigen::VectorXd::Ones(2);
    pt.s = Eigen::VectorXd::Ones(2);
    Direction zero;
    zero.dz = Eigen::VectorXd::Zero(2);
    zero.ds = Eigen::VectorXd::Zero(2);
    CHECK(affine_mu(pt, zero, 0.8) == doctest::Approx(1.0));

    Direction down;
    down.dz = -Eigen::VectorXd::Ones(2);
    down.ds = -Eigen::VectorXd::Ones(2);
    CHECK(affine_mu(pt, down, 1.0) == doctest::Approx(0.0));

    // affine step never increases the averaged product on the worked instance
    const Problem problem = testutil::segment_instance();
    const AugmentedQP qp = lift(problem);
    const PrimalDualPoint start = segment_start_07();
    const Residuals res = residuals(qp, problem.dict, start);
    const Direction aff =
        newton_solve(qp, problem.dict, start, {res.r1, res.r2, res.r3, res.r4});
    double t = max_step(start, aff);
    if (std::isinf(t)) t = 1.0;
    CHECK(affine_mu(start, aff, t) <= res.mu + 1e-12);
}

TEST_CASE("corrector right-hand sides") {
    Direction aff;
    aff.dx = Eigen::VectorXd::Zero(2);
    aff.du = Eigen::VectorXd::Zero(1);
    aff.dz = (Eigen::VectorXd(2) << 1.0, -1.0).finished();
    aff.ds = (Eigen::VectorXd(2) << 2.0, 2.0).finished();

    NewtonRhs rhs = corrector_rhs(aff, 0.0, 0.5);
    CHECK(rhs.r1.isZero(0.0));
    CHECK(rhs.r2.isZero(0.0));
    CHECK(rhs.r4.isZero(0.0));
    CHECK(rhs.r3.isApprox((Eigen::VectorXd(2) << -2.0, 2.0).finished()));

    aff.dz.setZero();
    aff.ds.setZero();
    rhs = corrector_rhs(aff, 1.0, 0.5);
    CHECK(rhs.r3.isApprox(Eigen::VectorXd::Constant(2, 0.5)));

    Direction null;
    null.dx = Eigen::VectorXd::Zero(2);
    null.du = Eigen::VectorXd::Zero(1);
    null.dz = Eigen::VectorXd::Zero(2);
    null.ds = Eigen::VectorXd::Zero(2);
    rhs = corrector_rhs(null, 0.3, 0.0);
    CHECK(rhs.r3.isZero(0.0));
}

TEST_CASE("segment instance converges to the analytic center from both starts") {
    const Problem problem = testutil::segment_instance();
    const AugmentedQP qp = lift(problem);
    const Eigen::VectorXd center = (Eigen::VectorXd(2) << 0.25, 0.25).finished();

    const SolveResult from_07 = solve(
        problem, {}, make_starting_point(qp, problem.dict,
                                         (Eigen::VectorXd(2) << 0.7, 0.0).finished()));
    CHECK(from_07.trace.status == SolveStatus::converged);
    CHECK((from_07.point.x - center).lpNorm<Eigen::Infinity>() <= 1e-6);

    const SolveResult from_ls = solve(
        problem, {},
        make_starting_point(qp, problem.dict, least_squares_x(problem)));
    CHECK(from_ls.trace.status == SolveStatus::converged);
    CHECK((from_ls.point.x - center).lpNorm<Eigen::Infinity>() <= 1e-6);
}

TEST_CASE("strictly convex instance matches the closed form") {
    const SolveResult result = solve(testutil::soft_threshold_instance());
    CHECK(result.trace.status == SolveStatus::converged);
    const Eigen::VectorXd expected = (Eigen::VectorXd(2) << 1.0, -1.0).finished();
    CHECK((result.point.x - expected).lpNorm<Eigen::Infinity>() <= 1e-6);
}

TEST_CASE("iterates stay interior and directions stay accurate") {
    for (const Problem& problem : testutil::random_instances(10, 31)) {
        const SolveResult result = solve(problem);
        REQUIRE(result.trace.status == SolveStatus::converged);
        for (const IterationRecord& rec : result.trace.records) {
            CHECK(rec.z.minCoeff() > 0.0);
            CHECK(rec.s.minCoeff() > 0.0);
            CHECK(rec.dir_residual <= 1e-8);
        }
    }
}

TEST_CASE("converged status implies the stopping bounds") {
    const SolverConfig config;
    for (const Problem& problem : testutil::random_instances(10, 77)) {
        const SolveResult result = solve(problem, config);
        REQUIRE(result.trace.status == SolveStatus::converged);
        const IterationRecord& last = result.trace.records.back();
        CHECK(std::max({last.r1_norm, last.r2_norm, last.r3_norm, last.r4_norm}) <=
              config.eps);
        CHECK(last.mu <= config.eps);
    }
}

TEST_CASE("solver value never exceeds the oracle value") {
    for (const Problem& problem : testutil::random_instances(8, 55)) {
        const SolveResult result = solve(problem);
        REQUIRE(result.trace.status == SolveStatus::converged);
        const auto [optimal, witness] = optimal_value_by_sign_enumeration(problem);
        CHECK(objective(problem, result.point.x) <=
              optimal + 1e-6 * (1.0 + std::abs(optimal)));
    }
}

TEST_CASE("solver support contains every vertex support") {
    for (const Problem& problem : testutil::random_instances(8, 56)) {
        const SolveResult result = solve(problem);
        REQUIRE(result.trace.status == SolveStatus::converged);
        const OracleResult oracle = run_oracle(problem);
        const double tol =
            default_support_tol(problem.dict.transpose() * result.point.x);
        const SupportPattern solver_support =
            d_support(result.point.x, problem.dict, tol);
        for (const auto& vertex : oracle.vertices) {
            CHECK(solver_support.contains(d_support(vertex, problem.dict, tol)));
        }
    }
}

TEST_CASE("weak tolerance converges in fewer iterations") {
    const Problem problem = testutil::segment_instance();
    SolverConfig tight;
    SolverConfig loose;
    loose.eps = 1e-2;
    const SolveResult a = solve(problem, tight);
    const SolveResult b = solve(problem, loose);
    REQUIRE(a.trace.status == SolveStatus::converged);
    REQUIRE(b.trace.status == SolveStatus::converged);
    CHECK(b.trace.iterations() < a.trace.iterations());
    const IterationRecord& last = b.trace.records.back();
    CHECK(std::max({last.r1_norm, last.r2_norm, last.r3_norm, last.r4_norm}) <= 1e-2);
}

TEST_CASE("solver refuses invalid problems and bad starts") {
    Problem bad;
    bad.phi = Eigen::MatrixXd::Zero(1, 2);
    bad.dict = (Eigen::MatrixXd(2, 1) << 1.0, -1.0).finished();
    bad.y = Eigen::VectorXd::Zero(1);
    bad.lambda = 1.0;
    CHECK_THROWS_AS(solve(bad), std::invalid_argument);

    const Problem problem = testutil::segment_instance();
    const AugmentedQP qp = lift(problem);
    PrimalDualPoint start = make_starting_point(qp, problem.dict);
    start.z[0] = 0.0;
    CHECK_THROWS_AS(solve(problem, {}, start), std::invalid_argument);
}

TEST_CASE("iteration cap reports max-iters with the best iterate") {
    SolverConfig config;
    config.max_iters = 1;
    const SolveResult result = solve(testutil::segment_instance(), config);
    CHECK(result.trace.status == SolveStatus::max_iters);
    CHECK(result.trace.iterations() == 1);
    CHECK(result.point.x.allFinite());
}
