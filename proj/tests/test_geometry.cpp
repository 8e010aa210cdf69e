#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "anlasso/geometry.hpp"
#include "anlasso/oracle.hpp"
#include "test_instances.hpp"

using namespace anlasso;

TEST_CASE("support extraction") {
    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(2, 2);

    const SupportPattern boundary =
        d_support((Eigen::VectorXd(2) << 0.5, 0.0).finished(), identity, 1e-9);
    CHECK(boundary.indices == std::vector<Eigen::Index>{0});
    CHECK(boundary.signs[0] == 1);
    CHECK(boundary.signs[1] == 0);

    const SupportPattern center =
        d_support((Eigen::VectorXd(2) << 0.25, 0.25).finished(), identity, 1e-9);
    CHECK(center.indices == std::vector<Eigen::Index>{0, 1});
    CHECK(center.signs[0] == 1);
    CHECK(center.signs[1] == 1);

    CHECK(d_support(Eigen::VectorXd::Zero(2), identity, 1e-9).indices.empty());
}

TEST_CASE("sign consistency") {
    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(2, 2);
    const Eigen::VectorXd a = (Eigen::VectorXd(2) << 0.5, 0.0).finished();
    const Eigen::VectorXd b = (Eigen::VectorXd(2) << 0.0, 0.5).finished();
    CHECK(sign_consistent(a, b, identity, 1e-7));
    CHECK(sign_consistent(a, a, identity, 0.0));
    CHECK_FALSE(sign_consistent((Eigen::VectorXd(2) << 1.0, 1.0).finished(),
                                (Eigen::VectorXd(2) << 1.0, -1.0).finished(), identity,
                                1e-7));
}

TEST_CASE("shared image and analysis norm") {
    const Problem problem = testutil::segment_instance();
    const Eigen::VectorXd a = (Eigen::VectorXd(2) << 0.5, 0.0).finished();
    const Eigen::VectorXd b = (Eigen::VectorXd(2) << 0.0, 0.5).finished();
    CHECK(same_image(a, b, problem, 1e-10));
    CHECK(same_image(a, a, problem, 0.0));
    CHECK_FALSE(same_image(a, (Eigen::VectorXd(2) << 1.0, 0.0).finished(), problem,
                           1e-10));
}

TEST_CASE("orthant transform construction") {
    const Eigen::MatrixXd id2 = Eigen::MatrixXd::Identity(2, 2);
    const OrthantTransform t1 =
        orthant_transform((Eigen::VectorXd(2) << 0.25, 0.25).finished(), id2, 1e-9);
    CHECK(t1.m == 2);
    CHECK(t1.perm == std::vector<Eigen::Index>{0, 1});
    CHECK(t1.lambda_diag[0] == 1);
    CHECK(t1.lambda_diag[1] == 1);

    // analysis image (-3, 0, 2): support {0, 2} mapped to the leading block
    const Eigen::MatrixXd id3 = Eigen::MatrixXd::Identity(3, 3);
    const Eigen::VectorXd x = (Eigen::VectorXd(3) << -3.0, 0.0, 2.0).finished();
    const OrthantTransform t2 = orthant_transform(x, id3, 1e-9);
    CHECK(t2.m == 2);
    CHECK(t2.perm == std::vector<Eigen::Index>{0, 2, 1});
    CHECK(t2.lambda_diag[0] == -1);
    CHECK(t2.lambda_diag[1] == 0);
    CHECK(t2.lambda_diag[2] == 1);
    const Eigen::VectorXd image = apply_orthant_transform(t2, x);
    CHECK(image.isApprox((Eigen::VectorXd(3) << 3.0, 2.0, 0.0).finished()));

    const OrthantTransform t3 = orthant_transform(Eigen::VectorXd::Zero(3), id3, 1e-9);
    CHECK(t3.m == 0);
    CHECK(apply_orthant_transform(t3, x).isZero(0.0));
}

TEST_CASE("orthant transform preserves the l1 norm") {
    std::mt19937 rng(41);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index p = 2 + trial % 5;
        const Eigen::MatrixXd dict =
            Eigen::MatrixXd::NullaryExpr(p, p, [&]() { return normal(rng); });
        const Eigen::VectorXd anchor =
            Eigen::VectorXd::NullaryExpr(p, [&]() { return normal(rng); });
        const OrthantTransform gamma = orthant_transform(anchor, dict, 1e-9);
        const Eigen::VectorXd v =
            Eigen::VectorXd::NullaryExpr(p, [&]() { return normal(rng); });
        // the transform only permutes and flips coordinates on the support;
        // off-support coordinates it kills, so compare against the masked norm
        Eigen::VectorXd masked = v;
        for (Eigen::Index i = 0; i < p; ++i) {
            if (gamma.lambda_diag[i] == 0) masked[i] = 0.0;
        }
        CHECK(apply_orthant_transform(gamma, v).lpNorm<1>() ==
              doctest::Approx(masked.lpNorm<1>()).epsilon(1e-14));
    }
}

TEST_CASE("certificate on the segment instance") {
    const Problem problem = testutil::segment_instance();
    const std::vector<Eigen::VectorXd> vertices = {
        (Eigen::VectorXd(2) << 0.5, 0.0).finished(),
        (Eigen::VectorXd(2) << 0.0, 0.5).finished()};

    const CertificateReport at_center = certify_maximal(
        (Eigen::VectorXd(2) << 0.25, 0.25).finished(), vertices, problem, 1e-7);
    CHECK(at_center.input_valid);
    CHECK(at_center.support_inclusion);
    CHECK(at_center.sign_consistency);
    CHECK(at_center.same_image);
    CHECK(at_center.orthant);
    CHECK(at_center.pass);

    // a boundary point is optimal but misses one support index
    const CertificateReport at_vertex =
        certify_maximal(vertices[0], vertices, problem, 1e-7);
    CHECK(at_vertex.input_valid);
    CHECK_FALSE(at_vertex.support_inclusion);
    CHECK_FALSE(at_vertex.pass);

    // a non-optimal candidate is an input error, not a certificate failure
    const CertificateReport off_face = certify_maximal(
        (Eigen::VectorXd(2) << 1.0, 0.0).finished(), vertices, problem, 1e-7);
    CHECK_FALSE(off_face.input_valid);
    CHECK_FALSE(off_face.pass);
    CHECK(!off_face.message.empty());
}

TEST_CASE("singleton solution certifies vacuously") {
    const Problem problem = testutil::soft_threshold_instance();
    const Eigen::VectorXd x = (Eigen::VectorXd(2) << 1.0, -1.0).finished();
    const CertificateReport report = certify_maximal(x, {x}, problem, 1e-7);
    CHECK(report.pass);
}

TEST_CASE("kernel membership check") {
    const Problem problem = testutil::kernel_instance();
    CHECK(kernel_singleton_check(Eigen::VectorXd::Zero(2), problem, 1e-9));
    CHECK_FALSE(kernel_singleton_check((Eigen::VectorXd(2) << 0.25, 0.25).finished(),
                                       testutil::segment_instance(), 1e-9));
    CHECK_FALSE(kernel_singleton_check((Eigen::VectorXd(2) << 5.0, -3.0).finished(),
                                       testutil::segment_instance(), 1e-9));
}

TEST_CASE("optimal points share signs and images") {
    for (const Problem& problem : testutil::random_instances(10, 63)) {
        const OracleResult oracle = run_oracle(problem);
        for (size_t a = 0; a < oracle.vertices.size(); ++a) {
            for (size_t b = a + 1; b < oracle.vertices.size(); ++b) {
                CHECK(sign_consistent(oracle.vertices[a], oracle.vertices[b],
                                      problem.dict, 1e-7));
                CHECK(same_image(oracle.vertices[a], oracle.vertices[b], problem, 1e-7));
            }
        }
    }
}

TEST_CASE("midpoint support is the union of supports") {
    for (const Problem& problem : testutil::random_instances(10, 64)) {
        const OracleResult oracle = run_oracle(problem);
        if (oracle.vertices.size() < 2) continue;
        for (size_t a = 0; a < oracle.vertices.size(); ++a) {
            for (size_t b = a + 1; b < oracle.vertices.size(); ++b) {
                const Eigen::VectorXd mid =
                    0.5 * (oracle.vertices[a] + oracle.vertices[b]);
                const double tol = default_support_tol(problem.dict.transpose() * mid);
                const SupportPattern sm = d_support(mid, problem.dict, tol);
                const SupportPattern sa = d_support(oracle.vertices[a], problem.dict, tol);
                const SupportPattern sb = d_support(oracle.vertices[b], problem.dict, tol);
                std::vector<Eigen::Index> unioned;
                std::set_union(sa.indices.begin(), sa.indices.end(), sb.indices.begin(),
                               sb.indices.end(), std::back_inserter(unioned));
                CHECK(sm.indices == unioned);
            }
        }
    }
}

TEST_CASE("vertex averages always certify") {
    for (const Problem& problem : testutil::random_instances(12, 65)) {
        const OracleResult oracle = run_oracle(problem);
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(problem.n());
        for (const auto& v : oracle.vertices) mean += v;
        mean /= static_cast<double>(oracle.vertices.size());
        const CertificateReport report =
            certify_maximal(mean, oracle.vertices, problem, 1e-7);
        CHECK(report.pass);
    }
}
