#include "anlasso/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace anlasso {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

bool direction_finite(const Direction& d) {
    return all_finite(d.dx) && all_finite(d.dz) && all_finite(d.du) && all_finite(d.ds);
}

double ratio_test(const Eigen::VectorXd& v, const Eigen::VectorXd& dv, double t) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (dv[i] < 0.0) t = std::min(t, -v[i] / dv[i]);
    }
    return t;
}

Direction add(const Direction& a, const Direction& b) {
    return {a.dx + b.dx, a.dz + b.dz, a.du + b.du, a.ds + b.ds};
}

double rhs_scale(const NewtonRhs& rhs) {
    return 1.0 + std::max({rhs.r1.lpNorm<Eigen::Infinity>(), rhs.r2.lpNorm<Eigen::Infinity>(),
                           rhs.r3.lpNorm<Eigen::Infinity>(), rhs.r4.lpNorm<Eigen::Infinity>()});
}

NewtonRhs negated(const NewtonRhs& rhs) {
    return {-rhs.r1, -rhs.r2, -rhs.r3, -rhs.r4};
}

NewtonRhs from_residuals(const Residuals& res) {
    return {res.r1, res.r2, res.r3, res.r4};
}

IterationRecord record_of(int iter, const PrimalDualPoint& pt, const Residuals& res,
                          double step, double sigma, double dir_residual) {
    IterationRecord rec;
    rec.iter = iter;
    rec.x = pt.x;
    rec.z = pt.z;
    rec.u = pt.u;
    rec.s = pt.s;
    rec.mu = res.mu;
    rec.r1_norm = res.r1.norm();
    rec.r2_norm = res.r2.norm();
    rec.r3_norm = res.r3.norm();
    rec.r4_norm = res.r4.norm();
    rec.step = step;
    rec.sigma = sigma;
    rec.dir_residual = dir_residual;
    return rec;
}


// Pure centering at frozen mu: Newton steps toward the central-path point
// with all pairwise products equal to mu_target, keeping the other residual
// blocks shrinking. The main loop stops wherever the last aggressive step
// left it on the optimal face; these steps move the iterate tangentially to
// the analytic center of the mu_target level set, which is within O(mu) of
// the center of the optimal face. A step is accepted only while the stopping
// bounds keep holding, so the converged contract is unaffected.
int center_at_frozen_mu(const AugmentedQP& qp, const Eigen::MatrixXd& dict,
                        const SolverConfig& config, PrimalDualPoint& pt,
                        Residuals& res, SolveTrace& trace, int iter) {
    const double mu_target = res.mu;
    const Eigen::VectorXd target =
        Eigen::VectorXd::Constant(pt.z.size(), mu_target);
    for (int round = 0; round < 60; ++round) {
        const Eigen::VectorXd products = pt.z.cwiseProduct(pt.s);
        if (products.maxCoeff() <= 1.01 * products.minCoeff()) break;

        Direction dir;
        NewtonRhs rhs{res.r1, res.r2, res.r3 - target, res.r4};
        double dir_residual = 0.0;
        try {
            dir = newton_solve(qp, dict, pt, rhs, config.reg);
            dir_residual = newton_residual(qp, dict, pt, rhs, dir);
        } catch (const NumericalFailure&) {
            break;
        }

        const double step = std::min(config.eta * max_step(pt, dir), config.t_cap);
        PrimalDualPoint trial = pt;
        trial.x += step * dir.dx;
        trial.z += step * dir.dz;
        trial.u += step * dir.du;
        trial.s += step * dir.ds;
        if (trial.z.minCoeff() <= 0.0 || trial.s.minCoeff() <= 0.0 ||
            !all_finite(trial.x))
            break;
        const Residuals trial_res = residuals(qp, dict, trial);
        if (trial_res.max_norm() > config.eps || trial_res.mu > config.eps) break;

        pt = trial;
        res = trial_res;
        ++iter;
        trace.records.push_back(record_of(iter, pt, res, step, 1.0, dir_residual));
    }
    return iter;
}

}  // namespace

std::string to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iters: return "max-iters";
        case SolveStatus::numerical_failure: return "numerical-failure";
    }
    return "unknown";
}

Direction newton_solve(const AugmentedQP& qp, const Eigen::MatrixXd& dict,
                       const PrimalDualPoint& pt, const NewtonRhs& rhs, double reg) {
    const Eigen::Index n = qp.n;
    const Eigen::Index p = qp.p;
    if (pt.z.minCoeff() <= 0.0 || pt.s.minCoeff() <= 0.0)
        throw std::invalid_argument("newton_solve requires a strictly interior point");

    // diag of the (2,2) block after elimination: z1/s1 + z2/s2 per pair.
    const Eigen::VectorXd zs = pt.z.cwiseQuotient(pt.s);
    const Eigen::VectorXd w = zs.head(p) + zs.tail(p);

    // v = S^{-1}(r3 + Z r2)
    const Eigen::VectorXd v =
        (rhs.r3 + pt.z.cwiseProduct(rhs.r2)).cwiseQuotient(pt.s);

    Eigen::VectorXd full_rhs(n + p);
    full_rhs.head(n) = -rhs.r1;
    full_rhs.tail(p) = -rhs.r4 + coupling_apply(v);

    Eigen::MatrixXd m(n + p, n + p);
    m.topLeftCorner(n, n) = qp.q_mat;
    m.topRightCorner(n, p) = -dict;
    m.bottomLeftCorner(p, n) = dict.transpose();
    m.bottomRightCorner(p, p) = w.asDiagonal();

    const double scale = 1.0 + full_rhs.lpNorm<Eigen::Infinity>();
    Eigen::VectorXd sol;
    bool ok = false;
    for (double delta : {0.0, reg, 1e-8}) {
        Eigen::MatrixXd m_try = m;
        if (delta > 0.0) m_try.diagonal().array() += delta;
        sol = m_try.partialPivLu().solve(full_rhs);
        if (sol.allFinite() &&
            (m_try * sol - full_rhs).lpNorm<Eigen::Infinity>() <= 1e-8 * scale) {
            ok = true;
            break;
        }
    }
    if (!ok) throw NumericalFailure("reduced Newton system is singular");

    Direction dir;
    dir.dx = sol.head(n);
    dir.du = sol.tail(p);
    dir.ds = rhs.r2 - coupling_adjoint(dir.du);
    dir.dz = (-rhs.r3 - pt.z.cwiseProduct(dir.ds)).cwiseQuotient(pt.s);
    if (!direction_finite(dir)) throw NumericalFailure("non-finite Newton direction");
    return dir;
}

double newton_residual(const AugmentedQP& qp, const Eigen::MatrixXd& dict,
                       const PrimalDualPoint& pt, const NewtonRhs& rhs,
                       const Direction& dir) {
    const Eigen::VectorXd e1 = qp.q_mat * dir.dx - dict * dir.du + rhs.r1;
    const Eigen::VectorXd e2 = -dir.ds - coupling_adjoint(dir.du) + rhs.r2;
    const Eigen::VectorXd e3 =
        pt.s.cwiseProduct(dir.dz) + pt.z.cwiseProduct(dir.ds) + rhs.r3;
    const Eigen::VectorXd e4 = dict.transpose() * dir.dx + coupling_apply(dir.dz) + rhs.r4;
    const double worst = std::max({e1.lpNorm<Eigen::Infinity>(), e2.lpNorm<Eigen::Infinity>(),
                                   e3.lpNorm<Eigen::Infinity>(), e4.lpNorm<Eigen::Infinity>()});
    return worst / rhs_scale(rhs);
}

double max_step(const PrimalDualPoint& pt, const Direction& dir) {
    double t = kInf;
    t = ratio_test(pt.z, dir.dz, t);
    t = ratio_test(pt.s, dir.ds, t);
    return t;
}

double centering_sigma(double mu, double mu_affine) {
    if (mu <= 0.0) return 0.0;
    const double ratio = mu_affine / mu;
    return std::clamp(ratio * ratio * ratio, 0.0, 1.0);
}

double affine_mu(const PrimalDualPoint& pt, const Direction& dir, double t_affine) {
    return complementarity_mu(pt.z + t_affine * dir.dz, pt.s + t_affine * dir.ds);
}

NewtonRhs corrector_rhs(const Direction& dir_affine, double sigma, double mu) {
    NewtonRhs rhs;
    rhs.r1 = Eigen::VectorXd::Zero(dir_affine.dx.size());
    rhs.r2 = Eigen::VectorXd::Zero(dir_affine.dz.size());
    rhs.r3 = -dir_affine.dz.cwiseProduct(dir_affine.ds) +
             Eigen::VectorXd::Constant(dir_affine.dz.size(), sigma * mu);
    rhs.r4 = Eigen::VectorXd::Zero(dir_affine.du.size());
    return rhs;
}

PrimalDualPoint make_starting_point(const AugmentedQP& qp, const Eigen::MatrixXd& dict,
                                    const std::optional<Eigen::VectorXd>& x0) {
    PrimalDualPoint pt;
    if (x0) {
        if (x0->size() != qp.n) throw std::invalid_argument("x0 has wrong length");
        pt.x = *x0;
    } else {
        Eigen::MatrixXd ridge = qp.q_mat;
        ridge.diagonal().array() += 1.0;
        pt.x = ridge.ldlt().solve(qp.c);
    }
    pt.z = split_variable(dict.transpose() * pt.x).array() + 0.5;
    pt.u = Eigen::VectorXd::Zero(qp.p);
    const double floor = qp.lambda < 1e-6 ? 1.0 : 0.5 * qp.lambda;
    pt.s = (Eigen::VectorXd::Constant(2 * qp.p, qp.lambda) - coupling_adjoint(pt.u))
               .cwiseMax(floor);
    return pt;
}

Eigen::VectorXd least_squares_x(const Problem& problem) {
    return problem.phi.completeOrthogonalDecomposition().solve(problem.y);
}

SolveResult solve(const Problem& problem, const SolverConfig& config,
                  const std::optional<PrimalDualPoint>& start) {
    const ValidationReport report = validate(problem);
    if (!report.pass) throw std::invalid_argument("invalid problem: " + report.message);
    if (!(config.eta > 0.0 && config.eta < 1.0) || config.eps <= 0.0)
        throw std::invalid_argument("solver config requires eps > 0 and eta in (0,1)");

    const AugmentedQP qp = lift(problem);
    PrimalDualPoint pt = start ? *start : make_starting_point(qp, problem.dict);
    if (pt.z.minCoeff() <= 0.0 || pt.s.minCoeff() <= 0.0)
        throw std::invalid_argument("starting point must satisfy z > 0 and s > 0");

    SolveResult result;
    Residuals res = residuals(qp, problem.dict, pt);
    result.trace.records.push_back(record_of(0, pt, res, 0.0, 0.0, 0.0));

    int iter = 0;
    while (true) {
        if (res.max_norm() <= config.eps && res.mu <= config.eps) {
            iter = center_at_frozen_mu(qp, problem.dict, config, pt, res,
                                       result.trace, iter);
            result.trace.status = SolveStatus::converged;
            break;
        }
        if (iter >= config.max_iters) {
            result.trace.status = SolveStatus::max_iters;
            break;
        }

        Direction affine, combined;
        double sigma = 0.0;
        double dir_residual = 0.0;
        try {
            affine = newton_solve(qp, problem.dict, pt, from_residuals(res), config.reg);

            double t_affine = max_step(pt, affine);
            if (std::isinf(t_affine)) t_affine = config.t_cap;
            const double mu_a = affine_mu(pt, affine, t_affine);
            sigma = centering_sigma(res.mu, mu_a);

            const NewtonRhs corr = corrector_rhs(affine, sigma, res.mu);
            const Direction corrector =
                newton_solve(qp, problem.dict, pt, negated(corr), config.reg);
            combined = add(affine, corrector);

            // The combined direction targets -(residuals) + corrector rhs.
            NewtonRhs combined_rhs = from_residuals(res);
            combined_rhs.r3 -= corr.r3;
            dir_residual = newton_residual(qp, problem.dict, pt, combined_rhs, combined);
        } catch (const NumericalFailure&) {
            result.trace.status = SolveStatus::numerical_failure;
            break;
        }

        const double step = std::min(config.eta * max_step(pt, combined), config.t_cap);
        pt.x += step * combined.dx;
        pt.z += step * combined.dz;
        pt.u += step * combined.du;
        pt.s += step * combined.ds;
        if (pt.z.minCoeff() <= 0.0 || pt.s.minCoeff() <= 0.0 || !all_finite(pt.x)) {
            result.trace.status = SolveStatus::numerical_failure;
            break;
        }

        res = residuals(qp, problem.dict, pt);
        ++iter;
        result.trace.records.push_back(record_of(iter, pt, res, step, sigma, dir_residual));
    }

    result.point = pt;
    return result;
}

}  // namespace anlasso
