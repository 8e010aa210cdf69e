#include "anlasso/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace anlasso {

namespace {

constexpr double kFeasSlack = 1e-9;

Eigen::Index rank_col_piv(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr,
                          const Eigen::MatrixXd& a) {
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

void require_desk_scale(const Problem& problem, const OracleLimits& limits,
                        bool check_n) {
    if (problem.p() > limits.p_max)
        throw OracleLimitError("instance exceeds the brute-force limit on p");
    if (check_n && problem.n() > limits.n_max)
        throw OracleLimitError("instance exceeds the brute-force limit on n");
}

void require_valid(const Problem& problem) {
    const ValidationReport report = validate(problem);
    if (!report.pass)
        throw std::invalid_argument("invalid problem: " + report.message);
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
    std::vector<double> sorted(v.data(), v.data() + v.size());
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (size_t j = 0; j < sorted.size(); ++j) {
        cumulative += sorted[j];
        const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (sorted[j] - candidate > 0.0) theta = candidate;
    }
    return (v.array() - theta).max(0.0);
}

}  // namespace

std::pair<double, Eigen::VectorXd> optimal_value_by_sign_enumeration(
    const Problem& problem, const OracleLimits& limits) {
    require_valid(problem);
    require_desk_scale(problem, limits, /*check_n=*/false);

    const Eigen::Index n = problem.n();
    const Eigen::Index p = problem.p();
    const Eigen::MatrixXd q_mat = problem.phi.transpose() * problem.phi;
    const Eigen::VectorXd c = problem.phi.transpose() * problem.y;
    const double lambda = problem.lambda;

    long total = 1;
    for (Eigen::Index i = 0; i < p; ++i) total *= 3;

    double best_value = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_x;

    std::vector<int> sign(p);
    for (long code = 0; code < total; ++code) {
        long rest = code;
        for (Eigen::Index i = 0; i < p; ++i) {
            const int digit = static_cast<int>(rest % 3);
            rest /= 3;
            sign[i] = digit == 0 ? 0 : (digit == 1 ? 1 : -1);
        }
        std::vector<Eigen::Index> zero_set;
        for (Eigen::Index i = 0; i < p; ++i) {
            if (sign[i] == 0) zero_set.push_back(i);
        }
        const Eigen::Index nz = static_cast<Eigen::Index>(zero_set.size());

        // Unknowns: x (n entries) and the free subgradient values on the
        // zero set. Rows: stationarity (n) and (dict^T x)_i = 0 on the zero set.
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + nz, n + nz);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n + nz);
        a.topLeftCorner(n, n) = q_mat;
        b.head(n) = c;
        for (Eigen::Index j = 0; j < nz; ++j) {
            a.block(0, n + j, n, 1) = lambda * problem.dict.col(zero_set[j]);
            a.block(n + j, 0, 1, n) = problem.dict.col(zero_set[j]).transpose();
        }
        for (Eigen::Index i = 0; i < p; ++i) {
            if (sign[i] != 0) b.head(n) -= lambda * sign[i] * problem.dict.col(i);
        }

        const Eigen::VectorXd xg = a.completeOrthogonalDecomposition().solve(b);
        if (!xg.allFinite()) continue;
        if ((a * xg - b).lpNorm<Eigen::Infinity>() >
            kFeasSlack * (1.0 + b.lpNorm<Eigen::Infinity>()))
            continue;
        if (nz > 0 && xg.tail(nz).lpNorm<Eigen::Infinity>() > 1.0 + kFeasSlack) continue;

        const Eigen::VectorXd x = xg.head(n);
        const Eigen::VectorXd d_adj_x = problem.dict.transpose() * x;
        const double sign_slack = kFeasSlack * (1.0 + d_adj_x.lpNorm<Eigen::Infinity>());
        bool signs_ok = true;
        for (Eigen::Index i = 0; i < p && signs_ok; ++i) {
            if (sign[i] != 0 && sign[i] * d_adj_x[i] < -sign_slack) signs_ok = false;
        }
        if (!signs_ok) continue;

        const double value = objective(problem, x);
        if (value < best_value) {
            best_value = value;
            best_x = x;
        }
    }

    if (!best_x.size())
        throw std::runtime_error("sign enumeration accepted no pattern");
    return {best_value, best_x};
}

std::vector<Eigen::VectorXd> enumerate_vertices(const Problem& problem,
                                                const Eigen::VectorXd& witness,
                                                const OracleLimits& limits,
                                                std::optional<double> known_optimal_value) {
    require_valid(problem);
    require_desk_scale(problem, limits, /*check_n=*/true);

    const double optimal_value =
        known_optimal_value ? *known_optimal_value
                            : optimal_value_by_sign_enumeration(problem, limits).first;
    const double witness_value = objective(problem, witness);
    if (std::abs(witness_value - optimal_value) >
        kFeasSlack * (1.0 + std::abs(optimal_value)))
        throw std::invalid_argument("witness is not an optimal point");

    const Eigen::Index n = problem.n();
    const Eigen::Index p = problem.p();
    const Eigen::Index q = problem.q();
    const Eigen::MatrixXd d_adj = problem.dict.transpose();
    const Eigen::VectorXd image = problem.phi * witness;
    const Eigen::VectorXd d_adj_w = d_adj * witness;
    const double level = d_adj_w.lpNorm<1>();

    const double sign_tol = kFeasSlack * (1.0 + d_adj_w.lpNorm<Eigen::Infinity>());
    std::vector<int> base_sign(p);
    std::vector<Eigen::Index> free_set;
    for (Eigen::Index i = 0; i < p; ++i) {
        if (std::abs(d_adj_w[i]) > sign_tol) {
            base_sign[i] = d_adj_w[i] > 0.0 ? 1 : -1;
        } else {
            base_sign[i] = 0;
            free_set.push_back(i);
        }
    }

    const double feas_tol =
        kFeasSlack * (1.0 + std::max(image.lpNorm<Eigen::Infinity>(), level));
    std::vector<Eigen::VectorXd> candidates;

    std::vector<int> tau(p);
    const long closures = 1L << free_set.size();
    for (long mask = 0; mask < closures; ++mask) {
        for (Eigen::Index i = 0; i < p; ++i) tau[i] = base_sign[i];
        for (size_t j = 0; j < free_set.size(); ++j) {
            tau[free_set[j]] = (mask >> j) & 1 ? 1 : -1;
        }

        // Signed analysis rows; the polytope piece for this closure is
        //   phi x = image, rows * x >= 0 componentwise, <e, rows * x> = level.
        Eigen::MatrixXd rows(p, n);
        for (Eigen::Index i = 0; i < p; ++i) rows.row(i) = tau[i] * d_adj.row(i);

        Eigen::MatrixXd a_eq(q + 1, n);
        a_eq.topRows(q) = problem.phi;
        a_eq.row(q) = rows.colwise().sum();
        Eigen::VectorXd b_eq(q + 1);
        b_eq.head(q) = image;
        b_eq[q] = level;

        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> base_qr(a_eq);
        const Eigen::Index corank = n - rank_col_piv(base_qr, a_eq);

        auto try_system = [&](const std::vector<Eigen::Index>& active) {
            Eigen::MatrixXd m(a_eq.rows() + static_cast<Eigen::Index>(active.size()), n);
            m.topRows(a_eq.rows()) = a_eq;
            for (size_t j = 0; j < active.size(); ++j)
                m.row(a_eq.rows() + static_cast<Eigen::Index>(j)) = rows.row(active[j]);
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m.rows());
            rhs.head(q + 1) = b_eq;

            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
            if (rank_col_piv(qr, m) < n) return;  // not a unique intersection point
            const Eigen::VectorXd x = qr.solve(rhs);
            if (!x.allFinite()) return;
            if ((m * x - rhs).lpNorm<Eigen::Infinity>() >
                kFeasSlack * (1.0 + rhs.lpNorm<Eigen::Infinity>()))
                return;
            if ((problem.phi * x - image).lpNorm<Eigen::Infinity>() > feas_tol) return;
            const Eigen::VectorXd signed_image = rows * x;
            if (signed_image.minCoeff() < -feas_tol) return;
            if (std::abs(signed_image.sum() - level) > feas_tol) return;
            candidates.push_back(x);
        };

        if (corank == 0) {
            try_system({});
        } else {
            std::vector<bool> pick(p, false);
            std::fill(pick.end() - corank, pick.end(), true);
            do {
                std::vector<Eigen::Index> active;
                for (Eigen::Index i = 0; i < p; ++i) {
                    if (pick[i]) active.push_back(i);
                }
                try_system(active);
            } while (std::next_permutation(pick.begin(), pick.end()));
        }
    }

    // Optimality filter, lexicographic order, then proximity deduplication.
    std::vector<Eigen::VectorXd> filtered;
    for (const auto& x : candidates) {
        if (std::abs(objective(problem, x) - optimal_value) <=
            kFeasSlack * (1.0 + std::abs(optimal_value)))
            filtered.push_back(x);
    }
    std::sort(filtered.begin(), filtered.end(), lex_less);
    std::vector<Eigen::VectorXd> vertices;
    for (const auto& x : filtered) {
        bool duplicate = false;
        for (const auto& kept : vertices) {
            if ((x - kept).lpNorm<Eigen::Infinity>() <= 1e-7) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) vertices.push_back(x);
    }
    return vertices;
}

Eigen::VectorXd analytic_center_bruteforce(const Problem& problem,
                                           const std::vector<Eigen::VectorXd>& vertices) {
    if (vertices.empty())
        throw std::invalid_argument("analytic center needs at least one vertex");
    const Eigen::Index k = static_cast<Eigen::Index>(vertices.size());
    if (k == 1) return vertices.front();

    const Eigen::Index n = problem.n();
    const Eigen::Index p = problem.p();
    Eigen::MatrixXd hull(n, k);
    for (Eigen::Index j = 0; j < k; ++j) hull.col(j) = vertices[j];

    // Split variables of each vertex; their union support indexes the barrier
    // terms. Entries are nonnegative by construction, so each selected linear
    // form is positive on the open simplex.
    Eigen::MatrixXd splits(2 * p, k);
    double scale = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
        const Eigen::VectorXd d_adj_v = problem.dict.transpose() * vertices[j];
        splits.col(j) = split_variable(d_adj_v);
        scale = std::max(scale, d_adj_v.lpNorm<Eigen::Infinity>());
    }
    const double tol_union = 1e-9 * (1.0 + scale);
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < 2 * p; ++i) {
        if (splits.row(i).maxCoeff() > tol_union) support.push_back(i);
    }
    for (Eigen::Index i = 0; i < p; ++i) {
        const bool neg = std::binary_search(support.begin(), support.end(), i);
        const bool pos = std::binary_search(support.begin(), support.end(), i + p);
        if (neg && pos)
            throw std::runtime_error("vertices have inconsistent analysis signs");
    }

    const Eigen::Index r = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXd forms(r, k);
    for (Eigen::Index row = 0; row < r; ++row) forms.row(row) = splits.row(support[row]);

    const auto barrier = [&](const Eigen::VectorXd& theta) {
        const Eigen::VectorXd values = forms * theta;
        if (values.minCoeff() <= 0.0) return -std::numeric_limits<double>::infinity();
        return values.array().log().sum();
    };

    Eigen::VectorXd theta;
    if (k == 2) {
        // Concave in the single coordinate; golden-section to 1e-10.
        const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double lo = 0.0, hi = 1.0;
        double t1 = hi - inv_phi * (hi - lo);
        double t2 = lo + inv_phi * (hi - lo);
        auto eval = [&](double t) {
            return barrier((Eigen::VectorXd(2) << 1.0 - t, t).finished());
        };
        double f1 = eval(t1), f2 = eval(t2);
        while (hi - lo > 1e-10) {
            if (f1 < f2) {
                lo = t1;
                t1 = t2;
                f1 = f2;
                t2 = lo + inv_phi * (hi - lo);
                f2 = eval(t2);
            } else {
                hi = t2;
                t2 = t1;
                f2 = f1;
                t1 = hi - inv_phi * (hi - lo);
                f1 = eval(t1);
            }
        }
        // Comparison-based search stalls at sqrt(eps) accuracy on a flat
        // maximum; the derivative is monotone, so a sign bisection sharpens
        // the point to full precision.
        const auto slope = [&](double t) {
            double g = 0.0;
            for (Eigen::Index row = 0; row < r; ++row) {
                const double c0 = forms(row, 0);
                const double c1 = forms(row, 1);
                g += (c1 - c0) / ((1.0 - t) * c0 + t * c1);
            }
            return g;
        };
        double t = 0.5 * (lo + hi);
        double a = 1e-12, b = 1.0 - 1e-12;
        if (slope(a) > 0.0 && slope(b) < 0.0) {
            for (int it = 0; it < 120 && b - a > 1e-16; ++it) {
                const double mid = 0.5 * (a + b);
                (slope(mid) > 0.0 ? a : b) = mid;
            }
            t = 0.5 * (a + b);
        }
        theta = (Eigen::VectorXd(2) << 1.0 - t, t).finished();
    } else {
        // Projected gradient ascent with a local curvature step and halving
        // safeguard; plateau directions (theta moves with Aθ fixed) carry no
        // gradient, so the face point converges even when θ is not unique.
        theta = Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k));
        double value = barrier(theta);
        int stable = 0;
        for (int it = 0; it < 50000 && stable < 8; ++it) {
            const Eigen::VectorXd y = forms * theta;
            const Eigen::VectorXd grad = forms.transpose() * y.cwiseInverse();
            double lip = 0.0;
            for (Eigen::Index row = 0; row < r; ++row)
                lip += forms.row(row).squaredNorm() / (y[row] * y[row]);
            lip = std::max(lip, 1e-12);
            const Eigen::VectorXd target = project_simplex(theta + grad / lip);

            Eigen::VectorXd next = target;
            double next_value = barrier(next);
            double shrink = 1.0;
            for (int back = 0; back < 60 && next_value < value; ++back) {
                shrink *= 0.5;
                next = theta + shrink * (target - theta);
                next_value = barrier(next);
            }
            if (next_value < value) break;  // no ascent direction left
            if ((hull * (next - theta)).lpNorm<Eigen::Infinity>() < 1e-14) {
                ++stable;
            } else {
                stable = 0;
            }
            theta = next;
            value = next_value;
        }
    }
    return hull * theta;
}

OracleResult run_oracle(const Problem& problem, const OracleLimits& limits) {
    OracleResult result;
    auto [value, witness] = optimal_value_by_sign_enumeration(problem, limits);
    result.optimal_value = value;
    result.witness = witness;
    result.vertices = enumerate_vertices(problem, witness, limits, value);
    result.analytic_center = analytic_center_bruteforce(problem, result.vertices);
    return result;
}

}  // namespace anlasso
