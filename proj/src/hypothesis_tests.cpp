#include "sbm/hypothesis_tests.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sbm/model.hpp"
#include "sbm/rng.hpp"

namespace sbm {

namespace {

double separation_sq(const EdgeProbabilityMatrix& theta0, const EdgeProbabilityMatrix& theta1) {
    require_same_shape(theta0, theta1, "point_vs_ball_test");
    double acc = 0.0;
    for (int i = 0; i < theta0.rows(); ++i)
        for (int j = 0; j < theta0.cols(); ++j) {
            const double d = theta1(i, j) - theta0(i, j);
            acc += d * d;
        }
    return acc;
}

} // namespace

TestVerdict point_vs_ball_test(const AdjacencyMatrix& A, const EdgeProbabilityMatrix& theta0,
                               const EdgeProbabilityMatrix& theta1) {
    if (A.rows() != theta0.rows() || A.cols() != theta0.cols())
        throw std::invalid_argument("point_vs_ball_test: A dimension mismatch");
    const double sep_sq = separation_sq(theta0, theta1);
    if (sep_sq == 0.0)
        throw std::invalid_argument("point_vs_ball_test: theta1 must differ from theta0");

    TestVerdict v;
    v.threshold = sep_sq / 4.0;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            v.statistic += (theta1(i, j) - theta0(i, j)) * (static_cast<double>(A(i, j)) - theta0(i, j));
    v.reject = v.statistic > v.threshold;
    return v;
}

TestErrorEstimate estimate_test_errors(const EdgeProbabilityMatrix& theta0,
                                       const EdgeProbabilityMatrix& theta1,
                                       const EdgeProbabilityMatrix& theta_alt, std::int64_t trials,
                                       std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("estimate_test_errors: trials must be >= 1");
    const double sep_sq = separation_sq(theta0, theta1);
    if (sep_sq == 0.0)
        throw std::invalid_argument("estimate_test_errors: theta1 must differ from theta0");
    const double alt_dist_sq = separation_sq(theta1, theta_alt);
    if (alt_dist_sq > sep_sq / 4.0 * (1.0 + 1e-12))
        throw std::invalid_argument(
            "estimate_test_errors: theta_alt must lie within ||theta1 - theta0||/2 of theta1");

    Rng rng(seed);
    std::int64_t rejects_under_null = 0;
    std::int64_t accepts_under_alt = 0;
    const double threshold = sep_sq / 4.0;
    const int n = theta0.rows();
    const int m = theta0.cols();
    for (std::int64_t t = 0; t < trials; ++t) {
        double stat = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) {
                const double a = rng.bernoulli(theta0(i, j)) ? 1.0 : 0.0;
                stat += (theta1(i, j) - theta0(i, j)) * (a - theta0(i, j));
            }
        if (stat > threshold) ++rejects_under_null;

        stat = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) {
                const double a = rng.bernoulli(theta_alt(i, j)) ? 1.0 : 0.0;
                stat += (theta1(i, j) - theta0(i, j)) * (a - theta0(i, j));
            }
        if (!(stat > threshold)) ++accepts_under_alt;
    }

    TestErrorEstimate out;
    out.type1 = static_cast<double>(rejects_under_null) / static_cast<double>(trials);
    out.type2 = static_cast<double>(accepts_under_alt) / static_cast<double>(trials);
    out.mc_stderr = 0.5 / std::sqrt(static_cast<double>(trials));
    out.separation_sq = sep_sq;
    return out;
}

TestVerdict annulus_test(const AdjacencyMatrix& A, const EdgeProbabilityMatrix& theta0,
                         const std::vector<EdgeProbabilityMatrix>& net) {
    TestVerdict v;
    v.statistic = -std::numeric_limits<double>::infinity();
    v.threshold = 0.0;
    for (const EdgeProbabilityMatrix& center : net) {
        const TestVerdict point = point_vs_ball_test(A, theta0, center);
        v.statistic = std::max(v.statistic, point.statistic - point.threshold);
    }
    v.reject = v.statistic > v.threshold;
    return v;
}

} // namespace sbm
