#pragma once

#include <cstdint>
#include <vector>

#include "sbm/matrix.hpp"

namespace sbm {

/// Outcome of a likelihood-separation test. reject == (statistic > threshold).
struct TestVerdict {
    bool reject = false;
    double statistic = 0.0;
    double threshold = 0.0;
};

/// Linear test of H0: theta = theta0 against the ball of radius
/// ||theta1 - theta0||/2 around theta1:
///   statistic = sum (theta1 - theta0)_ij (A - theta0)_ij,
///   threshold = ||theta1 - theta0||^2 / 4.
TestVerdict point_vs_ball_test(const AdjacencyMatrix& A, const EdgeProbabilityMatrix& theta0,
                               const EdgeProbabilityMatrix& theta1);

struct TestErrorEstimate {
    double type1 = 0.0;      // P_{theta0}(reject)
    double type2 = 0.0;      // P_{theta_alt}(accept)
    double mc_stderr = 0.0;  // worst-case binomial standard error 1/(2 sqrt(trials))
    double separation_sq = 0.0;
};

/// Monte-Carlo error frequencies of point_vs_ball_test. theta_alt must lie in
/// the alternative ball: ||theta_alt - theta1|| <= ||theta1 - theta0|| / 2.
/// Hoeffding with range-|c_ij| increments gives both error rates
/// <= exp(-||theta1 - theta0||^2 / 8).
TestErrorEstimate estimate_test_errors(const EdgeProbabilityMatrix& theta0,
                                       const EdgeProbabilityMatrix& theta1,
                                       const EdgeProbabilityMatrix& theta_alt, std::int64_t trials,
                                       std::uint64_t seed);

/// Composite test over a net of centers: rejects when any per-center test
/// rejects. statistic = max over the net of (statistic - threshold) gaps,
/// threshold = 0; an empty net accepts with a -inf statistic.
TestVerdict annulus_test(const AdjacencyMatrix& A, const EdgeProbabilityMatrix& theta0,
                         const std::vector<EdgeProbabilityMatrix>& net);

} // namespace sbm
