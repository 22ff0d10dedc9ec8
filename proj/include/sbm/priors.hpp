#pragma once

#include <cstdint>
#include <vector>

#include "sbm/matrix.hpp"
#include "sbm/model.hpp"

namespace sbm {

/// Dirichlet hyper-parameters for the cluster-proportion prior. Fixed per
/// run, independent of n and k; the default is alpha_r = 1/2.
struct DirichletWeights {
    std::vector<double> alpha;

    static DirichletWeights symmetric(int k, double a = 0.5);
    void validate() const;
    double sum() const;
};

/// Cluster proportions for forward simulation only; the marginal assignment
/// prior integrates them out.
struct MixingProportions {
    std::vector<double> pi;

    void validate() const;
};

/// log p(z) under the multinomial-Dirichlet marginal:
/// log G(sum a) - log G(n + sum a) + sum_r [log G(n_r + a_r) - log G(a_r)].
/// Log-space throughout; the direct product underflows past n ~ 100.
double log_marginal_assignment_prior(const ClusterAssignment& z, const DirichletWeights& alpha);

/// Number of labellings k^n, or -1 if it exceeds the budget.
std::int64_t count_assignments(int n, int k, std::int64_t budget);

/// Streams every z in {0..k-1}^n exactly once, lexicographically by label
/// vector. Refuses to start when k^n exceeds the budget.
class AssignmentEnumerator {
public:
    AssignmentEnumerator(int n, int k, std::int64_t budget = 1'000'000);

    /// Advances to the next assignment; false once exhausted. The first call
    /// yields the all-zeros labelling.
    bool next(std::vector<int>& labels);

    std::int64_t total() const { return total_; }

private:
    int n_;
    int k_;
    std::int64_t total_;
    bool started_ = false;
    bool done_ = false;
    std::vector<int> current_;
};

/// Exact max over z of p(z)/p(z_ref), by full enumeration in log space.
/// z_ref must have every cluster nonempty.
double max_prior_ratio(int n, int k, const DirichletWeights& alpha, const ClusterAssignment& z_ref,
                       std::int64_t budget = 1'000'000);

struct BallMassEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::int64_t hits = 0;
    std::int64_t samples = 0;
};

/// Monte-Carlo mass of { ||theta - theta0|| < radius } under the joint prior:
/// pi ~ Dirichlet(alpha), labels iid from pi, Q entries iid U(0,1).
BallMassEstimate prior_ball_mass(const EdgeProbabilityMatrix& theta0, double radius,
                                 const DirichletWeights& alpha, int k, std::int64_t mc_samples,
                                 std::uint64_t seed);

} // namespace sbm
