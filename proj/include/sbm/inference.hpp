#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "sbm/matrix.hpp"
#include "sbm/model.hpp"
#include "sbm/priors.hpp"

namespace sbm {

/// One retained draw from the posterior over (z, Q). log_post is the
/// unnormalized collapsed log posterior log p(z) + log m(A | z).
struct PosteriorSample {
    int sweep = 0;
    ClusterAssignment z;
    ConnectivityMatrix Q;
    double log_post = 0.0;
};

/// Exact posterior over all of Z_{n,k}, normalized so logsumexp(weights) = 0.
struct ExactPosterior {
    std::vector<ClusterAssignment> assignments;
    std::vector<double> log_weights;
};

/// log integral of the block likelihood over Q under the uniform prior:
/// sum_rs log B(S_rs + 1, N_rs - S_rs + 1).
double log_marginal_block_likelihood(const BlockSufficientStats& stats);

ExactPosterior exact_posterior_over_assignments(const AdjacencyMatrix& A, int k,
                                                const DirichletWeights& alpha,
                                                std::int64_t budget = 100'000);

struct GibbsConfig {
    int iters = 12'000;  // total sweeps, burnin included
    int burnin = 2'000;
    int thin = 1;
    std::uint64_t seed = 0;
    bool random_scan = false;  // systematic scan by default
};

/// Collapsed Gibbs chain on z with Q integrated out. Every retained sweep
/// re-draws Q | z, A from its conjugate Beta conditional. Sufficient
/// statistics are maintained incrementally; one site update costs O(n + k^2).
class CollapsedGibbsSampler {
public:
    CollapsedGibbsSampler(const AdjacencyMatrix& A, int k, DirichletWeights alpha,
                          std::uint64_t seed);

    void sweep(bool random_scan = false);

    /// Full conditional P(z_i = . | z_{-i}, A) from the cached statistics.
    std::vector<double> site_conditional(int site);

    ClusterAssignment state() const { return ClusterAssignment(labels_, k_); }
    void set_state(const ClusterAssignment& z);

    /// Unnormalized collapsed log posterior of the current state.
    double log_posterior() const;

    ConnectivityMatrix draw_Q();

    /// Cached S_rs, recomputable from scratch for audits.
    const Mat<std::int64_t>& cached_edge_counts() const { return edge_counts_; }

private:
    void detach(int site);
    void attach(int site, int r);
    std::vector<double> conditional_log_weights() const;

    AdjacencyMatrix A_;
    AdjacencyMatrix At_;  // transpose, for cache-friendly column scans
    int n_;
    int k_;
    DirichletWeights alpha_;
    std::vector<int> labels_;
    std::vector<int> sizes_;
    Mat<std::int64_t> edge_counts_;
    std::vector<double> log_factorial_;  // log m!, m <= n^2 + 1
    Rng rng_;

    // scratch describing the currently detached site
    std::vector<std::int64_t> out_, in_;
    std::int64_t self_ = 0;
};

std::vector<PosteriorSample> collapsed_gibbs(const AdjacencyMatrix& A, int k,
                                             const DirichletWeights& alpha, const GibbsConfig& cfg);

/// Same conditional as CollapsedGibbsSampler::site_conditional, rebuilt from
/// scratch. Audit-side twin of the incremental path.
std::vector<double> site_full_conditional(const AdjacencyMatrix& A, const ClusterAssignment& z,
                                          int site, const DirichletWeights& alpha);

/// Independent Beta(S_rs + 1, N_rs - S_rs + 1) draws per block.
ConnectivityMatrix sample_Q_given_z(const AdjacencyMatrix& A, const ClusterAssignment& z,
                                    std::uint64_t seed);

EdgeProbabilityMatrix posterior_mean_theta(const std::vector<PosteriorSample>& samples);

/// Fraction of samples with normalized_sq_error(theta^{z,Q}, theta0) > M^2 eps_n^2.
double posterior_tail_mass(const std::vector<PosteriorSample>& samples,
                           const EdgeProbabilityMatrix& theta0, double M, double eps_n);

struct EvidenceCheckResult {
    double log_Dn = 0.0;
    double log_bound = 0.0;
    bool satisfied = false;
    double ball_mass = 0.0;
    double ball_std_error = 0.0;
};

/// Exact evidence ratio D_n against the lower bound
/// exp(-C n^2 eps^2) * Pi(||theta - theta0|| < radius), with the ball mass
/// estimated by Monte Carlo.
EvidenceCheckResult evidence_lower_bound_check(const AdjacencyMatrix& A,
                                               const EdgeProbabilityMatrix& theta0, int k,
                                               const DirichletWeights& alpha, double C,
                                               double radius, std::int64_t ball_mc_samples,
                                               std::uint64_t seed, std::int64_t budget = 100'000);

/// CSV dump, one row per retained sample:
/// sweep, z_1..z_n (1-based labels), Q_11..Q_kk (row-major), log_post.
void write_posterior_samples_csv(const std::filesystem::path& path,
                                 const std::vector<PosteriorSample>& samples);

} // namespace sbm
