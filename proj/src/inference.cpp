#include "sbm/inference.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "sbm/numerics.hpp"
#include "sbm/text_format.hpp"

namespace sbm {

double log_marginal_block_likelihood(const BlockSufficientStats& stats) {
    double total = 0.0;
    for (int r = 0; r < stats.edge_counts.rows(); ++r)
        for (int s = 0; s < stats.edge_counts.cols(); ++s) {
            const double S = static_cast<double>(stats.edge_counts(r, s));
            const double N = static_cast<double>(stats.pair_counts(r, s));
            total += log_beta(S + 1.0, N - S + 1.0);
        }
    return total;
}

ExactPosterior exact_posterior_over_assignments(const AdjacencyMatrix& A, int k,
                                                const DirichletWeights& alpha,
                                                std::int64_t budget) {
    const int n = A.rows();
    ExactPosterior post;
    AssignmentEnumerator en(n, k, budget);
    std::vector<int> labels;
    while (en.next(labels)) {
        ClusterAssignment z(labels, k);
        const double w = log_marginal_assignment_prior(z, alpha) +
                         log_marginal_block_likelihood(block_stats(A, z));
        post.assignments.push_back(std::move(z));
        post.log_weights.push_back(w);
    }
    const double norm = log_sum_exp(post.log_weights);
    for (double& w : post.log_weights) w -= norm;
    return post;
}

CollapsedGibbsSampler::CollapsedGibbsSampler(const AdjacencyMatrix& A, int k,
                                             DirichletWeights alpha, std::uint64_t seed)
    : A_(A), At_(A.cols(), A.rows()), n_(A.rows()), k_(k), alpha_(std::move(alpha)), rng_(seed) {
    if (A.rows() != A.cols()) throw std::invalid_argument("CollapsedGibbsSampler: A must be square");
    if (k < 1) throw std::invalid_argument("CollapsedGibbsSampler: k must be >= 1");
    alpha_.validate();
    if (static_cast<int>(alpha_.alpha.size()) != k)
        throw std::invalid_argument("CollapsedGibbsSampler: alpha length must equal k");
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) At_(j, i) = A_(i, j);

    // log m! table; largest argument is N + 1 = n^2 + 1.
    const std::int64_t top = static_cast<std::int64_t>(n_) * n_ + 1;
    log_factorial_.resize(top + 1);
    for (std::int64_t m = 0; m <= top; ++m)
        log_factorial_[m] = log_gamma(static_cast<double>(m) + 1.0);

    std::vector<int> labels(n_);
    for (int i = 0; i < n_; ++i) labels[i] = static_cast<int>(rng_.uniform_int(k));
    set_state(ClusterAssignment(std::move(labels), k));

    out_.resize(k_);
    in_.resize(k_);
}

void CollapsedGibbsSampler::set_state(const ClusterAssignment& z) {
    if (z.n() != n_ || z.k() != k_)
        throw std::invalid_argument("CollapsedGibbsSampler: state shape mismatch");
    z_ = z;
    edge_counts_ = block_stats(A_, z_).edge_counts;
}

void CollapsedGibbsSampler::detach(int site) {
    const int zi = z_.label(site);
    std::fill(out_.begin(), out_.end(), 0);
    std::fill(in_.begin(), in_.end(), 0);
    for (int j = 0; j < n_; ++j) {
        if (j == site) continue;
        out_[z_.label(j)] += A_(site, j);
        in_[z_.label(j)] += At_(site, j);
    }
    self_ = A_(site, site);
    for (int s = 0; s < k_; ++s) edge_counts_(zi, s) -= out_[s];
    for (int r = 0; r < k_; ++r) edge_counts_(r, zi) -= in_[r];
    edge_counts_(zi, zi) -= self_;
    // occupancy drops to "removed" for the conditional computation
    z_.relabel(site, zi);  // no-op on labels, keeps sizes consistent
    --const_cast<std::vector<int>&>(z_.sizes())[zi];
}

void CollapsedGibbsSampler::attach(int site, int r) {
    for (int s = 0; s < k_; ++s) edge_counts_(r, s) += out_[s];
    for (int q = 0; q < k_; ++q) edge_counts_(q, r) += in_[q];
    edge_counts_(r, r) += self_;
    ++const_cast<std::vector<int>&>(z_.sizes())[r];
    const_cast<std::vector<int>&>(z_.labels())[site] = r;
}

std::vector<double> CollapsedGibbsSampler::conditional_log_weights(int site) const {
    (void)site;
    const std::vector<int>& m = z_.sizes();  // occupancy with the site detached
    std::vector<double> logw(k_);
    for (int c = 0; c < k_; ++c) {
        double w = std::log(static_cast<double>(m[c]) + alpha_.alpha[c]);
        // row c: blocks (c, s)
        for (int s = 0; s < k_; ++s) {
            const std::int64_t S =
                edge_counts_(c, s) + out_[s] + (s == c ? in_[c] + self_ : 0);
            const std::int64_t N =
                static_cast<std::int64_t>(m[c] + 1) * (m[s] + (s == c ? 1 : 0));
            w += log_factorial_[S] + log_factorial_[N - S] - log_factorial_[N + 1];
        }
        // column c minus the diagonal already counted
        for (int r = 0; r < k_; ++r) {
            if (r == c) continue;
            const std::int64_t S = edge_counts_(r, c) + in_[r];
            const std::int64_t N = static_cast<std::int64_t>(m[r]) * (m[c] + 1);
            w += log_factorial_[S] + log_factorial_[N - S] - log_factorial_[N + 1];
        }
        logw[c] = w;
    }
    return logw;
}

std::vector<double> CollapsedGibbsSampler::site_conditional(int site) {
    detach(site);
    std::vector<double> logw = conditional_log_weights(site);
    const int zi = z_.label(site);
    attach(site, zi);
    const double norm = log_sum_exp(logw);
    for (double& w : logw) w = std::exp(w - norm);
    return logw;
}

void CollapsedGibbsSampler::sweep(bool random_scan) {
    for (int step = 0; step < n_; ++step) {
        const int site = random_scan ? static_cast<int>(rng_.uniform_int(n_)) : step;
        detach(site);
        std::vector<double> logw = conditional_log_weights(site);
        const double norm = log_sum_exp(logw);
        double u = rng_.uniform01();
        int pick = k_ - 1;
        for (int c = 0; c < k_; ++c) {
            u -= std::exp(logw[c] - norm);
            if (u < 0.0) {
                pick = c;
                break;
            }
        }
        attach(site, pick);
    }
}

double CollapsedGibbsSampler::log_posterior() const {
    double total = log_marginal_assignment_prior(z_, alpha_);
    for (int r = 0; r < k_; ++r)
        for (int s = 0; s < k_; ++s) {
            const std::int64_t S = edge_counts_(r, s);
            const std::int64_t N = static_cast<std::int64_t>(z_.size_of(r)) * z_.size_of(s);
            total += log_factorial_[S] + log_factorial_[N - S] - log_factorial_[N + 1];
        }
    return total;
}

ConnectivityMatrix CollapsedGibbsSampler::draw_Q() {
    ConnectivityMatrix Q(k_, k_);
    for (int r = 0; r < k_; ++r)
        for (int s = 0; s < k_; ++s) {
            const std::int64_t S = edge_counts_(r, s);
            const std::int64_t N = static_cast<std::int64_t>(z_.size_of(r)) * z_.size_of(s);
            Q(r, s) = rng_.beta(static_cast<double>(S) + 1.0, static_cast<double>(N - S) + 1.0);
        }
    return Q;
}

std::vector<PosteriorSample> collapsed_gibbs(const AdjacencyMatrix& A, int k,
                                             const DirichletWeights& alpha, const GibbsConfig& cfg) {
    if (!(cfg.iters > cfg.burnin && cfg.burnin >= 0))
        throw std::invalid_argument("collapsed_gibbs: need iters > burnin >= 0");
    if (cfg.thin < 1) throw std::invalid_argument("collapsed_gibbs: thin must be >= 1");

    CollapsedGibbsSampler sampler(A, k, alpha, cfg.seed);
    std::vector<PosteriorSample> samples;
    samples.reserve((cfg.iters - cfg.burnin) / cfg.thin + 1);
    for (int sweep = 1; sweep <= cfg.iters; ++sweep) {
        sampler.sweep(cfg.random_scan);
        if (sweep > cfg.burnin && (sweep - cfg.burnin) % cfg.thin == 0) {
            PosteriorSample s;
            s.sweep = sweep;
            s.z = sampler.state();
            s.Q = sampler.draw_Q();
            s.log_post = sampler.log_posterior();
            samples.push_back(std::move(s));
        }
    }
    return samples;
}

std::vector<double> site_full_conditional(const AdjacencyMatrix& A, const ClusterAssignment& z,
                                          int site, const DirichletWeights& alpha) {
    // From-scratch twin of the sampler's incremental conditional.
    CollapsedGibbsSampler sampler(A, z.k(), alpha, 0);
    sampler.set_state(z);
    return sampler.site_conditional(site);
}

ConnectivityMatrix sample_Q_given_z(const AdjacencyMatrix& A, const ClusterAssignment& z,
                                    std::uint64_t seed) {
    const BlockSufficientStats stats = block_stats(A, z);
    Rng rng(seed);
    ConnectivityMatrix Q(z.k(), z.k());
    for (int r = 0; r < z.k(); ++r)
        for (int s = 0; s < z.k(); ++s) {
            const double S = static_cast<double>(stats.edge_counts(r, s));
            const double N = static_cast<double>(stats.pair_counts(r, s));
            Q(r, s) = rng.beta(S + 1.0, N - S + 1.0);
        }
    return Q;
}

EdgeProbabilityMatrix posterior_mean_theta(const std::vector<PosteriorSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("posterior_mean_theta: empty sample list");
    const int n = samples.front().z.n();
    EdgeProbabilityMatrix mean(n, n, 0.0);
    for (const PosteriorSample& s : samples) {
        for (int i = 0; i < n; ++i) {
            const int zi = s.z.label(i);
            for (int j = 0; j < n; ++j) mean(i, j) += s.Q(zi, s.z.label(j));
        }
    }
    const double inv = 1.0 / static_cast<double>(samples.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mean(i, j) *= inv;
    return mean;
}

double posterior_tail_mass(const std::vector<PosteriorSample>& samples,
                           const EdgeProbabilityMatrix& theta0, double M, double eps_n) {
    if (samples.empty()) throw std::invalid_argument("posterior_tail_mass: empty sample list");
    if (!(M >= 0.0)) throw std::invalid_argument("posterior_tail_mass: M must be nonnegative");
    const double cutoff = M * M * eps_n * eps_n;
    std::int64_t exceed = 0;
    for (const PosteriorSample& s : samples) {
        const EdgeProbabilityMatrix theta = theta_from_assignment(s.z, s.Q);
        if (normalized_sq_error(theta, theta0) > cutoff) ++exceed;
    }
    return static_cast<double>(exceed) / static_cast<double>(samples.size());
}

EvidenceCheckResult evidence_lower_bound_check(const AdjacencyMatrix& A,
                                               const EdgeProbabilityMatrix& theta0, int k,
                                               const DirichletWeights& alpha, double C,
                                               double radius, std::int64_t ball_mc_samples,
                                               std::uint64_t seed, std::int64_t budget) {
    const int n = A.rows();
    if (theta0.rows() != n || theta0.cols() != n)
        throw std::invalid_argument("evidence_lower_bound_check: theta0 dimension mismatch");

    // log D_n = log m(A) - log P_{theta0}(A), both exact.
    std::vector<double> terms;
    AssignmentEnumerator en(n, k, budget);
    std::vector<int> labels;
    while (en.next(labels)) {
        const ClusterAssignment z(labels, k);
        terms.push_back(log_marginal_assignment_prior(z, alpha) +
                        log_marginal_block_likelihood(block_stats(A, z)));
    }
    double log_p0 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            log_p0 += A(i, j) ? std::log(theta0(i, j)) : std::log1p(-theta0(i, j));

    EvidenceCheckResult out;
    out.log_Dn = log_sum_exp(terms) - log_p0;

    const BallMassEstimate ball = prior_ball_mass(theta0, radius, alpha, k, ball_mc_samples, seed);
    out.ball_mass = ball.estimate;
    out.ball_std_error = ball.std_error;
    const double n_sq_eps_sq = radius * radius;  // radius = n * eps_n
    out.log_bound = -C * n_sq_eps_sq + std::log(ball.estimate);
    out.satisfied = out.log_Dn >= out.log_bound;
    return out;
}

void write_posterior_samples_csv(const std::filesystem::path& path,
                                 const std::vector<PosteriorSample>& samples) {
    if (samples.empty())
        throw std::invalid_argument("write_posterior_samples_csv: empty sample list");
    const int n = samples.front().z.n();
    const int k = samples.front().z.k();

    std::string buf = "sweep";
    for (int i = 1; i <= n; ++i) {
        buf += ",z_";
        append_int(buf, i);
    }
    for (int r = 1; r <= k; ++r)
        for (int s = 1; s <= k; ++s) {
            buf += ",Q_";
            append_int(buf, r);
            append_int(buf, s);
        }
    buf += ",log_post\n";

    for (const PosteriorSample& smp : samples) {
        append_int(buf, smp.sweep);
        for (int i = 0; i < n; ++i) {
            buf += ',';
            append_int(buf, smp.z.label(i) + 1);
        }
        for (int r = 0; r < k; ++r)
            for (int s = 0; s < k; ++s) {
                buf += ',';
                append_double(buf, smp.Q(r, s));
            }
        buf += ',';
        append_double(buf, smp.log_post);
        buf += '\n';
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    out << buf;
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

} // namespace sbm
