#include "sbm/priors.hpp"

#include <cmath>
#include <stdexcept>

#include "sbm/numerics.hpp"
#include "sbm/rng.hpp"

namespace sbm {

DirichletWeights DirichletWeights::symmetric(int k, double a) {
    DirichletWeights w{std::vector<double>(k, a)};
    w.validate();
    return w;
}

void DirichletWeights::validate() const {
    if (alpha.empty()) throw std::invalid_argument("DirichletWeights: alpha must be nonempty");
    for (double a : alpha)
        if (!(a > 0.0)) throw std::invalid_argument("DirichletWeights: alpha entries must be positive");
}

double DirichletWeights::sum() const {
    double s = 0.0;
    for (double a : alpha) s += a;
    return s;
}

void MixingProportions::validate() const {
    double s = 0.0;
    for (double p : pi) {
        if (p < 0.0) throw std::invalid_argument("MixingProportions: negative entry");
        s += p;
    }
    if (std::abs(s - 1.0) > 1e-12)
        throw std::invalid_argument("MixingProportions: entries must sum to 1");
}

double log_marginal_assignment_prior(const ClusterAssignment& z, const DirichletWeights& alpha) {
    if (static_cast<int>(alpha.alpha.size()) != z.k())
        throw std::invalid_argument("log_marginal_assignment_prior: alpha length must equal z.k");
    const double a_sum = alpha.sum();
    double out = log_gamma(a_sum) - log_gamma(z.n() + a_sum);
    for (int r = 0; r < z.k(); ++r)
        out += log_gamma(z.size_of(r) + alpha.alpha[r]) - log_gamma(alpha.alpha[r]);
    return out;
}

std::int64_t count_assignments(int n, int k, std::int64_t budget) {
    if (n < 0 || k < 1) throw std::invalid_argument("count_assignments: need n >= 0, k >= 1");
    std::int64_t total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > budget / k) return -1;
        total *= k;
    }
    return total <= budget ? total : -1;
}

AssignmentEnumerator::AssignmentEnumerator(int n, int k, std::int64_t budget)
    : n_(n), k_(k), total_(count_assignments(n, k, budget)), current_(n, 0) {
    if (total_ < 0) throw std::invalid_argument("AssignmentEnumerator: k^n exceeds enumeration budget");
}

bool AssignmentEnumerator::next(std::vector<int>& labels) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        labels = current_;
        return true;
    }
    // Odometer increment from the last position: lexicographic order.
    int pos = n_ - 1;
    while (pos >= 0 && current_[pos] == k_ - 1) {
        current_[pos] = 0;
        --pos;
    }
    if (pos < 0) {
        done_ = true;
        return false;
    }
    ++current_[pos];
    labels = current_;
    return true;
}

double max_prior_ratio(int n, int k, const DirichletWeights& alpha, const ClusterAssignment& z_ref,
                       std::int64_t budget) {
    if (z_ref.n() != n || z_ref.k() != k)
        throw std::invalid_argument("max_prior_ratio: z_ref shape must match (n, k)");
    if (!z_ref.all_clusters_nonempty())
        throw std::invalid_argument("max_prior_ratio: z_ref must have every cluster nonempty");
    const double log_ref = log_marginal_assignment_prior(z_ref, alpha);

    AssignmentEnumerator en(n, k, budget);
    std::vector<int> labels;
    double best = -std::numeric_limits<double>::infinity();
    while (en.next(labels)) {
        const ClusterAssignment z(labels, k);
        best = std::max(best, log_marginal_assignment_prior(z, alpha));
    }
    return std::exp(best - log_ref);
}

BallMassEstimate prior_ball_mass(const EdgeProbabilityMatrix& theta0, double radius,
                                 const DirichletWeights& alpha, int k, std::int64_t mc_samples,
                                 std::uint64_t seed) {
    if (!(radius >= 0.0)) throw std::invalid_argument("prior_ball_mass: radius must be nonnegative");
    if (mc_samples < 1) throw std::invalid_argument("prior_ball_mass: mc_samples must be >= 1");
    alpha.validate();
    if (static_cast<int>(alpha.alpha.size()) != k)
        throw std::invalid_argument("prior_ball_mass: alpha length must equal k");
    const int n = theta0.rows();
    const double radius_sq = radius * radius;

    Rng rng(seed);
    std::int64_t hits = 0;
    std::vector<int> labels(n);
    ConnectivityMatrix Q(k, k);
    for (std::int64_t s = 0; s < mc_samples; ++s) {
        const std::vector<double> pi = rng.dirichlet(alpha.alpha);
        for (int i = 0; i < n; ++i) {
            double u = rng.uniform01();
            int lab = k - 1;
            for (int r = 0; r < k; ++r) {
                u -= pi[r];
                if (u < 0.0) {
                    lab = r;
                    break;
                }
            }
            labels[i] = lab;
        }
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) Q(r, c) = rng.uniform01();

        double dist_sq = 0.0;
        for (int i = 0; i < n && dist_sq < radius_sq; ++i)
            for (int j = 0; j < n; ++j) {
                const double d = Q(labels[i], labels[j]) - theta0(i, j);
                dist_sq += d * d;
            }
        if (dist_sq < radius_sq) ++hits;
    }

    BallMassEstimate out;
    out.hits = hits;
    out.samples = mc_samples;
    out.estimate = static_cast<double>(hits) / static_cast<double>(mc_samples);
    out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(mc_samples));
    return out;
}

} // namespace sbm
