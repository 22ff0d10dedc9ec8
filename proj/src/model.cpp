#include "sbm/model.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sbm/geometry.hpp"

namespace sbm {

ClusterAssignment::ClusterAssignment(std::vector<int> labels, int k)
    : labels_(std::move(labels)), sizes_(k, 0), k_(k) {
    if (k < 1) throw std::invalid_argument("ClusterAssignment: k must be >= 1");
    for (int lab : labels_) {
        if (lab < 0 || lab >= k) throw std::invalid_argument("ClusterAssignment: label out of range");
        ++sizes_[lab];
    }
}

bool ClusterAssignment::all_clusters_nonempty() const {
    for (int s : sizes_)
        if (s == 0) return false;
    return true;
}

void ClusterAssignment::relabel(int i, int r) {
    --sizes_[labels_[i]];
    labels_[i] = r;
    ++sizes_[r];
}

EdgeProbabilityMatrix theta_from_assignment(const ClusterAssignment& z, const ConnectivityMatrix& Q) {
    if (Q.rows() != z.k() || Q.cols() != z.k())
        throw std::invalid_argument("theta_from_assignment: Q dimension does not match z.k");
    const int n = z.n();
    EdgeProbabilityMatrix theta(n, n);
    for (int i = 0; i < n; ++i) {
        const int zi = z.label(i);
        for (int j = 0; j < n; ++j) theta(i, j) = Q(zi, z.label(j));
    }
    return theta;
}

Truth sample_truth(const TruthSpec& spec) {
    if (spec.k < 1) throw std::invalid_argument("sample_truth: k must be >= 1");
    if (spec.n < spec.k) throw std::invalid_argument("sample_truth: need n >= k for nonempty clusters");
    if (!(spec.delta > 0.0 && spec.delta < 0.5))
        throw std::invalid_argument("sample_truth: delta must lie in (0, 1/2)");

    Rng rng(spec.seed);

    // Round-robin then shuffle: every cluster keeps at least one node.
    std::vector<int> labels(spec.n);
    for (int i = 0; i < spec.n; ++i) labels[i] = i % spec.k;
    rng.shuffle(labels);
    ClusterAssignment z(std::move(labels), spec.k);

    ConnectivityMatrix Q(spec.k, spec.k);
    for (int r = 0; r < spec.k; ++r)
        for (int s = 0; s < spec.k; ++s)
            Q(r, s) = spec.delta + (1.0 - 2.0 * spec.delta) * rng.uniform_open01();

    EdgeProbabilityMatrix theta = theta_from_assignment(z, Q);
    return Truth{std::move(z), std::move(Q), std::move(theta)};
}

AdjacencyMatrix sample_adjacency(const EdgeProbabilityMatrix& theta, std::uint64_t seed) {
    Rng rng(seed);
    AdjacencyMatrix A(theta.rows(), theta.cols());
    for (int i = 0; i < theta.rows(); ++i)
        for (int j = 0; j < theta.cols(); ++j)
            A(i, j) = rng.bernoulli(theta(i, j)) ? 1 : 0;
    return A;
}

BlockSufficientStats block_stats(const AdjacencyMatrix& A, const ClusterAssignment& z) {
    if (A.rows() != z.n() || A.cols() != z.n())
        throw std::invalid_argument("block_stats: adjacency dimension does not match z");
    const int k = z.k();
    BlockSufficientStats stats{Mat<std::int64_t>(k, k), Mat<std::int64_t>(k, k)};
    for (int i = 0; i < A.rows(); ++i) {
        const int r = z.label(i);
        for (int j = 0; j < A.cols(); ++j)
            if (A(i, j)) ++stats.edge_counts(r, z.label(j));
    }
    for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s)
            stats.pair_counts(r, s) =
                static_cast<std::int64_t>(z.size_of(r)) * static_cast<std::int64_t>(z.size_of(s));
    return stats;
}

double log_likelihood(const AdjacencyMatrix& A, const ClusterAssignment& z, const ConnectivityMatrix& Q) {
    if (Q.rows() != z.k() || Q.cols() != z.k())
        throw std::invalid_argument("log_likelihood: Q dimension does not match z.k");
    const BlockSufficientStats stats = block_stats(A, z);
    double total = 0.0;
    for (int r = 0; r < z.k(); ++r) {
        for (int s = 0; s < z.k(); ++s) {
            const std::int64_t S = stats.edge_counts(r, s);
            const std::int64_t miss = stats.pair_counts(r, s) - S;
            const double q = Q(r, s);
            if (S > 0) {
                if (q == 0.0) return -std::numeric_limits<double>::infinity();
                total += static_cast<double>(S) * std::log(q);
            }
            if (miss > 0) {
                if (q == 1.0) return -std::numeric_limits<double>::infinity();
                total += static_cast<double>(miss) * std::log1p(-q);
            }
        }
    }
    return total;
}

double normalized_sq_error(const EdgeProbabilityMatrix& theta, const EdgeProbabilityMatrix& theta0) {
    require_same_shape(theta, theta0, "normalized_sq_error");
    double acc = 0.0;
    for (int i = 0; i < theta.rows(); ++i)
        for (int j = 0; j < theta.cols(); ++j) {
            const double d = theta(i, j) - theta0(i, j);
            acc += d * d;
        }
    const double n2 = static_cast<double>(theta.rows()) * static_cast<double>(theta.cols());
    return acc / n2;
}

double blocked_distance(const ClusterAssignment& z, const ConnectivityMatrix& Q,
                        const ClusterAssignment& zs, const ConnectivityMatrix& Qs) {
    if (z.n() != zs.n() || z.k() != zs.k())
        throw std::invalid_argument("blocked_distance: assignments must share n and k");
    if (Q.rows() != z.k() || Q.cols() != z.k() || Qs.rows() != z.k() || Qs.cols() != z.k())
        throw std::invalid_argument("blocked_distance: Q dimension does not match k");
    const int k = z.k();

    double sq = 0.0;
    if (z == zs) {
        for (int r = 0; r < k; ++r)
            for (int s = 0; s < k; ++s) {
                const double d = Q(r, s) - Qs(r, s);
                sq += static_cast<double>(z.size_of(r)) * static_cast<double>(z.size_of(s)) * d * d;
            }
    } else {
        // ||theta - theta*||^2 = sum n_r n_s Q_rs^2
        //                      - 2 sum n_{r,r'} n_{s,s'} Q_rs Q*_{r's'}
        //                      + sum n*_{r'} n*_{s'} (Q*_{r's'})^2
        const OverlapCounts overlap = overlap_counts(z, zs);
        for (int r = 0; r < k; ++r)
            for (int s = 0; s < k; ++s) {
                sq += static_cast<double>(z.size_of(r)) * static_cast<double>(z.size_of(s)) * Q(r, s) * Q(r, s);
                sq += static_cast<double>(zs.size_of(r)) * static_cast<double>(zs.size_of(s)) * Qs(r, s) * Qs(r, s);
            }
        for (int r = 0; r < k; ++r)
            for (int s = 0; s < k; ++s) {
                double cross = 0.0;
                for (int rp = 0; rp < k; ++rp)
                    for (int sp = 0; sp < k; ++sp)
                        cross += static_cast<double>(overlap.counts(r, rp)) *
                                 static_cast<double>(overlap.counts(s, sp)) * Qs(rp, sp);
                sq -= 2.0 * Q(r, s) * cross;
            }
    }
    return std::sqrt(std::max(sq, 0.0));
}

} // namespace sbm
