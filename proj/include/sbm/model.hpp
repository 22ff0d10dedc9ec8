#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "sbm/matrix.hpp"
#include "sbm/rng.hpp"

namespace sbm {

/// Node-to-cluster labelling with cached occupancy counts.
/// Labels are stored 0-based in [0, k); text formats use 1-based ids.
class ClusterAssignment {
public:
    ClusterAssignment() = default;
    ClusterAssignment(std::vector<int> labels, int k);

    int n() const { return static_cast<int>(labels_.size()); }
    int k() const { return k_; }
    int label(int i) const { return labels_[i]; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<int>& sizes() const { return sizes_; }
    int size_of(int r) const { return sizes_[r]; }

    bool all_clusters_nonempty() const;

    /// Moves node i to cluster r, keeping counts in sync.
    void relabel(int i, int r);

    friend bool operator==(const ClusterAssignment& a, const ClusterAssignment& b) {
        return a.k_ == b.k_ && a.labels_ == b.labels_;
    }

private:
    std::vector<int> labels_;
    std::vector<int> sizes_;
    int k_ = 0;
};

/// Per-block sufficient statistics of an adjacency matrix under a labelling:
/// edge counts S_rs and pair counts N_rs = n_r * n_s.
struct BlockSufficientStats {
    Mat<std::int64_t> edge_counts;  // S
    Mat<std::int64_t> pair_counts;  // N
};

/// Ground-truth generator settings. Connectivity entries are drawn inside
/// (delta, 1 - delta) and every cluster is guaranteed nonempty.
struct TruthSpec {
    int n = 0;
    int k = 0;
    double delta = 0.1;
    std::uint64_t seed = 0;
};

struct Truth {
    ClusterAssignment z;
    ConnectivityMatrix Q;
    EdgeProbabilityMatrix theta;
};

/// theta[i][j] = Q[z_i][z_j].
EdgeProbabilityMatrix theta_from_assignment(const ClusterAssignment& z, const ConnectivityMatrix& Q);

Truth sample_truth(const TruthSpec& spec);

AdjacencyMatrix sample_adjacency(const EdgeProbabilityMatrix& theta, std::uint64_t seed);

BlockSufficientStats block_stats(const AdjacencyMatrix& A, const ClusterAssignment& z);

/// Bernoulli log-likelihood of A under (z, Q); 0*log 0 := 0. Returns -inf
/// when an observed edge meets Q_rs = 0 or a non-edge meets Q_rs = 1.
double log_likelihood(const AdjacencyMatrix& A, const ClusterAssignment& z, const ConnectivityMatrix& Q);

/// (1/n^2) * sum of squared entry differences.
double normalized_sq_error(const EdgeProbabilityMatrix& theta, const EdgeProbabilityMatrix& theta0);

/// Frobenius distance between theta^{z,Q} and theta^{z*,Q*} without forming
/// the n x n matrices. Uses the O(k^2) occupancy-weighted form when z == z*,
/// and the overlap-count expansion otherwise.
double blocked_distance(const ClusterAssignment& z, const ConnectivityMatrix& Q,
                        const ClusterAssignment& zs, const ConnectivityMatrix& Qs);

} // namespace sbm
