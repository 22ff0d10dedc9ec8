#pragma once

#include <cstdint>
#include <vector>

#include "sbm/matrix.hpp"
#include "sbm/model.hpp"

namespace sbm {

/// Axis-aligned weighted ellipsoid over k x k matrices:
/// { X : sum_rs W_rs (X_rs - center_rs)^2 <= 1 }.
struct WeightedEllipsoid {
    ConnectivityMatrix center;
    Mat<double> weights;

    bool contains(const ConnectivityMatrix& X) const;
};

/// Joint contingency counts of two labellings:
/// counts[r][r'] = |{i : z_i = r and z*_i = r'}|.
struct OverlapCounts {
    Mat<std::int64_t> counts;
};

/// Annulus shell around a center: inner = l*n*eps_n, outer = (l+1)*n*eps_n.
struct AnnulusSpec {
    EdgeProbabilityMatrix center;
    double inner = 0.0;
    double outer = 0.0;
    int shell_index = 1;
};

/// Euclidean volume of the weighted unit ellipsoid in d^2 dimensions:
/// pi^{d^2/2} / Gamma(d^2/2 + 1) * prod W^{-1/2}.
double ellipsoid_volume(const Mat<double>& weights, int dims);

OverlapCounts overlap_counts(const ClusterAssignment& z, const ClusterAssignment& zs);

/// Weighted-average re-centering of Q* from the z* labelling onto the z
/// labelling. Rows or columns with empty clusters get 0: their occupancy
/// weight is 0, so they never enter a distance or membership sum.
ConnectivityMatrix embed_center(const ConnectivityMatrix& Qs, const ClusterAssignment& z,
                                const ClusterAssignment& zs);

struct DistanceDecomposition {
    double ellipsoid_term = 0.0;  // sum n_r n_s (Q_rs - Qbar_rs)^2
    double residual = 0.0;        // nonnegative remainder, zero when z == z*
};

/// Splits ||theta^{z,Q} - theta^{z*,Q*}||^2 into the re-centered occupancy
/// quadratic plus a nonnegative residual that does not depend on Q.
DistanceDecomposition decompose_distance(const ClusterAssignment& z, const ConnectivityMatrix& Q,
                                         const ClusterAssignment& zs, const ConnectivityMatrix& Qs);

/// Randomized audit of the ball-in-ellipsoid containment: samples Q uniform
/// on [0,1]^{k x k}; whenever ||theta^{z,Q} - theta^{z*,Q*}|| < t the point
/// must satisfy sum n_r n_s (Q_rs - Qbar*_rs)^2 < t^2. Returns the number of
/// violations (contract: 0).
int containment_check(const ClusterAssignment& z, const ClusterAssignment& zs,
                      const ConnectivityMatrix& Qs, double t, int trials, std::uint64_t seed);

/// Grows a greedily separated set inside the annulus slice along z: uniform
/// Q proposals are kept when they land in [inner, outer) and sit at Frobenius
/// distance >= inner/2 from every point already kept.
std::vector<ConnectivityMatrix> greedy_packing(const EdgeProbabilityMatrix& theta0,
                                               const ClusterAssignment& z, const AnnulusSpec& annulus,
                                               int attempts, std::uint64_t seed);

/// Shell-count ceiling from the volume comparison: ((5l/4 + 1)/(l/2))^{k^2}.
double packing_cardinality_bound(int shell_index, int k);

/// Verifies that every corner of the hyper-rectangle
/// prod [Q0_rs - eps/2, Q0_rs + eps/2] satisfies
/// sum n_r n_s (corner - Q0)^2 <= n^2 eps^2 / 4 < n^2 eps^2.
/// Requires all Q0 entries strictly inside (eps/2, 1 - eps/2).
bool rectangle_in_ellipsoid_check(const ConnectivityMatrix& Q0, const std::vector<int>& sizes,
                                  double eps);

} // namespace sbm
