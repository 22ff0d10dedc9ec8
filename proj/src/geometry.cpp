#include "sbm/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "sbm/numerics.hpp"
#include "sbm/rng.hpp"

namespace sbm {

bool WeightedEllipsoid::contains(const ConnectivityMatrix& X) const {
    double acc = 0.0;
    for (int r = 0; r < center.rows(); ++r)
        for (int s = 0; s < center.cols(); ++s) {
            const double d = X(r, s) - center(r, s);
            acc += weights(r, s) * d * d;
        }
    return acc <= 1.0;
}

double ellipsoid_volume(const Mat<double>& weights, int dims) {
    if (weights.rows() != dims || weights.cols() != dims)
        throw std::invalid_argument("ellipsoid_volume: weights must be dims x dims");
    double log_vol = 0.5 * dims * dims * std::log(M_PI) - log_gamma(0.5 * dims * dims + 1.0);
    for (int r = 0; r < dims; ++r)
        for (int s = 0; s < dims; ++s) {
            if (!(weights(r, s) > 0.0))
                throw std::invalid_argument("ellipsoid_volume: weights must be positive");
            log_vol -= 0.5 * std::log(weights(r, s));
        }
    return std::exp(log_vol);
}

OverlapCounts overlap_counts(const ClusterAssignment& z, const ClusterAssignment& zs) {
    if (z.n() != zs.n() || z.k() != zs.k())
        throw std::invalid_argument("overlap_counts: assignments must share n and k");
    OverlapCounts out{Mat<std::int64_t>(z.k(), z.k())};
    for (int i = 0; i < z.n(); ++i) ++out.counts(z.label(i), zs.label(i));
    return out;
}

ConnectivityMatrix embed_center(const ConnectivityMatrix& Qs, const ClusterAssignment& z,
                                const ClusterAssignment& zs) {
    const int k = z.k();
    if (Qs.rows() != k || Qs.cols() != k)
        throw std::invalid_argument("embed_center: Q* dimension does not match k");
    const OverlapCounts overlap = overlap_counts(z, zs);
    ConnectivityMatrix out(k, k, 0.0);
    for (int r = 0; r < k; ++r) {
        if (z.size_of(r) == 0) continue;
        for (int s = 0; s < k; ++s) {
            if (z.size_of(s) == 0) continue;
            double acc = 0.0;
            for (int rp = 0; rp < k; ++rp) {
                if (overlap.counts(r, rp) == 0) continue;
                for (int sp = 0; sp < k; ++sp)
                    acc += static_cast<double>(overlap.counts(r, rp)) *
                           static_cast<double>(overlap.counts(s, sp)) * Qs(rp, sp);
            }
            out(r, s) = acc / (static_cast<double>(z.size_of(r)) * static_cast<double>(z.size_of(s)));
        }
    }
    return out;
}

DistanceDecomposition decompose_distance(const ClusterAssignment& z, const ConnectivityMatrix& Q,
                                         const ClusterAssignment& zs, const ConnectivityMatrix& Qs) {
    const int k = z.k();
    if (Q.rows() != k || Q.cols() != k)
        throw std::invalid_argument("decompose_distance: Q dimension does not match k");
    const ConnectivityMatrix qbar = embed_center(Qs, z, zs);

    DistanceDecomposition out;
    for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s) {
            const double w = static_cast<double>(z.size_of(r)) * static_cast<double>(z.size_of(s));
            const double d = Q(r, s) - qbar(r, s);
            out.ellipsoid_term += w * d * d;
            out.residual -= w * qbar(r, s) * qbar(r, s);
        }
    for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s)
            out.residual += static_cast<double>(zs.size_of(r)) * static_cast<double>(zs.size_of(s)) *
                            Qs(r, s) * Qs(r, s);
    return out;
}

namespace {

// Direct double sum over node pairs; deliberately ignorant of the block and
// overlap shortcuts so it can serve as the audit-side distance.
double direct_distance_sq(const ClusterAssignment& z, const ConnectivityMatrix& Q,
                          const ClusterAssignment& zs, const ConnectivityMatrix& Qs) {
    double acc = 0.0;
    for (int i = 0; i < z.n(); ++i)
        for (int j = 0; j < z.n(); ++j) {
            const double d = Q(z.label(i), z.label(j)) - Qs(zs.label(i), zs.label(j));
            acc += d * d;
        }
    return acc;
}

} // namespace

int containment_check(const ClusterAssignment& z, const ClusterAssignment& zs,
                      const ConnectivityMatrix& Qs, double t, int trials, std::uint64_t seed) {
    if (!(t > 0.0)) throw std::invalid_argument("containment_check: t must be positive");
    const int k = z.k();
    const ConnectivityMatrix qbar = embed_center(Qs, z, zs);
    const double t_sq = t * t;

    Rng rng(seed);
    int violations = 0;
    ConnectivityMatrix Q(k, k);
    for (int trial = 0; trial < trials; ++trial) {
        for (int r = 0; r < k; ++r)
            for (int s = 0; s < k; ++s) Q(r, s) = rng.uniform01();
        if (direct_distance_sq(z, Q, zs, Qs) >= t_sq) continue;
        double ellipsoid_term = 0.0;
        for (int r = 0; r < k; ++r)
            for (int s = 0; s < k; ++s) {
                const double d = Q(r, s) - qbar(r, s);
                ellipsoid_term += static_cast<double>(z.size_of(r)) *
                                  static_cast<double>(z.size_of(s)) * d * d;
            }
        if (!(ellipsoid_term < t_sq)) ++violations;
    }
    return violations;
}

std::vector<ConnectivityMatrix> greedy_packing(const EdgeProbabilityMatrix& theta0,
                                               const ClusterAssignment& z, const AnnulusSpec& annulus,
                                               int attempts, std::uint64_t seed) {
    if (!(annulus.inner > 0.0 && annulus.inner < annulus.outer))
        throw std::invalid_argument("greedy_packing: need 0 < inner < outer");
    if (theta0.rows() != z.n() || theta0.cols() != z.n())
        throw std::invalid_argument("greedy_packing: theta0 dimension does not match z");
    const int k = z.k();
    const int n = z.n();

    // Per-block center sums make the distance to theta0 an O(k^2) evaluation:
    // ||theta^{z,Q} - theta0||^2 = sum_rs [ n_r n_s Q_rs^2 - 2 Q_rs T_rs + U_rs ].
    Mat<double> lin(k, k, 0.0), quad(k, k, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = theta0(i, j);
            lin(z.label(i), z.label(j)) += v;
            quad(z.label(i), z.label(j)) += v * v;
        }

    const double sep_sq = 0.25 * annulus.inner * annulus.inner;
    const double inner_sq = annulus.inner * annulus.inner;
    const double outer_sq = annulus.outer * annulus.outer;

    Rng rng(seed);
    std::vector<ConnectivityMatrix> net;
    ConnectivityMatrix Q(k, k);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        double dist_sq = 0.0;
        for (int r = 0; r < k; ++r)
            for (int s = 0; s < k; ++s) {
                Q(r, s) = rng.uniform01();
                const double w = static_cast<double>(z.size_of(r)) * static_cast<double>(z.size_of(s));
                dist_sq += w * Q(r, s) * Q(r, s) - 2.0 * Q(r, s) * lin(r, s) + quad(r, s);
            }
        if (dist_sq < inner_sq || dist_sq >= outer_sq) continue;

        bool separated = true;
        for (const ConnectivityMatrix& kept : net) {
            double between = 0.0;
            for (int r = 0; r < k; ++r)
                for (int s = 0; s < k; ++s) {
                    const double d = Q(r, s) - kept(r, s);
                    between += static_cast<double>(z.size_of(r)) *
                               static_cast<double>(z.size_of(s)) * d * d;
                }
            if (between < sep_sq) {
                separated = false;
                break;
            }
        }
        if (separated) net.push_back(Q);
    }
    return net;
}

double packing_cardinality_bound(int shell_index, int k) {
    if (shell_index < 1) throw std::invalid_argument("packing_cardinality_bound: shell index must be >= 1");
    const double l = static_cast<double>(shell_index);
    return std::pow((1.25 * l + 1.0) / (0.5 * l), static_cast<double>(k) * k);
}

bool rectangle_in_ellipsoid_check(const ConnectivityMatrix& Q0, const std::vector<int>& sizes,
                                  double eps) {
    const int k = Q0.rows();
    if (Q0.cols() != k) throw std::invalid_argument("rectangle_in_ellipsoid_check: Q0 must be square");
    if (static_cast<int>(sizes.size()) != k)
        throw std::invalid_argument("rectangle_in_ellipsoid_check: sizes length must equal k");
    if (!(eps > 0.0)) throw std::invalid_argument("rectangle_in_ellipsoid_check: eps must be positive");
    const double half = 0.5 * eps;
    for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s)
            if (!(Q0(r, s) > half && Q0(r, s) < 1.0 - half))
                throw std::invalid_argument(
                    "rectangle_in_ellipsoid_check: rectangle leaves [0,1]^{k x k}");

    std::int64_t n = 0;
    for (int s : sizes) n += s;
    const double n_sq = static_cast<double>(n) * static_cast<double>(n);
    const double budget = n_sq * (eps * eps / 4.0);

    // Corner displacements are +-eps/2 by construction, so the weighted sum
    // is the same for every sign pattern; enumerate them anyway while the
    // corner count stays small.
    const int dims = k * k;
    const std::int64_t corners = dims <= 20 ? (std::int64_t{1} << dims) : 1;
    for (std::int64_t mask = 0; mask < corners; ++mask) {
        double acc = 0.0;
        for (int r = 0; r < k; ++r)
            for (int s = 0; s < k; ++s) {
                const int bit = r * k + s;
                const double d = (mask >> bit) & 1 ? half : -half;
                acc += static_cast<double>(sizes[r]) * static_cast<double>(sizes[s]) * d * d;
            }
        if (!(acc <= budget && budget < n_sq * (eps * eps))) return false;
    }
    return true;
}

} // namespace sbm
