#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace sbm {

/// Thread-safe log-gamma. std::lgamma writes the signgam global on glibc;
/// all arguments here are positive so the reentrant variant is a drop-in.
inline double log_gamma(double x) {
#ifdef __GLIBC__
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

inline double log_beta(double a, double b) {
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

inline double log_sum_exp(const std::vector<double>& xs) {
    if (xs.empty()) return -std::numeric_limits<double>::infinity();
    const double m = *std::max_element(xs.begin(), xs.end());
    if (!std::isfinite(m)) return m;
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - m);
    return m + std::log(acc);
}

} // namespace sbm
