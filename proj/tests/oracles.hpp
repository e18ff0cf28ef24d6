#pragma once

// Brute-force reference implementations used only by tests. They stay
// deliberately naive and independent of the library code paths they check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracles {

// classic two-sample KS statistic: scan both samples' values directly
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    double best = 0.0;
    for (double t : pooled) {
        double fa = 0.0, fb = 0.0;
        for (double v : a) fa += v <= t ? 1.0 : 0.0;
        for (double v : b) fb += v <= t ? 1.0 : 0.0;
        fa /= static_cast<double>(a.size());
        fb /= static_cast<double>(b.size());
        best = std::max(best, std::fabs(fa - fb));
    }
    return best;
}

// 1-Wasserstein distance between two equal-size empirical distributions via
// sorted-sample matching
inline double w1_equal_size(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
    return s / static_cast<double>(a.size());
}

// statistical parity by exhaustive enumeration of class and group pairs
inline double sp_pairwise_max(const std::vector<std::vector<double>>& rates) {
    double best = 0.0;
    for (std::size_t y = 0; y < rates.front().size(); ++y)
        for (std::size_t a = 0; a < rates.size(); ++a)
            for (std::size_t b = 0; b < rates.size(); ++b)
                best = std::max(best, std::fabs(rates[a][y] - rates[b][y]));
    return best;
}

// equalized odds by exhaustive enumeration over (y, y', a, a')
inline double eo_pairwise_max(const std::vector<std::vector<std::vector<double>>>& cond) {
    // cond[a][y_true][y_pred]
    const std::size_t A = cond.size();
    const std::size_t C = cond.front().size();
    double best = 0.0;
    for (std::size_t cy = 0; cy < C; ++cy)
        for (std::size_t y = 0; y < C; ++y)
            for (std::size_t a = 0; a < A; ++a)
                for (std::size_t b = 0; b < A; ++b)
                    best = std::max(best, std::fabs(cond[a][cy][y] - cond[b][cy][y]));
    return best;
}

} // namespace oracles
