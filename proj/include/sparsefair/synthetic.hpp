#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "sparsefair/data.hpp"
#include "sparsefair/error.hpp"
#include "sparsefair/rng.hpp"

// Seeded generators for the simulated evaluation scenarios, so the whole
// pipeline runs end to end without external data. Group sizes differ by at
// most one; remainder rows go to the lowest-index groups.

namespace sparsefair {

enum class scenario { multigroup_cls, twogroup_cls, twogroup_reg };

inline const char* to_string(scenario s) {
    switch (s) {
    case scenario::multigroup_cls: return "multigroup-cls";
    case scenario::twogroup_cls: return "twogroup-cls";
    case scenario::twogroup_reg: return "twogroup-reg";
    }
    return "?";
}

struct scenario_spec {
    scenario kind = scenario::multigroup_cls;
    std::size_t n = 1000;
    std::size_t n_groups = 2; // multigroup only
    std::uint64_t seed = 0;
};

inline std::vector<std::size_t> group_sizes(std::size_t n, std::size_t n_groups) {
    std::vector<std::size_t> sizes(n_groups, n / n_groups);
    for (std::size_t g = 0; g < n % n_groups; ++g) ++sizes[g];
    return sizes;
}

// Exact population rate matrix of the multigroup scenario: group g has
// class-1 weight 0.5 + 0.4*g/(n_groups-1) and class-0 weight the complement,
// so the extreme class-1 rates are always 0.5 and 0.9.
inline std::vector<std::vector<double>> multigroup_rate_matrix(std::size_t n_groups) {
    if (n_groups < 2) throw error(errc::invalid_params, "need at least two groups");
    std::vector<std::vector<double>> rates(n_groups, std::vector<double>(2, 0.0));
    for (std::size_t g = 0; g < n_groups; ++g) {
        const double p1 =
            0.5 + 0.4 * static_cast<double>(g) / static_cast<double>(n_groups - 1);
        rates[g][0] = 1.0 - p1;
        rates[g][1] = p1;
    }
    return rates;
}

struct multigroup_sample {
    classification_data data; // y_pred mirrors y_true: the generator plays a
                              // perfect predictor, so parity criteria see the
                              // label rates themselves
    std::vector<std::vector<double>> population_rates;
};

inline multigroup_sample gen_multigroup_cls(std::size_t n, std::size_t n_groups,
                                            std::uint64_t seed) {
    if (n_groups < 2) throw error(errc::invalid_params, "need at least two groups");
    if (n < n_groups) throw error(errc::invalid_params, "need at least one row per group");
    multigroup_sample out;
    out.population_rates = multigroup_rate_matrix(n_groups);
    out.data.num_classes = 2;

    rng r(seed);
    const auto sizes = group_sizes(n, n_groups);
    for (std::size_t g = 0; g < n_groups; ++g) {
        const double p1 = out.population_rates[g][1];
        for (std::size_t i = 0; i < sizes[g]; ++i) {
            const int y = r.bernoulli(p1) ? 1 : 0;
            out.data.y_true.push_back(y);
            out.data.y_pred.push_back(y);
            out.data.group.push_back(static_cast<int>(g));
        }
    }
    return out;
}

// Two equal-size groups with class-1 rates 0.5 and 0.8 used directly as the
// label mechanism; predictions mirror the labels.
inline classification_data gen_twogroup_cls(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw error(errc::invalid_params, "need at least two rows");
    classification_data data;
    data.num_classes = 2;
    rng r(seed);
    const auto sizes = group_sizes(n, 2);
    const double rates[2] = {0.5, 0.8};
    for (std::size_t g = 0; g < 2; ++g) {
        for (std::size_t i = 0; i < sizes[g]; ++i) {
            const int y = r.bernoulli(rates[g]) ? 1 : 0;
            data.y_true.push_back(y);
            data.y_pred.push_back(y);
            data.group.push_back(static_cast<int>(g));
        }
    }
    return data;
}

struct regression_sample {
    regression_data data; // y_pred from the true-coefficient predictor y = x
    std::vector<double> x;
};

// One feature per row: group 0 draws x ~ N(30, 4), group 1 draws x ~ N(10, 4)
// (variances). Targets are y = x + eps with noise variances (10, 1) by
// default. The shared coefficient is fixed at 1 with zero intercept.
inline regression_sample gen_twogroup_reg(std::size_t n, std::uint64_t seed,
                                          double noise_var_a = 10.0, double noise_var_b = 1.0) {
    if (n < 4) throw error(errc::invalid_params, "need at least four rows");
    if (noise_var_a < 0.0 || noise_var_b < 0.0)
        throw error(errc::invalid_params, "noise variances must be >= 0");
    regression_sample out;
    rng r(seed);
    const auto sizes = group_sizes(n, 2);
    const double feature_mean[2] = {30.0, 10.0};
    const double feature_sd = 2.0; // variance 4
    const double noise_sd[2] = {std::sqrt(noise_var_a), std::sqrt(noise_var_b)};
    for (std::size_t g = 0; g < 2; ++g) {
        for (std::size_t i = 0; i < sizes[g]; ++i) {
            const double x = r.normal(feature_mean[g], feature_sd);
            const double y = x + noise_sd[g] * r.normal();
            out.x.push_back(x);
            out.data.y_true.push_back(y);
            out.data.y_pred.push_back(x);
            out.data.group.push_back(static_cast<int>(g));
        }
    }
    return out;
}

// Closed-form one-feature least squares. Residuals are orthogonal to x up to
// rounding; a constant regressor is rejected.
inline std::pair<double, double> fit_simple_ols(const std::vector<double>& x,
                                                const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n)
        throw error(errc::invalid_input, "need at least two (x, y) pairs of equal length");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw error(errc::degenerate_fit, "regressor is constant");
    const double slope = sxy / sxx;
    return {my - slope * mx, slope};
}

} // namespace sparsefair
