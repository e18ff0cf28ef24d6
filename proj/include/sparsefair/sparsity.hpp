#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "sparsefair/error.hpp"

namespace sparsefair {

enum class measure_kind { mpd, gini, pq };
enum class transform_kind { none, exp };

inline const char* to_string(measure_kind k) {
    switch (k) {
    case measure_kind::mpd: return "mpd";
    case measure_kind::gini: return "gini";
    case measure_kind::pq: return "pq";
    }
    return "?";
}

inline const char* to_string(transform_kind t) {
    return t == transform_kind::exp ? "exp" : "none";
}

// Which sparsity measure to apply, plus the positivity transform used on raw
// inputs before the measure sees them.
struct measure_spec {
    measure_kind kind = measure_kind::pq;
    double p = 1.0;
    double q = 2.0;
    transform_kind transform = transform_kind::none;

    void validate() const {
        if (kind == measure_kind::pq) {
            if (!std::isfinite(p) || !std::isfinite(q) || p <= 0.0 || q <= p)
                throw error(errc::invalid_params,
                            "pq index requires 0 < p < q, got p=" + std::to_string(p) +
                                " q=" + std::to_string(q));
        }
    }
};

inline measure_spec mpd_spec() { return {measure_kind::mpd, 1.0, 2.0, transform_kind::none}; }
inline measure_spec gini_spec() { return {measure_kind::gini, 1.0, 2.0, transform_kind::none}; }
inline measure_spec pq_spec(double p = 1.0, double q = 2.0) {
    return {measure_kind::pq, p, q, transform_kind::none};
}

namespace detail {

// Index-order accumulation; pairwise splitting kicks in past 1024 components
// so report values reproduce across platforms for large vectors.
inline double stable_sum(std::span<const double> x) {
    if (x.size() <= 1024) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    const std::size_t mid = x.size() / 2;
    return stable_sum(x.first(mid)) + stable_sum(x.subspan(mid));
}

inline void require_valid(std::span<const double> w, bool non_negative = true) {
    if (w.empty()) throw error(errc::invalid_input, "vector must have at least one component");
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!std::isfinite(w[i]))
            throw error(errc::invalid_input,
                        "component " + std::to_string(i) + " is not finite");
        if (non_negative && w[i] < 0.0)
            throw error(errc::negative_input,
                        "component " + std::to_string(i) + " is " + std::to_string(w[i]));
    }
}

inline bool all_zero(std::span<const double> w) {
    return std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; });
}

} // namespace detail

// (sum_i |w_i|^p)^(1/p) for p > 0; 0 iff every component is 0.
inline double lp_norm(std::span<const double> w, double p) {
    detail::require_valid(w, /*non_negative=*/false);
    if (!std::isfinite(p) || p <= 0.0)
        throw error(errc::invalid_params, "lp norm requires p > 0");
    std::vector<double> powed(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) powed[i] = std::pow(std::fabs(w[i]), p);
    const double s = detail::stable_sum(powed);
    return std::pow(s, 1.0 / p);
}

// max component minus min component; 0 for a single component.
inline double mpd(std::span<const double> w) {
    detail::require_valid(w);
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    return *hi - *lo;
}

// Mean absolute pairwise difference normalised by 2*mean mass:
//   sum_{i,j} |w_i - w_j| / (2 d sum_i w_i)
// The double sum is kept literal; gini_sorted_form below is the independent
// sorted-linear route and the two must agree to 1e-12 relative.
inline double gini(std::span<const double> w, warning_list* warnings = nullptr) {
    detail::require_valid(w);
    if (detail::all_zero(w)) {
        warn(warnings, "ZeroVector", "gini of the all-zero vector reported as 0");
        return 0.0;
    }
    const std::size_t d = w.size();
    std::vector<double> row(d);
    for (std::size_t i = 0; i < d; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += std::fabs(w[i] - w[j]);
        row[i] = s;
    }
    const double num = detail::stable_sum(row);
    const double den = 2.0 * static_cast<double>(d) * detail::stable_sum(w);
    const double g = num / den;
    return g < 0.0 ? 0.0 : g;
}

// Sorted-linear Gini: L1-normalise, sort decreasing, (1/d) sum (d+1-2i) w_i
// with 1-based i. Equals gini() on the same input up to rounding.
inline double gini_sorted_form(std::span<const double> w, warning_list* warnings = nullptr) {
    detail::require_valid(w);
    if (detail::all_zero(w)) {
        warn(warnings, "ZeroVector", "gini of the all-zero vector reported as 0");
        return 0.0;
    }
    std::vector<double> sorted(w.begin(), w.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const double total = detail::stable_sum(sorted);
    const double d = static_cast<double>(sorted.size());
    std::vector<double> terms(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        terms[i] = (d + 1.0 - 2.0 * static_cast<double>(i + 1)) * (sorted[i] / total);
    const double g = detail::stable_sum(terms) / d;
    return g < 0.0 ? 0.0 : g;
}

// PQ index: 1 - d^(1/q - 1/p) * ||w||_p / ||w||_q for 0 < p < q.
// 0 iff components are equal; maximum 1 - d^(1/q - 1/p) iff exactly one
// component is nonzero.
inline double pq_index(std::span<const double> w, double p, double q,
                       warning_list* warnings = nullptr) {
    if (!std::isfinite(p) || !std::isfinite(q) || p <= 0.0 || q <= p)
        throw error(errc::invalid_params,
                    "pq index requires 0 < p < q, got p=" + std::to_string(p) +
                        " q=" + std::to_string(q));
    detail::require_valid(w);
    if (detail::all_zero(w)) {
        warn(warnings, "ZeroVector", "pq index of the all-zero vector reported as 0");
        return 0.0;
    }
    const double d = static_cast<double>(w.size());
    const double ratio = lp_norm(w, p) / lp_norm(w, q);
    const double v = 1.0 - std::pow(d, 1.0 / q - 1.0 / p) * ratio;
    return v < 0.0 ? 0.0 : v; // clamp float dust on equal-component vectors
}

// Positivity transform applied to raw values before any measure.
// exp maps every component to e^x; none passes through and rejects negatives
// naming the offending index.
inline std::vector<double> apply_transform(std::span<const double> w, transform_kind t) {
    detail::require_valid(w, /*non_negative=*/false);
    std::vector<double> out(w.begin(), w.end());
    if (t == transform_kind::exp) {
        for (double& v : out) v = std::exp(v);
    } else {
        for (std::size_t i = 0; i < out.size(); ++i)
            if (out[i] < 0.0)
                throw error(errc::negative_input,
                            "component " + std::to_string(i) + " is " + std::to_string(out[i]) +
                                "; use the exp transform for inputs that can be negative");
    }
    return out;
}

// Single entry point used by the fairness criteria: transform, then dispatch.
inline double sparsity(std::span<const double> w, const measure_spec& spec,
                       warning_list* warnings = nullptr) {
    spec.validate();
    const std::vector<double> v = apply_transform(w, spec.transform);
    switch (spec.kind) {
    case measure_kind::mpd: return mpd(v);
    case measure_kind::gini: return gini(v, warnings);
    case measure_kind::pq: return pq_index(v, spec.p, spec.q, warnings);
    }
    throw error(errc::invalid_params, "unknown measure kind");
}

} // namespace sparsefair
