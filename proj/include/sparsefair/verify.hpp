#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsefair/error.hpp"
#include "sparsefair/rng.hpp"
#include "sparsefair/sparsity.hpp"

// Randomized numerical verification of the six ideal sparsity properties
// (D1-D4, P1, P2) and the structural results T31-T36 relating MPD, Gini and
// the PQ index. Checks run on the bare measure: the positivity transform in
// a measure_spec is ignored here since the properties concern S itself.

namespace sparsefair {

enum class property_id {
    d1_robin_hood,
    d2_scaling,
    d3_rising_tide,
    d4_cloning,
    p1_bill_gates,
    p2_babies,
    t31_max,
    t32_min,
    t33_l2dist,
    t34_transfer,
    t35_bounds,
    t36_trim,
};

inline const char* to_string(property_id p) {
    switch (p) {
    case property_id::d1_robin_hood: return "D1_ROBIN_HOOD";
    case property_id::d2_scaling: return "D2_SCALING";
    case property_id::d3_rising_tide: return "D3_RISING_TIDE";
    case property_id::d4_cloning: return "D4_CLONING";
    case property_id::p1_bill_gates: return "P1_BILL_GATES";
    case property_id::p2_babies: return "P2_BABIES";
    case property_id::t31_max: return "T31_MAX";
    case property_id::t32_min: return "T32_MIN";
    case property_id::t33_l2dist: return "T33_L2DIST";
    case property_id::t34_transfer: return "T34_TRANSFER";
    case property_id::t35_bounds: return "T35_BOUNDS";
    case property_id::t36_trim: return "T36_TRIM";
    }
    return "?";
}

inline bool is_axiom(property_id p) {
    return p <= property_id::p2_babies;
}

constexpr property_id all_properties[] = {
    property_id::d1_robin_hood, property_id::d2_scaling,  property_id::d3_rising_tide,
    property_id::d4_cloning,    property_id::p1_bill_gates, property_id::p2_babies,
    property_id::t31_max,       property_id::t32_min,     property_id::t33_l2dist,
    property_id::t34_transfer,  property_id::t35_bounds,  property_id::t36_trim,
};

// MPD violates Robin Hood, Scaling, Rising Tide and Babies; Gini and the
// PQ index satisfy everything. Theorems are expected to hold regardless of
// the measure passed on the command line.
inline bool expected_to_hold(property_id p, measure_kind m) {
    if (!is_axiom(p) || m != measure_kind::mpd) return true;
    return p == property_id::d4_cloning || p == property_id::p1_bill_gates;
}

struct counterexample {
    std::vector<std::vector<double>> inputs; // vectors fed to the measure
    std::vector<double> observed;            // measure values, in input order
    std::string relation;                    // the relation that was expected
};

struct check_report {
    property_id property = property_id::d1_robin_hood;
    measure_spec measure;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    std::optional<counterexample> first_counterexample;
    std::uint64_t seed = 0;
};

struct dim_range {
    std::size_t lo = 2;
    std::size_t hi = 64;
};

namespace detail {

constexpr double kEqTol = 1e-9;        // tolerance for equality properties
constexpr double kStrictMargin = 1e-12; // required slack for strict inequalities

inline measure_spec bare(const measure_spec& m) {
    measure_spec b = m;
    b.transform = transform_kind::none;
    return b;
}

inline double eval(const measure_spec& m, const std::vector<double>& w) {
    return sparsity(w, bare(m));
}

inline std::size_t sample_dim(rng& r, dim_range dims) {
    return dims.lo + static_cast<std::size_t>(r.below(dims.hi - dims.lo + 1));
}

// Components i.i.d. uniform on (0.01, 1): strictly positive, away from the
// near-zero region that breaks relative comparisons.
inline std::vector<double> sample_vec(rng& r, std::size_t d) {
    std::vector<double> w(d);
    for (double& v : w) v = r.uniform(0.01, 1.0);
    return w;
}

inline std::optional<counterexample> fail_if(bool violated, std::vector<std::vector<double>> inputs,
                                             std::vector<double> observed, std::string relation) {
    if (!violated) return std::nullopt;
    return counterexample{std::move(inputs), std::move(observed), std::move(relation)};
}

// --- single-case axiom evaluations, shared by random trials and the
// --- directed counterexample templates ---

inline std::optional<counterexample> case_robin_hood(const measure_spec& m,
                                                     const std::vector<double>& w, std::size_t i,
                                                     std::size_t j, double alpha) {
    std::vector<double> w2 = w;
    w2[i] -= alpha;
    w2[j] += alpha;
    const double before = eval(m, w);
    const double after = eval(m, w2);
    return fail_if(!(after < before - kStrictMargin), {w, w2}, {before, after},
                   "S(transfer(w)) < S(w)");
}

inline std::optional<counterexample> case_scaling(const measure_spec& m,
                                                  const std::vector<double>& w, double alpha) {
    std::vector<double> w2 = w;
    for (double& v : w2) v *= alpha;
    const double base = eval(m, w);
    const double scaled = eval(m, w2);
    return fail_if(std::fabs(scaled - base) > kEqTol * std::max(1.0, std::fabs(base)), {w, w2},
                   {base, scaled}, "S(alpha*w) = S(w)");
}

inline std::optional<counterexample> case_rising_tide(const measure_spec& m,
                                                      const std::vector<double>& w, double alpha) {
    std::vector<double> w2 = w;
    for (double& v : w2) v += alpha;
    const double before = eval(m, w);
    const double after = eval(m, w2);
    return fail_if(!(after < before - kStrictMargin), {w, w2}, {before, after},
                   "S(w + alpha) < S(w)");
}

inline std::optional<counterexample> case_cloning(const measure_spec& m,
                                                  const std::vector<double>& w) {
    std::vector<double> w2 = w;
    w2.insert(w2.end(), w.begin(), w.end());
    const double base = eval(m, w);
    const double cloned = eval(m, w2);
    return fail_if(std::fabs(cloned - base) > kEqTol * std::max(1.0, std::fabs(base)), {w, w2},
                   {base, cloned}, "S([w,w]) = S(w)");
}

// beta_i = (w_max - w_i) + 1 makes the boosted component dominate, which is
// all the existence quantifier in P1 needs.
inline std::optional<counterexample> case_bill_gates(const measure_spec& m,
                                                     const std::vector<double>& w, std::size_t i,
                                                     double alpha) {
    const double wmax = *std::max_element(w.begin(), w.end());
    const double beta = (wmax - w[i]) + 1.0;
    std::vector<double> base = w, boosted = w;
    base[i] += beta;
    boosted[i] += beta + alpha;
    const double sb = eval(m, base);
    const double sp = eval(m, boosted);
    return fail_if(!(sp > sb + kStrictMargin), {base, boosted}, {sb, sp},
                   "S(w_i + beta + alpha) > S(w_i + beta)");
}

inline std::optional<counterexample> case_babies(const measure_spec& m,
                                                 const std::vector<double>& w) {
    std::vector<double> w2 = w;
    w2.push_back(0.0);
    const double base = eval(m, w);
    const double grown = eval(m, w2);
    return fail_if(!(grown > base + kStrictMargin), {w, w2}, {base, grown}, "S([w,0]) > S(w)");
}

// --- randomized trials ---

inline std::optional<counterexample> trial_axiom(property_id p, const measure_spec& m, rng& r,
                                                 dim_range dims) {
    const std::size_t d = sample_dim(r, dims);
    switch (p) {
    case property_id::d1_robin_hood: {
        for (int attempt = 0; attempt < 256; ++attempt) {
            std::vector<double> w = sample_vec(r, d);
            std::size_t i = static_cast<std::size_t>(r.below(d));
            std::size_t j = static_cast<std::size_t>(r.below(d));
            if (i == j) continue;
            if (w[i] < w[j]) std::swap(i, j);
            const double gap = w[i] - w[j];
            if (gap < 0.05) continue; // keep the mandated decrease above float noise
            const double alpha = gap * r.uniform(0.05, 0.45);
            return case_robin_hood(m, w, i, j, alpha);
        }
        return std::nullopt; // unreachable in practice
    }
    case property_id::d2_scaling: {
        const std::vector<double> w = sample_vec(r, d);
        double u = 0.0;
        do { u = r.uniform(-2.0, 2.0); } while (std::fabs(u) < 0.1);
        return case_scaling(m, w, std::exp(u));
    }
    case property_id::d3_rising_tide: {
        std::vector<double> w;
        do { w = sample_vec(r, d); } while (mpd(w) < 1e-3);
        return case_rising_tide(m, w, r.uniform(0.1, 2.0));
    }
    case property_id::d4_cloning:
        return case_cloning(m, sample_vec(r, d));
    case property_id::p1_bill_gates:
        return case_bill_gates(m, sample_vec(r, d), static_cast<std::size_t>(r.below(d)),
                               r.uniform(0.1, 2.0));
    case property_id::p2_babies: {
        std::vector<double> w = sample_vec(r, d);
        // half the trials carry an exact zero: the Babies property must hold
        // there too, and that is where MPD breaks
        if (r.bernoulli(0.5)) w[r.below(d)] = 0.0;
        return case_babies(m, w);
    }
    default:
        throw error(errc::invalid_params, "not an axiom property");
    }
}

inline std::optional<counterexample> trial_theorem(property_id p, const measure_spec& m, rng& r,
                                                   dim_range dims) {
    const double pp = m.kind == measure_kind::pq ? m.p : 1.0;
    const double qq = m.kind == measure_kind::pq ? m.q : 2.0;
    const std::size_t d = sample_dim(r, dims);

    switch (p) {
    case property_id::t31_max: {
        std::vector<double> w(d, 0.0);
        w[r.below(d)] = r.uniform(0.1, 10.0);
        const double got = pq_index(w, pp, qq);
        const double want = 1.0 - std::pow(static_cast<double>(d), 1.0 / qq - 1.0 / pp);
        return fail_if(std::fabs(got - want) > 1e-12, {w}, {got, want},
                       "pq(one-hot) = 1 - d^(1/q-1/p)");
    }
    case property_id::t32_min: {
        const std::vector<double> constant(d, r.uniform(0.1, 10.0));
        const double at_const = pq_index(constant, pp, qq);
        if (at_const >= 1e-12)
            return counterexample{{constant}, {at_const}, "pq(c*1) < 1e-12"};
        std::vector<double> w;
        do { w = sample_vec(r, d); } while (mpd(w) < 1e-3);
        const double at_rand = pq_index(w, pp, qq);
        return fail_if(!(at_rand > 1e-12), {w}, {at_rand}, "pq(non-constant) > 0");
    }
    case property_id::t33_l2dist: {
        const std::vector<double> w = sample_vec(r, d);
        const double n2 = lp_norm(w, 2.0);
        const double center = 1.0 / std::sqrt(static_cast<double>(d));
        std::vector<double> diff(d);
        for (std::size_t i = 0; i < d; ++i) diff[i] = w[i] / n2 - center;
        const double lhs = lp_norm(diff, 2.0);
        const double rhs = std::sqrt(2.0 * pq_index(w, 1.0, 2.0));
        return fail_if(std::fabs(lhs - rhs) > 1e-9, {w}, {lhs, rhs},
                       "||w/||w||_2 - d^(-1/2) 1||_2 = sqrt(2 pq(w,1,2))");
    }
    case property_id::t34_transfer: {
        std::vector<double> w = sample_vec(r, d);
        std::size_t k = static_cast<std::size_t>(
            std::max_element(w.begin(), w.end()) - w.begin());
        w[k] += 0.2; // strict unique maximum with a solid gap
        double second = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            if (i != k) second = std::max(second, w[i]);
        // largest transfer that keeps the donor component on top
        const double bound = (w[k] - second) * static_cast<double>(d - 1) / static_cast<double>(d);
        const double c = bound * r.uniform(0.05, 0.95);
        std::vector<double> w2 = w;
        w2[k] -= c;
        for (std::size_t i = 0; i < d; ++i)
            if (i != k) w2[i] += c / static_cast<double>(d - 1);
        const double before = pq_index(w, 1.0, 2.0);
        const double after = pq_index(w2, 1.0, 2.0);
        return fail_if(!(after < before - kStrictMargin), {w, w2}, {before, after},
                       "pq(spread-from-max(w)) < pq(w)");
    }
    case property_id::t35_bounds: {
        const std::vector<double> w = sample_vec(r, d);
        const double g = gini(w);
        const double md = mpd(w);
        const double n2 = lp_norm(w, 2.0);
        const double pqv = pq_index(w, 1.0, 2.0);
        const double slack1 = static_cast<double>(d) * md / (2.0 * n2) - g;
        const double slack2 = 2.0 * n2 * std::sqrt(2.0 * pqv) - md;
        const double slack3 = g - pqv;
        const bool violated = slack1 < -kStrictMargin || slack2 < -kStrictMargin ||
                              slack3 < -kStrictMargin;
        return fail_if(violated, {w}, {slack1, slack2, slack3},
                       "gini <= d*mpd/(2 l2); mpd <= 2 l2 sqrt(2 pq); pq <= gini");
    }
    case property_id::t36_trim: {
        const std::size_t dd = std::max<std::size_t>(4, d);
        const double lo = r.uniform(0.02, 0.1);
        const double hi = r.uniform(0.9, 1.5);
        for (int attempt = 0; attempt < 1000; ++attempt) {
            std::vector<double> a(dd - 2), b(dd - 2);
            for (double& v : a) v = r.uniform(lo + 0.02, hi - 0.02);
            for (double& v : b) v = r.uniform(lo + 0.02, hi - 0.02);
            // match interior q-norms so both full vectors share max, min and
            // q-norm, which is the theorem's normalized-extremes hypothesis
            const double scale = lp_norm(a, qq) / lp_norm(b, qq);
            bool ok = true;
            for (double& v : b) {
                v *= scale;
                if (v <= lo + 1e-6 || v >= hi - 1e-6) ok = false;
            }
            if (!ok) continue;
            auto full = [&](const std::vector<double>& mid) {
                std::vector<double> w;
                w.reserve(dd);
                w.push_back(hi);
                w.insert(w.end(), mid.begin(), mid.end());
                w.push_back(lo);
                return w;
            };
            std::vector<double> w1 = full(a), w2 = full(b);
            double pq1 = pq_index(w1, pp, qq);
            double pq2 = pq_index(w2, pp, qq);
            if (std::fabs(pq1 - pq2) < 1e-9) continue;
            if (pq1 > pq2) {
                std::swap(w1, w2);
                std::swap(pq1, pq2);
                std::swap(a, b);
            }
            const double t1 = pq_index(a, pp, qq);
            const double t2 = pq_index(b, pp, qq);
            return fail_if(!(t1 < t2 - kStrictMargin), {w1, w2, a, b}, {pq1, pq2, t1, t2},
                           "pq(w1) < pq(w2) implies pq(trim(w1)) < pq(trim(w2))");
        }
        return std::nullopt; // construction failed to land; counts as a pass
    }
    default:
        throw error(errc::invalid_params, "not a theorem property");
    }
}

inline std::optional<counterexample> run_trial(property_id p, const measure_spec& m, rng& r,
                                               dim_range dims) {
    return is_axiom(p) ? trial_axiom(p, m, r, dims) : trial_theorem(p, m, r, dims);
}

} // namespace detail

inline void validate_check_args(std::uint64_t trials, dim_range dims) {
    if (trials < 1) throw error(errc::invalid_params, "trials must be >= 1");
    if (dims.lo < 2 || dims.lo > dims.hi)
        throw error(errc::invalid_params, "dimension range must satisfy 2 <= lo <= hi");
}

inline check_report check_axiom(property_id property, const measure_spec& measure,
                                std::uint64_t trials, dim_range dims, std::uint64_t seed) {
    if (!is_axiom(property)) throw error(errc::invalid_params, "property is not an axiom");
    validate_check_args(trials, dims);
    measure.validate();
    check_report rep{property, measure, trials, 0, std::nullopt, seed};
    for (std::uint64_t t = 0; t < trials; ++t) {
        rng r(derive_seed(seed, t));
        if (auto ce = detail::run_trial(property, measure, r, dims)) {
            ++rep.failures;
            if (!rep.first_counterexample) rep.first_counterexample = std::move(*ce);
        }
    }
    return rep;
}

inline check_report check_theorem(property_id property, std::uint64_t trials, dim_range dims,
                                  std::uint64_t seed, const measure_spec& measure = pq_spec()) {
    if (is_axiom(property)) throw error(errc::invalid_params, "property is not a theorem");
    validate_check_args(trials, dims);
    measure.validate();
    check_report rep{property, measure, trials, 0, std::nullopt, seed};
    for (std::uint64_t t = 0; t < trials; ++t) {
        rng r(derive_seed(seed, t));
        if (auto ce = detail::run_trial(property, measure, r, dims)) {
            ++rep.failures;
            if (!rep.first_counterexample) rep.first_counterexample = std::move(*ce);
        }
    }
    return rep;
}

// Directed search: known adversarial templates first (they expose every MPD
// axiom violation immediately), then randomized trials up to the budget.
inline check_report counterexample_search(property_id property, const measure_spec& measure,
                                          std::uint64_t budget, std::uint64_t seed = 0,
                                          dim_range dims = {}) {
    if (budget < 1) throw error(errc::invalid_params, "budget must be >= 1");
    measure.validate();
    check_report rep{property, measure, 0, 0, std::nullopt, seed};

    auto record = [&](std::optional<counterexample> ce) {
        ++rep.trials;
        if (ce) {
            ++rep.failures;
            if (!rep.first_counterexample) rep.first_counterexample = std::move(*ce);
        }
        return rep.trials >= budget;
    };

    switch (property) {
    case property_id::d1_robin_hood:
        // interior transfer: both endpoints away from max and min
        if (record(detail::case_robin_hood(measure, {4.0, 3.0, 1.0, 0.0}, 1, 2, 0.5))) return rep;
        break;
    case property_id::d2_scaling:
        if (record(detail::case_scaling(measure, {1.0, 0.0}, 2.0))) return rep;
        break;
    case property_id::d3_rising_tide:
        if (record(detail::case_rising_tide(measure, {1.0, 0.0}, 1.0))) return rep;
        break;
    case property_id::p2_babies:
        if (record(detail::case_babies(measure, {1.0, 0.0}))) return rep;
        break;
    default:
        break;
    }
    for (std::uint64_t t = rep.trials; t < budget; ++t) {
        rng r(derive_seed(seed, t));
        if (record(detail::run_trial(property, measure, r, dims))) break;
    }
    return rep;
}

} // namespace sparsefair
