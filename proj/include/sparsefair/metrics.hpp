#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparsefair/data.hpp"
#include "sparsefair/error.hpp"
#include "sparsefair/groups.hpp"
#include "sparsefair/sparsity.hpp"

namespace sparsefair {

using partition_map = std::map<int, std::vector<std::size_t>>;

enum class perf_metric {
    accuracy,
    tpr_fpr_avg,
    f1,
    auroc,
    cross_entropy,
    mse,
    mae,
    r2,
    log_likelihood,
};

inline const char* to_string(perf_metric m) {
    switch (m) {
    case perf_metric::accuracy: return "accuracy";
    case perf_metric::tpr_fpr_avg: return "tpr-fpr-avg";
    case perf_metric::f1: return "f1";
    case perf_metric::auroc: return "auroc";
    case perf_metric::cross_entropy: return "cross-entropy";
    case perf_metric::mse: return "mse";
    case perf_metric::mae: return "mae";
    case perf_metric::r2: return "r2";
    case perf_metric::log_likelihood: return "log-likelihood";
    }
    return "?";
}

struct perf_metric_spec {
    perf_metric kind = perf_metric::tpr_fpr_avg;
    double variance = 1.0; // Gaussian residual variance for log_likelihood

    bool per_class() const {
        return kind == perf_metric::tpr_fpr_avg || kind == perf_metric::f1 ||
               kind == perf_metric::auroc;
    }
    bool needs_scores() const {
        return kind == perf_metric::auroc || kind == perf_metric::cross_entropy;
    }
    bool regression_only() const {
        return kind == perf_metric::mse || kind == perf_metric::mae || kind == perf_metric::r2 ||
               kind == perf_metric::log_likelihood;
    }
    bool can_be_negative() const {
        return kind == perf_metric::r2 || kind == perf_metric::log_likelihood;
    }
};

enum class agg_kind { max, mean, sum };

inline const char* to_string(agg_kind a) {
    switch (a) {
    case agg_kind::max: return "max";
    case agg_kind::mean: return "mean";
    case agg_kind::sum: return "sum";
    }
    return "?";
}

inline double aggregate(const std::vector<double>& values, agg_kind agg) {
    if (values.empty()) throw error(errc::invalid_input, "nothing to aggregate");
    switch (agg) {
    case agg_kind::max: return *std::max_element(values.begin(), values.end());
    case agg_kind::mean: {
        double s = 0.0;
        for (double v : values) s += v;
        return s / static_cast<double>(values.size());
    }
    case agg_kind::sum: {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    }
    throw error(errc::invalid_params, "unknown aggregation");
}

// What to do with a (group, condition) cell that cannot be evaluated:
// error out naming the cell, or drop the group from that item's vector.
enum class undefined_policy { error, drop };

struct metric_item {
    std::string label;               // class name, threshold, or "all"
    std::vector<int> group_ids;      // order of the vector entries
    std::vector<double> group_vector;
    double value = 0.0;
};

// Threshold-indexed criteria can produce one item per pooled prediction
// value; items beyond this cap are summarised by `attained` only.
constexpr std::size_t kMaxReportItems = 512;

struct metric_report {
    std::string criterion;
    measure_spec measure;
    agg_kind aggregation = agg_kind::max;
    std::vector<metric_item> items;
    std::size_t item_count = 0;           // true count before any cap
    std::optional<metric_item> attained;  // arg-max item for sup-style criteria
    double value = 0.0;
    warning_list warnings;
};

namespace detail {

inline std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::vector<int> partition_ids(const partition_map& parts) {
    std::vector<int> ids;
    ids.reserve(parts.size());
    for (const auto& [id, rows] : parts) {
        if (rows.empty())
            throw error(errc::invalid_input, "group " + std::to_string(id) + " is empty");
        ids.push_back(id);
    }
    if (ids.empty()) throw error(errc::invalid_input, "no groups to evaluate");
    return ids;
}

} // namespace detail

// R[a][y]: fraction of group a predicted as class y. Rows sum to 1.
struct rate_matrix {
    std::vector<int> group_ids;
    std::vector<std::vector<double>> rates; // one row per group, one column per class
};

inline rate_matrix class_rate_matrix(const classification_data& data, const partition_map& parts) {
    data.validate();
    rate_matrix R;
    R.group_ids = detail::partition_ids(parts);
    for (const auto& [id, rows] : parts) {
        std::vector<double> row(data.num_classes, 0.0);
        for (std::size_t r : rows) row[static_cast<std::size_t>(data.y_pred[r])] += 1.0;
        for (double& v : row) v /= static_cast<double>(rows.size());
        R.rates.push_back(std::move(row));
    }
    return R;
}

// S-Statistical Parity for classification: per class, the sparsity of the
// group rate column; aggregated over classes (max by default). With the MPD
// measure this is exactly the classic double-max statistical parity.
inline metric_report sp_classification(const rate_matrix& R, const measure_spec& measure,
                                       agg_kind agg = agg_kind::max,
                                       const std::vector<std::string>& class_names = {},
                                       std::optional<int> only_class = std::nullopt) {
    measure.validate();
    if (R.rates.empty() || R.rates.front().empty())
        throw error(errc::invalid_input, "rate matrix is empty");
    const std::size_t num_classes = R.rates.front().size();
    if (only_class && (*only_class < 0 || *only_class >= static_cast<int>(num_classes)))
        throw error(errc::invalid_params, "positive class outside the class set");

    metric_report rep;
    rep.criterion = "sp_classification";
    rep.measure = measure;
    rep.aggregation = agg;
    std::vector<double> per_class;
    for (std::size_t y = 0; y < num_classes; ++y) {
        if (only_class && static_cast<std::size_t>(*only_class) != y) continue;
        metric_item item;
        item.label = y < class_names.size() ? class_names[y] : std::to_string(y);
        item.group_ids = R.group_ids;
        item.group_vector.reserve(R.rates.size());
        for (const auto& row : R.rates) item.group_vector.push_back(row[y]);
        item.value = sparsity(item.group_vector, measure, &rep.warnings);
        per_class.push_back(item.value);
        rep.items.push_back(std::move(item));
    }
    rep.item_count = rep.items.size();
    rep.value = aggregate(per_class, agg);
    rep.attained = *std::max_element(rep.items.begin(), rep.items.end(),
                                     [](const auto& a, const auto& b) { return a.value < b.value; });
    return rep;
}

// Classic equalized odds: max over (y, y') of the largest pairwise gap in
// P(f = y | Y = y', A = a) across groups. Ignores base-rate differences.
inline metric_report eo_classification_mpd(const classification_data& data,
                                           const partition_map& parts,
                                           undefined_policy policy = undefined_policy::error) {
    data.validate();
    metric_report rep;
    rep.criterion = "eo_classification";
    rep.measure = mpd_spec();
    rep.aggregation = agg_kind::max;

    const std::vector<int> ids = detail::partition_ids(parts);
    const std::size_t C = data.num_classes;

    // counts[group][y'][y]
    std::map<int, std::vector<std::vector<double>>> cond;
    std::map<int, std::vector<double>> totals;
    for (const auto& [id, rows] : parts) {
        auto& m = cond[id];
        m.assign(C, std::vector<double>(C, 0.0));
        auto& t = totals[id];
        t.assign(C, 0.0);
        for (std::size_t r : rows) {
            m[data.y_true[r]][data.y_pred[r]] += 1.0;
            t[data.y_true[r]] += 1.0;
        }
    }

    std::vector<double> values;
    for (std::size_t cy = 0; cy < C; ++cy) { // conditioning class y'
        std::vector<int> present;
        for (int id : ids) {
            if (totals[id][cy] > 0.0) {
                present.push_back(id);
            } else if (policy == undefined_policy::error) {
                throw error(errc::condition_cell_empty,
                            "group " + std::to_string(id) + " has no samples with true class " +
                                std::to_string(cy));
            } else {
                warn(&rep.warnings, "ConditionCellEmpty",
                     "group " + std::to_string(id) + " dropped for condition class " +
                         std::to_string(cy));
            }
        }
        if (present.empty()) continue;
        for (std::size_t y = 0; y < C; ++y) {
            metric_item item;
            item.label = "y=" + std::to_string(y) + "|y'=" + std::to_string(cy);
            item.group_ids = present;
            for (int id : present)
                item.group_vector.push_back(cond[id][cy][y] / totals[id][cy]);
            item.value = mpd(item.group_vector);
            values.push_back(item.value);
            rep.items.push_back(std::move(item));
        }
    }
    if (values.empty()) throw error(errc::invalid_input, "no evaluable condition cells");
    rep.item_count = rep.items.size();
    rep.value = aggregate(values, agg_kind::max);
    rep.attained = *std::max_element(rep.items.begin(), rep.items.end(),
                                     [](const auto& a, const auto& b) { return a.value < b.value; });
    return rep;
}

namespace detail {

struct group_values {
    std::vector<int> group_ids;
    std::vector<double> values;
};

inline double auroc_midrank(std::vector<std::pair<double, int>>& scored, std::size_t n_pos,
                            std::size_t n_neg) {
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < scored.size()) {
        std::size_t j = i;
        while (j < scored.size() && scored[j].first == scored[i].first) ++j;
        const double midrank = 0.5 * static_cast<double>(i + 1 + j); // 1-based midrank of the tie block
        for (std::size_t k = i; k < j; ++k)
            if (scored[k].second) pos_rank_sum += midrank;
        i = j;
    }
    const double u = pos_rank_sum - static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

inline std::optional<double> classification_g(const classification_data& data,
                                              const std::vector<std::size_t>& rows,
                                              const perf_metric_spec& metric, int y,
                                              std::string* why_undefined) {
    constexpr double kClamp = 1e-12;
    switch (metric.kind) {
    case perf_metric::accuracy: {
        double hit = 0.0;
        for (std::size_t r : rows) hit += data.y_pred[r] == data.y_true[r] ? 1.0 : 0.0;
        return hit / static_cast<double>(rows.size());
    }
    case perf_metric::cross_entropy: {
        double s = 0.0;
        for (std::size_t r : rows) {
            const double p =
                std::clamp(data.scores[r][static_cast<std::size_t>(data.y_true[r])], kClamp,
                           1.0 - kClamp);
            s -= std::log(p);
        }
        return s / static_cast<double>(rows.size());
    }
    case perf_metric::tpr_fpr_avg: {
        double tp = 0.0, pos = 0.0, fp = 0.0, neg = 0.0;
        for (std::size_t r : rows) {
            const bool is_pos = data.y_true[r] == y;
            const bool pred_pos = data.y_pred[r] == y;
            if (is_pos) {
                pos += 1.0;
                if (pred_pos) tp += 1.0;
            } else {
                neg += 1.0;
                if (pred_pos) fp += 1.0;
            }
        }
        if (pos == 0.0) { *why_undefined = "no positives (TPR undefined)"; return std::nullopt; }
        if (neg == 0.0) { *why_undefined = "no negatives (FPR undefined)"; return std::nullopt; }
        return 0.5 * (tp / pos + fp / neg);
    }
    case perf_metric::f1: {
        double tp = 0.0, fp = 0.0, fn = 0.0;
        for (std::size_t r : rows) {
            const bool is_pos = data.y_true[r] == y;
            const bool pred_pos = data.y_pred[r] == y;
            if (is_pos && pred_pos) tp += 1.0;
            if (!is_pos && pred_pos) fp += 1.0;
            if (is_pos && !pred_pos) fn += 1.0;
        }
        if (tp + fn == 0.0) { *why_undefined = "no positives (recall undefined)"; return std::nullopt; }
        return 2.0 * tp / (2.0 * tp + fp + fn);
    }
    case perf_metric::auroc: {
        std::vector<std::pair<double, int>> scored;
        std::size_t n_pos = 0, n_neg = 0;
        for (std::size_t r : rows) {
            const bool is_pos = data.y_true[r] == y;
            scored.emplace_back(data.scores[r][static_cast<std::size_t>(y)], is_pos ? 1 : 0);
            (is_pos ? n_pos : n_neg) += 1;
        }
        if (n_pos == 0 || n_neg == 0) {
            *why_undefined = "single class present (AUROC undefined)";
            return std::nullopt;
        }
        return auroc_midrank(scored, n_pos, n_neg);
    }
    default:
        throw error(errc::config_error,
                    std::string(to_string(metric.kind)) + " is a regression metric");
    }
}

} // namespace detail

// Per-group performance vector for class y under the given metric. The
// default (TPR + FPR)/2 uses one-vs-rest reduction: positives are Y = y.
inline detail::group_values g_per_group(const classification_data& data, const partition_map& parts,
                                        const perf_metric_spec& metric, int y,
                                        undefined_policy policy = undefined_policy::error,
                                        warning_list* warnings = nullptr) {
    data.validate();
    if (metric.regression_only())
        throw error(errc::config_error,
                    std::string(to_string(metric.kind)) + " is not valid for classification");
    if (metric.needs_scores() && data.scores.empty())
        throw error(errc::invalid_input,
                    std::string(to_string(metric.kind)) + " requires score columns");

    detail::group_values out;
    for (const auto& [id, rows] : parts) {
        if (rows.empty())
            throw error(errc::invalid_input, "group " + std::to_string(id) + " is empty");
        std::string why;
        const auto v = detail::classification_g(data, rows, metric, y, &why);
        if (!v) {
            if (policy == undefined_policy::error)
                throw error(errc::undefined_cell, "group " + std::to_string(id) + ", class " +
                                                      std::to_string(y) + ": " + why);
            warn(warnings, "UndefinedCell",
                 "group " + std::to_string(id) + " dropped for class " + std::to_string(y) + ": " + why);
            continue;
        }
        out.group_ids.push_back(id);
        out.values.push_back(*v);
    }
    if (out.values.empty()) throw error(errc::undefined_cell, "metric undefined for every group");
    return out;
}

// S-Equalized Odds for classification: per class, the sparsity of the
// per-group performance vector; aggregated over classes.
inline metric_report s_eo_classification(const classification_data& data, const partition_map& parts,
                                         const measure_spec& measure,
                                         const perf_metric_spec& metric = {},
                                         agg_kind agg = agg_kind::max,
                                         const std::vector<std::string>& class_names = {},
                                         undefined_policy policy = undefined_policy::error,
                                         std::optional<int> only_class = std::nullopt) {
    measure.validate();
    data.validate();
    metric_report rep;
    rep.criterion = "s_eo_classification";
    rep.measure = measure;
    rep.aggregation = agg;

    std::vector<int> class_list;
    if (metric.per_class()) {
        for (int y = 0; y < static_cast<int>(data.num_classes); ++y)
            if (!only_class || *only_class == y) class_list.push_back(y);
        if (class_list.empty()) throw error(errc::invalid_params, "positive class outside the class set");
    } else {
        class_list.push_back(-1); // class-independent metric, evaluated once
    }

    std::vector<double> per_class;
    for (int y : class_list) {
        auto gv = g_per_group(data, parts, metric, std::max(y, 0), policy, &rep.warnings);
        metric_item item;
        item.label = y < 0 ? "all"
                           : (static_cast<std::size_t>(y) < class_names.size()
                                  ? class_names[static_cast<std::size_t>(y)]
                                  : std::to_string(y));
        item.group_ids = std::move(gv.group_ids);
        item.group_vector = std::move(gv.values);
        item.value = sparsity(item.group_vector, measure, &rep.warnings);
        per_class.push_back(item.value);
        rep.items.push_back(std::move(item));
    }
    rep.item_count = rep.items.size();
    rep.value = aggregate(per_class, agg);
    rep.attained = *std::max_element(rep.items.begin(), rep.items.end(),
                                     [](const auto& a, const auto& b) { return a.value < b.value; });
    return rep;
}

// Right-continuous empirical CDF: F(t) = fraction of values <= t.
class ecdf {
public:
    explicit ecdf(std::vector<double> values) : sorted_(std::move(values)) {
        if (sorted_.empty()) throw error(errc::invalid_input, "ecdf needs at least one value");
        std::sort(sorted_.begin(), sorted_.end());
    }

    double operator()(double t) const {
        const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
        return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
    }

    const std::vector<double>& support() const { return sorted_; }

private:
    std::vector<double> sorted_;
};

namespace detail {

struct cdf_walk {
    std::vector<int> group_ids;
    std::vector<std::vector<double>> per_group_sorted;
    std::vector<double> thresholds; // pooled sorted unique prediction values
};

inline cdf_walk prepare_cdf_walk(const regression_data& data, const partition_map& parts) {
    data.validate();
    cdf_walk w;
    w.group_ids = partition_ids(parts);
    std::vector<double> pooled;
    for (const auto& [id, rows] : parts) {
        std::vector<double> vals;
        vals.reserve(rows.size());
        for (std::size_t r : rows) vals.push_back(data.y_pred[r]);
        std::sort(vals.begin(), vals.end());
        pooled.insert(pooled.end(), vals.begin(), vals.end());
        w.per_group_sorted.push_back(std::move(vals));
    }
    std::sort(pooled.begin(), pooled.end());
    pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());
    w.thresholds = std::move(pooled);
    return w;
}

} // namespace detail

// S-Statistical Parity for regression (KS form): the ECDFs are step
// functions, so the sup over continuous thresholds is attained at the pooled
// observed prediction values. At each threshold the measure is applied to
// the vector of group CDF values; the report carries the maximum. With MPD
// and two groups this is the classic two-sample KS statistic.
inline metric_report sp_regression_ks(const regression_data& data, const partition_map& parts,
                                      const measure_spec& measure) {
    measure.validate();
    metric_report rep;
    rep.criterion = "sp_regression_ks";
    rep.measure = measure;
    rep.aggregation = agg_kind::max;

    const auto walk = detail::prepare_cdf_walk(data, parts);
    std::vector<std::size_t> cursor(walk.per_group_sorted.size(), 0);
    const bool keep_items = walk.thresholds.size() <= kMaxReportItems;
    rep.item_count = walk.thresholds.size();

    double best = -1.0;
    for (double t : walk.thresholds) {
        std::vector<double> F(walk.per_group_sorted.size());
        bool all_zero = true;
        for (std::size_t g = 0; g < walk.per_group_sorted.size(); ++g) {
            const auto& vals = walk.per_group_sorted[g];
            std::size_t& c = cursor[g];
            while (c < vals.size() && vals[c] <= t) ++c;
            F[g] = static_cast<double>(c) / static_cast<double>(vals.size());
            if (F[g] != 0.0) all_zero = false;
        }
        if (all_zero) continue; // degenerate vector below the pooled minimum
        metric_item item;
        item.label = detail::fmt_double(t);
        item.group_ids = walk.group_ids;
        item.group_vector = std::move(F);
        item.value = sparsity(item.group_vector, measure, &rep.warnings);
        if (item.value > best) {
            best = item.value;
            rep.attained = item;
        }
        if (keep_items) rep.items.push_back(std::move(item));
    }
    if (best < 0.0) throw error(errc::invalid_input, "no evaluable thresholds");
    rep.value = best;
    return rep;
}

// S-Statistical Parity for regression (Wasserstein form): integral of the
// measure over thresholds. ECDFs are step functions, so the rectangle rule
// on the pooled support with right-continuous plateau values is exact. With
// MPD and two equal-size groups this equals the 1-Wasserstein distance.
inline metric_report sp_regression_wasserstein(const regression_data& data,
                                               const partition_map& parts,
                                               const measure_spec& measure) {
    measure.validate();
    metric_report rep;
    rep.criterion = "sp_regression_wasserstein";
    rep.measure = measure;
    rep.aggregation = agg_kind::sum;

    const auto walk = detail::prepare_cdf_walk(data, parts);
    std::vector<std::size_t> cursor(walk.per_group_sorted.size(), 0);
    const bool keep_items = walk.thresholds.size() <= kMaxReportItems;
    rep.item_count = walk.thresholds.size();

    double integral = 0.0;
    double best = -1.0;
    for (std::size_t k = 0; k < walk.thresholds.size(); ++k) {
        const double t = walk.thresholds[k];
        std::vector<double> F(walk.per_group_sorted.size());
        for (std::size_t g = 0; g < walk.per_group_sorted.size(); ++g) {
            const auto& vals = walk.per_group_sorted[g];
            std::size_t& c = cursor[g];
            while (c < vals.size() && vals[c] <= t) ++c;
            F[g] = static_cast<double>(c) / static_cast<double>(vals.size());
        }
        metric_item item;
        item.label = detail::fmt_double(t);
        item.group_ids = walk.group_ids;
        item.group_vector = std::move(F);
        item.value = sparsity(item.group_vector, measure, &rep.warnings);
        if (k + 1 < walk.thresholds.size())
            integral += item.value * (walk.thresholds[k + 1] - t);
        if (item.value > best) {
            best = item.value;
            rep.attained = item;
        }
        if (keep_items) rep.items.push_back(std::move(item));
    }
    rep.value = integral;
    return rep;
}

// Weak S-Statistical Parity for regression: the measure over per-group
// prediction means.
inline metric_report weak_sp_regression(const regression_data& data, const partition_map& parts,
                                        const measure_spec& measure) {
    measure.validate();
    data.validate();
    metric_report rep;
    rep.criterion = "weak_sp_regression";
    rep.measure = measure;
    rep.aggregation = agg_kind::max;

    metric_item item;
    item.label = "means";
    for (const auto& [id, rows] : parts) {
        if (rows.empty())
            throw error(errc::invalid_input, "group " + std::to_string(id) + " is empty");
        double s = 0.0;
        for (std::size_t r : rows) s += data.y_pred[r];
        item.group_ids.push_back(id);
        item.group_vector.push_back(s / static_cast<double>(rows.size()));
    }
    if (item.group_vector.empty()) throw error(errc::invalid_input, "no groups to evaluate");
    item.value = sparsity(item.group_vector, measure, &rep.warnings);
    rep.value = item.value;
    rep.item_count = 1;
    rep.attained = item;
    rep.items.push_back(std::move(item));
    return rep;
}

namespace detail {

inline std::optional<double> regression_g(const regression_data& data,
                                          const std::vector<std::size_t>& rows,
                                          const perf_metric_spec& metric, std::string* why) {
    const double n = static_cast<double>(rows.size());
    switch (metric.kind) {
    case perf_metric::mse: {
        double s = 0.0;
        for (std::size_t r : rows) {
            const double e = data.y_true[r] - data.y_pred[r];
            s += e * e;
        }
        return s / n;
    }
    case perf_metric::mae: {
        double s = 0.0;
        for (std::size_t r : rows) s += std::fabs(data.y_true[r] - data.y_pred[r]);
        return s / n;
    }
    case perf_metric::r2: {
        double mean = 0.0;
        for (std::size_t r : rows) mean += data.y_true[r];
        mean /= n;
        double ss_res = 0.0, ss_tot = 0.0;
        for (std::size_t r : rows) {
            const double e = data.y_true[r] - data.y_pred[r];
            const double c = data.y_true[r] - mean;
            ss_res += e * e;
            ss_tot += c * c;
        }
        if (ss_tot == 0.0) { *why = "constant target (R2 undefined)"; return std::nullopt; }
        return 1.0 - ss_res / ss_tot;
    }
    case perf_metric::log_likelihood: {
        if (!(metric.variance > 0.0))
            throw error(errc::invalid_params, "log-likelihood requires variance > 0");
        const double var = metric.variance;
        double s = 0.0;
        for (std::size_t r : rows) {
            const double e = data.y_true[r] - data.y_pred[r];
            s += -0.5 * std::log(2.0 * 3.14159265358979323846 * var) - e * e / (2.0 * var);
        }
        return s / n;
    }
    default:
        throw error(errc::config_error,
                    std::string(to_string(metric.kind)) + " is not a regression metric");
    }
}

} // namespace detail

// S-Equalized Odds for regression: the measure over per-group performance
// values. Metrics whose codomain includes negatives (R2, log-likelihood)
// must be paired with the exp transform explicitly; nothing is applied
// silently.
inline metric_report eo_regression(const regression_data& data, const partition_map& parts,
                                   const perf_metric_spec& metric, const measure_spec& measure,
                                   undefined_policy policy = undefined_policy::error) {
    measure.validate();
    data.validate();
    if (!metric.regression_only())
        throw error(errc::config_error,
                    std::string(to_string(metric.kind)) + " is not valid for regression");
    if (metric.can_be_negative() && measure.transform != transform_kind::exp)
        throw error(errc::negative_input,
                    std::string(to_string(metric.kind)) +
                        " can be negative; the exp transform is required");

    metric_report rep;
    rep.criterion = "eo_regression";
    rep.measure = measure;
    rep.aggregation = agg_kind::max;

    metric_item item;
    item.label = to_string(metric.kind);
    for (const auto& [id, rows] : parts) {
        if (rows.empty())
            throw error(errc::invalid_input, "group " + std::to_string(id) + " is empty");
        std::string why;
        const auto v = detail::regression_g(data, rows, metric, &why);
        if (!v) {
            if (policy == undefined_policy::error)
                throw error(errc::undefined_cell, "group " + std::to_string(id) + ": " + why);
            warn(&rep.warnings, "UndefinedCell",
                 "group " + std::to_string(id) + " dropped: " + why);
            continue;
        }
        item.group_ids.push_back(id);
        item.group_vector.push_back(*v);
    }
    if (item.group_vector.empty()) throw error(errc::undefined_cell, "metric undefined for every group");
    item.value = sparsity(item.group_vector, measure, &rep.warnings);
    rep.value = item.value;
    rep.item_count = 1;
    rep.attained = item;
    rep.items.push_back(std::move(item));
    return rep;
}

} // namespace sparsefair
