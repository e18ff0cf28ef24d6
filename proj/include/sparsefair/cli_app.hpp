#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparsefair/csv.hpp"
#include "sparsefair/data.hpp"
#include "sparsefair/error.hpp"
#include "sparsefair/groups.hpp"
#include "sparsefair/metrics.hpp"
#include "sparsefair/report_json.hpp"
#include "sparsefair/synthetic.hpp"
#include "sparsefair/verify.hpp"

// Command-line front end. Subcommands:
//   evaluate  criterion value for a CSV of predictions, JSON report
//   check     axiom/theorem verification matrix, JSON report
//   sweep     disparity vs. group count (or bin granularity), CSV table
//   surface   simplex grid of a measure for d = 3, CSV
//   gen       seeded synthetic scenarios, CSV
// Exit codes: 0 success, 1 check failure, 2 input error.

namespace sparsefair::cli {

inline constexpr int kSchemaVersion = 1;

// ---- flag parsing ----

inline measure_kind parse_measure(const std::string& s) {
    if (s == "mpd") return measure_kind::mpd;
    if (s == "gini") return measure_kind::gini;
    if (s == "pq") return measure_kind::pq;
    throw error(errc::config_error, "unknown measure '" + s + "' (mpd|gini|pq)");
}

inline transform_kind parse_transform(const std::string& s) {
    if (s == "none") return transform_kind::none;
    if (s == "exp") return transform_kind::exp;
    throw error(errc::config_error, "unknown transform '" + s + "' (none|exp)");
}

inline agg_kind parse_agg(const std::string& s) {
    if (s == "max") return agg_kind::max;
    if (s == "mean") return agg_kind::mean;
    if (s == "sum") return agg_kind::sum;
    throw error(errc::config_error, "unknown aggregation '" + s + "' (max|mean|sum)");
}

inline perf_metric parse_metric(const std::string& s) {
    if (s == "accuracy") return perf_metric::accuracy;
    if (s == "tpr-fpr-avg") return perf_metric::tpr_fpr_avg;
    if (s == "f1") return perf_metric::f1;
    if (s == "auroc") return perf_metric::auroc;
    if (s == "cross-entropy") return perf_metric::cross_entropy;
    if (s == "mse") return perf_metric::mse;
    if (s == "mae") return perf_metric::mae;
    if (s == "r2") return perf_metric::r2;
    if (s == "log-likelihood") return perf_metric::log_likelihood;
    throw error(errc::config_error, "unknown metric '" + s + "'");
}

inline scenario parse_scenario(const std::string& s) {
    if (s == "multigroup-cls") return scenario::multigroup_cls;
    if (s == "twogroup-cls") return scenario::twogroup_cls;
    if (s == "twogroup-reg") return scenario::twogroup_reg;
    throw error(errc::config_error,
                "unknown scenario '" + s + "' (multigroup-cls|twogroup-cls|twogroup-reg)");
}

inline std::vector<property_id> parse_properties(const std::vector<std::string>& specs) {
    static const std::map<std::string, property_id> names{
        {"d1", property_id::d1_robin_hood}, {"d2", property_id::d2_scaling},
        {"d3", property_id::d3_rising_tide}, {"d4", property_id::d4_cloning},
        {"p1", property_id::p1_bill_gates}, {"p2", property_id::p2_babies},
        {"t31", property_id::t31_max},      {"t32", property_id::t32_min},
        {"t33", property_id::t33_l2dist},   {"t34", property_id::t34_transfer},
        {"t35", property_id::t35_bounds},   {"t36", property_id::t36_trim},
    };
    std::vector<property_id> out;
    auto push_axioms = [&] {
        for (const auto& [k, v] : names)
            if (is_axiom(v)) out.push_back(v);
    };
    auto push_theorems = [&] {
        for (const auto& [k, v] : names)
            if (!is_axiom(v)) out.push_back(v);
    };
    for (std::string s : specs) {
        for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (s == "all") {
            push_axioms();
            push_theorems();
        } else if (s == "axioms") {
            push_axioms();
        } else if (s == "theorems") {
            push_theorems();
        } else if (auto it = names.find(s); it != names.end()) {
            out.push_back(it->second);
        } else {
            throw error(errc::config_error, "unknown property '" + s + "'");
        }
    }
    if (out.empty()) throw error(errc::config_error, "no properties selected");
    return out;
}

// ---- output ----

inline std::string resolve_output_path(const std::string& path) {
    if (path == "-") return path;
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    if (const char* dir = std::getenv("SPARSEFAIR_OUT_DIR"); dir && *dir)
        return (std::filesystem::path(dir) / p).string();
    return path;
}

// Reports are assembled fully in memory and moved into place atomically, so
// a failing run never leaves a partial file behind.
inline void write_output(const std::string& path, const std::string& payload) {
    if (path == "-") {
        std::cout << payload;
        return;
    }
    const std::string resolved = resolve_output_path(path);
    const std::string tmp = resolved + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw error(errc::csv_error, "cannot write '" + resolved + "'");
        out << payload;
        if (!out) throw error(errc::csv_error, "short write to '" + resolved + "'");
    }
    std::filesystem::rename(tmp, resolved);
}

// ---- evaluate ----

struct evaluate_config {
    std::string input;
    std::string output = "-";
    std::string task = "classification";
    std::string criterion = "sp";
    std::string measure = "pq";
    double p = 1.0, q = 2.0;
    std::string transform = "none";
    std::string metric; // defaults depend on the task
    double ll_variance = 1.0;
    std::string agg = "max";
    std::string label_col = "y_true";
    std::string pred_col = "y_pred";
    std::string score_prefix = "score_";
    std::vector<std::string> group_cols;
    std::vector<std::string> bin_specs; // "col=k"
    std::vector<std::string> classes;
    std::string positive_class;
    std::size_t min_group_size = 1;
    bool drop_small_groups = false;
    bool drop_undefined = false;
    std::uint64_t seed = 0;

    measure_spec measure_spec_of() const {
        measure_spec m;
        m.kind = parse_measure(measure);
        m.p = p;
        m.q = q;
        m.transform = parse_transform(transform);
        m.validate();
        return m;
    }

    perf_metric_spec metric_spec_of() const {
        perf_metric_spec spec;
        if (metric.empty())
            spec.kind = task == "regression" ? perf_metric::mse : perf_metric::tpr_fpr_avg;
        else
            spec.kind = parse_metric(metric);
        spec.variance = ll_variance;
        return spec;
    }

    std::map<std::string, std::size_t> bins_of() const {
        std::map<std::string, std::size_t> bins;
        for (const auto& s : bin_specs) {
            const auto eq = s.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
                throw error(errc::config_error, "--bin expects col=k, got '" + s + "'");
            const std::string col = s.substr(0, eq);
            const int k = std::stoi(s.substr(eq + 1));
            if (k < 2) throw error(errc::config_error, "bin count for '" + col + "' must be >= 2");
            bins[col] = static_cast<std::size_t>(k);
        }
        return bins;
    }
};

struct loaded_input {
    grouping_result groups;
    warning_list warnings;
    std::size_t rows_total = 0;
    // classification
    std::optional<classification_data> cls;
    std::vector<std::string> class_names;
    // regression
    std::optional<regression_data> reg;
};

namespace detail {

inline bool all_numeric(const std::vector<std::string>& labels) {
    for (const auto& s : labels) {
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return false;
    }
    return true;
}

inline std::vector<std::string> infer_classes(const std::vector<std::string>& y_true,
                                              const std::vector<std::string>& y_pred) {
    std::vector<std::string> classes = y_true;
    classes.insert(classes.end(), y_pred.begin(), y_pred.end());
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    if (all_numeric(classes))
        std::sort(classes.begin(), classes.end(), [](const std::string& a, const std::string& b) {
            return std::stod(a) < std::stod(b);
        });
    return classes;
}

} // namespace detail

inline grouping_result load_groups(const evaluate_config& cfg, const csv::table& t,
                                   warning_list* warnings) {
    if (cfg.group_cols.empty())
        throw error(errc::config_error, "at least one --group-col is required");
    const auto bins = cfg.bins_of();
    std::vector<attribute_column> columns;
    for (const auto& name : cfg.group_cols) {
        const int c = t.require_column(name);
        attribute_column col;
        col.name = name;
        if (auto it = bins.find(name); it != bins.end()) {
            col.bins = it->second;
            col.numeric.reserve(t.rows.size());
            for (std::size_t r = 0; r < t.rows.size(); ++r)
                col.numeric.push_back(csv::parse_double(t.rows[r][c], r, name));
        } else {
            col.labels.reserve(t.rows.size());
            for (const auto& row : t.rows) col.labels.push_back(row[c]);
        }
        columns.push_back(std::move(col));
    }
    grouping_spec spec;
    spec.min_group_size = cfg.min_group_size;
    spec.drop_small_groups = cfg.drop_small_groups;
    return build_groups(columns, spec, warnings);
}

inline loaded_input load_input(const evaluate_config& cfg, const csv::table& t) {
    loaded_input in;
    in.rows_total = t.rows.size();
    if (t.rows.empty()) throw error(errc::csv_error, "input has no data rows");
    in.groups = load_groups(cfg, t, &in.warnings);

    if (cfg.task == "classification") {
        const int lc = t.require_column(cfg.label_col);
        const int pc = t.require_column(cfg.pred_col);
        std::vector<std::string> raw_true, raw_pred;
        raw_true.reserve(t.rows.size());
        raw_pred.reserve(t.rows.size());
        for (const auto& row : t.rows) {
            raw_true.push_back(row[lc]);
            raw_pred.push_back(row[pc]);
        }
        in.class_names = cfg.classes.empty() ? detail::infer_classes(raw_true, raw_pred)
                                             : cfg.classes;
        std::map<std::string, int> index;
        for (std::size_t i = 0; i < in.class_names.size(); ++i)
            index[in.class_names[i]] = static_cast<int>(i);

        classification_data d;
        d.num_classes = in.class_names.size();
        d.group = in.groups.group_of_row;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            const auto ti = index.find(raw_true[r]);
            const auto pi = index.find(raw_pred[r]);
            if (ti == index.end())
                throw error(errc::csv_error, "label '" + raw_true[r] + "' at row " +
                                                 std::to_string(r + 1) +
                                                 " outside the declared class set");
            if (pi == index.end())
                throw error(errc::csv_error, "prediction '" + raw_pred[r] + "' at row " +
                                                 std::to_string(r + 1) +
                                                 " outside the declared class set");
            d.y_true.push_back(ti->second);
            d.y_pred.push_back(pi->second);
        }

        // score_<label> columns: all classes or none
        std::vector<int> score_cols;
        std::size_t present = 0;
        for (const auto& name : in.class_names) {
            const int c = t.column(cfg.score_prefix + name);
            score_cols.push_back(c);
            if (c >= 0) ++present;
        }
        if (present > 0) {
            if (present != in.class_names.size())
                throw error(errc::csv_error, "score columns must cover every class");
            for (std::size_t r = 0; r < t.rows.size(); ++r) {
                std::vector<double> row;
                row.reserve(score_cols.size());
                for (std::size_t c = 0; c < score_cols.size(); ++c)
                    row.push_back(csv::parse_double(t.rows[r][score_cols[c]], r,
                                                    cfg.score_prefix + in.class_names[c]));
                d.scores.push_back(std::move(row));
            }
        }
        d.validate();
        in.cls = std::move(d);
    } else if (cfg.task == "regression") {
        const int lc = t.require_column(cfg.label_col);
        const int pc = t.require_column(cfg.pred_col);
        regression_data d;
        d.group = in.groups.group_of_row;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            d.y_true.push_back(csv::parse_double(t.rows[r][lc], r, cfg.label_col));
            d.y_pred.push_back(csv::parse_double(t.rows[r][pc], r, cfg.pred_col));
        }
        d.validate();
        in.reg = std::move(d);
    } else {
        throw error(errc::config_error, "unknown task '" + cfg.task + "'");
    }
    return in;
}

inline metric_report evaluate_criterion(const evaluate_config& cfg, const loaded_input& in) {
    const measure_spec measure = cfg.measure_spec_of();
    const agg_kind agg = parse_agg(cfg.agg);
    const undefined_policy policy =
        cfg.drop_undefined ? undefined_policy::drop : undefined_policy::error;

    if (cfg.task == "classification") {
        const auto parts = partition(in.cls->group);
        std::optional<int> only_class;
        if (!cfg.positive_class.empty()) {
            const auto it =
                std::find(in.class_names.begin(), in.class_names.end(), cfg.positive_class);
            if (it == in.class_names.end())
                throw error(errc::config_error,
                            "positive class '" + cfg.positive_class + "' not in the class set");
            only_class = static_cast<int>(it - in.class_names.begin());
        }
        if (cfg.criterion == "sp") {
            const auto R = class_rate_matrix(*in.cls, parts);
            return sp_classification(R, measure, agg, in.class_names, only_class);
        }
        if (cfg.criterion == "eo") {
            if (measure.kind == measure_kind::mpd)
                return eo_classification_mpd(*in.cls, parts, policy);
            return s_eo_classification(*in.cls, parts, measure, cfg.metric_spec_of(), agg,
                                       in.class_names, policy, only_class);
        }
        throw error(errc::config_error,
                    "criterion '" + cfg.criterion + "' is not defined for classification");
    }

    const auto parts = partition(in.reg->group);
    if (cfg.criterion == "sp") return sp_regression_ks(*in.reg, parts, measure);
    if (cfg.criterion == "sp-w") return sp_regression_wasserstein(*in.reg, parts, measure);
    if (cfg.criterion == "sp-weak") return weak_sp_regression(*in.reg, parts, measure);
    if (cfg.criterion == "eo")
        return eo_regression(*in.reg, parts, cfg.metric_spec_of(), measure, policy);
    throw error(errc::config_error,
                "criterion '" + cfg.criterion + "' is not defined for regression");
}

inline ojson config_json(const evaluate_config& cfg) {
    ojson j;
    j["input"] = cfg.input;
    j["task"] = cfg.task;
    j["criterion"] = cfg.criterion;
    j["measure"] = to_json(cfg.measure_spec_of());
    j["metric"] = to_string(cfg.metric_spec_of().kind);
    j["ll_variance"] = cfg.ll_variance;
    j["aggregation"] = cfg.agg;
    j["label_col"] = cfg.label_col;
    j["pred_col"] = cfg.pred_col;
    j["group_cols"] = cfg.group_cols;
    j["bins"] = cfg.bin_specs;
    j["classes"] = cfg.classes;
    j["positive_class"] = cfg.positive_class;
    j["min_group_size"] = cfg.min_group_size;
    j["drop_small_groups"] = cfg.drop_small_groups;
    j["drop_undefined"] = cfg.drop_undefined;
    j["seed"] = cfg.seed;
    return j;
}

inline int cmd_evaluate(const evaluate_config& cfg) {
    const csv::table t = csv::read_file(cfg.input);
    const loaded_input in = load_input(cfg, t);
    metric_report rep = evaluate_criterion(cfg, in);

    // grouping warnings surface ahead of metric warnings
    warning_list all = in.warnings;
    all.insert(all.end(), rep.warnings.begin(), rep.warnings.end());
    rep.warnings = std::move(all);

    std::size_t retained_rows = 0;
    for (int g : in.groups.group_of_row)
        if (g >= 0) ++retained_rows;

    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "evaluate";
    j["config"] = config_json(cfg);
    if (!in.class_names.empty()) j["classes"] = in.class_names;
    j["rows"] = {{"total", in.rows_total},
                 {"retained", retained_rows},
                 {"excluded_missing", in.groups.rows_excluded_missing}};
    j["groups"] = to_json(in.groups);
    j["report"] = to_json(rep);
    j["value"] = rep.value;
    write_output(cfg.output, j.dump(2) + "\n");
    return 0;
}

// ---- check ----

struct check_config {
    std::vector<std::string> properties{"all"};
    std::string measure = "pq";
    double p = 1.0, q = 2.0;
    std::uint64_t trials = 10000;
    std::size_t dmin = 2, dmax = 64;
    std::uint64_t seed = 0;
    std::uint64_t search_budget = 100;
    std::string output = "-";
};

inline int cmd_check(const check_config& cfg) {
    measure_spec measure;
    measure.kind = parse_measure(cfg.measure);
    measure.p = cfg.p;
    measure.q = cfg.q;
    measure.validate();
    const dim_range dims{cfg.dmin, cfg.dmax};
    const auto properties = parse_properties(cfg.properties);

    bool as_expected = true;
    ojson rows = ojson::array();
    for (property_id p : properties) {
        check_report rep = is_axiom(p) ? check_axiom(p, measure, cfg.trials, dims, cfg.seed)
                                       : check_theorem(p, cfg.trials, dims, cfg.seed, measure);
        const bool expect_hold = expected_to_hold(p, measure.kind);
        if (!expect_hold && rep.failures == 0) {
            // random trials can miss a violation; the directed search will not
            rep = counterexample_search(p, measure, cfg.search_budget, cfg.seed, dims);
        }
        const bool pass = expect_hold ? rep.failures == 0
                                      : (rep.failures >= 1 && rep.first_counterexample.has_value());
        as_expected = as_expected && pass;
        ojson row = to_json(rep);
        row["expected"] = expect_hold ? "hold" : "violate";
        row["pass"] = pass;
        rows.push_back(row);
    }

    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "check";
    j["config"] = {{"measure", to_json(measure)},
                   {"trials", cfg.trials},
                   {"dim_range", {cfg.dmin, cfg.dmax}},
                   {"seed", cfg.seed},
                   {"search_budget", cfg.search_budget}};
    j["checks"] = rows;
    j["as_expected"] = as_expected;
    write_output(cfg.output, j.dump(2) + "\n");
    return as_expected ? 0 : 1;
}

// ---- sweep ----

struct sweep_config {
    std::vector<std::size_t> counts{2, 5, 10, 20, 50};
    std::string mode = "analytic"; // analytic | sampled
    std::size_t n_per_group = 100000;
    std::size_t num_seeds = 3;
    std::uint64_t seed = 0;
    std::vector<std::string> measures{"mpd", "pq"};
    double p = 1.0, q = 2.0;
    std::string output = "-";
    // granularity mode over a CSV input
    std::string input;
    std::string sweep_col;
    std::vector<std::size_t> sweep_bins;
    evaluate_config base; // criterion/task/columns for granularity sweeps
};

namespace detail {

inline std::pair<double, double> mean_stderr(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

} // namespace detail

// Disparity of the multigroup scenario as the group count grows. The
// scenario is binary with mirrored class weights, so the sweep tracks the
// positive-class rate vector; extreme rates stay (0.5, 0.9) while
// intermediate groups fill in.
inline int cmd_sweep(const sweep_config& cfg) {
    if (cfg.counts.empty() && cfg.sweep_bins.empty())
        throw error(errc::config_error, "nothing to sweep");

    std::vector<measure_spec> measures;
    for (const auto& name : cfg.measures) {
        measure_spec m;
        m.kind = parse_measure(name);
        m.p = cfg.p;
        m.q = cfg.q;
        m.validate();
        measures.push_back(m);
    }

    csv::writer out;
    out.row({"group_count", "criterion", "measure", "value", "stderr"});

    if (!cfg.input.empty()) {
        // granularity sweep: rebuild groups at each bin count of one column
        if (cfg.sweep_col.empty() || cfg.sweep_bins.empty())
            throw error(errc::config_error, "--sweep-col and --sweep-bins are required with --input");
        if (std::find(cfg.base.group_cols.begin(), cfg.base.group_cols.end(), cfg.sweep_col) ==
            cfg.base.group_cols.end())
            throw error(errc::config_error, "--sweep-col must also be listed as a --group-col");
        const csv::table t = csv::read_file(cfg.input);
        for (std::size_t k : cfg.sweep_bins) {
            evaluate_config ecfg = cfg.base;
            ecfg.input = cfg.input;
            ecfg.bin_specs.push_back(cfg.sweep_col + "=" + std::to_string(k));
            for (const auto& m : measures) {
                ecfg.measure = to_string(m.kind);
                ecfg.p = m.p;
                ecfg.q = m.q;
                const loaded_input in = load_input(ecfg, t);
                const metric_report rep = evaluate_criterion(ecfg, in);
                out.row({std::to_string(in.groups.retained_groups()), ecfg.criterion,
                         to_string(m.kind), csv::format_double(rep.value),
                         csv::format_double(0.0)});
            }
        }
        write_output(cfg.output, out.str());
        return 0;
    }

    for (std::size_t count : cfg.counts) {
        for (const auto& m : measures) {
            if (cfg.mode == "analytic") {
                const auto rates = multigroup_rate_matrix(count);
                std::vector<double> class1;
                for (const auto& row : rates) class1.push_back(row[1]);
                out.row({std::to_string(count), "sp", to_string(m.kind),
                         csv::format_double(sparsity(class1, m)), csv::format_double(0.0)});
            } else if (cfg.mode == "sampled") {
                std::vector<double> values;
                for (std::size_t s = 0; s < cfg.num_seeds; ++s) {
                    const std::uint64_t run_seed = derive_seed(derive_seed(cfg.seed, count), s);
                    const auto sample =
                        gen_multigroup_cls(cfg.n_per_group * count, count, run_seed);
                    const auto R = class_rate_matrix(sample.data, partition(sample.data.group));
                    std::vector<double> class1;
                    for (const auto& row : R.rates) class1.push_back(row[1]);
                    values.push_back(sparsity(class1, m));
                }
                const auto [mean, se] = detail::mean_stderr(values);
                out.row({std::to_string(count), "sp", to_string(m.kind),
                         csv::format_double(mean), csv::format_double(se)});
            } else {
                throw error(errc::config_error, "unknown sweep mode '" + cfg.mode + "'");
            }
        }
    }
    write_output(cfg.output, out.str());
    return 0;
}

// ---- surface ----

struct surface_config {
    std::string measure = "pq";
    double p = 1.0, q = 2.0;
    std::size_t resolution = 31;
    std::string output = "-";
};

// Simplex grid for d = 3: w3 = 1 - w1 - w2 on steps of 1/(resolution-1).
inline int cmd_surface(const surface_config& cfg) {
    if (cfg.resolution < 2) throw error(errc::config_error, "resolution must be >= 2");
    measure_spec m;
    m.kind = parse_measure(cfg.measure);
    if (m.kind == measure_kind::mpd)
        throw error(errc::config_error, "surface supports gini and pq only");
    m.p = cfg.p;
    m.q = cfg.q;
    m.validate();

    const std::size_t steps = cfg.resolution - 1;
    csv::writer out;
    out.row({"w1", "w2", "value"});
    for (std::size_t i = 0; i <= steps; ++i) {
        for (std::size_t j = 0; j + i <= steps; ++j) {
            const double w1 = static_cast<double>(i) / static_cast<double>(steps);
            const double w2 = static_cast<double>(j) / static_cast<double>(steps);
            const double w3 =
                static_cast<double>(steps - i - j) / static_cast<double>(steps);
            const double v = sparsity(std::vector<double>{w1, w2, w3}, m);
            out.row({csv::format_double(w1), csv::format_double(w2), csv::format_double(v)});
        }
    }
    write_output(cfg.output, out.str());
    return 0;
}

// ---- gen ----

struct gen_config {
    std::string scenario_name = "multigroup-cls";
    std::size_t n = 1000;
    std::size_t n_groups = 2;
    std::uint64_t seed = 0;
    double var_a = 10.0, var_b = 1.0;
    std::string output = "-";
};

inline int cmd_gen(const gen_config& cfg) {
    const scenario kind = parse_scenario(cfg.scenario_name);
    csv::writer out;
    if (kind == scenario::twogroup_reg) {
        const auto s = gen_twogroup_reg(cfg.n, cfg.seed, cfg.var_a, cfg.var_b);
        // ship fitted predictions so the file demos the whole pipeline
        const auto [b0, b1] = fit_simple_ols(s.x, s.data.y_true);
        out.row({"group", "x", "y_true", "y_pred"});
        for (std::size_t i = 0; i < s.data.size(); ++i)
            out.row({std::to_string(s.data.group[i]), csv::format_double(s.x[i]),
                     csv::format_double(s.data.y_true[i]),
                     csv::format_double(b0 + b1 * s.x[i])});
    } else {
        classification_data d = kind == scenario::multigroup_cls
                                    ? gen_multigroup_cls(cfg.n, cfg.n_groups, cfg.seed).data
                                    : gen_twogroup_cls(cfg.n, cfg.seed);
        out.row({"group", "y_true", "y_pred"});
        for (std::size_t i = 0; i < d.size(); ++i)
            out.row({std::to_string(d.group[i]), std::to_string(d.y_true[i]),
                     std::to_string(d.y_pred[i])});
    }
    write_output(cfg.output, out.str());
    return 0;
}

// ---- app assembly ----

inline int run(std::vector<std::string> args) {
    CLI::App app{"group fairness evaluation through sparsity measures"};
    app.require_subcommand(1);

    evaluate_config ecfg;
    auto* ev = app.add_subcommand("evaluate", "evaluate a fairness criterion on a CSV");
    ev->add_option("--input,-i", ecfg.input, "input CSV")->required();
    ev->add_option("--output,-o", ecfg.output, "output path, '-' for stdout");
    ev->add_option("--task", ecfg.task, "classification|regression");
    ev->add_option("--criterion", ecfg.criterion, "sp|eo|sp-weak|sp-w");
    ev->add_option("--measure", ecfg.measure, "mpd|gini|pq");
    ev->add_option("--p", ecfg.p, "PQ p");
    ev->add_option("--q", ecfg.q, "PQ q");
    ev->add_option("--transform", ecfg.transform, "none|exp");
    ev->add_option("--metric", ecfg.metric, "performance metric g for eo");
    ev->add_option("--ll-variance", ecfg.ll_variance, "gaussian variance for log-likelihood");
    ev->add_option("--agg", ecfg.agg, "max|mean|sum");
    ev->add_option("--label-col", ecfg.label_col, "true label column");
    ev->add_option("--pred-col", ecfg.pred_col, "prediction column");
    ev->add_option("--score-prefix", ecfg.score_prefix, "per-class score column prefix");
    ev->add_option("--group-col", ecfg.group_cols, "sensitive attribute column (repeatable)");
    ev->add_option("--bin", ecfg.bin_specs, "quantile-bin a column: col=k (repeatable)");
    ev->add_option("--classes", ecfg.classes, "explicit class labels")->delimiter(',');
    ev->add_option("--positive-class", ecfg.positive_class,
                   "restrict classification criteria to one class column");
    ev->add_option("--min-group-size", ecfg.min_group_size, "warn below this population");
    ev->add_flag("--drop-small-groups", ecfg.drop_small_groups,
                 "drop sub-threshold groups instead of warning");
    ev->add_flag("--drop-undefined", ecfg.drop_undefined,
                 "drop groups with undefined cells instead of erroring");
    ev->add_option("--seed", ecfg.seed, "recorded in the report");
    int rc = 0;
    ev->callback([&] { rc = cmd_evaluate(ecfg); });

    check_config ccfg;
    auto* ck = app.add_subcommand("check", "verify sparsity axioms and theorems");
    ck->add_option("--properties", ccfg.properties, "d1..p2, t31..t36, axioms, theorems, all")
        ->delimiter(',');
    ck->add_option("--measure", ccfg.measure, "mpd|gini|pq");
    ck->add_option("--p", ccfg.p, "PQ p");
    ck->add_option("--q", ccfg.q, "PQ q");
    ck->add_option("--trials", ccfg.trials, "randomized trials per property");
    ck->add_option("--dmin", ccfg.dmin, "smallest vector dimension");
    ck->add_option("--dmax", ccfg.dmax, "largest vector dimension");
    ck->add_option("--seed", ccfg.seed, "master seed");
    ck->add_option("--search-budget", ccfg.search_budget, "directed counterexample search budget");
    ck->add_option("--output,-o", ccfg.output, "output path, '-' for stdout");
    ck->callback([&] { rc = cmd_check(ccfg); });

    sweep_config scfg;
    auto* sw = app.add_subcommand("sweep", "disparity vs. group count or bin granularity");
    sw->add_option("--counts", scfg.counts, "multigroup scenario group counts")->delimiter(',');
    sw->add_option("--mode", scfg.mode, "analytic|sampled");
    sw->add_option("--n-per-group", scfg.n_per_group, "sampled rows per group");
    sw->add_option("--num-seeds", scfg.num_seeds, "seeds per cell in sampled mode");
    sw->add_option("--seed", scfg.seed, "base seed");
    sw->add_option("--measures", scfg.measures, "measures, comma separated")->delimiter(',');
    sw->add_option("--p", scfg.p, "PQ p");
    sw->add_option("--q", scfg.q, "PQ q");
    sw->add_option("--output,-o", scfg.output, "output path, '-' for stdout");
    sw->add_option("--input", scfg.input, "CSV input for a bin-granularity sweep");
    sw->add_option("--sweep-col", scfg.sweep_col, "continuous column to re-bin");
    sw->add_option("--sweep-bins", scfg.sweep_bins, "bin counts to sweep")->delimiter(',');
    sw->add_option("--task", scfg.base.task, "task for granularity sweeps");
    sw->add_option("--criterion", scfg.base.criterion, "criterion for granularity sweeps");
    sw->add_option("--label-col", scfg.base.label_col, "true label column");
    sw->add_option("--pred-col", scfg.base.pred_col, "prediction column");
    sw->add_option("--group-col", scfg.base.group_cols, "sensitive attribute column (repeatable)");
    sw->add_option("--metric", scfg.base.metric, "performance metric for eo");
    sw->callback([&] { rc = cmd_sweep(scfg); });

    surface_config ucfg;
    auto* su = app.add_subcommand("surface", "simplex grid of a measure for d = 3");
    su->add_option("--measure", ucfg.measure, "gini|pq");
    su->add_option("--p", ucfg.p, "PQ p");
    su->add_option("--q", ucfg.q, "PQ q");
    su->add_option("--resolution", ucfg.resolution, "grid points per axis");
    su->add_option("--output,-o", ucfg.output, "output path, '-' for stdout");
    su->callback([&] { rc = cmd_surface(ucfg); });

    gen_config gcfg;
    auto* gn = app.add_subcommand("gen", "generate a synthetic scenario CSV");
    gn->add_option("--scenario", gcfg.scenario_name, "multigroup-cls|twogroup-cls|twogroup-reg");
    gn->add_option("--n", gcfg.n, "total rows");
    gn->add_option("--n-groups", gcfg.n_groups, "groups (multigroup-cls)");
    gn->add_option("--seed", gcfg.seed, "generator seed");
    gn->add_option("--var-a", gcfg.var_a, "noise variance of group 0 (twogroup-reg)");
    gn->add_option("--var-b", gcfg.var_b, "noise variance of group 1 (twogroup-reg)");
    gn->add_option("--output,-o", gcfg.output, "output path, '-' for stdout");
    gn->callback([&] { rc = cmd_gen(gcfg); });

    try {
        std::reverse(args.begin(), args.end()); // CLI11 consumes args back to front
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args));
}

} // namespace sparsefair::cli
