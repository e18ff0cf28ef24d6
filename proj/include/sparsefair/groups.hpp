#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparsefair/error.hpp"

namespace sparsefair {

// Nearest-rank quantile bins over a numeric column. Duplicate edges are
// merged (k' <= k), ties at an edge all land in the lower bin, and a constant
// column collapses to a single bin with a DegenerateBins warning.
inline std::vector<int> quantile_bins(const std::vector<double>& values, std::size_t k,
                                      warning_list* warnings = nullptr) {
    const std::size_t n = values.size();
    if (k < 2) throw error(errc::invalid_params, "bin count must be >= 2");
    if (n < k) throw error(errc::invalid_input, "need at least k values to form k bins");
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(values[i]))
            throw error(errc::invalid_input, "value at row " + std::to_string(i) + " is not finite");

    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> edges; // upper edge of each bin but the last
    for (std::size_t j = 1; j < k; ++j) {
        const std::size_t rank =
            static_cast<std::size_t>(std::ceil(static_cast<double>(j * n) / static_cast<double>(k)));
        edges.push_back(sorted[rank - 1]);
    }
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (!edges.empty() && edges.back() >= sorted.back()) edges.pop_back(); // top bin would be empty

    if (edges.empty()) {
        warn(warnings, "DegenerateBins",
             "column is constant or too tied to split; emitting a single bin");
        return std::vector<int>(n, 0);
    }

    std::vector<int> bins(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto it = std::lower_bound(edges.begin(), edges.end(), values[i]);
        bins[i] = static_cast<int>(it - edges.begin()); // v <= edge -> lower bin
    }
    return bins;
}

// One sensitive attribute column. Categorical columns carry string levels;
// continuous columns carry numbers and a bin count.
struct attribute_column {
    std::string name;
    std::vector<std::string> labels; // categorical levels, "" = missing
    std::vector<double> numeric;     // used when bins > 0
    std::size_t bins = 0;            // 0 = categorical
};

struct grouping_spec {
    std::size_t min_group_size = 1;
    bool drop_small_groups = false;
};

// Value of one attribute inside a group key. Binned attributes compare by
// bin index so "b10" never sorts before "b2".
struct attr_value {
    std::string label;
    int order = -1; // >= 0 for quantile bins

    friend bool operator<(const attr_value& a, const attr_value& b) {
        if (a.order >= 0 && b.order >= 0) return a.order < b.order;
        return a.label < b.label;
    }
    friend bool operator==(const attr_value& a, const attr_value& b) {
        return a.order == b.order && a.label == b.label;
    }
};

struct group_info {
    std::vector<attr_value> key; // one entry per attribute, spec order
    std::size_t count = 0;
    bool dropped = false;

    std::string name() const {
        std::string s;
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (i) s += "|";
            s += key[i].label;
        }
        return s;
    }
};

struct grouping_result {
    std::vector<int> group_of_row;  // -1 for rows excluded (missing value or dropped group)
    std::vector<group_info> groups; // lexicographic by key; includes dropped entries
    std::size_t rows_excluded_missing = 0;

    std::size_t retained_groups() const {
        std::size_t c = 0;
        for (const auto& g : groups)
            if (!g.dropped) ++c;
        return c;
    }
};

// Cross-product grouping over the given attribute columns. Group ids are
// indices into `groups`, ordered lexicographically by attribute tuple, so a
// row permutation of the input cannot reorder the emitted vectors.
inline grouping_result build_groups(const std::vector<attribute_column>& columns,
                                    const grouping_spec& spec, warning_list* warnings = nullptr) {
    if (columns.empty()) throw error(errc::invalid_params, "need at least one attribute column");
    const std::size_t n = columns.front().bins > 0 ? columns.front().numeric.size()
                                                   : columns.front().labels.size();

    // per-column row values
    std::vector<std::vector<attr_value>> cells(columns.size());
    std::vector<std::vector<char>> missing(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const auto& col = columns[c];
        cells[c].resize(n);
        missing[c].assign(n, 0);
        if (col.bins > 0) {
            if (col.numeric.size() != n)
                throw error(errc::invalid_input, "column '" + col.name + "' length mismatch");
            const std::vector<int> bins = quantile_bins(col.numeric, col.bins, warnings);
            for (std::size_t i = 0; i < n; ++i)
                cells[c][i] = {col.name + "=b" + std::to_string(bins[i]), bins[i]};
        } else {
            if (col.labels.size() != n)
                throw error(errc::invalid_input, "column '" + col.name + "' length mismatch");
            for (std::size_t i = 0; i < n; ++i) {
                if (col.labels[i].empty())
                    missing[c][i] = 1;
                else
                    cells[c][i] = {col.name + "=" + col.labels[i], -1};
            }
        }
    }

    grouping_result out;
    out.group_of_row.assign(n, -1);

    std::map<std::vector<attr_value>, std::size_t> counts_by_key;
    std::vector<std::optional<std::vector<attr_value>>> row_key(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool has_missing = false;
        std::vector<attr_value> key(columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (missing[c][i]) { has_missing = true; break; }
            key[c] = cells[c][i];
        }
        if (has_missing) {
            ++out.rows_excluded_missing;
            continue;
        }
        ++counts_by_key[key];
        row_key[i] = std::move(key);
    }
    if (out.rows_excluded_missing > 0)
        warn(warnings, "MissingAttribute",
             std::to_string(out.rows_excluded_missing) + " row(s) with missing attribute values excluded");

    std::map<std::vector<attr_value>, int> id_of_key;
    for (const auto& [key, count] : counts_by_key) { // std::map iterates in key order
        group_info g;
        g.key = key;
        g.count = count;
        if (count < spec.min_group_size) {
            if (spec.drop_small_groups) {
                g.dropped = true;
                warn(warnings, "SmallGroupDropped",
                     "group " + g.name() + " has " + std::to_string(count) + " row(s), below " +
                         std::to_string(spec.min_group_size));
            } else {
                warn(warnings, "SmallGroup",
                     "group " + g.name() + " has " + std::to_string(count) + " row(s), below " +
                         std::to_string(spec.min_group_size));
            }
        }
        id_of_key[key] = static_cast<int>(out.groups.size());
        out.groups.push_back(std::move(g));
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!row_key[i]) continue;
        const int id = id_of_key[*row_key[i]];
        out.group_of_row[i] = out.groups[id].dropped ? -1 : id;
    }
    return out;
}

// Disjoint, exhaustive index sets over the retained groups. Keys are group
// ids; rows with id -1 are excluded.
inline std::map<int, std::vector<std::size_t>> partition(const std::vector<int>& group_of_row) {
    std::map<int, std::vector<std::size_t>> parts;
    for (std::size_t i = 0; i < group_of_row.size(); ++i)
        if (group_of_row[i] >= 0) parts[group_of_row[i]].push_back(i);
    return parts;
}

} // namespace sparsefair
