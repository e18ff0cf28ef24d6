#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sparsefair/error.hpp"

namespace sparsefair {

// Evaluation triples for one classification task. Classes are dense indices
// 0..num_classes-1; callers keep the original label strings.
struct classification_data {
    std::vector<int> y_true;
    std::vector<int> y_pred;
    std::vector<std::vector<double>> scores; // optional, n rows x num_classes
    std::vector<int> group;                  // -1 = excluded row
    std::size_t num_classes = 0;

    std::size_t size() const { return y_true.size(); }

    void validate() const {
        const std::size_t n = y_true.size();
        if (n == 0) throw error(errc::invalid_input, "dataset is empty");
        if (y_pred.size() != n || group.size() != n)
            throw error(errc::invalid_input, "y_true, y_pred and group must have equal length");
        if (num_classes < 1) throw error(errc::invalid_input, "need at least one class");
        for (std::size_t i = 0; i < n; ++i) {
            if (y_true[i] < 0 || y_true[i] >= static_cast<int>(num_classes))
                throw error(errc::invalid_input,
                            "y_true at row " + std::to_string(i) + " outside the class set");
            if (y_pred[i] < 0 || y_pred[i] >= static_cast<int>(num_classes))
                throw error(errc::invalid_input,
                            "y_pred at row " + std::to_string(i) + " outside the class set");
        }
        if (!scores.empty()) {
            if (scores.size() != n)
                throw error(errc::invalid_input, "score matrix must have one row per sample");
            for (std::size_t i = 0; i < n; ++i) {
                if (scores[i].size() != num_classes)
                    throw error(errc::invalid_input,
                                "score row " + std::to_string(i) + " must have one column per class");
                double s = 0.0;
                for (double v : scores[i]) {
                    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
                        throw error(errc::invalid_input,
                                    "score at row " + std::to_string(i) + " outside [0,1]");
                    s += v;
                }
                if (std::fabs(s - 1.0) > 1e-6)
                    throw error(errc::invalid_input,
                                "score row " + std::to_string(i) + " sums to " + std::to_string(s));
            }
        }
    }
};

struct regression_data {
    std::vector<double> y_true;
    std::vector<double> y_pred;
    std::vector<int> group; // -1 = excluded row

    std::size_t size() const { return y_true.size(); }

    void validate() const {
        const std::size_t n = y_true.size();
        if (n == 0) throw error(errc::invalid_input, "dataset is empty");
        if (y_pred.size() != n || group.size() != n)
            throw error(errc::invalid_input, "y_true, y_pred and group must have equal length");
        for (std::size_t i = 0; i < n; ++i)
            if (!std::isfinite(y_true[i]) || !std::isfinite(y_pred[i]))
                throw error(errc::invalid_input, "non-finite value at row " + std::to_string(i));
    }
};

} // namespace sparsefair
