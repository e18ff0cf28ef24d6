#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sparsefair {

// Failure categories surfaced to callers. The CLI maps all of them to
// exit code 2 (input/configuration error).
enum class errc {
    invalid_input,        // malformed data: non-finite values, empty vectors, length mismatches
    invalid_params,       // bad spec parameters, e.g. PQ with p >= q
    negative_input,       // negative component reaching a measure without an exp transform
    degenerate_fit,       // least squares on a constant regressor
    condition_cell_empty, // no samples for a (group, condition-class) cell
    undefined_cell,       // per-group metric undefined (missing positives/negatives, etc.)
    csv_error,            // unreadable file, missing column, bad cell
    config_error,         // incompatible criterion/task/metric combination
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::invalid_input: return "InvalidInput";
    case errc::invalid_params: return "InvalidParams";
    case errc::negative_input: return "NegativeInput";
    case errc::degenerate_fit: return "DegenerateFit";
    case errc::condition_cell_empty: return "ConditionCellEmpty";
    case errc::undefined_cell: return "UndefinedCell";
    case errc::csv_error: return "CsvError";
    case errc::config_error: return "ConfigError";
    }
    return "UnknownError";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

// Warnings are plain strings with a stable "<Kind>: <detail>" shape so they
// can be forwarded verbatim into reports.
using warning_list = std::vector<std::string>;

inline void warn(warning_list* sink, const std::string& kind, const std::string& detail) {
    if (sink) sink->push_back(kind + ": " + detail);
}

} // namespace sparsefair
