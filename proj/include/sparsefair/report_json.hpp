#pragma once

#include <json.hpp>

#include "sparsefair/groups.hpp"
#include "sparsefair/metrics.hpp"
#include "sparsefair/verify.hpp"

// JSON shapes for the reports. Keys keep insertion order so identical runs
// serialize to identical bytes.

namespace sparsefair {

using ojson = nlohmann::ordered_json;

inline ojson to_json(const measure_spec& m) {
    ojson j;
    j["kind"] = to_string(m.kind);
    if (m.kind == measure_kind::pq) {
        j["p"] = m.p;
        j["q"] = m.q;
    }
    j["transform"] = to_string(m.transform);
    return j;
}

inline ojson to_json(const metric_item& item) {
    ojson j;
    j["label"] = item.label;
    j["group_ids"] = item.group_ids;
    j["vector"] = item.group_vector;
    j["value"] = item.value;
    return j;
}

inline ojson to_json(const metric_report& rep) {
    ojson j;
    j["criterion"] = rep.criterion;
    j["measure"] = to_json(rep.measure);
    j["aggregation"] = to_string(rep.aggregation);
    j["value"] = rep.value;
    j["item_count"] = rep.item_count;
    ojson items = ojson::array();
    for (const auto& item : rep.items) items.push_back(to_json(item));
    j["items"] = items;
    if (rep.attained) j["attained"] = to_json(*rep.attained);
    j["warnings"] = rep.warnings;
    return j;
}

inline ojson to_json(const grouping_result& groups) {
    ojson arr = ojson::array();
    for (std::size_t id = 0; id < groups.groups.size(); ++id) {
        const auto& g = groups.groups[id];
        ojson j;
        j["id"] = id;
        j["name"] = g.name();
        j["count"] = g.count;
        j["dropped"] = g.dropped;
        arr.push_back(j);
    }
    return arr;
}

inline ojson to_json(const counterexample& ce) {
    ojson j;
    j["inputs"] = ce.inputs;
    j["observed"] = ce.observed;
    j["expected_relation"] = ce.relation;
    return j;
}

inline ojson to_json(const check_report& rep) {
    ojson j;
    j["property"] = to_string(rep.property);
    j["measure"] = to_json(rep.measure);
    j["trials"] = rep.trials;
    j["failures"] = rep.failures;
    j["seed"] = rep.seed;
    if (rep.first_counterexample) j["first_counterexample"] = to_json(*rep.first_counterexample);
    return j;
}

} // namespace sparsefair
