#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "sparsefair/groups.hpp"
#include "sparsefair/rng.hpp"
#include "sparsefair/sparsity.hpp"

using namespace sparsefair;

TEST_CASE("quantile_bins median split") {
    std::vector<double> v(10);
    std::iota(v.begin(), v.end(), 1.0); // 1..10
    const auto bins = quantile_bins(v, 2);
    for (int i = 0; i < 5; ++i) CHECK(bins[i] == 0);
    for (int i = 5; i < 10; ++i) CHECK(bins[i] == 1);
}

TEST_CASE("quantile_bins tertiles") {
    std::vector<double> v(9);
    std::iota(v.begin(), v.end(), 1.0); // 1..9
    const auto bins = quantile_bins(v, 3);
    std::vector<int> count(3, 0);
    for (int b : bins) ++count[b];
    CHECK(count == std::vector<int>{3, 3, 3});
    // order-respecting
    CHECK(bins[0] == 0);
    CHECK(bins[4] == 1);
    CHECK(bins[8] == 2);
}

TEST_CASE("quantile_bins constant column collapses") {
    warning_list warnings;
    const auto bins = quantile_bins({5.0, 5.0, 5.0, 5.0}, 3, &warnings);
    CHECK(bins == std::vector<int>{0, 0, 0, 0});
    REQUIRE_FALSE(warnings.empty());
    CHECK(warnings[0].find("DegenerateBins") == 0);
}

TEST_CASE("quantile_bins merges duplicate edges") {
    // heavy tie mass at 1: the 2-quantile and 3-quantile edges coincide
    const std::vector<double> v{1, 1, 1, 1, 1, 1, 2, 3, 9};
    warning_list warnings;
    const auto bins = quantile_bins(v, 4, &warnings);
    const int kprime = *std::max_element(bins.begin(), bins.end()) + 1;
    CHECK(kprime <= 4);
    CHECK(kprime >= 2);
    // ties at an edge all land in the lower bin
    for (std::size_t i = 0; i < 6; ++i) CHECK(bins[i] == bins[0]);
}

TEST_CASE("quantile_bins validates input") {
    CHECK_THROWS_AS(quantile_bins({1.0, 2.0}, 1), error);
    CHECK_THROWS_AS(quantile_bins({1.0, 2.0}, 3), error);
}

TEST_CASE("build_groups cross product") {
    attribute_column gender{"gender", {"M", "F", "M", "F", "M"}, {}, 0};
    attribute_column race{"race", {"A", "A", "B", "B", "A"}, {}, 0};
    const auto res = build_groups({gender, race}, {});
    CHECK(res.groups.size() == 4);
    // lexicographic by attribute tuple
    CHECK(res.groups[0].name() == "gender=F|race=A");
    CHECK(res.groups[1].name() == "gender=F|race=B");
    CHECK(res.groups[2].name() == "gender=M|race=A");
    CHECK(res.groups[3].name() == "gender=M|race=B");
    CHECK(res.groups[2].count == 2);
    const auto parts = partition(res.group_of_row);
    CHECK(parts.size() == 4);
}

TEST_CASE("build_groups with binned age") {
    std::vector<double> age(20);
    std::iota(age.begin(), age.end(), 18.0);
    std::vector<std::string> gender;
    for (int i = 0; i < 20; ++i) gender.push_back(i % 2 ? "M" : "F");
    attribute_column g{"gender", gender, {}, 0};
    attribute_column a{"age", {}, age, 5};
    const auto res = build_groups({g, a}, {});
    CHECK(res.groups.size() <= 10);
    CHECK(res.retained_groups() == res.groups.size());
    // binned values order numerically inside the key
    bool sorted = std::is_sorted(res.groups.begin(), res.groups.end(),
                                 [](const group_info& x, const group_info& y) {
                                     return x.key < y.key;
                                 });
    CHECK(sorted);
}

TEST_CASE("single-level attribute yields one group and zero sparsity downstream") {
    attribute_column only{"site", {"x", "x", "x"}, {}, 0};
    const auto res = build_groups({only}, {});
    REQUIRE(res.groups.size() == 1);
    CHECK(res.groups[0].count == 3);
    CHECK(sparsity(std::vector<double>{0.42}, pq_spec()) == 0.0);
    CHECK(sparsity(std::vector<double>{0.42}, mpd_spec()) == 0.0);
}

TEST_CASE("empty cross-product cells are absent") {
    attribute_column c1{"a", {"x", "x", "y"}, {}, 0};
    attribute_column c2{"b", {"u", "u", "v"}, {}, 0};
    const auto res = build_groups({c1, c2}, {});
    CHECK(res.groups.size() == 2); // (x,u) and (y,v) only
}

TEST_CASE("min_group_size warn vs drop") {
    attribute_column col{"g", {"a", "a", "a", "a", "b"}, {}, 0};

    SECTION("warn only by default") {
        warning_list warnings;
        grouping_spec spec;
        spec.min_group_size = 2;
        const auto res = build_groups({col}, spec, &warnings);
        CHECK(res.retained_groups() == 2);
        REQUIRE_FALSE(warnings.empty());
        CHECK(warnings[0].find("SmallGroup") == 0);
    }

    SECTION("drop policy excludes the rows") {
        warning_list warnings;
        grouping_spec spec;
        spec.min_group_size = 2;
        spec.drop_small_groups = true;
        const auto res = build_groups({col}, spec, &warnings);
        CHECK(res.retained_groups() == 1);
        const auto parts = partition(res.group_of_row);
        REQUIRE(parts.size() == 1);
        CHECK(parts.begin()->second.size() == 4);
        CHECK(res.group_of_row[4] == -1);
        REQUIRE_FALSE(warnings.empty());
        CHECK(warnings[0].find("SmallGroupDropped") == 0);
    }
}

TEST_CASE("missing attribute values exclude the row with a warning") {
    attribute_column col{"g", {"a", "", "b", "a"}, {}, 0};
    warning_list warnings;
    const auto res = build_groups({col}, {}, &warnings);
    CHECK(res.rows_excluded_missing == 1);
    CHECK(res.group_of_row[1] == -1);
    bool found = false;
    for (const auto& w : warnings) found |= w.find("MissingAttribute") == 0;
    CHECK(found);
}

TEST_CASE("partition blocks are disjoint and exhaustive") {
    const std::vector<int> ids{0, 1, 0, 1};
    const auto parts = partition(ids);
    REQUIRE(parts.size() == 2);
    CHECK(parts.at(0) == std::vector<std::size_t>{0, 2});
    CHECK(parts.at(1) == std::vector<std::size_t>{1, 3});
}

TEST_CASE("group ids are stable under row permutation") {
    std::vector<std::string> labels{"c", "a", "b", "a", "c", "b", "a"};
    attribute_column col{"g", labels, {}, 0};
    const auto base = build_groups({col}, {});

    rng r(5);
    for (int t = 0; t < 20; ++t) {
        std::vector<std::string> shuffled = labels;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[r.below(i)]);
        attribute_column col2{"g", shuffled, {}, 0};
        const auto perm = build_groups({col2}, {});
        REQUIRE(perm.groups.size() == base.groups.size());
        for (std::size_t g = 0; g < base.groups.size(); ++g) {
            CHECK(perm.groups[g].name() == base.groups[g].name());
            CHECK(perm.groups[g].count == base.groups[g].count);
        }
        for (std::size_t i = 0; i < shuffled.size(); ++i) {
            const int id = perm.group_of_row[i];
            CHECK(perm.groups[id].name() == "g=" + shuffled[i]);
        }
    }
}

TEST_CASE("bin populations stay within a tie block of n/k") {
    rng r(29);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 20 + r.below(200);
        const std::size_t k = 2 + r.below(6);
        std::vector<double> v(n);
        for (double& x : v) x = std::floor(r.uniform(0.0, 30.0)); // many ties
        warning_list warnings;
        const auto bins = quantile_bins(v, k, &warnings);
        const int kprime = *std::max_element(bins.begin(), bins.end()) + 1;
        std::vector<std::size_t> pop(kprime, 0);
        for (int b : bins) ++pop[b];
        for (std::size_t b = 0; b + 1 < pop.size(); ++b) CHECK(pop[b] > 0);
        // with distinct values the populations are balanced to within 1
        std::vector<double> dv(n);
        for (std::size_t i = 0; i < n; ++i) dv[i] = static_cast<double>(i) + r.uniform(0.0, 0.5);
        const auto dbins = quantile_bins(dv, k);
        std::vector<std::size_t> dpop(k, 0);
        for (int b : dbins) ++dpop[b];
        const auto [lo, hi] = std::minmax_element(dpop.begin(), dpop.end());
        CHECK(*hi - *lo <= 1);
    }
}
