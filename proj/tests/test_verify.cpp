#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sparsefair/verify.hpp"

using namespace sparsefair;

namespace {
constexpr dim_range kDims{2, 64};
constexpr std::uint64_t kSeed = 991;
constexpr std::uint64_t kTrials = 2000; // acceptance runs the full 10^4
} // namespace

TEST_CASE("pq satisfies all six axioms") {
    for (property_id p : {property_id::d1_robin_hood, property_id::d2_scaling,
                          property_id::d3_rising_tide, property_id::d4_cloning,
                          property_id::p1_bill_gates, property_id::p2_babies}) {
        const auto rep = check_axiom(p, pq_spec(), kTrials, kDims, kSeed);
        INFO(to_string(p));
        CHECK(rep.failures == 0);
        CHECK(rep.trials == kTrials);
        CHECK_FALSE(rep.first_counterexample.has_value());
    }
}

TEST_CASE("pq satisfies the axioms for sampled p <= 1 <= q") {
    rng r(5150);
    for (int round = 0; round < 4; ++round) {
        const double p = r.uniform(0.2, 1.0);
        const double q = r.uniform(1.1, 3.0);
        for (property_id id : {property_id::d1_robin_hood, property_id::d3_rising_tide,
                               property_id::p2_babies}) {
            const auto rep = check_axiom(id, pq_spec(p, q), 500, kDims, kSeed + round);
            INFO(to_string(id) << " p=" << p << " q=" << q);
            CHECK(rep.failures == 0);
        }
    }
}

TEST_CASE("robin hood can fail for pq with p > 1") {
    // known boundary of the measure: with both exponents above 1 a transfer
    // between two large components can raise the index
    const std::vector<double> w{0.04324972, 0.73235889, 0.18389906, 0.86454713};
    std::vector<double> w2 = w;
    const double alpha = 0.3 * (w[2] - w[0]); // transfer between the two small components
    w2[2] -= alpha;
    w2[0] += alpha;
    CHECK(pq_index(w2, 1.4516, 1.7025) > pq_index(w, 1.4516, 1.7025));
    // the shipped configuration is safe
    CHECK(pq_index(w2, 1.0, 2.0) < pq_index(w, 1.0, 2.0));

    const auto rep =
        counterexample_search(property_id::d1_robin_hood, pq_spec(1.4516, 1.7025), 3000, 5150);
    CHECK(rep.failures >= 1);
}

TEST_CASE("gini satisfies all six axioms") {
    for (property_id p : {property_id::d1_robin_hood, property_id::d2_scaling,
                          property_id::d3_rising_tide, property_id::d4_cloning,
                          property_id::p1_bill_gates, property_id::p2_babies}) {
        const auto rep = check_axiom(p, gini_spec(), kTrials, kDims, kSeed);
        INFO(to_string(p));
        CHECK(rep.failures == 0);
    }
}

TEST_CASE("mpd satisfies only cloning and bill gates") {
    CHECK(check_axiom(property_id::d4_cloning, mpd_spec(), kTrials, kDims, kSeed).failures == 0);
    CHECK(check_axiom(property_id::p1_bill_gates, mpd_spec(), kTrials, kDims, kSeed).failures == 0);

    for (property_id p : {property_id::d1_robin_hood, property_id::d2_scaling,
                          property_id::d3_rising_tide, property_id::p2_babies}) {
        const auto rep = check_axiom(p, mpd_spec(), kTrials, kDims, kSeed);
        INFO(to_string(p));
        CHECK(rep.failures >= 1);
        REQUIRE(rep.first_counterexample.has_value());
        CHECK_FALSE(rep.first_counterexample->inputs.empty());
    }
}

TEST_CASE("mpd rising tide fails on every trial") {
    // adding a constant to every component never moves max - min
    const auto rep = check_axiom(property_id::d3_rising_tide, mpd_spec(), 500, kDims, kSeed);
    CHECK(rep.failures == rep.trials);
}

TEST_CASE("theorem checks pass") {
    for (property_id p : {property_id::t31_max, property_id::t32_min, property_id::t33_l2dist,
                          property_id::t34_transfer, property_id::t35_bounds,
                          property_id::t36_trim}) {
        const auto rep = check_theorem(p, kTrials, kDims, kSeed);
        INFO(to_string(p));
        CHECK(rep.failures == 0);
    }
}

TEST_CASE("t31 for several (p, q) configurations") {
    for (auto [p, q] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.5}, std::pair{1.0, 3.0}}) {
        const auto rep = check_theorem(property_id::t31_max, 1000, kDims, kSeed, pq_spec(p, q));
        INFO("p=" << p << " q=" << q);
        CHECK(rep.failures == 0);
    }
}

TEST_CASE("t33 hand-evaluated anchor") {
    // w = [1, 0]: both sides equal sqrt(2 - sqrt(2))
    const std::vector<double> w{1.0, 0.0};
    const double lhs = std::sqrt(2.0 - std::sqrt(2.0));
    const double rhs = std::sqrt(2.0 * pq_index(w, 1, 2));
    CHECK(lhs == Catch::Approx(0.76536686473017945).margin(1e-12));
    CHECK(rhs == Catch::Approx(lhs).margin(1e-12));
}

TEST_CASE("t31 one-hot anchor at d=5") {
    std::vector<double> w(5, 0.0);
    w[2] = 3.7;
    CHECK(pq_index(w, 1, 2) ==
          Catch::Approx(1.0 - 1.0 / std::sqrt(5.0)).margin(1e-12)); // 0.5527864
}

TEST_CASE("counterexample search finds the mpd violations directly") {
    SECTION("robin hood interior transfer") {
        const auto rep = counterexample_search(property_id::d1_robin_hood, mpd_spec(), 100, 3);
        CHECK(rep.failures >= 1);
        REQUIRE(rep.first_counterexample.has_value());
        // canned template: w = [4,3,1,0], transfer 0.5 between the interior pair
        CHECK(rep.first_counterexample->inputs[0] == std::vector<double>{4.0, 3.0, 1.0, 0.0});
        CHECK(rep.first_counterexample->observed[0] == 4.0);
        CHECK(rep.first_counterexample->observed[1] == 4.0);
    }
    SECTION("scaling") {
        const auto rep = counterexample_search(property_id::d2_scaling, mpd_spec(), 100, 3);
        CHECK(rep.failures >= 1);
        REQUIRE(rep.first_counterexample.has_value());
        CHECK(rep.first_counterexample->observed[0] == 1.0);
        CHECK(rep.first_counterexample->observed[1] == 2.0);
    }
    SECTION("babies with an existing zero") {
        const auto rep = counterexample_search(property_id::p2_babies, mpd_spec(), 100, 3);
        CHECK(rep.failures >= 1);
        REQUIRE(rep.first_counterexample.has_value());
        CHECK(rep.first_counterexample->observed[0] == rep.first_counterexample->observed[1]);
    }
    SECTION("no counterexample for measures that satisfy the axiom") {
        const auto rep = counterexample_search(property_id::d1_robin_hood, pq_spec(), 100, 3);
        CHECK(rep.failures == 0);
        CHECK_FALSE(rep.first_counterexample.has_value());
        CHECK(rep.trials == 100);
    }
}

TEST_CASE("reports are deterministic in the seed") {
    const auto a = check_axiom(property_id::d1_robin_hood, mpd_spec(), 500, kDims, 77);
    const auto b = check_axiom(property_id::d1_robin_hood, mpd_spec(), 500, kDims, 77);
    CHECK(a.failures == b.failures);
    REQUIRE(a.first_counterexample.has_value());
    REQUIRE(b.first_counterexample.has_value());
    CHECK(a.first_counterexample->inputs == b.first_counterexample->inputs);

    const auto c = check_axiom(property_id::d1_robin_hood, mpd_spec(), 500, kDims, 78);
    CHECK((c.failures != a.failures || c.first_counterexample->inputs != a.first_counterexample->inputs));
}

TEST_CASE("expected_to_hold matches the published table") {
    for (measure_kind m : {measure_kind::pq, measure_kind::gini})
        for (property_id p : all_properties) CHECK(expected_to_hold(p, m));
    CHECK(expected_to_hold(property_id::d4_cloning, measure_kind::mpd));
    CHECK(expected_to_hold(property_id::p1_bill_gates, measure_kind::mpd));
    CHECK_FALSE(expected_to_hold(property_id::d1_robin_hood, measure_kind::mpd));
    CHECK_FALSE(expected_to_hold(property_id::d2_scaling, measure_kind::mpd));
    CHECK_FALSE(expected_to_hold(property_id::d3_rising_tide, measure_kind::mpd));
    CHECK_FALSE(expected_to_hold(property_id::p2_babies, measure_kind::mpd));
    CHECK(expected_to_hold(property_id::t35_bounds, measure_kind::mpd));
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(check_axiom(property_id::t31_max, pq_spec(), 10, kDims, 0), error);
    CHECK_THROWS_AS(check_theorem(property_id::d1_robin_hood, 10, kDims, 0), error);
    CHECK_THROWS_AS(check_axiom(property_id::d1_robin_hood, pq_spec(), 0, kDims, 0), error);
    CHECK_THROWS_AS(check_axiom(property_id::d1_robin_hood, pq_spec(), 10, {1, 4}, 0), error);
    CHECK_THROWS_AS(check_axiom(property_id::d1_robin_hood, pq_spec(), 10, {8, 4}, 0), error);
}
