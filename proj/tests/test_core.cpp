#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "tsml/core.hpp"

using namespace tsml;
using helpers::series;

namespace {

Collection dense_2x1x3() {
    return Collection::dense({series({1, 2, 3}), series({4, 5, 6})});
}

Collection ragged_3_5() {
    return Collection::ragged({series({1, 2, 3}), series({4, 5, 6, 7, 8})});
}

}  // namespace

TEST_CASE("summarize") {
    SUBCASE("dense collection") {
        const CollectionMeta meta = summarize(dense_2x1x3());
        CHECK(meta.n_cases == 2);
        CHECK(meta.n_channels == 1);
        CHECK(meta.length_min == 3);
        CHECK(meta.length_max == 3);
        CHECK(meta.is_equal_length);
        CHECK_FALSE(meta.has_missing);
    }
    SUBCASE("ragged lengths") {
        const CollectionMeta meta = summarize(ragged_3_5());
        CHECK(meta.length_min == 3);
        CHECK(meta.length_max == 5);
        CHECK_FALSE(meta.is_equal_length);
    }
    SUBCASE("missing sentinel detection") {
        Series s = series({1, 2, 3});
        s.at(0, 1) = std::nan("");
        const CollectionMeta meta = summarize(Collection::dense({s}));
        CHECK(meta.has_missing);
    }
    SUBCASE("empty collection") {
        CHECK_THROWS_AS(summarize(Collection{}), EmptyCollection);
    }
}

TEST_CASE("check_capabilities") {
    CollectionMeta meta;
    meta.n_cases = 4;
    meta.n_channels = 3;
    meta.length_min = meta.length_max = 10;
    meta.is_equal_length = true;

    SUBCASE("multivariate violation") {
        const auto report = check_capabilities(TagSet{}, meta);
        REQUIRE_FALSE(report.ok());
        CHECK(report.violations.size() == 1);
        CHECK(report.violations[0].tag == "multivariate");
    }
    SUBCASE("ragged data with the capability is fine") {
        meta.n_channels = 1;
        meta.length_min = 5;
        meta.is_equal_length = false;
        const auto report = check_capabilities(TagSet{.unequal_length = true}, meta);
        CHECK(report.ok());
    }
    SUBCASE("all tags accept anything") {
        meta.is_equal_length = false;
        meta.has_missing = true;
        const auto report = check_capabilities(
            TagSet{.multivariate = true, .unequal_length = true, .missing_values = true}, meta);
        CHECK(report.ok());
    }
    SUBCASE("monotone in tags") {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<int> coin(0, 1);
        for (int rep = 0; rep < 200; ++rep) {
            CollectionMeta m;
            m.n_cases = 1;
            m.n_channels = coin(rng) == 0 ? 1 : 2;
            m.length_min = 3;
            m.length_max = coin(rng) == 0 ? 3 : 5;
            m.is_equal_length = m.length_min == m.length_max;
            m.has_missing = coin(rng) == 1;
            TagSet tags{.multivariate = coin(rng) == 1, .unequal_length = coin(rng) == 1,
                        .missing_values = coin(rng) == 1};
            const std::size_t before = check_capabilities(tags, m).violations.size();
            TagSet raised = tags;
            switch (rep % 3) {
                case 0: raised.multivariate = true; break;
                case 1: raised.unequal_length = true; break;
                default: raised.missing_values = true; break;
            }
            CHECK(check_capabilities(raised, m).violations.size() <= before);
        }
    }
}

TEST_CASE("fit_guard") {
    SUBCASE("success records metadata") {
        EstimatorState state;
        const CollectionMeta meta = fit_guard(state, TagSet{}, dense_2x1x3());
        CHECK(state.fitted());
        CHECK(state.fitted_meta().n_cases == meta.n_cases);
    }
    SUBCASE("capability failure") {
        EstimatorState state;
        CHECK_THROWS_AS(fit_guard(state, TagSet{}, ragged_3_5()), CapabilityError);
        CHECK_FALSE(state.fitted());
        try {
            fit_guard(state, TagSet{}, ragged_3_5());
        } catch (const CapabilityError& e) {
            REQUIRE(e.report().violations.size() == 1);
            CHECK(e.report().violations[0].tag == "unequal_length");
        }
    }
    SUBCASE("refit overwrites") {
        EstimatorState state;
        fit_guard(state, TagSet{}, dense_2x1x3());
        fit_guard(state, TagSet{.multivariate = true}, Collection::dense({Series(2, 4)}));
        CHECK(state.fitted_meta().n_channels == 2);
    }
    SUBCASE("idempotent in effect") {
        EstimatorState a;
        EstimatorState b;
        fit_guard(a, TagSet{}, dense_2x1x3());
        fit_guard(b, TagSet{}, dense_2x1x3());
        fit_guard(b, TagSet{}, dense_2x1x3());
        CHECK(a.fitted_meta().n_cases == b.fitted_meta().n_cases);
        CHECK(a.fitted_meta().length_max == b.fitted_meta().length_max);
    }
}

TEST_CASE("predict_guard") {
    EstimatorState state;
    SUBCASE("before fit") {
        CHECK_THROWS_AS(predict_guard(state, CollectionMeta{}), NotFittedError);
    }
    fit_guard(state, TagSet{}, dense_2x1x3());

    SUBCASE("channel mismatch carries both metas") {
        CollectionMeta incoming = summarize(Collection::dense({Series(3, 3)}));
        try {
            predict_guard(state, incoming);
            FAIL("expected SchemaMismatch");
        } catch (const SchemaMismatch& e) {
            CHECK(e.fitted().n_channels == 1);
            CHECK(e.incoming().n_channels == 3);
        }
    }
    SUBCASE("matching schema passes") {
        predict_guard(state, summarize(dense_2x1x3()));
        predict_guard(state, summarize(dense_2x1x3()), LengthPolicy::ExactMatch);
    }
    SUBCASE("exact-length policy") {
        const auto longer = summarize(Collection::dense({series({1, 2, 3, 4})}));
        predict_guard(state, longer);  // free policy accepts other lengths
        CHECK_THROWS_AS(predict_guard(state, longer, LengthPolicy::ExactMatch), SchemaMismatch);
    }
}
