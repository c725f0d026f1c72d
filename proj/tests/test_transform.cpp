#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "tsml/transform.hpp"

using namespace tsml;
using namespace tsml::transforms;
using helpers::series;

TEST_CASE("znorm") {
    SUBCASE("constant channel becomes zeros") {
        const Series out = znorm(series({5, 5, 5, 5}));
        for (std::size_t t = 0; t < 4; ++t) CHECK(out.at(0, t) == 0.0);
    }
    SUBCASE("output has mean 0 and sd 1") {
        std::mt19937_64 rng(1);
        const Series out = znorm(helpers::random_series(rng, 50, 2));
        for (std::size_t c = 0; c < 2; ++c) {
            double mean = 0.0;
            for (const double v : out.channel(c)) mean += v;
            mean /= 50.0;
            double var = 0.0;
            for (const double v : out.channel(c)) var += (v - mean) * (v - mean);
            CHECK(mean == doctest::Approx(0.0).epsilon(1e-10));
            CHECK(std::sqrt(var / 50.0) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    SUBCASE("idempotent") {
        std::mt19937_64 rng(2);
        const Series once = znorm(helpers::random_series(rng, 20));
        const Series twice = znorm(once);
        for (std::size_t t = 0; t < 20; ++t) {
            CHECK(twice.at(0, t) == doctest::Approx(once.at(0, t)).epsilon(1e-10));
        }
    }
}

TEST_CASE("pad") {
    const Collection ragged = Collection::ragged({series({1, 2, 3}), series({4, 5, 6, 7, 8})});

    SUBCASE("auto zero fill") {
        const Collection out = pad(ragged, PadPolicy{});
        CHECK(out.layout() == Layout::Dense);
        CHECK(out.n_timepoints() == 5);
        CHECK(out.value(0, 0, 3) == 0.0);
        CHECK(out.value(0, 0, 4) == 0.0);
        CHECK(out.value(0, 0, 2) == 3.0);
        CHECK(out.value(1, 0, 4) == 8.0);
    }
    SUBCASE("dense input is unchanged") {
        const Collection dense = Collection::dense({series({1, 2}), series({3, 4})});
        CHECK(pad(dense, PadPolicy{}) == dense);
    }
    SUBCASE("last-value fill") {
        const Collection out = pad(ragged, PadPolicy{PadFill::LastValue, {}});
        CHECK(out.value(0, 0, 3) == 3.0);
        CHECK(out.value(0, 0, 4) == 3.0);
    }
    SUBCASE("mean fill") {
        const Collection out = pad(ragged, PadPolicy{PadFill::Mean, {}});
        CHECK(out.value(0, 0, 4) == doctest::Approx(2.0));
    }
    SUBCASE("explicit target below a case length") {
        CHECK_THROWS_AS(pad(ragged, PadPolicy{PadFill::Zero, 4}), TargetTooShort);
    }
}

TEST_CASE("truncate") {
    SUBCASE("ragged to the minimum") {
        const Collection out =
            truncate(Collection::ragged({series({1, 2, 3}), series({4, 5, 6, 7, 8})}));
        CHECK(out.layout() == Layout::Dense);
        CHECK(out.n_timepoints() == 3);
        CHECK(out.value(1, 0, 2) == 6.0);
    }
    SUBCASE("equal-length input is the identity") {
        const Collection dense = Collection::dense({series({1, 2}), series({3, 4})});
        CHECK(truncate(dense) == dense);
    }
    SUBCASE("composition with pad restores the maximum length") {
        const Collection ragged = Collection::ragged({series({1, 2, 3}), series({4, 5, 6, 7})});
        CHECK(truncate(pad(ragged, PadPolicy{})).n_timepoints() == 4);
    }
}

TEST_CASE("summary_features") {
    SUBCASE("constant series") {
        const FeatureVector fv = summary_features(series({5, 5, 5}));
        REQUIRE(fv.values.size() == 7);
        CHECK(fv.values[0] == 5.0);  // mean
        CHECK(fv.values[1] == 0.0);  // sd
        CHECK(fv.values[5] == 0.0);  // iqr
        CHECK(fv.values[6] == 0.0);  // slope
    }
    SUBCASE("exact linear slope") {
        const FeatureVector fv = summary_features(series({0, 1, 2, 3}));
        CHECK(fv.values[6] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("interpolated quantiles") {
        const FeatureVector fv = summary_features(series({1, 2, 3, 4}));
        CHECK(fv.values[4] == doctest::Approx(2.5));  // median
        CHECK(fv.values[5] == doctest::Approx(1.5));  // iqr = 3.25 - 1.75
    }
    SUBCASE("names and multivariate layout") {
        const FeatureVector fv = summary_features(Series(2, 4));
        REQUIRE(fv.names.size() == 14);
        CHECK(fv.names[0] == "ch0_mean");
        CHECK(fv.names[7] == "ch1_mean");
        CHECK(fv.names[13] == "ch1_slope");
    }
}

TEST_CASE("fourier_features") {
    SUBCASE("constant series has no non-DC energy") {
        const FeatureVector fv = fourier_features(series({3, 3, 3, 3, 3, 3, 3, 3}), 4);
        for (const double v : fv.values) CHECK(v == doctest::Approx(0.0).epsilon(1e-10));
    }
    SUBCASE("pure sinusoid concentrates at its bin") {
        const std::size_t n = 32;
        const double amplitude = 2.5;
        Series s(1, n);
        for (std::size_t t = 0; t < n; ++t) {
            s.at(0, t) = amplitude * std::sin(2.0 * 3.14159265358979323846 * 3.0 *
                                              static_cast<double>(t) / static_cast<double>(n));
        }
        const FeatureVector fv = fourier_features(s, n / 2);
        for (std::size_t j = 1; j <= n / 2; ++j) {
            const double expected = j == 3 ? amplitude : 0.0;
            CHECK(fv.values[j - 1] == doctest::Approx(expected).epsilon(1e-8));
        }
    }
    SUBCASE("feature count and names") {
        std::mt19937_64 rng(4);
        const FeatureVector fv = fourier_features(helpers::random_series(rng, 10, 2), 5);
        REQUIRE(fv.values.size() == 10);
        CHECK(fv.names[0] == "ch0_dftmag1");
        CHECK(fv.names[9] == "ch1_dftmag5");
    }
    SUBCASE("magnitudes are invariant to circular shifts") {
        std::mt19937_64 rng(5);
        const Series s = helpers::random_series(rng, 16);
        Series shifted(1, 16);
        for (std::size_t t = 0; t < 16; ++t) shifted.at(0, t) = s.at(0, (t + 5) % 16);
        const FeatureVector a = fourier_features(s, 8);
        const FeatureVector b = fourier_features(shifted, 8);
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-8));
        }
    }
    SUBCASE("k bounds") {
        CHECK_THROWS_AS(fourier_features(series({1, 2, 3, 4}), 3), InvalidParameter);
        CHECK_THROWS_AS(fourier_features(series({1, 2, 3, 4}), 0), InvalidParameter);
    }
}

TEST_CASE("sliding_window") {
    SUBCASE("unit stride") {
        const Collection out = sliding_window(series({1, 2, 3, 4}), 2, 1);
        REQUIRE(out.n_cases() == 3);
        CHECK(out.value(0, 0, 0) == 1.0);
        CHECK(out.value(0, 0, 1) == 2.0);
        CHECK(out.value(2, 0, 0) == 3.0);
        CHECK(out.value(2, 0, 1) == 4.0);
    }
    SUBCASE("full-length window") {
        const Series s = series({1, 2, 3});
        const Collection out = sliding_window(s, 3, 1);
        REQUIRE(out.n_cases() == 1);
        CHECK(out.case_at(0) == s);
    }
    SUBCASE("stride two") {
        CHECK(sliding_window(series({1, 2, 3, 4, 5}), 2, 2).n_cases() == 2);
    }
    SUBCASE("channels preserved") {
        CHECK(sliding_window(Series(3, 6), 2, 1).n_channels() == 3);
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(sliding_window(series({1, 2}), 3, 1), InvalidParameter);
        CHECK_THROWS_AS(sliding_window(series({1, 2}), 0, 1), InvalidParameter);
        CHECK_THROWS_AS(sliding_window(series({1, 2}), 1, 0), InvalidParameter);
    }
}

TEST_CASE("broadcast") {
    const Collection c = Collection::ragged({series({1, 2, 3}), series({4, 5, 6, 7})});

    SUBCASE("case-wise application") {
        const Collection out = broadcast([](const Series& s) { return znorm(s); }, c);
        REQUIRE(out.n_cases() == 2);
        CHECK(out.case_at(0) == znorm(c.case_at(0)));
        CHECK(out.case_at(1) == znorm(c.case_at(1)));
    }
    SUBCASE("identity broadcast preserves cases") {
        const Collection out = broadcast([](const Series& s) { return s; }, c);
        CHECK(out.cases() == c.cases());
    }
    SUBCASE("per-case errors name the case") {
        const Collection big = Collection::dense(
            {series({1}), series({2}), series({3}), series({4}), series({5})});
        try {
            broadcast(
                [](const Series& s) -> Series {
                    if (s.at(0, 0) == 4.0) throw InvalidParameter("boom");
                    return s;
                },
                big);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("case 3") != std::string::npos);
        }
    }
}
