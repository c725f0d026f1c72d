#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tsml/forecast.hpp"

using namespace tsml;
using namespace tsml::forecast;
using helpers::series;

TEST_CASE("forecast horizon validation") {
    CHECK_THROWS_AS(ForecastHorizon({}), InvalidParameter);
    CHECK_THROWS_AS(ForecastHorizon({0}), InvalidParameter);
    CHECK_THROWS_AS(ForecastHorizon({2, 1}), InvalidParameter);
    CHECK_THROWS_AS(ForecastHorizon({1, 1}), InvalidParameter);
    CHECK(ForecastHorizon({1, 2, 5}).max_offset() == 5);
}

TEST_CASE("naive strategies") {
    SUBCASE("last") {
        CHECK(naive_forecast(series({5, 7}), ForecastHorizon({1, 2}), NaiveStrategy::Last) ==
              std::vector<double>{7, 7});
    }
    SUBCASE("mean") {
        CHECK(naive_forecast(series({2, 4}), ForecastHorizon({1}), NaiveStrategy::Mean) ==
              std::vector<double>{3});
    }
    SUBCASE("seasonal last") {
        CHECK(naive_forecast(series({1, 2, 3, 4}), ForecastHorizon({1, 2}),
                             NaiveStrategy::SeasonalLast, 2) == std::vector<double>{3, 4});
        CHECK(naive_forecast(series({1, 2, 3, 4}), ForecastHorizon({3, 4}),
                             NaiveStrategy::SeasonalLast, 2) == std::vector<double>{3, 4});
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(naive_forecast(series({1}), ForecastHorizon({1}),
                                       NaiveStrategy::SeasonalLast, 2),
                        InvalidParameter);
        CHECK_THROWS_AS(naive_forecast(series({1}), ForecastHorizon({1}),
                                       NaiveStrategy::SeasonalLast, 0),
                        InvalidParameter);
        CHECK_THROWS_AS(naive_forecast(Series(2, 3), ForecastHorizon({1}), NaiveStrategy::Last),
                        InvalidParameter);
    }
}

TEST_CASE("trend fitting") {
    SUBCASE("exact linear data") {
        const TrendModel model = trend_fit(series({1, 2, 3}), 1);
        REQUIRE(model.coefficients.size() == 2);
        CHECK(model.coefficients[0] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(model.coefficients[1] == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("degree zero is the mean") {
        const TrendModel model = trend_fit(series({2, 4, 6}), 0);
        CHECK(model.coefficients[0] == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("coefficients match the normal-equations oracle") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> value(-5, 5);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> values;
            for (int t = 0; t < 12; ++t) values.push_back(value(rng));
            for (const std::size_t degree : {0, 1, 2, 3}) {
                const TrendModel model = trend_fit(series(values), degree);
                const auto oracle = oracles::polyfit_by_normal_equations(values, degree);
                for (std::size_t d = 0; d <= degree; ++d) {
                    CHECK(model.coefficients[d] == doctest::Approx(oracle[d]).epsilon(1e-8));
                }
            }
        }
    }
    SUBCASE("insufficient data") {
        CHECK_THROWS_AS(trend_fit(series({1, 2}), 2), InsufficientData);
    }
}

TEST_CASE("trend prediction") {
    SUBCASE("linear continuation") {
        const TrendModel model = trend_fit(series({1, 2, 3}), 1);
        const auto out = trend_predict(model, ForecastHorizon({1, 2, 3}));
        CHECK(out[0] == doctest::Approx(4.0).epsilon(1e-9));
        CHECK(out[1] == doctest::Approx(5.0).epsilon(1e-9));
        CHECK(out[2] == doctest::Approx(6.0).epsilon(1e-9));
    }
    SUBCASE("constant model") {
        const TrendModel model = trend_fit(series({2, 2}), 0);
        CHECK(trend_predict(model, ForecastHorizon({1}))[0] == doctest::Approx(2.0));
    }
    SUBCASE("exact quadratic") {
        const TrendModel model = trend_fit(series({0, 1, 4, 9}), 2);
        CHECK(trend_predict(model, ForecastHorizon({1}))[0] ==
              doctest::Approx(16.0).epsilon(1e-8));
    }
    SUBCASE("unfitted model") {
        CHECK_THROWS_AS(trend_predict(TrendModel{}, ForecastHorizon({1})), NotFittedError);
    }
    SUBCASE("extending a series by its own forecast keeps the next step") {
        std::mt19937_64 rng(24);
        std::uniform_real_distribution<double> value(-3, 3);
        std::vector<double> values;
        for (int t = 0; t < 15; ++t) values.push_back(value(rng));
        const TrendModel model = trend_fit(series(values), 2);
        const auto two_ahead = trend_predict(model, ForecastHorizon({1, 2}));

        std::vector<double> extended = values;
        extended.push_back(two_ahead[0]);
        const TrendModel refit = trend_fit(series(extended), 2);
        CHECK(trend_predict(refit, ForecastHorizon({1}))[0] ==
              doctest::Approx(two_ahead[1]).epsilon(1e-8));
    }
}

TEST_CASE("reduction to regression") {
    SUBCASE("training pairs") {
        const auto [inputs, targets] = make_reduction_pairs(series({1, 2, 3, 4}), 2);
        REQUIRE(inputs.rows() == 2);
        REQUIRE(inputs.cols() == 2);
        CHECK(inputs(0, 0) == 1.0);
        CHECK(inputs(0, 1) == 2.0);
        CHECK(inputs(1, 0) == 2.0);
        CHECK(inputs(1, 1) == 3.0);
        CHECK(targets == std::vector<double>{3, 4});
    }
    SUBCASE("linear series continue exactly") {
        const ReductionModel model = reduce_fit(series({1, 2, 3, 4, 5, 6}), 2, {1e-8});
        const auto out = reduce_predict(model, ForecastHorizon({1, 2, 3}));
        CHECK(out[0] == doctest::Approx(7.0).epsilon(1e-5));
        CHECK(out[1] == doctest::Approx(8.0).epsilon(1e-5));
        CHECK(out[2] == doctest::Approx(9.0).epsilon(1e-5));
    }
    SUBCASE("offset selection matches the recursive steps") {
        const ReductionModel model = reduce_fit(series({3, 1, 4, 1, 5, 9, 2, 6}), 3, {0.5});
        const auto full = reduce_predict(model, ForecastHorizon({1, 2, 3, 4}));
        const auto only = reduce_predict(model, ForecastHorizon({4}));
        CHECK(only[0] == full[3]);
    }
    SUBCASE("constant series stay constant") {
        const ReductionModel model = reduce_fit(series({5, 5, 5, 5, 5}), 2, {1e-6});
        for (const double v : reduce_predict(model, ForecastHorizon({1, 2, 3}))) {
            CHECK(v == doctest::Approx(5.0).epsilon(1e-6));
        }
    }
    SUBCASE("insufficient data") {
        CHECK_THROWS_AS(reduce_fit(series({1, 2, 3}), 3, {1.0}), InsufficientData);
        CHECK_THROWS_AS(reduce_fit(series({1, 2, 3}), 0, {1.0}), InvalidParameter);
    }
    SUBCASE("unfitted model") {
        CHECK_THROWS_AS(reduce_predict(ReductionModel{}, ForecastHorizon({1})), NotFittedError);
    }
}

TEST_CASE("forecast metrics") {
    SUBCASE("perfect forecast") {
        const auto m = forecast_metrics({1, 2, 3}, {1, 2, 3}, series({1, 2}));
        CHECK(m.mae == 0.0);
        CHECK(m.rmse == 0.0);
        CHECK(m.smape == 0.0);
        CHECK(m.mase == 0.0);
    }
    SUBCASE("smape zero-over-zero convention") {
        const auto m = forecast_metrics({0}, {0}, series({1, 2}));
        CHECK(m.smape == 0.0);
    }
    SUBCASE("pinned example") {
        const auto m = forecast_metrics({2}, {1}, series({1, 2}));
        CHECK(m.mae == 1.0);
        CHECK(m.mase == 1.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(forecast_metrics({1, 2}, {1}, series({1, 2})), LengthMismatch);
        CHECK_THROWS_AS(forecast_metrics({1}, {1}, series({3, 3, 3})), DegenerateScale);
        CHECK_THROWS_AS(forecast_metrics({1}, {1}, series({3})), DegenerateScale);
    }
}

TEST_CASE("level-shift invariance") {
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> value(-2, 2);
    std::vector<double> values;
    for (int t = 0; t < 10; ++t) values.push_back(value(rng));
    const double shift = 7.5;
    std::vector<double> shifted = values;
    for (auto& v : shifted) v += shift;
    const ForecastHorizon fh({1, 2, 3});

    SUBCASE("naive and trend shift exactly") {
        for (const auto strategy : {NaiveStrategy::Last, NaiveStrategy::Mean}) {
            const auto base = naive_forecast(series(values), fh, strategy);
            const auto moved = naive_forecast(series(shifted), fh, strategy);
            for (std::size_t i = 0; i < base.size(); ++i) {
                CHECK(moved[i] == doctest::Approx(base[i] + shift).epsilon(1e-10));
            }
        }
        const auto base = trend_predict(trend_fit(series(values), 1), fh);
        const auto moved = trend_predict(trend_fit(series(shifted), 1), fh);
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(moved[i] == doctest::Approx(base[i] + shift).epsilon(1e-8));
        }
    }
    SUBCASE("reduction shifts on linear data") {
        std::vector<double> linear;
        for (int t = 0; t < 8; ++t) linear.push_back(2.0 * t + 1.0);
        std::vector<double> linear_up = linear;
        for (auto& v : linear_up) v += shift;
        const auto base = reduce_predict(reduce_fit(series(linear), 2, {1e-8}), fh);
        const auto moved = reduce_predict(reduce_fit(series(linear_up), 2, {1e-8}), fh);
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(moved[i] == doctest::Approx(base[i] + shift).epsilon(1e-6));
        }
    }
}
