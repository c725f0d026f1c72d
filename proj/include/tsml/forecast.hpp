#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tsml/data.hpp"
#include "tsml/matrix.hpp"
#include "tsml/supervised.hpp"

namespace tsml::forecast {

/// Strictly increasing positive step offsets relative to the end of the
/// training series.
class ForecastHorizon {
  public:
    explicit ForecastHorizon(std::vector<std::size_t> offsets);

    [[nodiscard]] const std::vector<std::size_t>& offsets() const { return offsets_; }
    [[nodiscard]] std::size_t max_offset() const { return offsets_.back(); }

  private:
    std::vector<std::size_t> offsets_;
};

enum class NaiveStrategy { Last, Mean, SeasonalLast };

/// Last repeats the final value, Mean repeats the training mean, and
/// SeasonalLast(sp) repeats the final season: y[n - sp + ((h - 1) mod sp)].
std::vector<double> naive_forecast(const Series& y, const ForecastHorizon& fh,
                                   NaiveStrategy strategy, std::size_t sp = 1);

/// Least-squares polynomial over the index 0..n-1.
struct TrendModel {
    std::size_t degree = 0;
    std::vector<double> coefficients;  ///< ascending powers
    std::size_t n_train = 0;
};

TrendModel trend_fit(const Series& y, std::size_t degree);

/// Evaluates the fitted polynomial at index n_train - 1 + h per offset.
std::vector<double> trend_predict(const TrendModel& model, const ForecastHorizon& fh);

/// Forecasting reduced to regression: a ridge model over sliding windows,
/// applied recursively at predict time.
struct ReductionModel {
    std::size_t window = 0;
    supervised::RidgeModel inner;
    std::vector<double> last_window;
};

/// The training pairs (y[t-window..t-1] -> y[t]) for t in [window, n-1].
std::pair<Matrix, std::vector<double>> make_reduction_pairs(const Series& y, std::size_t window);

ReductionModel reduce_fit(const Series& y, std::size_t window,
                          const std::vector<double>& lambda_grid);

/// Recursive multi-step forecast: one-step predictions are appended to the
/// rolling window up to max(fh); values at the requested offsets are returned.
std::vector<double> reduce_predict(const ReductionModel& model, const ForecastHorizon& fh);

struct ForecastMetrics {
    double mae = 0.0;
    double rmse = 0.0;
    double smape = 0.0;
    double mase = 0.0;
};

/// Standard point-forecast errors; sMAPE counts 0/0 terms as 0 and MASE
/// scales by the training series' mean absolute one-step difference
/// (DegenerateScale when that is zero).
ForecastMetrics forecast_metrics(const std::vector<double>& actual,
                                 const std::vector<double>& predicted, const Series& train);

}  // namespace tsml::forecast
