#include "tsml/forecast.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "tsml/transform.hpp"

namespace tsml::forecast {

namespace {

void require_univariate(const Series& y) {
    if (y.n_channels() != 1) {
        throw InvalidParameter("forecasters require a univariate series");
    }
}

}  // namespace

ForecastHorizon::ForecastHorizon(std::vector<std::size_t> offsets) : offsets_(std::move(offsets)) {
    if (offsets_.empty()) {
        throw InvalidParameter("forecast horizon must be non-empty");
    }
    std::size_t prev = 0;
    for (const std::size_t h : offsets_) {
        if (h == 0 || h <= prev) {
            throw InvalidParameter("forecast horizon offsets must be strictly increasing and >= 1");
        }
        prev = h;
    }
}

std::vector<double> naive_forecast(const Series& y, const ForecastHorizon& fh,
                                   NaiveStrategy strategy, std::size_t sp) {
    require_univariate(y);
    const auto values = y.channel(0);
    const std::size_t n = values.size();

    std::vector<double> out;
    out.reserve(fh.offsets().size());
    switch (strategy) {
        case NaiveStrategy::Last: {
            for (std::size_t i = 0; i < fh.offsets().size(); ++i) out.push_back(values[n - 1]);
            break;
        }
        case NaiveStrategy::Mean: {
            double mean = 0.0;
            for (const double v : values) mean += v;
            mean /= static_cast<double>(n);
            for (std::size_t i = 0; i < fh.offsets().size(); ++i) out.push_back(mean);
            break;
        }
        case NaiveStrategy::SeasonalLast: {
            if (sp == 0) {
                throw InvalidParameter("seasonal period must be >= 1");
            }
            if (n < sp) {
                throw InvalidParameter("seasonal naive requires n >= sp");
            }
            for (const std::size_t h : fh.offsets()) {
                out.push_back(values[n - sp + (h - 1) % sp]);
            }
            break;
        }
    }
    return out;
}

TrendModel trend_fit(const Series& y, std::size_t degree) {
    require_univariate(y);
    const auto values = y.channel(0);
    const std::size_t n = values.size();
    if (n < degree + 1) {
        throw InsufficientData("trend of degree " + std::to_string(degree) + " requires at least " +
                               std::to_string(degree + 1) + " points");
    }

    Eigen::MatrixXd vandermonde(n, degree + 1);
    Eigen::VectorXd target(n);
    for (std::size_t t = 0; t < n; ++t) {
        double power = 1.0;
        for (std::size_t d = 0; d <= degree; ++d) {
            vandermonde(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(d)) = power;
            power *= static_cast<double>(t);
        }
        target(static_cast<Eigen::Index>(t)) = values[t];
    }
    const Eigen::VectorXd coef = vandermonde.colPivHouseholderQr().solve(target);

    TrendModel model;
    model.degree = degree;
    model.n_train = n;
    model.coefficients.assign(coef.data(), coef.data() + coef.size());
    return model;
}

std::vector<double> trend_predict(const TrendModel& model, const ForecastHorizon& fh) {
    if (model.coefficients.empty() || model.n_train == 0) {
        throw NotFittedError("trend model is not fitted");
    }
    std::vector<double> out;
    out.reserve(fh.offsets().size());
    for (const std::size_t h : fh.offsets()) {
        const double t = static_cast<double>(model.n_train - 1 + h);
        double value = 0.0;
        for (std::size_t d = model.coefficients.size(); d-- > 0;) {
            value = value * t + model.coefficients[d];
        }
        out.push_back(value);
    }
    return out;
}

std::pair<Matrix, std::vector<double>> make_reduction_pairs(const Series& y, std::size_t window) {
    require_univariate(y);
    const auto values = y.channel(0);
    const std::size_t n = values.size();
    if (window == 0) {
        throw InvalidParameter("window must be >= 1");
    }
    if (n < window + 1) {
        throw InsufficientData("reduction with window " + std::to_string(window) +
                               " requires at least " + std::to_string(window + 1) + " points");
    }

    // Inputs are the sliding windows over all but the last point; the target
    // is the value immediately after each window.
    const Series prefix(std::vector<double>(values.begin(), values.end() - 1));
    const Collection windows = transforms::sliding_window(prefix, window, 1);

    Matrix inputs(windows.n_cases(), window);
    std::vector<double> targets(windows.n_cases());
    for (std::size_t i = 0; i < windows.n_cases(); ++i) {
        const auto row = windows.case_at(i).channel(0);
        std::copy(row.begin(), row.end(), inputs.row(i));
        targets[i] = values[i + window];
    }
    return {std::move(inputs), std::move(targets)};
}

ReductionModel reduce_fit(const Series& y, std::size_t window,
                          const std::vector<double>& lambda_grid) {
    auto [inputs, targets] = make_reduction_pairs(y, window);

    ReductionModel model;
    model.window = window;
    try {
        model.inner = supervised::ridge_fit(inputs, LabelVector::targets(targets), lambda_grid);
    } catch (const DegenerateFeatures&) {
        // A constant series yields all-constant windows; the intercept-only
        // model (the target mean) is the exact least-squares solution there.
        if (lambda_grid.empty()) throw;
        supervised::RidgeModel inner;
        inner.kind = LabelKind::Target;
        inner.weights = Matrix(1, window, 0.0);
        double mean = 0.0;
        for (const double t : targets) mean += t;
        inner.bias = {mean / static_cast<double>(targets.size())};
        inner.lambda_selected = lambda_grid.front();
        inner.feature_means.assign(window, 0.0);
        inner.feature_sds.assign(window, 0.0);
        for (std::size_t j = 0; j < window; ++j) {
            double col = 0.0;
            for (std::size_t i = 0; i < inputs.rows(); ++i) col += inputs(i, j);
            inner.feature_means[j] = col / static_cast<double>(inputs.rows());
        }
        model.inner = std::move(inner);
    }
    const auto values = y.channel(0);
    model.last_window.assign(values.end() - static_cast<std::ptrdiff_t>(window), values.end());
    return model;
}

std::vector<double> reduce_predict(const ReductionModel& model, const ForecastHorizon& fh) {
    if (model.last_window.empty()) {
        throw NotFittedError("reduction model is not fitted");
    }
    std::vector<double> rolling = model.last_window;
    std::vector<double> steps;
    steps.reserve(fh.max_offset());
    for (std::size_t h = 1; h <= fh.max_offset(); ++h) {
        Matrix features(1, model.window);
        std::copy(rolling.begin(), rolling.end(), features.row(0));
        const double next = supervised::ridge_predict(model.inner, features).target_values()[0];
        steps.push_back(next);
        rolling.erase(rolling.begin());
        rolling.push_back(next);
    }

    std::vector<double> out;
    out.reserve(fh.offsets().size());
    for (const std::size_t h : fh.offsets()) out.push_back(steps[h - 1]);
    return out;
}

ForecastMetrics forecast_metrics(const std::vector<double>& actual,
                                 const std::vector<double>& predicted, const Series& train) {
    if (actual.size() != predicted.size()) {
        throw LengthMismatch("actual and predicted lengths differ");
    }
    if (actual.empty()) {
        throw LengthMismatch("metrics require at least one forecast");
    }
    require_univariate(train);

    const auto n = static_cast<double>(actual.size());
    ForecastMetrics m;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double err = actual[i] - predicted[i];
        m.mae += std::abs(err);
        m.rmse += err * err;
        const double scale = std::abs(actual[i]) + std::abs(predicted[i]);
        if (scale > 0.0) {
            m.smape += 2.0 * std::abs(err) / scale;
        }
    }
    m.mae /= n;
    m.rmse = std::sqrt(m.rmse / n);
    m.smape /= n;

    const auto train_values = train.channel(0);
    if (train_values.size() < 2) {
        throw DegenerateScale("MASE requires a training series with at least 2 points");
    }
    double denom = 0.0;
    for (std::size_t t = 1; t < train_values.size(); ++t) {
        denom += std::abs(train_values[t] - train_values[t - 1]);
    }
    denom /= static_cast<double>(train_values.size() - 1);
    if (denom == 0.0) {
        throw DegenerateScale("MASE scale is zero (constant training series)");
    }
    m.mase = m.mae / denom;
    return m;
}

}  // namespace tsml::forecast
