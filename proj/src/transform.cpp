#include "tsml/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tsml::transforms {

namespace {

double channel_mean(std::span<const double> values) {
    double sum = 0.0;
    for (const double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

/// Population (1/n) standard deviation.
double channel_sd(std::span<const double> values, double mean) {
    double sum = 0.0;
    for (const double v : values) sum += (v - mean) * (v - mean);
    return std::sqrt(sum / static_cast<double>(values.size()));
}

/// Linear-interpolation quantile of a sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const double idx = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(idx));
    const auto hi = static_cast<std::size_t>(std::ceil(idx));
    const double frac = idx - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

Series znorm(const Series& series) {
    Series out = series;
    for (std::size_t c = 0; c < series.n_channels(); ++c) {
        const auto values = series.channel(c);
        const double mean = channel_mean(values);
        const double sd = channel_sd(values, mean);
        auto row = out.channel(c);
        if (sd < 1e-12) {
            std::fill(row.begin(), row.end(), 0.0);
        } else {
            for (std::size_t t = 0; t < row.size(); ++t) row[t] = (values[t] - mean) / sd;
        }
    }
    return out;
}

Collection pad(const Collection& collection, const PadPolicy& policy) {
    std::size_t target = 0;
    if (policy.target_length) {
        target = *policy.target_length;
        for (const auto& c : collection.cases()) {
            if (c.n_timepoints() > target) {
                throw TargetTooShort("pad target " + std::to_string(target) +
                                     " is below case length " + std::to_string(c.n_timepoints()));
            }
        }
    } else {
        for (const auto& c : collection.cases()) target = std::max(target, c.n_timepoints());
    }

    std::vector<Series> padded;
    padded.reserve(collection.n_cases());
    for (const auto& c : collection.cases()) {
        Series out(c.n_channels(), target);
        for (std::size_t ch = 0; ch < c.n_channels(); ++ch) {
            const auto src = c.channel(ch);
            auto dst = out.channel(ch);
            std::copy(src.begin(), src.end(), dst.begin());
            double fill = 0.0;
            switch (policy.fill) {
                case PadFill::Zero: fill = 0.0; break;
                case PadFill::LastValue: fill = src.back(); break;
                case PadFill::Mean: fill = channel_mean(src); break;
            }
            std::fill(dst.begin() + static_cast<std::ptrdiff_t>(src.size()), dst.end(), fill);
        }
        padded.push_back(std::move(out));
    }
    return Collection::dense(std::move(padded));
}

Collection truncate(const Collection& collection) {
    std::size_t target = collection.n_cases() == 0 ? 0 : collection.case_at(0).n_timepoints();
    for (const auto& c : collection.cases()) target = std::min(target, c.n_timepoints());

    std::vector<Series> truncated;
    truncated.reserve(collection.n_cases());
    for (const auto& c : collection.cases()) {
        Series out(c.n_channels(), target);
        for (std::size_t ch = 0; ch < c.n_channels(); ++ch) {
            const auto src = c.channel(ch);
            auto dst = out.channel(ch);
            std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(target), dst.begin());
        }
        truncated.push_back(std::move(out));
    }
    return Collection::dense(std::move(truncated));
}

FeatureVector summary_features(const Series& series) {
    FeatureVector fv;
    for (std::size_t c = 0; c < series.n_channels(); ++c) {
        const auto values = series.channel(c);
        const double mean = channel_mean(values);
        const double sd = channel_sd(values, mean);

        std::vector<double> sorted(values.begin(), values.end());
        std::sort(sorted.begin(), sorted.end());
        const double median = quantile_sorted(sorted, 0.5);
        const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);

        // Least-squares slope against the index 0..n-1.
        const std::size_t n = values.size();
        const double t_mean = static_cast<double>(n - 1) / 2.0;
        double cov = 0.0;
        double var = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            const double dt = static_cast<double>(t) - t_mean;
            cov += dt * (values[t] - mean);
            var += dt * dt;
        }
        const double slope = var > 0.0 ? cov / var : 0.0;

        const std::string prefix = "ch" + std::to_string(c) + "_";
        const std::pair<const char*, double> stats[] = {
            {"mean", mean},          {"sd", sd},   {"min", sorted.front()}, {"max", sorted.back()},
            {"median", median},      {"iqr", iqr}, {"slope", slope},
        };
        for (const auto& [name, value] : stats) {
            fv.names.push_back(prefix + name);
            fv.values.push_back(value);
        }
    }
    return fv;
}

FeatureVector fourier_features(const Series& series, std::size_t k) {
    const std::size_t n = series.n_timepoints();
    if (k == 0 || k > n / 2) {
        throw InvalidParameter("fourier_features requires 1 <= k <= floor(n/2)");
    }
    FeatureVector fv;
    for (std::size_t c = 0; c < series.n_channels(); ++c) {
        const auto values = series.channel(c);
        for (std::size_t j = 1; j <= k; ++j) {
            double re = 0.0;
            double im = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) *
                                     static_cast<double>(t) / static_cast<double>(n);
                re += values[t] * std::cos(angle);
                im += values[t] * std::sin(angle);
            }
            fv.names.push_back("ch" + std::to_string(c) + "_dftmag" + std::to_string(j));
            fv.values.push_back(2.0 / static_cast<double>(n) * std::hypot(re, im));
        }
    }
    return fv;
}

Collection sliding_window(const Series& series, std::size_t window, std::size_t stride) {
    const std::size_t n = series.n_timepoints();
    if (window == 0 || window > n || stride == 0) {
        throw InvalidParameter("sliding_window requires 1 <= window <= n_timepoints and stride >= 1");
    }
    const std::size_t n_cases = (n - window) / stride + 1;
    std::vector<Series> cases;
    cases.reserve(n_cases);
    for (std::size_t i = 0; i < n_cases; ++i) {
        const std::size_t start = i * stride;
        Series out(series.n_channels(), window);
        for (std::size_t ch = 0; ch < series.n_channels(); ++ch) {
            const auto src = series.channel(ch);
            std::copy(src.begin() + static_cast<std::ptrdiff_t>(start),
                      src.begin() + static_cast<std::ptrdiff_t>(start + window),
                      out.channel(ch).begin());
        }
        cases.push_back(std::move(out));
    }
    return Collection::dense(std::move(cases));
}

Collection broadcast(const std::function<Series(const Series&)>& transformer,
                     const Collection& collection) {
    std::vector<Series> outputs;
    outputs.reserve(collection.n_cases());
    for (std::size_t i = 0; i < collection.n_cases(); ++i) {
        try {
            outputs.push_back(transformer(collection.case_at(i)));
        } catch (const Error& e) {
            throw Error("case " + std::to_string(i) + ": " + e.what());
        }
    }
    bool equal = true;
    for (const auto& s : outputs) {
        equal = equal && s.n_timepoints() == outputs[0].n_timepoints();
    }
    return Collection(equal ? Layout::Dense : Layout::Ragged, std::move(outputs));
}

}  // namespace tsml::transforms
