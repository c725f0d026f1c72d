#include "tsml/supervised.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "parallel.hpp"

namespace tsml::supervised {

std::vector<ConvKernel> generate_kernels(const RocketConfig& config, std::size_t n_channels,
                                         std::size_t series_length) {
    if (config.n_kernels == 0) {
        throw InvalidParameter("n_kernels must be >= 1");
    }
    if (n_channels == 0) {
        throw InvalidParameter("n_channels must be >= 1");
    }
    if (series_length < 7) {
        throw SeriesTooShort("kernel generation requires series_length >= 7");
    }

    static constexpr std::size_t kLengths[] = {7, 9, 11};
    std::vector<ConvKernel> kernels(config.n_kernels);
    detail::parallel_for(config.n_kernels, [&](std::size_t i) {
        // Kernel i is seeded by (seed, i) so generation order cannot matter.
        std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                          static_cast<std::uint32_t>(config.seed >> 32),
                          static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
        std::mt19937_64 rng(seq);

        ConvKernel k;
        k.length = kLengths[std::uniform_int_distribution<std::size_t>(0, 2)(rng)];

        std::normal_distribution<double> normal(0.0, 1.0);
        k.weights.resize(k.length);
        double mean = 0.0;
        for (auto& w : k.weights) {
            w = normal(rng);
            mean += w;
        }
        mean /= static_cast<double>(k.length);
        for (auto& w : k.weights) w -= mean;

        k.bias = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);

        const double max_exponent =
            std::max(0.0, std::log2(static_cast<double>(series_length - 1) /
                                    static_cast<double>(k.length - 1)));
        const double u = std::uniform_real_distribution<double>(0.0, max_exponent)(rng);
        k.dilation = std::max<std::size_t>(1, static_cast<std::size_t>(std::exp2(u)));

        const std::size_t span = (k.length - 1) * k.dilation + 1;
        const bool pad_on = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
        if (pad_on || span > series_length) {
            k.padding = (k.length - 1) * k.dilation / 2;
        } else {
            k.padding = 0;
        }

        k.channel = std::uniform_int_distribution<std::size_t>(0, n_channels - 1)(rng);
        kernels[i] = std::move(k);
    });
    return kernels;
}

namespace {

/// Applies one kernel to one case; writes (max, PPV) into out[0..1].
void apply_kernel(const Series& series, const ConvKernel& kernel, double* out) {
    const auto x = series.channel(kernel.channel);
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    const auto pad = static_cast<std::ptrdiff_t>(kernel.padding);
    const auto dilation = static_cast<std::ptrdiff_t>(kernel.dilation);
    const std::ptrdiff_t out_len =
        n + 2 * pad - static_cast<std::ptrdiff_t>(kernel.length - 1) * dilation;

    double best = -std::numeric_limits<double>::infinity();
    std::size_t positive = 0;
    for (std::ptrdiff_t t = 0; t < out_len; ++t) {
        double z = kernel.bias;
        std::ptrdiff_t idx = t - pad;
        for (const double w : kernel.weights) {
            if (idx >= 0 && idx < n) z += w * x[static_cast<std::size_t>(idx)];
            idx += dilation;
        }
        best = std::max(best, z);
        if (z > 0.0) ++positive;
    }
    out[0] = best;
    out[1] = static_cast<double>(positive) / static_cast<double>(out_len);
}

}  // namespace

Matrix rocket_transform(const Collection& collection, const std::vector<ConvKernel>& kernels) {
    if (collection.layout() != Layout::Dense) {
        ValidationReport report;
        report.violations.push_back(
            {"unequal_length", "the kernel transform requires an equal-length collection"});
        throw CapabilityError("input violates estimator capabilities: [unequal_length] "
                              "the kernel transform requires an equal-length collection",
                              std::move(report));
    }
    const std::size_t series_length = collection.n_timepoints();
    for (const auto& k : kernels) {
        if (k.channel >= collection.n_channels()) {
            throw InvalidParameter("kernel channel index is out of range");
        }
        if ((k.length - 1) * k.dilation + 1 > series_length + 2 * k.padding) {
            throw InvalidParameter("kernel span exceeds the padded series length");
        }
    }

    Matrix features(collection.n_cases(), 2 * kernels.size());
    detail::parallel_for(collection.n_cases(), [&](std::size_t i) {
        double* row = features.row(i);
        for (std::size_t k = 0; k < kernels.size(); ++k) {
            apply_kernel(collection.case_at(i), kernels[k], row + 2 * k);
        }
    }, 1);
    return features;
}

RocketEstimator::RocketEstimator(RocketConfig config)
    : RocketEstimator(config, default_lambda_grid()) {}

RocketEstimator::RocketEstimator(RocketConfig config, std::vector<double> lambda_grid)
    : config_(config), lambda_grid_(std::move(lambda_grid)) {
    if (config_.n_kernels == 0) {
        throw InvalidParameter("n_kernels must be >= 1");
    }
}

TagSet RocketEstimator::tags() const {
    return {.multivariate = true, .unequal_length = false, .missing_values = false};
}

void RocketEstimator::fit(const Collection& train, const LabelVector& labels) {
    if (labels.kind() == LabelKind::None) {
        throw InvalidParameter("the kernel estimator requires Class or Target labels");
    }
    const CollectionMeta meta = fit_guard(state_, tags(), train);
    kernels_ = generate_kernels(config_, meta.n_channels, meta.length_max);
    ridge_ = ridge_fit(rocket_transform(train, kernels_), labels, lambda_grid_);
}

LabelVector RocketEstimator::predict(const Collection& test) const {
    predict_guard(state_, summarize(test), LengthPolicy::ExactMatch);
    return ridge_predict(ridge_, rocket_transform(test, kernels_));
}

}  // namespace tsml::supervised
