#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tsml/core.hpp"
#include "tsml/data.hpp"
#include "tsml/distances.hpp"
#include "tsml/matrix.hpp"

namespace tsml::supervised {

enum class Weighting { Uniform, InverseDistance };

struct KnnConfig {
    std::size_t k = 1;
    distances::DistanceSpec spec;
    Weighting weighting = Weighting::Uniform;
};

/// k-nearest-neighbour classifier / extrinsic regressor over the elastic
/// distances. The label kind at fit time selects the behaviour: Class labels
/// give majority voting, Target labels give (weighted) neighbour means.
/// Unequal-length capability follows the distance kind.
class KnnEstimator : public Estimator {
  public:
    explicit KnnEstimator(KnnConfig config);

    [[nodiscard]] TagSet tags() const override;
    void fit(const Collection& train, const LabelVector& labels) override;
    [[nodiscard]] LabelVector predict(const Collection& test) const override;

  private:
    KnnConfig config_;
    EstimatorState state_;
    Collection train_;
    LabelVector labels_;
    std::vector<std::size_t> class_index_;
};

/// A single random convolutional kernel.
struct ConvKernel {
    std::size_t length = 7;
    std::vector<double> weights;  ///< mean-centred
    double bias = 0.0;
    std::size_t dilation = 1;
    std::size_t padding = 0;
    std::size_t channel = 0;
};

struct RocketConfig {
    std::size_t n_kernels = 500;
    std::uint64_t seed = 0;
};

/// Draws n_kernels random kernels for the given input shape. Kernel i is a
/// pure function of (seed, i): length uniform over {7, 9, 11}, standard
/// normal mean-centred weights, bias uniform on [-1, 1], dilation
/// floor(2^u) with u uniform on [0, log2((series_length-1)/(length-1))]
/// clamped at 0, padding 0 or ((length-1)*dilation)/2 with equal probability
/// (forced on when a zero-padding kernel would not fit), channel uniform.
/// Throws SeriesTooShort for series_length < 7.
std::vector<ConvKernel> generate_kernels(const RocketConfig& config, std::size_t n_channels,
                                         std::size_t series_length);

/// Applies every kernel to every case of a dense collection and emits two
/// features per kernel, (max, PPV), interleaved in kernel order. Out-of-range
/// reads under padding are zero. Throws CapabilityError on ragged input.
Matrix rocket_transform(const Collection& collection, const std::vector<ConvKernel>& kernels);

/// Ridge read-out fitted on standardized features.
struct RidgeModel {
    Matrix weights;  ///< classes x features (1 x features for regression)
    std::vector<double> bias;
    double lambda_selected = 0.0;
    std::vector<double> feature_means;
    std::vector<double> feature_sds;
    LabelKind kind = LabelKind::Target;
    std::vector<std::string> alphabet;
};

/// 10 log-spaced values from 1e-3 to 1e3.
std::vector<double> default_lambda_grid();

/// Fits ridge regression on standardized features, with one-vs-rest +-1
/// targets per class for Class-kind labels. The regularizer is selected from
/// the grid by exact leave-one-out error computed from a singular value
/// decomposition. Zero-variance features map to zero columns; throws
/// DegenerateFeatures when every feature has zero variance.
RidgeModel ridge_fit(const Matrix& features, const LabelVector& targets,
                     const std::vector<double>& lambda_grid);

/// Class kind: argmax of per-class linear scores (ties toward the smallest
/// class index). Target kind: the linear score.
LabelVector ridge_predict(const RidgeModel& model, const Matrix& features);

/// Random-convolution transform with a ridge read-out; handles Class and
/// Target labels. Fixed-length: predict requires the fit-time length.
class RocketEstimator : public Estimator {
  public:
    explicit RocketEstimator(RocketConfig config);
    RocketEstimator(RocketConfig config, std::vector<double> lambda_grid);

    [[nodiscard]] TagSet tags() const override;
    void fit(const Collection& train, const LabelVector& labels) override;
    [[nodiscard]] LabelVector predict(const Collection& test) const override;

    [[nodiscard]] const std::vector<ConvKernel>& kernels() const { return kernels_; }
    [[nodiscard]] const RidgeModel& ridge() const { return ridge_; }

  private:
    RocketConfig config_;
    std::vector<double> lambda_grid_;
    EstimatorState state_;
    std::vector<ConvKernel> kernels_;
    RidgeModel ridge_;
};

/// Fraction of agreeing class labels.
double accuracy(const LabelVector& predicted, const LabelVector& truth);

/// Mean absolute error / root mean squared error over Target-kind labels.
double mae(const LabelVector& predicted, const LabelVector& truth);
double rmse(const LabelVector& predicted, const LabelVector& truth);

}  // namespace tsml::supervised
