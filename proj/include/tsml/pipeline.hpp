#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tsml/core.hpp"
#include "tsml/transform.hpp"

namespace tsml::pipeline {

/// A composable collection-to-collection transformer with fit-frozen
/// parameters.
class Step {
  public:
    virtual ~Step() = default;

    [[nodiscard]] virtual std::string name() const = 0;
    /// Whether this step turns ragged collections into equal-length ones.
    [[nodiscard]] virtual bool equalizes_length() const = 0;

    virtual Collection fit_transform(const Collection& collection) = 0;
    [[nodiscard]] virtual Collection transform(const Collection& collection) const = 0;
};

/// Pads to a fixed length; an Auto policy freezes the training maximum
/// at fit time. Longer predict-time cases raise SchemaMismatch.
class PadStep : public Step {
  public:
    explicit PadStep(transforms::PadPolicy policy) : policy_(policy) {}

    [[nodiscard]] std::string name() const override { return "pad"; }
    [[nodiscard]] bool equalizes_length() const override { return true; }
    Collection fit_transform(const Collection& collection) override;
    [[nodiscard]] Collection transform(const Collection& collection) const override;

  private:
    transforms::PadPolicy policy_;
    std::optional<std::size_t> frozen_length_;
};

/// Truncates to the training minimum length, frozen at fit time.
class TruncateStep : public Step {
  public:
    [[nodiscard]] std::string name() const override { return "truncate"; }
    [[nodiscard]] bool equalizes_length() const override { return true; }
    Collection fit_transform(const Collection& collection) override;
    [[nodiscard]] Collection transform(const Collection& collection) const override;

  private:
    std::optional<std::size_t> frozen_length_;
};

/// Stateless per-case z-normalization.
class ZnormStep : public Step {
  public:
    [[nodiscard]] std::string name() const override { return "znorm"; }
    [[nodiscard]] bool equalizes_length() const override { return false; }
    Collection fit_transform(const Collection& collection) override;
    [[nodiscard]] Collection transform(const Collection& collection) const override;
};

/// Transformer steps feeding a terminal estimator. The pipeline's effective
/// capabilities extend the terminal's: any length-equalizing step grants
/// unequal-length capability to the whole pipeline.
class Pipeline : public Estimator {
  public:
    Pipeline(std::vector<std::unique_ptr<Step>> steps, std::unique_ptr<Estimator> terminal);

    [[nodiscard]] TagSet tags() const override { return effective_tags_; }
    void fit(const Collection& train, const LabelVector& labels) override;
    [[nodiscard]] LabelVector predict(const Collection& test) const override;

    [[nodiscard]] const Estimator& terminal() const { return *terminal_; }

  private:
    std::vector<std::unique_ptr<Step>> steps_;
    std::unique_ptr<Estimator> terminal_;
    TagSet effective_tags_;
    EstimatorState state_;
};

Pipeline make_pipeline(std::vector<std::unique_ptr<Step>> steps,
                       std::unique_ptr<Estimator> terminal);

}  // namespace tsml::pipeline
