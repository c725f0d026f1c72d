#pragma once

#include "tsml/data.hpp"
#include "tsml/errors.hpp"
#include "tsml/meta.hpp"

#include <optional>

namespace tsml {

/// Counts cases, channels and the length range of a collection, and flags
/// NaN values as missing. Throws EmptyCollection for zero cases.
CollectionMeta summarize(const Collection& collection);

/// Checks data characteristics against an estimator's declared capabilities.
/// Report-returning: callers convert a failed report into a CapabilityError.
ValidationReport check_capabilities(const TagSet& tags, const CollectionMeta& meta);

/// How predict_guard compares incoming lengths against the fitted schema.
enum class LengthPolicy {
    Free,        ///< any lengths accepted (elastic models)
    ExactMatch,  ///< fixed-length models: incoming lengths must equal the fitted length
};

/// Fit/predict lifecycle state shared by every estimator.
class EstimatorState {
  public:
    [[nodiscard]] bool fitted() const { return fitted_meta_.has_value(); }

    [[nodiscard]] const CollectionMeta& fitted_meta() const;

    void record_fit(const CollectionMeta& meta) { fitted_meta_ = meta; }
    void reset() { fitted_meta_.reset(); }

  private:
    std::optional<CollectionMeta> fitted_meta_;
};

/// Summarizes and validates a training collection against the tags, records
/// the metadata and moves the state to Fitted. Re-fitting overwrites any
/// prior fitted state. Throws CapabilityError or EmptyCollection.
CollectionMeta fit_guard(EstimatorState& state, const TagSet& tags, const Collection& collection);

/// Validates predict-time data against the fitted schema: the state must be
/// Fitted and channel counts must match; ExactMatch additionally requires
/// every incoming length to equal the fitted length. Throws NotFittedError
/// or SchemaMismatch.
void predict_guard(const EstimatorState& state, const CollectionMeta& meta_new,
                   LengthPolicy policy = LengthPolicy::Free);

/// Estimator contract: capability tags plus the fit/predict lifecycle.
/// Implementations are immutable after fit and safe for concurrent predict.
class Estimator {
  public:
    virtual ~Estimator() = default;

    [[nodiscard]] virtual TagSet tags() const = 0;
    virtual void fit(const Collection& train, const LabelVector& labels) = 0;
    [[nodiscard]] virtual LabelVector predict(const Collection& test) const = 0;
};

}  // namespace tsml
