#include "tsml/core.hpp"

#include <algorithm>
#include <string>

namespace tsml {

CollectionMeta summarize(const Collection& collection) {
    if (collection.n_cases() == 0) {
        throw EmptyCollection("collection has no cases");
    }
    CollectionMeta meta;
    meta.n_cases = collection.n_cases();
    meta.n_channels = collection.n_channels();
    meta.length_min = collection.case_at(0).n_timepoints();
    meta.length_max = meta.length_min;
    meta.has_missing = false;
    for (const auto& c : collection.cases()) {
        meta.length_min = std::min(meta.length_min, c.n_timepoints());
        meta.length_max = std::max(meta.length_max, c.n_timepoints());
        meta.has_missing = meta.has_missing || c.has_missing();
    }
    meta.is_equal_length = meta.length_min == meta.length_max;
    return meta;
}

ValidationReport check_capabilities(const TagSet& tags, const CollectionMeta& meta) {
    ValidationReport report;
    if (meta.n_channels > 1 && !tags.multivariate) {
        report.violations.push_back(
            {"multivariate", "data has " + std::to_string(meta.n_channels) +
                                 " channels but the estimator only handles univariate input"});
    }
    if (!meta.is_equal_length && !tags.unequal_length) {
        report.violations.push_back(
            {"unequal_length", "data has case lengths in [" + std::to_string(meta.length_min) +
                                   ", " + std::to_string(meta.length_max) +
                                   "] but the estimator requires equal-length input"});
    }
    if (meta.has_missing && !tags.missing_values) {
        report.violations.push_back(
            {"missing_values", "data contains missing values the estimator cannot handle"});
    }
    return report;
}

const CollectionMeta& EstimatorState::fitted_meta() const {
    if (!fitted_meta_) {
        throw NotFittedError("estimator is not fitted");
    }
    return *fitted_meta_;
}

CollectionMeta fit_guard(EstimatorState& state, const TagSet& tags, const Collection& collection) {
    const CollectionMeta meta = summarize(collection);
    const ValidationReport report = check_capabilities(tags, meta);
    if (!report.ok()) {
        std::string message = "input violates estimator capabilities:";
        for (const auto& v : report.violations) {
            message += " [" + v.tag + "] " + v.detail + ";";
        }
        throw CapabilityError(std::move(message), report);
    }
    state.record_fit(meta);
    return meta;
}

void predict_guard(const EstimatorState& state, const CollectionMeta& meta_new,
                   LengthPolicy policy) {
    if (!state.fitted()) {
        throw NotFittedError("predict called before fit");
    }
    const CollectionMeta& fitted = state.fitted_meta();
    if (meta_new.n_channels != fitted.n_channels) {
        throw SchemaMismatch("fitted on " + std::to_string(fitted.n_channels) +
                                 " channel(s) but asked to predict on " +
                                 std::to_string(meta_new.n_channels),
                             fitted, meta_new);
    }
    if (policy == LengthPolicy::ExactMatch) {
        if (!meta_new.is_equal_length || meta_new.length_min != fitted.length_max) {
            throw SchemaMismatch("fitted on length " + std::to_string(fitted.length_max) +
                                     " but asked to predict on lengths in [" +
                                     std::to_string(meta_new.length_min) + ", " +
                                     std::to_string(meta_new.length_max) + "]",
                                 fitted, meta_new);
        }
    }
}

}  // namespace tsml
