#include "tsml/pipeline.hpp"

#include <algorithm>
#include <utility>

namespace tsml::pipeline {

Collection PadStep::fit_transform(const Collection& collection) {
    std::size_t target = policy_.target_length.value_or(0);
    if (!policy_.target_length) {
        for (const auto& c : collection.cases()) target = std::max(target, c.n_timepoints());
    }
    frozen_length_ = target;
    return transform(collection);
}

Collection PadStep::transform(const Collection& collection) const {
    if (!frozen_length_) {
        throw NotFittedError("pad step is not fitted");
    }
    for (const auto& c : collection.cases()) {
        if (c.n_timepoints() > *frozen_length_) {
            CollectionMeta fitted;
            fitted.length_min = fitted.length_max = *frozen_length_;
            throw SchemaMismatch("case length " + std::to_string(c.n_timepoints()) +
                                     " exceeds the frozen pad length " +
                                     std::to_string(*frozen_length_),
                                 fitted, summarize(collection));
        }
    }
    return transforms::pad(collection, {policy_.fill, *frozen_length_});
}

Collection TruncateStep::fit_transform(const Collection& collection) {
    std::size_t target = collection.n_cases() == 0 ? 0 : collection.case_at(0).n_timepoints();
    for (const auto& c : collection.cases()) target = std::min(target, c.n_timepoints());
    frozen_length_ = target;
    return transform(collection);
}

Collection TruncateStep::transform(const Collection& collection) const {
    if (!frozen_length_) {
        throw NotFittedError("truncate step is not fitted");
    }
    std::vector<Series> out;
    out.reserve(collection.n_cases());
    for (const auto& c : collection.cases()) {
        if (c.n_timepoints() < *frozen_length_) {
            CollectionMeta fitted;
            fitted.length_min = fitted.length_max = *frozen_length_;
            throw SchemaMismatch("case length " + std::to_string(c.n_timepoints()) +
                                     " is below the frozen truncate length " +
                                     std::to_string(*frozen_length_),
                                 fitted, summarize(collection));
        }
        Series trimmed(c.n_channels(), *frozen_length_);
        for (std::size_t ch = 0; ch < c.n_channels(); ++ch) {
            const auto src = c.channel(ch);
            std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(*frozen_length_),
                      trimmed.channel(ch).begin());
        }
        out.push_back(std::move(trimmed));
    }
    return Collection::dense(std::move(out));
}

Collection ZnormStep::fit_transform(const Collection& collection) { return transform(collection); }

Collection ZnormStep::transform(const Collection& collection) const {
    return transforms::broadcast([](const Series& s) { return transforms::znorm(s); }, collection);
}

Pipeline::Pipeline(std::vector<std::unique_ptr<Step>> steps, std::unique_ptr<Estimator> terminal)
    : steps_(std::move(steps)), terminal_(std::move(terminal)) {
    if (!terminal_) {
        throw InvalidParameter("a pipeline requires a terminal estimator");
    }
    effective_tags_ = terminal_->tags();
    for (const auto& step : steps_) {
        effective_tags_.unequal_length = effective_tags_.unequal_length || step->equalizes_length();
    }
}

void Pipeline::fit(const Collection& train, const LabelVector& labels) {
    fit_guard(state_, effective_tags_, train);
    Collection current = train;
    for (const auto& step : steps_) {
        current = step->fit_transform(current);
    }
    terminal_->fit(current, labels);
}

LabelVector Pipeline::predict(const Collection& test) const {
    if (!state_.fitted()) {
        throw NotFittedError("pipeline is not fitted");
    }
    Collection current = test;
    for (const auto& step : steps_) {
        current = step->transform(current);
    }
    return terminal_->predict(current);
}

Pipeline make_pipeline(std::vector<std::unique_ptr<Step>> steps,
                       std::unique_ptr<Estimator> terminal) {
    return {std::move(steps), std::move(terminal)};
}

}  // namespace tsml::pipeline
