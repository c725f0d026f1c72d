#include "tsml/supervised.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "parallel.hpp"

namespace tsml::supervised {

KnnEstimator::KnnEstimator(KnnConfig config) : config_(std::move(config)) {
    if (config_.k == 0) {
        throw InvalidParameter("k-NN requires k >= 1");
    }
}

TagSet KnnEstimator::tags() const {
    return {.multivariate = true,
            .unequal_length = distances::is_elastic(config_.spec.kind),
            .missing_values = false};
}

void KnnEstimator::fit(const Collection& train, const LabelVector& labels) {
    if (labels.kind() == LabelKind::None) {
        throw InvalidParameter("k-NN requires Class or Target labels");
    }
    if (labels.size() != train.n_cases()) {
        throw InvalidParameter("label count does not match the number of cases");
    }
    const CollectionMeta meta = fit_guard(state_, tags(), train);
    if (config_.k > meta.n_cases) {
        throw InvalidParameter("k = " + std::to_string(config_.k) + " exceeds the " +
                               std::to_string(meta.n_cases) + " training cases");
    }
    train_ = train;
    labels_ = labels;
    class_index_ = labels.kind() == LabelKind::Class ? labels.class_indices()
                                                     : std::vector<std::size_t>{};
}

LabelVector KnnEstimator::predict(const Collection& test) const {
    const CollectionMeta meta = summarize(test);
    const auto policy = distances::is_elastic(config_.spec.kind) ? LengthPolicy::Free
                                                                 : LengthPolicy::ExactMatch;
    predict_guard(state_, meta, policy);

    const std::size_t n_train = train_.n_cases();
    const std::size_t n_test = test.n_cases();
    const bool classify = labels_.kind() == LabelKind::Class;
    const std::size_t n_classes = classify ? labels_.alphabet().size() : 0;

    std::vector<std::size_t> votes(classify ? n_test : 0);
    std::vector<double> estimates(classify ? 0 : n_test);

    detail::parallel_for(n_test, [&](std::size_t i) {
        std::vector<std::pair<double, std::size_t>> neighbours;
        neighbours.reserve(n_train);
        for (std::size_t j = 0; j < n_train; ++j) {
            neighbours.emplace_back(
                distances::distance(test.case_at(i), train_.case_at(j), config_.spec), j);
        }
        // Lexicographic order breaks distance ties by training index.
        std::sort(neighbours.begin(), neighbours.end());

        if (classify) {
            std::vector<double> weight(n_classes, 0.0);
            for (std::size_t r = 0; r < config_.k; ++r) {
                const auto& [d, idx] = neighbours[r];
                const double w =
                    config_.weighting == Weighting::InverseDistance ? 1.0 / (d + 1e-8) : 1.0;
                weight[class_index_[idx]] += w;
            }
            std::size_t best = 0;
            for (std::size_t cls = 1; cls < n_classes; ++cls) {
                if (weight[cls] > weight[best]) best = cls;
            }
            votes[i] = best;
        } else {
            double num = 0.0;
            double den = 0.0;
            for (std::size_t r = 0; r < config_.k; ++r) {
                const auto& [d, idx] = neighbours[r];
                const double w =
                    config_.weighting == Weighting::InverseDistance ? 1.0 / (d + 1e-8) : 1.0;
                num += w * labels_.target_values()[idx];
                den += w;
            }
            estimates[i] = num / den;
        }
    }, 1);

    if (classify) {
        std::vector<std::string> out;
        out.reserve(n_test);
        for (const std::size_t cls : votes) out.push_back(labels_.alphabet()[cls]);
        return LabelVector::classes(std::move(out), labels_.alphabet());
    }
    return LabelVector::targets(std::move(estimates));
}

double accuracy(const LabelVector& predicted, const LabelVector& truth) {
    if (predicted.kind() != LabelKind::Class || truth.kind() != LabelKind::Class) {
        throw KindMismatch("accuracy requires Class-kind labels");
    }
    if (predicted.size() != truth.size()) {
        throw LengthMismatch("label vectors differ in length");
    }
    std::size_t agree = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (predicted.class_labels()[i] == truth.class_labels()[i]) ++agree;
    }
    return static_cast<double>(agree) / static_cast<double>(truth.size());
}

double mae(const LabelVector& predicted, const LabelVector& truth) {
    if (predicted.kind() != LabelKind::Target || truth.kind() != LabelKind::Target) {
        throw KindMismatch("mae requires Target-kind labels");
    }
    if (predicted.size() != truth.size()) {
        throw LengthMismatch("label vectors differ in length");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        sum += std::abs(predicted.target_values()[i] - truth.target_values()[i]);
    }
    return sum / static_cast<double>(truth.size());
}

double rmse(const LabelVector& predicted, const LabelVector& truth) {
    if (predicted.kind() != LabelKind::Target || truth.kind() != LabelKind::Target) {
        throw KindMismatch("rmse requires Target-kind labels");
    }
    if (predicted.size() != truth.size()) {
        throw LengthMismatch("label vectors differ in length");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double d = predicted.target_values()[i] - truth.target_values()[i];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(truth.size()));
}

}  // namespace tsml::supervised
