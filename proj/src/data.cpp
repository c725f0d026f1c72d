#include "tsml/data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>

namespace tsml {

Series::Series(std::size_t n_channels, std::size_t n_timepoints)
    : n_channels_(n_channels), n_timepoints_(n_timepoints), values_(n_channels * n_timepoints, 0.0) {
    if (n_channels == 0 || n_timepoints == 0) {
        throw InvalidParameter("Series requires n_channels >= 1 and n_timepoints >= 1");
    }
}

Series::Series(std::vector<double> values)
    : n_channels_(1), n_timepoints_(values.size()), values_(std::move(values)) {
    if (n_timepoints_ == 0) {
        throw InvalidParameter("Series requires n_timepoints >= 1");
    }
}

Series::Series(const std::vector<std::vector<double>>& channels) {
    if (channels.empty() || channels[0].empty()) {
        throw InvalidParameter("Series requires n_channels >= 1 and n_timepoints >= 1");
    }
    n_channels_ = channels.size();
    n_timepoints_ = channels[0].size();
    values_.reserve(n_channels_ * n_timepoints_);
    for (const auto& row : channels) {
        if (row.size() != n_timepoints_) {
            throw InvalidParameter("Series channels must all share a length");
        }
        values_.insert(values_.end(), row.begin(), row.end());
    }
}

bool Series::has_missing() const {
    return std::any_of(values_.begin(), values_.end(), [](double v) { return std::isnan(v); });
}

Collection::Collection(Layout layout, std::vector<Series> cases)
    : layout_(layout), cases_(std::move(cases)) {
    if (cases_.empty()) {
        return;
    }
    const std::size_t channels = cases_[0].n_channels();
    const std::size_t length = cases_[0].n_timepoints();
    for (const auto& c : cases_) {
        if (c.n_channels() != channels) {
            throw InvalidParameter("all cases of a collection must share n_channels");
        }
        if (layout_ == Layout::Dense && c.n_timepoints() != length) {
            throw InvalidParameter("dense collections must share n_timepoints across cases");
        }
    }
}

std::size_t Collection::n_timepoints() const {
    if (layout_ != Layout::Dense) {
        throw InvalidParameter("n_timepoints is only defined for dense collections");
    }
    return cases_.empty() ? 0 : cases_[0].n_timepoints();
}

LabelVector LabelVector::classes(std::vector<std::string> labels, std::vector<std::string> alphabet) {
    std::set<std::string> known(alphabet.begin(), alphabet.end());
    if (known.size() != alphabet.size()) {
        throw InvalidParameter("class alphabet contains duplicates");
    }
    for (const auto& label : labels) {
        if (!known.contains(label)) {
            throw InvalidParameter("class label '" + label + "' is not in the alphabet");
        }
    }
    LabelVector v;
    v.kind_ = LabelKind::Class;
    v.class_labels_ = std::move(labels);
    v.alphabet_ = std::move(alphabet);
    return v;
}

LabelVector LabelVector::targets(std::vector<double> values) {
    LabelVector v;
    v.kind_ = LabelKind::Target;
    v.targets_ = std::move(values);
    return v;
}

std::size_t LabelVector::size() const {
    switch (kind_) {
        case LabelKind::Class: return class_labels_.size();
        case LabelKind::Target: return targets_.size();
        case LabelKind::None: return 0;
    }
    return 0;
}

std::vector<std::size_t> LabelVector::class_indices() const {
    if (kind_ != LabelKind::Class) {
        throw KindMismatch("class_indices requires Class-kind labels");
    }
    std::vector<std::size_t> out;
    out.reserve(class_labels_.size());
    for (const auto& label : class_labels_) {
        const auto it = std::find(alphabet_.begin(), alphabet_.end(), label);
        out.push_back(static_cast<std::size_t>(it - alphabet_.begin()));
    }
    return out;
}

std::pair<Collection, LabelVector> make_blobs(std::size_t n_per_class, std::size_t n_channels,
                                              std::size_t n_timepoints,
                                              const std::vector<double>& class_offsets,
                                              double noise_sd, std::uint64_t seed) {
    if (n_per_class == 0 || n_channels == 0 || n_timepoints == 0) {
        throw InvalidParameter("make_blobs requires positive counts");
    }
    if (class_offsets.size() < 2) {
        throw InvalidParameter("make_blobs requires at least 2 class offsets");
    }
    if (std::set<double>(class_offsets.begin(), class_offsets.end()).size() != class_offsets.size()) {
        throw InvalidParameter("make_blobs class offsets must be distinct");
    }
    if (noise_sd < 0.0) {
        throw InvalidParameter("make_blobs requires noise_sd >= 0");
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    std::vector<Series> cases;
    std::vector<std::string> labels;
    std::vector<std::string> alphabet;
    cases.reserve(n_per_class * class_offsets.size());
    for (std::size_t c = 0; c < class_offsets.size(); ++c) {
        alphabet.push_back(std::to_string(c));
        for (std::size_t i = 0; i < n_per_class; ++i) {
            Series s(n_channels, n_timepoints);
            for (std::size_t ch = 0; ch < n_channels; ++ch) {
                for (std::size_t t = 0; t < n_timepoints; ++t) {
                    s.at(ch, t) = class_offsets[c] + noise_sd * noise(rng);
                }
            }
            cases.push_back(std::move(s));
            labels.push_back(std::to_string(c));
        }
    }
    return {Collection::dense(std::move(cases)),
            LabelVector::classes(std::move(labels), std::move(alphabet))};
}

std::pair<Collection, LabelVector> make_sine_vs_noise(std::size_t n_per_class,
                                                      std::size_t n_timepoints, std::uint64_t seed,
                                                      double sine_noise_sd) {
    if (n_per_class == 0) {
        throw InvalidParameter("make_sine_vs_noise requires n_per_class >= 1");
    }
    if (n_timepoints < 8) {
        throw InvalidParameter("make_sine_vs_noise requires n_timepoints >= 8");
    }
    if (sine_noise_sd < 0.0) {
        throw InvalidParameter("make_sine_vs_noise requires sine_noise_sd >= 0");
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> noise(0.0, 1.0);
    const double period = static_cast<double>(n_timepoints) / 4.0;

    std::vector<Series> cases;
    std::vector<std::string> labels;
    cases.reserve(2 * n_per_class);
    for (std::size_t i = 0; i < n_per_class; ++i) {
        const double phi = phase(rng);
        Series s(1, n_timepoints);
        for (std::size_t t = 0; t < n_timepoints; ++t) {
            s.at(0, t) = std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / period + phi) +
                         sine_noise_sd * noise(rng);
        }
        cases.push_back(std::move(s));
        labels.emplace_back("0");
    }
    for (std::size_t i = 0; i < n_per_class; ++i) {
        Series s(1, n_timepoints);
        for (std::size_t t = 0; t < n_timepoints; ++t) {
            s.at(0, t) = noise(rng);
        }
        cases.push_back(std::move(s));
        labels.emplace_back("1");
    }
    return {Collection::dense(std::move(cases)),
            LabelVector::classes(std::move(labels), {"0", "1"})};
}

}  // namespace tsml
