#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsml/errors.hpp"

namespace tsml {

/// A single univariate or multivariate ordered sequence, stored as a
/// rectangular n_channels x n_timepoints matrix (row-major, one contiguous
/// row per channel).
class Series {
  public:
    /// Zero-initialized series of the given shape. Both dimensions must be >= 1.
    Series(std::size_t n_channels, std::size_t n_timepoints);

    /// Univariate series over the given values.
    explicit Series(std::vector<double> values);

    /// Multivariate series from per-channel rows. All rows must share a length.
    explicit Series(const std::vector<std::vector<double>>& channels);

    [[nodiscard]] std::size_t n_channels() const { return n_channels_; }
    [[nodiscard]] std::size_t n_timepoints() const { return n_timepoints_; }

    double& at(std::size_t channel, std::size_t t) { return values_[channel * n_timepoints_ + t]; }
    double at(std::size_t channel, std::size_t t) const { return values_[channel * n_timepoints_ + t]; }

    [[nodiscard]] std::span<const double> channel(std::size_t c) const {
        return {values_.data() + c * n_timepoints_, n_timepoints_};
    }
    [[nodiscard]] std::span<double> channel(std::size_t c) {
        return {values_.data() + c * n_timepoints_, n_timepoints_};
    }

    [[nodiscard]] const std::optional<std::string>& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    [[nodiscard]] bool has_missing() const;

    friend bool operator==(const Series&, const Series&) = default;

  private:
    std::size_t n_channels_ = 1;
    std::size_t n_timepoints_ = 1;
    std::vector<double> values_;
    std::optional<std::string> name_;
};

enum class Layout { Dense, Ragged };

/// An ordered set of cases sharing a channel count. Dense collections
/// additionally share a length and behave like a (n_cases, n_channels,
/// n_timepoints) array; ragged collections may vary in length per case.
class Collection {
  public:
    Collection() = default;

    /// Validating constructor. Throws InvalidParameter when the cases break
    /// the layout invariants (mixed channel counts, or Dense with unequal
    /// lengths).
    Collection(Layout layout, std::vector<Series> cases);

    static Collection dense(std::vector<Series> cases) { return {Layout::Dense, std::move(cases)}; }
    static Collection ragged(std::vector<Series> cases) { return {Layout::Ragged, std::move(cases)}; }

    [[nodiscard]] Layout layout() const { return layout_; }
    [[nodiscard]] std::size_t n_cases() const { return cases_.size(); }
    [[nodiscard]] std::size_t n_channels() const { return cases_.empty() ? 0 : cases_[0].n_channels(); }

    /// Shared length of a Dense collection.
    [[nodiscard]] std::size_t n_timepoints() const;

    [[nodiscard]] const Series& case_at(std::size_t i) const { return cases_[i]; }
    [[nodiscard]] const std::vector<Series>& cases() const { return cases_; }

    /// 3-D indexed access for Dense collections.
    [[nodiscard]] double value(std::size_t i, std::size_t channel, std::size_t t) const {
        return cases_[i].at(channel, t);
    }

    friend bool operator==(const Collection&, const Collection&) = default;

  private:
    Layout layout_ = Layout::Dense;
    std::vector<Series> cases_;
};

enum class LabelKind { Class, Target, None };

/// Per-case labels: class labels over a finite alphabet, real targets, or
/// nothing.
class LabelVector {
  public:
    LabelVector() = default;

    /// Class labels. Every label must be a member of the alphabet.
    static LabelVector classes(std::vector<std::string> labels, std::vector<std::string> alphabet);

    static LabelVector targets(std::vector<double> values);

    static LabelVector none() { return {}; }

    [[nodiscard]] LabelKind kind() const { return kind_; }
    [[nodiscard]] std::size_t size() const;

    [[nodiscard]] const std::vector<std::string>& class_labels() const { return class_labels_; }
    [[nodiscard]] const std::vector<std::string>& alphabet() const { return alphabet_; }
    [[nodiscard]] const std::vector<double>& target_values() const { return targets_; }

    /// Maps each class label to its index in the alphabet.
    [[nodiscard]] std::vector<std::size_t> class_indices() const;

    friend bool operator==(const LabelVector&, const LabelVector&) = default;

  private:
    LabelKind kind_ = LabelKind::None;
    std::vector<std::string> class_labels_;
    std::vector<std::string> alphabet_;
    std::vector<double> targets_;
};

/// Header of a `.ts` document.
struct DatasetMetadata {
    std::string problem_name;
    bool is_univariate = true;
    bool is_equal_length = true;
    std::optional<std::size_t> series_length;
    LabelKind label_kind = LabelKind::None;
    std::optional<std::vector<std::string>> class_alphabet;

    friend bool operator==(const DatasetMetadata&, const DatasetMetadata&) = default;
};

// --- dataset generators ----------------------------------------------------

/// Gaussian blobs: case i of class c is class_offsets[c] + N(0, noise_sd)
/// i.i.d. per value. Cases are ordered class by class and labelled with the
/// class index as text. Deterministic per seed.
std::pair<Collection, LabelVector> make_blobs(std::size_t n_per_class, std::size_t n_channels,
                                              std::size_t n_timepoints,
                                              const std::vector<double>& class_offsets,
                                              double noise_sd, std::uint64_t seed);

/// Two-class problem: class 0 cases are unit-amplitude sinusoids with a
/// random phase plus N(0, sine_noise_sd); class 1 cases are pure N(0, 1)
/// noise. Deterministic per seed. The sinusoid period is n_timepoints / 4.
std::pair<Collection, LabelVector> make_sine_vs_noise(std::size_t n_per_class,
                                                      std::size_t n_timepoints, std::uint64_t seed,
                                                      double sine_noise_sd = 0.1);

}  // namespace tsml
