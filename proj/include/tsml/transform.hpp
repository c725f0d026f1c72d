#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tsml/data.hpp"

namespace tsml::transforms {

/// A named feature vector; values and names are parallel.
struct FeatureVector {
    std::vector<double> values;
    std::vector<std::string> names;
};

enum class PadFill { Zero, LastValue, Mean };

/// How to extend ragged cases to a common length. An unset target_length
/// means Auto: the maximum case length of the input collection.
struct PadPolicy {
    PadFill fill = PadFill::Zero;
    std::optional<std::size_t> target_length;
};

/// Per-channel z-normalization; channels with sd below 1e-12 become zeros.
Series znorm(const Series& series);

/// Extends every case to the target length. Output is Dense; original values
/// are preserved as a prefix. Throws TargetTooShort when an explicit target
/// is below some case length.
Collection pad(const Collection& collection, const PadPolicy& policy);

/// Cuts every case down to the shortest case length. Output is Dense.
Collection truncate(const Collection& collection);

/// Per channel: mean, population sd, min, max, median, interquartile range
/// and least-squares slope against the index. Quantiles use linear
/// interpolation. Names follow "ch{k}_{stat}".
FeatureVector summary_features(const Series& series);

/// Per channel: magnitudes of DFT coefficients 1..k (DC excluded), scaled by
/// 2/n. Names follow "ch{c}_dftmag{j}". Requires k <= floor(n/2).
FeatureVector fourier_features(const Series& series, std::size_t k);

/// Dense collection of the length-`window` subseries starting at indices
/// 0, stride, 2*stride, ... Channels are preserved.
Collection sliding_window(const Series& series, std::size_t window, std::size_t stride);

/// Applies a series-to-series transformer to every case; the result is
/// Ragged unless all outputs share a length. Per-case failures are rethrown
/// as Error with the case index prepended.
Collection broadcast(const std::function<Series(const Series&)>& transformer,
                     const Collection& collection);

}  // namespace tsml::transforms
