#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsml/data.hpp"
#include "tsml/matrix.hpp"

namespace tsml::distances {

enum class DistanceKind {
    Euclidean,
    Squared,
    DTW,
    DDTW,
    WDTW,
    WDDTW,
    ERP,
    EDR,
    LCSS,
    MSM,
    TWE,
};

/// A distance kind plus its parameters. Only the parameters relevant to the
/// kind are read.
struct DistanceSpec {
    DistanceKind kind = DistanceKind::DTW;
    /// Sakoe-Chiba band fraction in [0, 1]; unset means unconstrained.
    std::optional<double> window;
    /// WDTW / WDDTW weight steepness.
    double g = 0.05;
    /// ERP gap reference value (gap cost is the norm against erp_g * ones).
    double erp_g = 0.0;
    /// EDR / LCSS per-channel matching threshold.
    double epsilon = 1.0;
    /// MSM split/merge cost.
    double c = 1.0;
    /// TWE stiffness per unit time shift and edit penalty.
    double nu = 0.001;
    double lambda = 1.0;
};

/// True for kinds that require equal lengths and admit no warping.
bool is_lockstep(DistanceKind kind);

/// True for the warping-path kinds with alignment semantics
/// (DTW, DDTW, WDTW, WDDTW).
bool is_dtw_family(DistanceKind kind);

/// True for every kind able to compare unequal-length series.
bool is_elastic(DistanceKind kind);

const char* kind_name(DistanceKind kind);
std::optional<DistanceKind> kind_from_name(const std::string& name);

/// Accumulated-cost matrix of a DP kind, padded with a boundary row and
/// column: entries is (n+1) x (m+1), entries(0,0) = 0, cells outside the
/// band are +infinity and entries(n,m) is the distance.
struct CostMatrix {
    Matrix entries;
    std::size_t n = 0;
    std::size_t m = 0;
};

/// Monotone alignment between two series: (i, j) index pairs from (0, 0) to
/// (n-1, m-1), each step advancing i, j or both by one. For derivative kinds
/// the indices refer to the derivative-transformed series.
struct AlignmentPath {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Distance between two series under the given spec. Throws ChannelMismatch,
/// LengthMismatch (lockstep kinds on unequal lengths) or InfeasibleBand
/// (bounded window below |n-m| / max(n, m)).
double distance(const Series& x, const Series& y, const DistanceSpec& spec);

/// Full accumulated-cost matrix for a DP kind. Throws UnsupportedKind for
/// Euclidean / Squared, otherwise as distance().
CostMatrix cost_matrix(const Series& x, const Series& y, const DistanceSpec& spec);

/// Optimal warping path and its cost for the DTW-family kinds. Traceback
/// ties prefer the diagonal step, then the i-advancing step. Throws
/// UnsupportedKind for every other kind.
std::pair<AlignmentPath, double> alignment_path(const Series& x, const Series& y,
                                                const DistanceSpec& spec);

/// Symmetric pairwise distance matrix over the cases of a collection. Each
/// unordered pair is computed exactly once, so the matrix is bit-for-bit
/// symmetric; unordered pairs are partitioned across threads.
Matrix pairwise(const Collection& collection, const DistanceSpec& spec);

/// The derivative transform used by DDTW / WDDTW:
/// d[t] = ((x[t] - x[t-1]) + (x[t+1] - x[t-1]) / 2) / 2 for t in [1, n-2].
/// The result is shorter by two; throws SeriesTooShort for n < 3.
Series derivative(const Series& x);

}  // namespace tsml::distances
