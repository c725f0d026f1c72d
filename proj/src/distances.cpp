#include "tsml/distances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "parallel.hpp"

namespace tsml::distances {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double squared_point_cost(const Series& x, std::size_t i, const Series& y, std::size_t j) {
    double sum = 0.0;
    for (std::size_t c = 0; c < x.n_channels(); ++c) {
        const double d = x.at(c, i) - y.at(c, j);
        sum += d * d;
    }
    return sum;
}

double euclidean_point_cost(const Series& x, std::size_t i, const Series& y, std::size_t j) {
    return std::sqrt(squared_point_cost(x, i, y, j));
}

/// EDR / LCSS matching: every channel within epsilon.
bool points_match(const Series& x, std::size_t i, const Series& y, std::size_t j, double epsilon) {
    for (std::size_t c = 0; c < x.n_channels(); ++c) {
        if (std::abs(x.at(c, i) - y.at(c, j)) > epsilon) return false;
    }
    return true;
}

/// ERP gap cost: norm of the point against the constant reference vector.
double gap_cost(const Series& x, std::size_t i, double erp_g) {
    double sum = 0.0;
    for (std::size_t c = 0; c < x.n_channels(); ++c) {
        const double d = x.at(c, i) - erp_g;
        sum += d * d;
    }
    return std::sqrt(sum);
}

/// Sakoe-Chiba style band over the aligned index grid, symmetrized so that
/// distance(x, y) == distance(y, x) holds exactly for unequal lengths. The
/// per-row column range is the union of the two orientations of
/// |i*m/n - j| <= radius, which is always a single interval.
struct Band {
    bool bounded = false;
    double radius = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;

    /// Inclusive 0-based column range for aligned row i (empty if lo > hi).
    [[nodiscard]] std::pair<std::ptrdiff_t, std::ptrdiff_t> range(std::size_t i) const {
        const auto last = static_cast<std::ptrdiff_t>(m) - 1;
        if (!bounded) return {0, last};
        const double mn = static_cast<double>(m) / static_cast<double>(n);
        const double di = static_cast<double>(i);
        const double lo = std::min(di * mn - radius, (di - radius) * mn);
        const double hi = std::max(di * mn + radius, (di + radius) * mn);
        const auto jlo = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::ceil(lo - 1e-9)));
        const auto jhi = std::min(last, static_cast<std::ptrdiff_t>(std::floor(hi + 1e-9)));
        return {jlo, jhi};
    }

    [[nodiscard]] bool contains(std::size_t i, std::size_t j) const {
        const auto [jlo, jhi] = range(i);
        const auto dj = static_cast<std::ptrdiff_t>(j);
        return jlo <= dj && dj <= jhi;
    }
};

Band make_band(const std::optional<double>& window, std::size_t n, std::size_t m) {
    Band band;
    band.n = n;
    band.m = m;
    if (!window) return band;
    const double w = *window;
    if (w < 0.0 || w > 1.0) {
        throw InvalidParameter("band window must lie in [0, 1]");
    }
    band.bounded = true;
    band.radius = w * static_cast<double>(std::max(n, m));
    const double gap = std::abs(static_cast<double>(n) - static_cast<double>(m));
    if (band.radius + 1e-9 < gap) {
        throw InfeasibleBand("window " + std::to_string(w) + " admits no path between lengths " +
                             std::to_string(n) + " and " + std::to_string(m));
    }
    return band;
}

/// WDTW weight over the aligned index offset.
double wdtw_weight(std::size_t delta, double g, std::size_t max_len) {
    return 1.0 / (1.0 + std::exp(-g * (static_cast<double>(delta) -
                                       static_cast<double>(max_len) / 2.0)));
}

// --- DP kernels over the padded (n+1) x (m+1) grid --------------------------

/// DTW / WDTW accumulated costs; `weighted` selects the WDTW pointwise weight.
Matrix warp_matrix(const Series& x, const Series& y, const Band& band, bool weighted, double g) {
    const std::size_t n = x.n_timepoints();
    const std::size_t m = y.n_timepoints();
    const std::size_t max_len = std::max(n, m);
    Matrix acc(n + 1, m + 1, kInf);
    acc(0, 0) = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const auto [jlo, jhi] = band.range(i - 1);
        for (std::ptrdiff_t j = jlo + 1; j <= jhi + 1; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            double cost = squared_point_cost(x, i - 1, y, ju - 1);
            if (weighted) {
                const std::size_t delta = i > ju ? i - ju : ju - i;
                cost *= wdtw_weight(delta, g, max_len);
            }
            const double best = std::min({acc(i - 1, ju - 1), acc(i - 1, ju), acc(i, ju - 1)});
            acc(i, ju) = cost + best;
        }
    }
    return acc;
}

/// Two-row variant of warp_matrix used on the distance-only path.
double warp_distance(const Series& x, const Series& y, const Band& band, bool weighted, double g) {
    const std::size_t n = x.n_timepoints();
    const std::size_t m = y.n_timepoints();
    const std::size_t max_len = std::max(n, m);
    std::vector<double> prev(m + 1, kInf);
    std::vector<double> curr(m + 1, kInf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        std::fill(curr.begin(), curr.end(), kInf);
        const auto [jlo, jhi] = band.range(i - 1);
        for (std::ptrdiff_t j = jlo + 1; j <= jhi + 1; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            double cost = squared_point_cost(x, i - 1, y, ju - 1);
            if (weighted) {
                const std::size_t delta = i > ju ? i - ju : ju - i;
                cost *= wdtw_weight(delta, g, max_len);
            }
            curr[ju] = cost + std::min({prev[ju - 1], prev[ju], curr[ju - 1]});
        }
        std::swap(prev, curr);
    }
    return prev[m];
}

Matrix erp_matrix(const Series& x, const Series& y, const Band& band, double erp_g) {
    const std::size_t n = x.n_timepoints();
    const std::size_t m = y.n_timepoints();
    Matrix acc(n + 1, m + 1, kInf);
    acc(0, 0) = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (!band.contains(i - 1, 0)) break;
        acc(i, 0) = acc(i - 1, 0) + gap_cost(x, i - 1, erp_g);
    }
    for (std::size_t j = 1; j <= m; ++j) {
        if (!band.contains(0, j - 1)) break;
        acc(0, j) = acc(0, j - 1) + gap_cost(y, j - 1, erp_g);
    }
    for (std::size_t i = 1; i <= n; ++i) {
        const auto [jlo, jhi] = band.range(i - 1);
        for (std::ptrdiff_t j = jlo + 1; j <= jhi + 1; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            const double match = acc(i - 1, ju - 1) + euclidean_point_cost(x, i - 1, y, ju - 1);
            const double drop_x = acc(i - 1, ju) + gap_cost(x, i - 1, erp_g);
            const double drop_y = acc(i, ju - 1) + gap_cost(y, ju - 1, erp_g);
            acc(i, ju) = std::min({match, drop_x, drop_y});
        }
    }
    return acc;
}

/// Unit-cost edit distance grid; the caller normalizes by max(n, m).
Matrix edr_matrix(const Series& x, const Series& y, const Band& band, double epsilon) {
    const std::size_t n = x.n_timepoints();
    const std::size_t m = y.n_timepoints();
    Matrix acc(n + 1, m + 1, kInf);
    acc(0, 0) = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (!band.contains(i - 1, 0)) break;
        acc(i, 0) = static_cast<double>(i);
    }
    for (std::size_t j = 1; j <= m; ++j) {
        if (!band.contains(0, j - 1)) break;
        acc(0, j) = static_cast<double>(j);
    }
    for (std::size_t i = 1; i <= n; ++i) {
        const auto [jlo, jhi] = band.range(i - 1);
        for (std::ptrdiff_t j = jlo + 1; j <= jhi + 1; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            const double sub = points_match(x, i - 1, y, ju - 1, epsilon) ? 0.0 : 1.0;
            acc(i, ju) = std::min({acc(i - 1, ju - 1) + sub, acc(i - 1, ju) + 1.0,
                                   acc(i, ju - 1) + 1.0});
        }
    }
    return acc;
}

/// Longest-common-subsequence lengths under epsilon matching. Out-of-band
/// cells hold 0 and never contribute matches.
Matrix lcss_count_matrix(const Series& x, const Series& y, const Band& band, double epsilon) {
    const std::size_t n = x.n_timepoints();
    const std::size_t m = y.n_timepoints();
    Matrix count(n + 1, m + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        const auto [jlo, jhi] = band.range(i - 1);
        for (std::ptrdiff_t j = jlo + 1; j <= jhi + 1; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            if (points_match(x, i - 1, y, ju - 1, epsilon)) {
                count(i, ju) = count(i - 1, ju - 1) + 1.0;
            } else {
                count(i, ju) = std::max(count(i - 1, ju), count(i, ju - 1));
            }
        }
    }
    return count;
}

/// Move-split-merge step cost: c when the new point lies between the two
/// anchors (hypersphere test over channels), and c plus the distance to the
/// nearer anchor otherwise.
double msm_cost(const Series& pn, std::size_t in, const Series& pp, std::size_t ip,
                const Series& po, std::size_t io, double c) {
    double diameter_sq = 0.0;
    double to_mid_sq = 0.0;
    for (std::size_t ch = 0; ch < pn.n_channels(); ++ch) {
        const double prev = pp.at(ch, ip);
        const double other = po.at(ch, io);
        const double mid = (prev + other) / 2.0;
        diameter_sq += (prev - other) * (prev - other);
        to_mid_sq += (mid - pn.at(ch, in)) * (mid - pn.at(ch, in));
    }
    if (std::sqrt(to_mid_sq) <= std::sqrt(diameter_sq) / 2.0) {
        return c;
    }
    return c + std::min(euclidean_point_cost(pn, in, pp, ip), euclidean_point_cost(pn, in, po, io));
}

Matrix msm_matrix(const Series& x, const Series& y, const Band& band, double c) {
    const std::size_t n = x.n_timepoints();
    const std::size_t m = y.n_timepoints();
    Matrix acc(n + 1, m + 1, kInf);
    acc(0, 0) = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const auto [jlo, jhi] = band.range(i - 1);
        for (std::ptrdiff_t j = jlo + 1; j <= jhi + 1; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            const double move = acc(i - 1, ju - 1) + euclidean_point_cost(x, i - 1, y, ju - 1);
            double split = kInf;
            if (i >= 2 && acc(i - 1, ju) < kInf) {
                split = acc(i - 1, ju) + msm_cost(x, i - 1, x, i - 2, y, ju - 1, c);
            }
            double merge = kInf;
            if (ju >= 2 && acc(i, ju - 1) < kInf) {
                merge = acc(i, ju - 1) + msm_cost(y, ju - 1, y, ju - 2, x, i - 1, c);
            }
            acc(i, ju) = std::min({move, split, merge});
        }
    }
    return acc;
}

/// Time-warp edit distance over series padded with a leading zero point;
/// padded indices coincide with the DP grid indices.
Matrix twe_matrix(const Series& x, const Series& y, const Band& band, double nu, double lambda) {
    const std::size_t n = x.n_timepoints();
    const std::size_t m = y.n_timepoints();
    const std::size_t channels = x.n_channels();
    const double del_add = nu + lambda;

    // Padded point access: index 0 is the zero vector, index i >= 1 is point i-1.
    const auto padded = [channels](const Series& s, std::size_t idx, std::size_t ch) {
        return idx == 0 ? 0.0 : s.at(ch, idx - 1);
    };
    const auto padded_dist = [&](const Series& a, std::size_t ia, const Series& b, std::size_t ib) {
        double sum = 0.0;
        for (std::size_t ch = 0; ch < channels; ++ch) {
            const double d = padded(a, ia, ch) - padded(b, ib, ch);
            sum += d * d;
        }
        return std::sqrt(sum);
    };

    Matrix acc(n + 1, m + 1, kInf);
    acc(0, 0) = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const auto [jlo, jhi] = band.range(i - 1);
        for (std::ptrdiff_t j = jlo + 1; j <= jhi + 1; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            const double del_x = acc(i - 1, ju) + padded_dist(x, i - 1, x, i) + del_add;
            const double del_y = acc(i, ju - 1) + padded_dist(y, ju - 1, y, ju) + del_add;
            const double shift = 2.0 * nu * std::abs(static_cast<double>(i) - static_cast<double>(ju));
            const double match = acc(i - 1, ju - 1) + padded_dist(x, i, y, ju) +
                                 padded_dist(x, i - 1, y, ju - 1) + shift;
            acc(i, ju) = std::min({del_x, del_y, match});
        }
    }
    return acc;
}

void check_channels(const Series& x, const Series& y) {
    if (x.n_channels() != y.n_channels()) {
        throw ChannelMismatch("series have " + std::to_string(x.n_channels()) + " and " +
                              std::to_string(y.n_channels()) + " channels");
    }
}

void validate_params(const DistanceSpec& spec) {
    switch (spec.kind) {
        case DistanceKind::WDTW:
        case DistanceKind::WDDTW:
            if (spec.g < 0.0) throw InvalidParameter("WDTW steepness g must be >= 0");
            break;
        case DistanceKind::EDR:
        case DistanceKind::LCSS:
            if (spec.epsilon < 0.0) throw InvalidParameter("epsilon must be >= 0");
            break;
        case DistanceKind::MSM:
            if (spec.c <= 0.0) throw InvalidParameter("MSM cost c must be > 0");
            break;
        case DistanceKind::TWE:
            if (spec.nu < 0.0 || spec.lambda < 0.0) {
                throw InvalidParameter("TWE nu and lambda must be >= 0");
            }
            break;
        default: break;
    }
}

double lockstep_squared(const Series& x, const Series& y) {
    if (x.n_timepoints() != y.n_timepoints()) {
        throw LengthMismatch("lockstep distances require equal lengths (" +
                             std::to_string(x.n_timepoints()) + " vs " +
                             std::to_string(y.n_timepoints()) + ")");
    }
    double sum = 0.0;
    for (std::size_t t = 0; t < x.n_timepoints(); ++t) {
        sum += squared_point_cost(x, t, y, t);
    }
    return sum;
}

}  // namespace

bool is_lockstep(DistanceKind kind) {
    return kind == DistanceKind::Euclidean || kind == DistanceKind::Squared;
}

bool is_dtw_family(DistanceKind kind) {
    return kind == DistanceKind::DTW || kind == DistanceKind::DDTW ||
           kind == DistanceKind::WDTW || kind == DistanceKind::WDDTW;
}

bool is_elastic(DistanceKind kind) { return !is_lockstep(kind); }

const char* kind_name(DistanceKind kind) {
    switch (kind) {
        case DistanceKind::Euclidean: return "euclidean";
        case DistanceKind::Squared: return "squared";
        case DistanceKind::DTW: return "dtw";
        case DistanceKind::DDTW: return "ddtw";
        case DistanceKind::WDTW: return "wdtw";
        case DistanceKind::WDDTW: return "wddtw";
        case DistanceKind::ERP: return "erp";
        case DistanceKind::EDR: return "edr";
        case DistanceKind::LCSS: return "lcss";
        case DistanceKind::MSM: return "msm";
        case DistanceKind::TWE: return "twe";
    }
    return "unknown";
}

std::optional<DistanceKind> kind_from_name(const std::string& name) {
    static const std::unordered_map<std::string, DistanceKind> names = {
        {"euclidean", DistanceKind::Euclidean}, {"squared", DistanceKind::Squared},
        {"dtw", DistanceKind::DTW},             {"ddtw", DistanceKind::DDTW},
        {"wdtw", DistanceKind::WDTW},           {"wddtw", DistanceKind::WDDTW},
        {"erp", DistanceKind::ERP},             {"edr", DistanceKind::EDR},
        {"lcss", DistanceKind::LCSS},           {"msm", DistanceKind::MSM},
        {"twe", DistanceKind::TWE},
    };
    const auto it = names.find(name);
    if (it == names.end()) return std::nullopt;
    return it->second;
}

Series derivative(const Series& x) {
    if (x.n_timepoints() < 3) {
        throw SeriesTooShort("derivative requires at least 3 timepoints");
    }
    Series out(x.n_channels(), x.n_timepoints() - 2);
    for (std::size_t c = 0; c < x.n_channels(); ++c) {
        for (std::size_t t = 1; t + 1 < x.n_timepoints(); ++t) {
            out.at(c, t - 1) =
                ((x.at(c, t) - x.at(c, t - 1)) + (x.at(c, t + 1) - x.at(c, t - 1)) / 2.0) / 2.0;
        }
    }
    return out;
}

double distance(const Series& x, const Series& y, const DistanceSpec& spec) {
    check_channels(x, y);
    validate_params(spec);
    switch (spec.kind) {
        case DistanceKind::Squared: return lockstep_squared(x, y);
        case DistanceKind::Euclidean: return std::sqrt(lockstep_squared(x, y));
        case DistanceKind::DTW:
        case DistanceKind::WDTW: {
            const Band band = make_band(spec.window, x.n_timepoints(), y.n_timepoints());
            return warp_distance(x, y, band, spec.kind == DistanceKind::WDTW, spec.g);
        }
        case DistanceKind::DDTW:
        case DistanceKind::WDDTW: {
            const Series dx = derivative(x);
            const Series dy = derivative(y);
            const Band band = make_band(spec.window, dx.n_timepoints(), dy.n_timepoints());
            return warp_distance(dx, dy, band, spec.kind == DistanceKind::WDDTW, spec.g);
        }
        case DistanceKind::ERP: {
            const Band band = make_band(spec.window, x.n_timepoints(), y.n_timepoints());
            return erp_matrix(x, y, band, spec.erp_g)(x.n_timepoints(), y.n_timepoints());
        }
        case DistanceKind::EDR: {
            const Band band = make_band(spec.window, x.n_timepoints(), y.n_timepoints());
            const double raw = edr_matrix(x, y, band, spec.epsilon)(x.n_timepoints(), y.n_timepoints());
            return raw / static_cast<double>(std::max(x.n_timepoints(), y.n_timepoints()));
        }
        case DistanceKind::LCSS: {
            const Band band = make_band(spec.window, x.n_timepoints(), y.n_timepoints());
            const double lcs =
                lcss_count_matrix(x, y, band, spec.epsilon)(x.n_timepoints(), y.n_timepoints());
            return 1.0 - lcs / static_cast<double>(std::min(x.n_timepoints(), y.n_timepoints()));
        }
        case DistanceKind::MSM: {
            const Band band = make_band(spec.window, x.n_timepoints(), y.n_timepoints());
            return msm_matrix(x, y, band, spec.c)(x.n_timepoints(), y.n_timepoints());
        }
        case DistanceKind::TWE: {
            const Band band = make_band(spec.window, x.n_timepoints(), y.n_timepoints());
            return twe_matrix(x, y, band, spec.nu, spec.lambda)(x.n_timepoints(), y.n_timepoints());
        }
    }
    throw UnsupportedKind("unhandled distance kind");
}

CostMatrix cost_matrix(const Series& x, const Series& y, const DistanceSpec& spec) {
    check_channels(x, y);
    validate_params(spec);
    if (is_lockstep(spec.kind)) {
        throw UnsupportedKind("cost_matrix is undefined for lockstep kinds");
    }

    const Series* a = &x;
    const Series* b = &y;
    Series dx(1, 1);
    Series dy(1, 1);
    if (spec.kind == DistanceKind::DDTW || spec.kind == DistanceKind::WDDTW) {
        dx = derivative(x);
        dy = derivative(y);
        a = &dx;
        b = &dy;
    }
    const std::size_t n = a->n_timepoints();
    const std::size_t m = b->n_timepoints();
    const Band band = make_band(spec.window, n, m);

    CostMatrix result;
    result.n = n;
    result.m = m;
    switch (spec.kind) {
        case DistanceKind::DTW:
        case DistanceKind::DDTW:
            result.entries = warp_matrix(*a, *b, band, false, spec.g);
            break;
        case DistanceKind::WDTW:
        case DistanceKind::WDDTW:
            result.entries = warp_matrix(*a, *b, band, true, spec.g);
            break;
        case DistanceKind::ERP: result.entries = erp_matrix(*a, *b, band, spec.erp_g); break;
        case DistanceKind::EDR: {
            result.entries = edr_matrix(*a, *b, band, spec.epsilon);
            const double scale = static_cast<double>(std::max(n, m));
            for (std::size_t i = 0; i <= n; ++i) {
                for (std::size_t j = 0; j <= m; ++j) {
                    if (std::isfinite(result.entries(i, j))) result.entries(i, j) /= scale;
                }
            }
            break;
        }
        case DistanceKind::LCSS: {
            // Convert match counts into accumulated unmatched mass so the
            // corner equals the LCSS distance and the origin stays 0.
            const Matrix count = lcss_count_matrix(*a, *b, band, spec.epsilon);
            const double scale = static_cast<double>(std::min(n, m));
            result.entries = Matrix(n + 1, m + 1, kInf);
            result.entries(0, 0) = 0.0;
            for (std::size_t i = 0; i <= n; ++i) {
                for (std::size_t j = 0; j <= m; ++j) {
                    if (i == 0 && j == 0) continue;
                    const bool boundary_ok =
                        (i == 0 || j == 0)
                            ? band.contains(i == 0 ? 0 : i - 1, j == 0 ? 0 : j - 1)
                            : band.contains(i - 1, j - 1);
                    if (!boundary_ok) continue;
                    const double unmatched = static_cast<double>(std::min(i, j)) - count(i, j);
                    result.entries(i, j) = unmatched / scale;
                }
            }
            break;
        }
        case DistanceKind::MSM: result.entries = msm_matrix(*a, *b, band, spec.c); break;
        case DistanceKind::TWE: result.entries = twe_matrix(*a, *b, band, spec.nu, spec.lambda); break;
        default: throw UnsupportedKind("cost_matrix is undefined for this kind");
    }
    return result;
}

std::pair<AlignmentPath, double> alignment_path(const Series& x, const Series& y,
                                                const DistanceSpec& spec) {
    if (!is_dtw_family(spec.kind)) {
        throw UnsupportedKind("alignment paths are only defined for the DTW family");
    }
    const CostMatrix cm = cost_matrix(x, y, spec);
    const Matrix& acc = cm.entries;

    AlignmentPath path;
    std::size_t i = cm.n;
    std::size_t j = cm.m;
    path.pairs.emplace_back(i - 1, j - 1);
    while (i > 1 || j > 1) {
        const double diag = (i > 1 && j > 1) ? acc(i - 1, j - 1) : kInf;
        const double up = i > 1 ? acc(i - 1, j) : kInf;
        const double left = j > 1 ? acc(i, j - 1) : kInf;
        // Ties prefer the diagonal, then the i-advancing step.
        if (diag <= up && diag <= left) {
            --i;
            --j;
        } else if (up <= left) {
            --i;
        } else {
            --j;
        }
        path.pairs.emplace_back(i - 1, j - 1);
    }
    std::reverse(path.pairs.begin(), path.pairs.end());
    return {std::move(path), acc(cm.n, cm.m)};
}

Matrix pairwise(const Collection& collection, const DistanceSpec& spec) {
    const std::size_t n = collection.n_cases();
    Matrix result(n, n, 0.0);
    if (n == 0) return result;

    // Validate preconditions once so the parallel workers cannot throw.
    std::size_t len_min = collection.case_at(0).n_timepoints();
    std::size_t len_max = len_min;
    for (const auto& c : collection.cases()) {
        len_min = std::min(len_min, c.n_timepoints());
        len_max = std::max(len_max, c.n_timepoints());
    }
    if (is_lockstep(spec.kind) && len_min != len_max) {
        throw LengthMismatch("lockstep distances require an equal-length collection");
    }
    validate_params(spec);
    if (spec.kind == DistanceKind::DDTW || spec.kind == DistanceKind::WDDTW) {
        if (len_min < 3) throw SeriesTooShort("derivative requires at least 3 timepoints");
        make_band(spec.window, len_min - 2, len_max - 2);
    } else if (!is_lockstep(spec.kind)) {
        make_band(spec.window, len_min, len_max);
    }

    const std::size_t n_pairs = n * (n - 1) / 2;
    detail::parallel_for(n_pairs, [&](std::size_t p) {
        // Decode the flat pair index into (i, j) with i < j.
        std::size_t i = 0;
        std::size_t remaining = p;
        std::size_t row_pairs = n - 1;
        while (remaining >= row_pairs) {
            remaining -= row_pairs;
            --row_pairs;
            ++i;
        }
        const std::size_t j = i + 1 + remaining;
        const double d = distance(collection.case_at(i), collection.case_at(j), spec);
        result(i, j) = d;
        result(j, i) = d;
    });
    return result;
}

}  // namespace tsml::distances
