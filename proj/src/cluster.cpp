#include "tsml/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "tsml/core.hpp"

namespace tsml::cluster {

namespace {

using distances::DistanceKind;
using distances::DistanceSpec;

/// k distinct case indices drawn uniformly without replacement.
std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t k, std::uint64_t seed) {
    std::vector<std::size_t> indices(n);
    std::iota(indices.begin(), indices.end(), 0);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = std::uniform_int_distribution<std::size_t>(i, n - 1)(rng);
        std::swap(indices[i], indices[j]);
    }
    indices.resize(k);
    return indices;
}

struct Assignment {
    std::vector<std::size_t> labels;
    std::vector<double> case_distance;
    double inertia = 0.0;
};

Assignment assign_detail(const Collection& collection, const std::vector<Series>& centers,
                         const DistanceSpec& spec) {
    if (centers.empty()) {
        throw InvalidParameter("assign requires at least one centre");
    }
    Assignment out;
    out.labels.resize(collection.n_cases());
    out.case_distance.resize(collection.n_cases());
    for (std::size_t i = 0; i < collection.n_cases(); ++i) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < centers.size(); ++c) {
            const double d = distances::distance(collection.case_at(i), centers[c], spec);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        out.labels[i] = best;
        out.case_distance[i] = best_d;
        out.inertia += best_d;
    }
    return out;
}

/// Maps an alignment-path index to the index of the original series; the
/// derivative kinds align series shortened by one at each end.
std::size_t to_original_index(std::size_t path_index, const DistanceSpec& spec) {
    const bool derivative_kind =
        spec.kind == DistanceKind::DDTW || spec.kind == DistanceKind::WDDTW;
    return derivative_kind ? path_index + 1 : path_index;
}

Series arithmetic_mean(const Collection& collection, const std::vector<std::size_t>& members) {
    const Series& first = collection.case_at(members[0]);
    Series out(first.n_channels(), first.n_timepoints());
    for (const std::size_t idx : members) {
        const Series& s = collection.case_at(idx);
        for (std::size_t c = 0; c < out.n_channels(); ++c) {
            for (std::size_t t = 0; t < out.n_timepoints(); ++t) {
                out.at(c, t) += s.at(c, t);
            }
        }
    }
    const double scale = 1.0 / static_cast<double>(members.size());
    for (std::size_t c = 0; c < out.n_channels(); ++c) {
        for (std::size_t t = 0; t < out.n_timepoints(); ++t) out.at(c, t) *= scale;
    }
    return out;
}

Collection subset(const Collection& collection, const std::vector<std::size_t>& members) {
    std::vector<Series> cases;
    cases.reserve(members.size());
    for (const std::size_t idx : members) cases.push_back(collection.case_at(idx));
    return Collection(Layout::Ragged, std::move(cases));
}

/// Reseeds the centres of empty clusters with the cases farthest from their
/// assigned centres, re-assigning until every cluster is populated.
Assignment repair_empty_clusters(const Collection& collection, std::vector<Series>& centers,
                                 const DistanceSpec& spec, Assignment assignment) {
    for (std::size_t round = 0; round < centers.size(); ++round) {
        std::vector<std::size_t> counts(centers.size(), 0);
        for (const std::size_t label : assignment.labels) ++counts[label];

        std::vector<std::size_t> empty;
        for (std::size_t c = 0; c < centers.size(); ++c) {
            if (counts[c] == 0) empty.push_back(c);
        }
        if (empty.empty()) return assignment;

        std::vector<bool> taken(collection.n_cases(), false);
        for (const std::size_t c : empty) {
            std::size_t farthest = 0;
            double farthest_d = -1.0;
            for (std::size_t i = 0; i < collection.n_cases(); ++i) {
                if (!taken[i] && assignment.case_distance[i] > farthest_d) {
                    farthest_d = assignment.case_distance[i];
                    farthest = i;
                }
            }
            taken[farthest] = true;
            centers[c] = collection.case_at(farthest);
        }
        assignment = assign_detail(collection, centers, spec);
    }
    return assignment;
}

}  // namespace

std::pair<std::vector<std::size_t>, double> assign(const Collection& collection,
                                                   const std::vector<Series>& centers,
                                                   const distances::DistanceSpec& spec) {
    Assignment a = assign_detail(collection, centers, spec);
    return {std::move(a.labels), a.inertia};
}

Series dba(const Collection& members, const Series& init_center,
           const distances::DistanceSpec& spec, std::size_t iterations) {
    if (!distances::is_dtw_family(spec.kind)) {
        throw InvalidSpec("barycentre averaging requires a DTW-family distance");
    }
    if (members.n_cases() == 0) {
        throw InvalidParameter("barycentre averaging requires at least one member");
    }

    Series center = init_center;
    const auto objective = [&](const Series& c) {
        double sum = 0.0;
        for (const auto& m : members.cases()) sum += distances::distance(m, c, spec);
        return sum;
    };

    double prev = objective(center);
    for (std::size_t it = 0; it < iterations; ++it) {
        Series sums(center.n_channels(), center.n_timepoints());
        std::vector<std::size_t> counts(center.n_timepoints(), 0);
        for (const auto& member : members.cases()) {
            const auto [path, d] = distances::alignment_path(member, center, spec);
            (void)d;
            for (const auto& [mi, ci] : path.pairs) {
                const std::size_t m_idx = to_original_index(mi, spec);
                const std::size_t c_idx = to_original_index(ci, spec);
                for (std::size_t ch = 0; ch < center.n_channels(); ++ch) {
                    sums.at(ch, c_idx) += member.at(ch, m_idx);
                }
                ++counts[c_idx];
            }
        }
        for (std::size_t t = 0; t < center.n_timepoints(); ++t) {
            if (counts[t] == 0) continue;
            for (std::size_t ch = 0; ch < center.n_channels(); ++ch) {
                center.at(ch, t) = sums.at(ch, t) / static_cast<double>(counts[t]);
            }
        }
        const double current = objective(center);
        if (prev - current < 1e-9) break;
        prev = current;
    }
    return center;
}

ClusterResult kmeans_fit(const Collection& collection, const KMeansConfig& config) {
    if (config.k == 0 || config.k > collection.n_cases()) {
        throw InvalidParameter("k must lie in [1, n_cases]");
    }
    if (config.averaging == Averaging::DBA && !distances::is_dtw_family(config.spec.kind)) {
        throw InvalidSpec("DBA averaging requires a DTW-family distance");
    }

    const TagSet tags{.multivariate = true,
                      .unequal_length = distances::is_elastic(config.spec.kind) &&
                                        config.averaging == Averaging::DBA,
                      .missing_values = false};
    EstimatorState state;
    fit_guard(state, tags, collection);

    std::vector<Series> centers;
    if (config.init == InitMethod::Provided) {
        if (config.initial_centers.size() != config.k) {
            throw InvalidParameter("provided centres must match k");
        }
        centers = config.initial_centers;
    } else {
        for (const std::size_t idx : sample_distinct(collection.n_cases(), config.k, config.seed)) {
            centers.push_back(collection.case_at(idx));
        }
    }

    Assignment assignment =
        repair_empty_clusters(collection, centers, config.spec,
                              assign_detail(collection, centers, config.spec));
    double prev_inertia = assignment.inertia;

    ClusterResult result;
    result.converged = false;
    result.n_iter = 0;
    for (std::size_t it = 1; it <= config.max_iter; ++it) {
        std::vector<std::vector<std::size_t>> members(config.k);
        for (std::size_t i = 0; i < assignment.labels.size(); ++i) {
            members[assignment.labels[i]].push_back(i);
        }
        for (std::size_t c = 0; c < config.k; ++c) {
            if (members[c].empty()) continue;
            if (config.averaging == Averaging::Arithmetic) {
                centers[c] = arithmetic_mean(collection, members[c]);
            } else {
                centers[c] = dba(subset(collection, members[c]), centers[c], config.spec,
                                 config.dba_iter);
            }
        }
        assignment = repair_empty_clusters(collection, centers, config.spec,
                                           assign_detail(collection, centers, config.spec));
        result.n_iter = it;
        if (prev_inertia - assignment.inertia < config.tol) {
            result.converged = true;
            break;
        }
        prev_inertia = assignment.inertia;
    }

    result.labels = std::move(assignment.labels);
    result.centers = std::move(centers);
    result.inertia = assignment.inertia;
    return result;
}

ClusterResult kmedoids_fit(const Collection& collection, std::size_t k,
                           const distances::DistanceSpec& spec, std::size_t max_iter,
                           std::uint64_t seed) {
    const std::size_t n = collection.n_cases();
    if (k == 0 || k > n) {
        throw InvalidParameter("k must lie in [1, n_cases]");
    }
    const Matrix dist = distances::pairwise(collection, spec);

    std::vector<std::size_t> medoids = sample_distinct(n, k, seed);
    std::vector<std::size_t> labels(n, 0);

    const auto assign_to_medoids = [&](std::vector<std::size_t>& out) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double d = dist(i, medoids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            out[i] = best;
        }
    };

    assign_to_medoids(labels);
    ClusterResult result;
    result.converged = false;
    for (std::size_t it = 1; it <= max_iter; ++it) {
        result.n_iter = it;
        // Medoid update: the member minimizing the within-cluster sum.
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t best_medoid = medoids[c];
            double best_sum = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                if (labels[i] != c) continue;
                double sum = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    if (labels[j] == c) sum += dist(i, j);
                }
                if (sum < best_sum) {
                    best_sum = sum;
                    best_medoid = i;
                }
            }
            medoids[c] = best_medoid;
        }
        std::vector<std::size_t> next(n, 0);
        assign_to_medoids(next);
        if (next == labels) {
            result.converged = true;
            labels = std::move(next);
            break;
        }
        labels = std::move(next);
    }

    result.inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        result.inertia += dist(i, medoids[labels[i]]);
    }
    result.labels = std::move(labels);
    for (const std::size_t m : medoids) result.centers.push_back(collection.case_at(m));
    return result;
}

TagSet KMeansEstimator::tags() const {
    return {.multivariate = true,
            .unequal_length = distances::is_elastic(config_.spec.kind) &&
                              config_.averaging == Averaging::DBA,
            .missing_values = false};
}

void KMeansEstimator::fit(const Collection& train, const LabelVector& labels) {
    (void)labels;
    fit_guard(state_, tags(), train);
    result_ = kmeans_fit(train, config_);
}

LabelVector KMeansEstimator::predict(const Collection& test) const {
    predict_guard(state_, summarize(test),
                  tags().unequal_length ? LengthPolicy::Free : LengthPolicy::ExactMatch);
    const auto [labels, inertia] = assign(test, result_.centers, config_.spec);
    (void)inertia;
    std::vector<std::string> alphabet;
    for (std::size_t c = 0; c < config_.k; ++c) alphabet.push_back(std::to_string(c));
    std::vector<std::string> out;
    out.reserve(labels.size());
    for (const std::size_t label : labels) out.push_back(std::to_string(label));
    return LabelVector::classes(std::move(out), std::move(alphabet));
}

const ClusterResult& KMeansEstimator::result() const {
    if (!state_.fitted()) {
        throw NotFittedError("k-means estimator is not fitted");
    }
    return result_;
}

}  // namespace tsml::cluster
