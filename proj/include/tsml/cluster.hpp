#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "tsml/core.hpp"
#include "tsml/data.hpp"
#include "tsml/distances.hpp"

namespace tsml::cluster {

enum class Averaging { Arithmetic, DBA };
enum class InitMethod { RandomCases, Provided };

struct KMeansConfig {
    std::size_t k = 1;
    distances::DistanceSpec spec;
    Averaging averaging = Averaging::Arithmetic;
    std::size_t max_iter = 50;
    double tol = 1e-9;
    std::size_t dba_iter = 10;
    InitMethod init = InitMethod::RandomCases;
    std::vector<Series> initial_centers;  ///< read when init == Provided
    std::uint64_t seed = 0;
};

struct ClusterResult {
    std::vector<std::size_t> labels;
    std::vector<Series> centers;
    double inertia = 0.0;
    std::size_t n_iter = 0;
    bool converged = false;
};

/// Assigns every case to its nearest centre (distance ties toward the lowest
/// centre index) and returns the labels with the summed distance.
std::pair<std::vector<std::size_t>, double> assign(const Collection& collection,
                                                   const std::vector<Series>& centers,
                                                   const distances::DistanceSpec& spec);

/// Barycentre averaging: repeatedly aligns every member against the centre
/// and replaces each centre point by the mean of the member points aligned
/// to it. Stops after `iterations` or when the summed distance to the
/// members improves by less than 1e-9. The output keeps the init centre's
/// length. Requires a DTW-family spec (InvalidSpec otherwise).
Series dba(const Collection& members, const Series& init_center,
           const distances::DistanceSpec& spec, std::size_t iterations);

/// Lloyd-style k-means with elastic distances. Centres start from k distinct
/// random cases (or the provided centres); empty clusters are reseeded with
/// the case farthest from its assigned centre. Deterministic per seed.
ClusterResult kmeans_fit(const Collection& collection, const KMeansConfig& config);

/// Voronoi-iteration k-medoids over the precomputed pairwise matrix. Medoid
/// updates pick the member minimizing the within-cluster distance sum (ties
/// toward the lowest case index); stops when labels stabilize.
ClusterResult kmedoids_fit(const Collection& collection, std::size_t k,
                           const distances::DistanceSpec& spec, std::size_t max_iter,
                           std::uint64_t seed);

/// Estimator adapter over kmeans_fit so clusterers can terminate pipelines.
/// fit ignores the labels; predict assigns to the fitted centres and returns
/// cluster indices as text labels.
class KMeansEstimator : public Estimator {
  public:
    explicit KMeansEstimator(KMeansConfig config) : config_(std::move(config)) {}

    [[nodiscard]] TagSet tags() const override;
    void fit(const Collection& train, const LabelVector& labels) override;
    [[nodiscard]] LabelVector predict(const Collection& test) const override;

    [[nodiscard]] const ClusterResult& result() const;

  private:
    KMeansConfig config_;
    EstimatorState state_;
    ClusterResult result_;
};

}  // namespace tsml::cluster
