#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "tsml/cluster.hpp"

using namespace tsml;
using namespace tsml::cluster;
using helpers::series;

namespace {

distances::DistanceSpec spec_of(distances::DistanceKind kind) {
    distances::DistanceSpec spec;
    spec.kind = kind;
    return spec;
}

double recompute_inertia(const Collection& collection, const ClusterResult& result,
                         const distances::DistanceSpec& spec) {
    double sum = 0.0;
    for (std::size_t i = 0; i < collection.n_cases(); ++i) {
        sum += distances::distance(collection.case_at(i), result.centers[result.labels[i]], spec);
    }
    return sum;
}

}  // namespace

TEST_CASE("assign") {
    const auto dtw = spec_of(distances::DistanceKind::DTW);
    SUBCASE("cases assigned to themselves") {
        const Collection c = Collection::dense({series({0, 0}), series({9, 9})});
        const auto [labels, inertia] = assign(c, {c.case_at(0), c.case_at(1)}, dtw);
        CHECK(labels == std::vector<std::size_t>{0, 1});
        CHECK(inertia == 0.0);
    }
    SUBCASE("single centre") {
        const Collection c = Collection::dense({series({1, 1}), series({2, 2}), series({3, 3})});
        const auto [labels, inertia] = assign(c, {series({0, 0})}, dtw);
        CHECK(labels == std::vector<std::size_t>{0, 0, 0});
    }
    SUBCASE("equidistant ties go to the first centre") {
        const Collection c = Collection::dense({series({0, 0})});
        const auto [labels, inertia] = assign(c, {series({1, 1}), series({-1, -1})}, dtw);
        CHECK(labels[0] == 0);
    }
    SUBCASE("no centres") {
        CHECK_THROWS_AS(assign(Collection::dense({series({1})}), {}, dtw), InvalidParameter);
    }
}

TEST_CASE("dba") {
    const auto dtw = spec_of(distances::DistanceKind::DTW);
    SUBCASE("copies of one series are a fixed point") {
        const Series s = series({1, 3, 2, 5});
        const Collection members = Collection::dense({s, s, s});
        const Series center = dba(members, s, dtw, 5);
        CHECK(center == s);
    }
    SUBCASE("a single member pulls the centre onto itself") {
        const Series m = series({2, 4, 1, 7});
        const Series init = series({0, 0, 0, 0});
        const Series center = dba(Collection::dense({m}), init, dtw, 10);
        REQUIRE(center.n_timepoints() == 4);
        for (std::size_t t = 0; t < 4; ++t) {
            CHECK(center.at(0, t) == doctest::Approx(m.at(0, t)).epsilon(1e-9));
        }
    }
    SUBCASE("objective is non-increasing in the iteration count") {
        std::mt19937_64 rng(19);
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<Series> members;
            for (int i = 0; i < 4; ++i) members.push_back(helpers::random_series(rng, 8));
            const Collection collection = Collection::dense(members);
            const Series init = members[0];
            double prev = std::numeric_limits<double>::infinity();
            for (std::size_t iters = 1; iters <= 5; ++iters) {
                const Series center = dba(collection, init, dtw, iters);
                double obj = 0.0;
                for (const auto& m : members) obj += distances::distance(m, center, dtw);
                CHECK(obj <= prev + 1e-9);
                prev = obj;
            }
        }
    }
    SUBCASE("requires a warping kind") {
        CHECK_THROWS_AS(dba(Collection::dense({series({1, 2})}), series({1, 2}),
                            spec_of(distances::DistanceKind::MSM), 3),
                        InvalidSpec);
        CHECK_THROWS_AS(dba(Collection{}, series({1, 2}), dtw, 3), InvalidParameter);
    }
}

TEST_CASE("kmeans") {
    SUBCASE("k=1 arithmetic centre is the pointwise mean") {
        const Collection c =
            Collection::dense({series({0, 2, 4}), series({2, 4, 6}), series({4, 6, 8})});
        KMeansConfig config;
        config.k = 1;
        config.spec = spec_of(distances::DistanceKind::Euclidean);
        config.averaging = Averaging::Arithmetic;
        const ClusterResult result = kmeans_fit(c, config);
        CHECK(result.converged);
        CHECK(result.n_iter <= 2);
        REQUIRE(result.centers.size() == 1);
        CHECK(result.centers[0] == series({2, 4, 6}));
        CHECK(result.inertia ==
              doctest::Approx(recompute_inertia(c, result, config.spec)).epsilon(1e-9));
    }
    SUBCASE("zero-noise blobs split perfectly under dtw with barycentres") {
        const auto [c, labels] = make_blobs(10, 1, 12, {0.0, 10.0}, 0.0, 0);
        for (const std::uint64_t seed : {0, 1, 2, 3}) {
            KMeansConfig config;
            config.k = 2;
            config.spec = spec_of(distances::DistanceKind::DTW);
            config.averaging = Averaging::DBA;
            config.seed = seed;
            const ClusterResult result = kmeans_fit(c, config);
            CHECK(result.inertia == 0.0);
            for (std::size_t i = 1; i < 10; ++i) {
                CHECK(result.labels[i] == result.labels[0]);
                CHECK(result.labels[10 + i] == result.labels[10]);
            }
            CHECK(result.labels[0] != result.labels[10]);
        }
    }
    SUBCASE("deterministic per seed") {
        std::mt19937_64 rng(21);
        std::vector<Series> cases;
        for (int i = 0; i < 12; ++i) cases.push_back(helpers::random_series(rng, 10));
        const Collection c = Collection::dense(cases);
        KMeansConfig config;
        config.k = 3;
        config.spec = spec_of(distances::DistanceKind::DTW);
        config.averaging = Averaging::DBA;
        config.seed = 5;
        const ClusterResult a = kmeans_fit(c, config);
        const ClusterResult b = kmeans_fit(c, config);
        CHECK(a.labels == b.labels);
        CHECK(a.inertia == b.inertia);
        CHECK(a.centers == b.centers);
        CHECK(a.n_iter == b.n_iter);
    }
    SUBCASE("provided centres") {
        const Collection c = Collection::dense({series({0, 0}), series({10, 10})});
        KMeansConfig config;
        config.k = 2;
        config.spec = spec_of(distances::DistanceKind::DTW);
        config.averaging = Averaging::DBA;
        config.init = InitMethod::Provided;
        config.initial_centers = {series({1, 1}), series({9, 9})};
        const ClusterResult result = kmeans_fit(c, config);
        CHECK(result.labels == std::vector<std::size_t>{0, 1});
    }
    SUBCASE("parameter and capability validation") {
        const Collection c = Collection::dense({series({1, 2})});
        KMeansConfig config;
        config.k = 2;
        CHECK_THROWS_AS(kmeans_fit(c, config), InvalidParameter);

        KMeansConfig bad_spec;
        bad_spec.k = 1;
        bad_spec.averaging = Averaging::DBA;
        bad_spec.spec = spec_of(distances::DistanceKind::MSM);
        CHECK_THROWS_AS(kmeans_fit(c, bad_spec), InvalidSpec);

        const Collection ragged = Collection::ragged({series({1, 2}), series({1, 2, 3})});
        KMeansConfig arithmetic;
        arithmetic.k = 1;
        arithmetic.spec = spec_of(distances::DistanceKind::DTW);
        arithmetic.averaging = Averaging::Arithmetic;
        CHECK_THROWS_AS(kmeans_fit(ragged, arithmetic), CapabilityError);
    }
}

TEST_CASE("kmedoids") {
    const auto dtw = spec_of(distances::DistanceKind::DTW);

    SUBCASE("k equal to the case count") {
        const Collection c = Collection::dense({series({1, 1}), series({5, 5}), series({9, 9})});
        const ClusterResult result = kmedoids_fit(c, 3, dtw, 10, 0);
        CHECK(result.inertia == 0.0);
        std::vector<std::size_t> sorted = result.labels;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == std::vector<std::size_t>{0, 1, 2});
    }
    SUBCASE("two separated blobs get one medoid each") {
        const auto [c, labels] = make_blobs(3, 1, 8, {0.0, 20.0}, 0.1, 4);
        for (const std::uint64_t seed : {0, 1, 2}) {
            const ClusterResult result = kmedoids_fit(c, 2, dtw, 20, seed);
            for (std::size_t i = 1; i < 3; ++i) {
                CHECK(result.labels[i] == result.labels[0]);
                CHECK(result.labels[3 + i] == result.labels[3]);
            }
            CHECK(result.labels[0] != result.labels[3]);

            // Final medoids are brute-force optimal for their clusters.
            const Matrix dist = distances::pairwise(c, dtw);
            for (std::size_t cluster = 0; cluster < 2; ++cluster) {
                double best = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < c.n_cases(); ++i) {
                    if (result.labels[i] != cluster) continue;
                    double sum = 0.0;
                    for (std::size_t j = 0; j < c.n_cases(); ++j) {
                        if (result.labels[j] == cluster) sum += dist(i, j);
                    }
                    best = std::min(best, sum);
                }
                double medoid_sum = 0.0;
                for (std::size_t j = 0; j < c.n_cases(); ++j) {
                    if (result.labels[j] == cluster) {
                        medoid_sum +=
                            distances::distance(c.case_at(j), result.centers[cluster], dtw);
                    }
                }
                CHECK(medoid_sum == doctest::Approx(best).epsilon(1e-12));
            }
        }
    }
    SUBCASE("inertia is non-increasing in the iteration budget") {
        std::mt19937_64 rng(22);
        std::vector<Series> cases;
        for (int i = 0; i < 10; ++i) cases.push_back(helpers::random_series(rng, 7));
        const Collection c = Collection::dense(cases);
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t budget = 1; budget <= 6; ++budget) {
            const ClusterResult result = kmedoids_fit(c, 3, dtw, budget, 1);
            CHECK(result.inertia <= prev + 1e-12);
            prev = result.inertia;
        }
    }
    SUBCASE("deterministic per seed and validated k") {
        const Collection c = Collection::dense({series({1, 2}), series({3, 4})});
        CHECK_THROWS_AS(kmedoids_fit(c, 3, dtw, 5, 0), InvalidParameter);
        const ClusterResult a = kmedoids_fit(c, 1, dtw, 5, 9);
        const ClusterResult b = kmedoids_fit(c, 1, dtw, 5, 9);
        CHECK(a.labels == b.labels);
        CHECK(a.inertia == b.inertia);
    }
}

TEST_CASE("kmeans estimator adapter") {
    const auto [train, labels] = make_blobs(5, 1, 10, {0.0, 10.0}, 0.0, 0);
    KMeansConfig config;
    config.k = 2;
    config.spec = spec_of(distances::DistanceKind::DTW);
    config.averaging = Averaging::DBA;
    KMeansEstimator model(config);
    CHECK_THROWS_AS(model.result(), NotFittedError);
    model.fit(train, LabelVector::none());
    const LabelVector out = model.predict(train);
    REQUIRE(out.kind() == LabelKind::Class);
    for (std::size_t i = 1; i < 5; ++i) CHECK(out.class_labels()[i] == out.class_labels()[0]);
    CHECK(out.class_labels()[5] != out.class_labels()[0]);
}
