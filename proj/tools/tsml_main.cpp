#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tsml/cluster.hpp"
#include "tsml/core.hpp"
#include "tsml/distances.hpp"
#include "tsml/forecast.hpp"
#include "tsml/pipeline.hpp"
#include "tsml/supervised.hpp"
#include "tsml/ts_io.hpp"

namespace {

using nlohmann::ordered_json;

/// Stopwatch over the compute section of a command.
class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}

    [[nodiscard]] double elapsed_ms() const {
        const auto end = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(end - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw tsml::InvalidParameter("cannot open file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

/// Plain-series file: one decimal real per line, optional trailing newline.
std::vector<double> read_plain_series(const std::string& path) {
    const std::string text = read_file(path);
    std::vector<double> values;
    std::size_t line_no = 0;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string token;
        std::istringstream(line) >> token;
        if (token.empty()) continue;
        try {
            std::size_t consumed = 0;
            const double v = std::stod(token, &consumed);
            if (consumed != token.size() || !std::isfinite(v)) {
                throw std::invalid_argument(token);
            }
            values.push_back(v);
        } catch (const std::exception&) {
            throw tsml::ParseError("'" + token + "' is not a real", line_no);
        }
    }
    if (values.empty()) {
        throw tsml::ParseError("series file contains no values", 1);
    }
    return values;
}

tsml::distances::DistanceSpec spec_from_flags(const std::string& metric,
                                              const std::optional<double>& window, double g,
                                              double epsilon, double c, double nu, double lambda,
                                              double erp_g) {
    const auto kind = tsml::distances::kind_from_name(metric);
    if (!kind) {
        throw tsml::InvalidParameter("unknown metric '" + metric + "'");
    }
    tsml::distances::DistanceSpec spec;
    spec.kind = *kind;
    spec.window = window;
    spec.g = g;
    spec.epsilon = epsilon;
    spec.c = c;
    spec.nu = nu;
    spec.lambda = lambda;
    spec.erp_g = erp_g;
    return spec;
}

void emit(const ordered_json& result, const std::optional<std::string>& out_path) {
    const std::string line = result.dump() + "\n";
    std::cout << line;
    if (out_path) {
        std::ofstream out(*out_path, std::ios::binary);
        if (!out) {
            throw tsml::InvalidParameter("cannot open output file '" + *out_path + "'");
        }
        out << line;
    }
}

ordered_json run_result(const std::string& command, const std::string& estimator,
                        ordered_json params, ordered_json metrics, std::size_t n_train,
                        std::size_t n_test, std::uint64_t seed, double runtime_ms) {
    ordered_json doc;
    doc["command"] = command;
    doc["estimator"] = estimator;
    doc["params"] = std::move(params);
    doc["metrics"] = std::move(metrics);
    doc["n_train"] = n_train;
    doc["n_test"] = n_test;
    doc["seed"] = seed;
    doc["runtime_ms"] = runtime_ms;
    return doc;
}

/// Best label agreement over injective cluster-to-class assignments.
double permutation_agreement(const std::vector<std::size_t>& clusters,
                             const std::vector<std::size_t>& classes, std::size_t k,
                             std::size_t n_classes) {
    std::vector<std::vector<std::size_t>> counts(k, std::vector<std::size_t>(n_classes, 0));
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        ++counts[clusters[i]][classes[i]];
    }
    std::vector<bool> used(n_classes, false);
    std::size_t best = 0;
    const auto dfs = [&](auto&& self, std::size_t cluster, std::size_t matched) -> void {
        if (cluster == k) {
            best = std::max(best, matched);
            return;
        }
        self(self, cluster + 1, matched);  // leave this cluster unmapped
        for (std::size_t cls = 0; cls < n_classes; ++cls) {
            if (used[cls]) continue;
            used[cls] = true;
            self(self, cluster + 1, matched + counts[cluster][cls]);
            used[cls] = false;
        }
    };
    dfs(dfs, 0, 0);
    return static_cast<double>(best) / static_cast<double>(clusters.size());
}

struct ClassifyArgs {
    std::string train_path;
    std::string test_path;
    std::string estimator;
    std::size_t kernels = 500;
    std::size_t k = 1;
    std::string metric = "dtw";
    std::optional<double> window;
    bool pad = false;
    std::uint64_t seed = 0;
    std::optional<std::string> out;
};

int cmd_classify(const ClassifyArgs& args) {
    const tsml::TsDataset train = tsml::parse_ts(read_file(args.train_path));
    const tsml::TsDataset test = tsml::parse_ts(read_file(args.test_path));
    if (train.labels.kind() != tsml::LabelKind::Class ||
        test.labels.kind() != tsml::LabelKind::Class) {
        throw tsml::InvalidParameter("classify requires class-labelled datasets");
    }
    if (train.labels.alphabet() != test.labels.alphabet()) {
        throw tsml::InvalidParameter("train and test class alphabets differ");
    }

    ordered_json params;
    std::unique_ptr<tsml::Estimator> terminal;
    if (args.estimator == "rocket") {
        terminal = std::make_unique<tsml::supervised::RocketEstimator>(
            tsml::supervised::RocketConfig{args.kernels, args.seed});
        params["kernels"] = args.kernels;
    } else if (args.estimator == "knn") {
        tsml::supervised::KnnConfig config;
        config.k = args.k;
        config.spec = spec_from_flags(args.metric, args.window, 0.05, 1.0, 1.0, 0.001, 1.0, 0.0);
        terminal = std::make_unique<tsml::supervised::KnnEstimator>(config);
        params["k"] = args.k;
        params["metric"] = args.metric;
        if (args.window) params["window"] = *args.window;
    } else {
        throw tsml::InvalidParameter("unknown estimator '" + args.estimator + "'");
    }
    params["pad"] = args.pad;

    std::unique_ptr<tsml::Estimator> model;
    if (args.pad) {
        std::vector<std::unique_ptr<tsml::pipeline::Step>> steps;
        steps.push_back(std::make_unique<tsml::pipeline::PadStep>(tsml::transforms::PadPolicy{}));
        model = std::make_unique<tsml::pipeline::Pipeline>(std::move(steps), std::move(terminal));
    } else {
        model = std::move(terminal);
    }

    const Stopwatch timer;
    model->fit(train.collection, train.labels);
    const tsml::LabelVector predicted = model->predict(test.collection);
    const double acc = tsml::supervised::accuracy(predicted, test.labels);
    const double runtime = timer.elapsed_ms();

    ordered_json metrics;
    metrics["accuracy"] = acc;
    emit(run_result("classify", args.estimator, std::move(params), std::move(metrics),
                    train.collection.n_cases(), test.collection.n_cases(), args.seed, runtime),
         args.out);
    return 0;
}

struct ClusterArgs {
    std::string data_path;
    std::size_t k = 1;
    std::string metric = "dtw";
    std::optional<double> window;
    std::string averaging = "mean";
    std::uint64_t seed = 0;
    std::optional<std::string> out;
};

int cmd_cluster(const ClusterArgs& args) {
    const tsml::TsDataset data = tsml::parse_ts(read_file(args.data_path));

    tsml::cluster::KMeansConfig config;
    config.k = args.k;
    config.spec = spec_from_flags(args.metric, args.window, 0.05, 1.0, 1.0, 0.001, 1.0, 0.0);
    config.seed = args.seed;
    if (args.averaging == "mean") {
        config.averaging = tsml::cluster::Averaging::Arithmetic;
    } else if (args.averaging == "dba") {
        config.averaging = tsml::cluster::Averaging::DBA;
    } else {
        throw tsml::InvalidParameter("unknown averaging '" + args.averaging + "'");
    }

    const Stopwatch timer;
    const tsml::cluster::ClusterResult result = tsml::cluster::kmeans_fit(data.collection, config);
    const double runtime = timer.elapsed_ms();

    ordered_json params;
    params["k"] = args.k;
    params["metric"] = args.metric;
    if (args.window) params["window"] = *args.window;
    params["averaging"] = args.averaging;

    ordered_json metrics;
    metrics["inertia"] = result.inertia;
    metrics["n_iter"] = static_cast<double>(result.n_iter);
    metrics["converged"] = result.converged ? 1.0 : 0.0;
    if (data.labels.kind() == tsml::LabelKind::Class) {
        const std::size_t n_classes = data.labels.alphabet().size();
        if (std::max(args.k, n_classes) <= 8) {
            metrics["label_agreement"] = permutation_agreement(
                result.labels, data.labels.class_indices(), args.k, n_classes);
        }
    }
    emit(run_result("cluster", "kmeans", std::move(params), std::move(metrics),
                    data.collection.n_cases(), 0, args.seed, runtime),
         args.out);
    return 0;
}

struct ForecastArgs {
    std::string series_path;
    std::string method = "naive";
    std::string strategy = "last";
    std::size_t sp = 1;
    std::size_t degree = 1;
    std::size_t window = 3;
    std::string fh;
    std::size_t holdout = 0;
    std::uint64_t seed = 0;
    std::optional<std::string> out;
};

std::vector<std::size_t> parse_fh(const std::string& text) {
    std::vector<std::size_t> offsets;
    std::istringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        try {
            std::size_t consumed = 0;
            const long long v = std::stoll(token, &consumed);
            if (consumed != token.size() || v < 1) throw std::invalid_argument(token);
            offsets.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw tsml::InvalidParameter("bad forecast horizon entry '" + token + "'");
        }
    }
    return offsets;
}

int cmd_forecast(const ForecastArgs& args) {
    const std::vector<double> full = read_plain_series(args.series_path);
    const tsml::forecast::ForecastHorizon fh(parse_fh(args.fh));

    if (args.holdout >= full.size()) {
        throw tsml::InvalidParameter("holdout must leave at least one training point");
    }
    if (args.holdout > 0 && fh.max_offset() > args.holdout) {
        throw tsml::InvalidParameter("forecast offsets exceed the holdout length");
    }
    const std::size_t n_train = full.size() - args.holdout;
    const tsml::Series train(std::vector<double>(full.begin(),
                                                 full.begin() + static_cast<std::ptrdiff_t>(n_train)));

    ordered_json params;
    params["method"] = args.method;

    const Stopwatch timer;
    std::vector<double> forecasts;
    if (args.method == "naive") {
        tsml::forecast::NaiveStrategy strategy;
        if (args.strategy == "last") {
            strategy = tsml::forecast::NaiveStrategy::Last;
        } else if (args.strategy == "mean") {
            strategy = tsml::forecast::NaiveStrategy::Mean;
        } else if (args.strategy == "seasonal") {
            strategy = tsml::forecast::NaiveStrategy::SeasonalLast;
        } else {
            throw tsml::InvalidParameter("unknown strategy '" + args.strategy + "'");
        }
        params["strategy"] = args.strategy;
        if (args.strategy == "seasonal") params["sp"] = args.sp;
        forecasts = tsml::forecast::naive_forecast(train, fh, strategy, args.sp);
    } else if (args.method == "trend") {
        params["degree"] = args.degree;
        forecasts = tsml::forecast::trend_predict(tsml::forecast::trend_fit(train, args.degree), fh);
    } else if (args.method == "reduce") {
        params["window"] = args.window;
        forecasts = tsml::forecast::reduce_predict(
            tsml::forecast::reduce_fit(train, args.window, tsml::supervised::default_lambda_grid()),
            fh);
    } else {
        throw tsml::InvalidParameter("unknown method '" + args.method + "'");
    }
    const double runtime = timer.elapsed_ms();
    params["fh"] = args.fh;
    if (args.holdout > 0) params["holdout"] = args.holdout;

    ordered_json metrics;
    for (std::size_t i = 0; i < fh.offsets().size(); ++i) {
        metrics["forecast_" + std::to_string(fh.offsets()[i])] = forecasts[i];
    }
    if (args.holdout > 0) {
        std::vector<double> actual;
        for (const std::size_t h : fh.offsets()) {
            actual.push_back(full[n_train - 1 + h]);
        }
        const auto scores = tsml::forecast::forecast_metrics(actual, forecasts, train);
        metrics["mae"] = scores.mae;
        metrics["rmse"] = scores.rmse;
        metrics["smape"] = scores.smape;
        metrics["mase"] = scores.mase;
    }
    emit(run_result("forecast", args.method, std::move(params), std::move(metrics), n_train,
                    args.holdout, args.seed, runtime),
         args.out);
    return 0;
}

struct DistArgs {
    std::string a_path;
    std::string b_path;
    std::string metric = "dtw";
    std::optional<double> window;
    double g = 0.05;
    double epsilon = 1.0;
    double c = 1.0;
    double nu = 0.001;
    double lambda = 1.0;
    double erp_g = 0.0;
    std::uint64_t seed = 0;
    std::optional<std::string> out;
};

/// A single-case `.ts` document (sniffed by its header) or a plain series.
tsml::Series read_series_file(const std::string& path) {
    const std::string text = read_file(path);
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '@' || text[first] == '#')) {
        const tsml::TsDataset data = tsml::parse_ts(text);
        if (data.collection.n_cases() != 1) {
            throw tsml::InvalidParameter("'" + path + "' must contain exactly one case");
        }
        return data.collection.case_at(0);
    }
    std::vector<double> values;
    std::size_t line_no = 0;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string token;
        std::istringstream(line) >> token;
        if (token.empty()) continue;
        std::size_t consumed = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &consumed);
        } catch (const std::exception&) {
            throw tsml::ParseError("'" + token + "' is not a real", line_no);
        }
        if (consumed != token.size() || !std::isfinite(v)) {
            throw tsml::ParseError("'" + token + "' is not a real", line_no);
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw tsml::ParseError("series file contains no values", 1);
    }
    return tsml::Series(std::move(values));
}

int cmd_dist(const DistArgs& args) {
    const tsml::Series a = read_series_file(args.a_path);
    const tsml::Series b = read_series_file(args.b_path);
    const auto spec = spec_from_flags(args.metric, args.window, args.g, args.epsilon, args.c,
                                      args.nu, args.lambda, args.erp_g);

    const Stopwatch timer;
    const double d = tsml::distances::distance(a, b, spec);
    const double runtime = timer.elapsed_ms();

    ordered_json params;
    params["metric"] = args.metric;
    if (args.window) params["window"] = *args.window;
    params["g"] = args.g;
    params["epsilon"] = args.epsilon;
    params["c"] = args.c;
    params["nu"] = args.nu;
    params["lambda"] = args.lambda;
    params["erp_g"] = args.erp_g;

    ordered_json metrics;
    metrics["distance"] = d;
    emit(run_result("dist", args.metric, std::move(params), std::move(metrics), 1, 1, args.seed,
                    runtime),
         args.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time series benchmarking front end"};
    app.require_subcommand(1);

    ClassifyArgs classify_args;
    auto* classify = app.add_subcommand("classify", "fit on a train set, report test accuracy");
    classify->add_option("--train", classify_args.train_path, "training .ts file")->required();
    classify->add_option("--test", classify_args.test_path, "test .ts file")->required();
    classify->add_option("--estimator", classify_args.estimator, "rocket|knn")->required();
    classify->add_option("--kernels", classify_args.kernels, "number of random kernels");
    classify->add_option("--k", classify_args.k, "number of neighbours");
    classify->add_option("--metric", classify_args.metric, "distance kind for knn");
    classify->add_option("--window", classify_args.window, "band fraction");
    classify->add_flag("--pad", classify_args.pad, "pad ragged input to the training maximum");
    classify->add_option("--seed", classify_args.seed, "random seed");
    classify->add_option("--out", classify_args.out, "also write the result line to this file");

    ClusterArgs cluster_args;
    auto* cluster = app.add_subcommand("cluster", "k-means over a .ts dataset");
    cluster->add_option("--data", cluster_args.data_path, "input .ts file")->required();
    cluster->add_option("--k", cluster_args.k, "number of clusters")->required();
    cluster->add_option("--metric", cluster_args.metric, "distance kind");
    cluster->add_option("--window", cluster_args.window, "band fraction");
    cluster->add_option("--averaging", cluster_args.averaging, "mean|dba")->required();
    cluster->add_option("--seed", cluster_args.seed, "random seed");
    cluster->add_option("--out", cluster_args.out, "also write the result line to this file");

    ForecastArgs forecast_args;
    auto* forecast = app.add_subcommand("forecast", "forecast a plain series file");
    forecast->add_option("--series", forecast_args.series_path, "series file, one value per line")
        ->required();
    forecast->add_option("--method", forecast_args.method, "naive|trend|reduce")->required();
    forecast->add_option("--strategy", forecast_args.strategy, "last|mean|seasonal");
    forecast->add_option("--sp", forecast_args.sp, "seasonal period");
    forecast->add_option("--degree", forecast_args.degree, "trend polynomial degree");
    forecast->add_option("--window", forecast_args.window, "reduction window");
    forecast->add_option("--fh", forecast_args.fh, "comma-separated offsets")->required();
    forecast->add_option("--holdout", forecast_args.holdout, "score against the last H points");
    forecast->add_option("--seed", forecast_args.seed, "random seed");
    forecast->add_option("--out", forecast_args.out, "also write the result line to this file");

    DistArgs dist_args;
    auto* dist = app.add_subcommand("dist", "distance between two series files");
    dist->add_option("--a", dist_args.a_path, "first series (.ts or plain)")->required();
    dist->add_option("--b", dist_args.b_path, "second series (.ts or plain)")->required();
    dist->add_option("--metric", dist_args.metric, "distance kind")->required();
    dist->add_option("--window", dist_args.window, "band fraction");
    dist->add_option("--g", dist_args.g, "WDTW steepness");
    dist->add_option("--epsilon", dist_args.epsilon, "EDR/LCSS threshold");
    dist->add_option("--c", dist_args.c, "MSM cost");
    dist->add_option("--nu", dist_args.nu, "TWE stiffness");
    dist->add_option("--lambda", dist_args.lambda, "TWE penalty");
    dist->add_option("--erp-g", dist_args.erp_g, "ERP gap value");
    dist->add_option("--seed", dist_args.seed, "random seed");
    dist->add_option("--out", dist_args.out, "also write the result line to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (classify->parsed()) return cmd_classify(classify_args);
        if (cluster->parsed()) return cmd_cluster(cluster_args);
        if (forecast->parsed()) return cmd_forecast(forecast_args);
        if (dist->parsed()) return cmd_dist(dist_args);
        std::cerr << "argument error: no subcommand given\n";
        return 2;
    } catch (const tsml::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 4;
    } catch (const tsml::CapabilityError& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return 3;
    } catch (const tsml::Error& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    }
}
