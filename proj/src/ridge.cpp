#include "tsml/supervised.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace tsml::supervised {

std::vector<double> default_lambda_grid() {
    std::vector<double> grid;
    grid.reserve(10);
    for (int i = 0; i < 10; ++i) {
        grid.push_back(std::pow(10.0, -3.0 + 6.0 * static_cast<double>(i) / 9.0));
    }
    return grid;
}

RidgeModel ridge_fit(const Matrix& features, const LabelVector& targets,
                     const std::vector<double>& lambda_grid) {
    const std::size_t n = features.rows();
    const std::size_t p = features.cols();
    if (n < 2) {
        throw InvalidParameter("ridge_fit requires at least 2 cases");
    }
    if (p == 0) {
        throw InvalidParameter("ridge_fit requires at least one feature");
    }
    if (targets.kind() == LabelKind::None) {
        throw InvalidParameter("ridge_fit requires Class or Target labels");
    }
    if (targets.size() != n) {
        throw InvalidParameter("target count does not match the number of rows");
    }
    if (lambda_grid.empty()) {
        throw InvalidParameter("the lambda grid must be non-empty");
    }
    const bool classify = targets.kind() == LabelKind::Class;
    for (const double lambda : lambda_grid) {
        if (lambda < 0.0 || (classify && lambda == 0.0)) {
            throw InvalidParameter("lambda values must be > 0 for classification, >= 0 otherwise");
        }
    }

    RidgeModel model;
    model.kind = targets.kind();
    model.feature_means.resize(p);
    model.feature_sds.resize(p);

    // Standardize with the population sd; zero-variance features become
    // all-zero columns.
    Eigen::MatrixXd X(n, p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = features(i, j);
    }
    bool any_variance = false;
    for (std::size_t j = 0; j < p; ++j) {
        const auto col = X.col(static_cast<Eigen::Index>(j));
        const double mean = col.mean();
        const double sd = std::sqrt((col.array() - mean).square().sum() / static_cast<double>(n));
        model.feature_means[j] = mean;
        model.feature_sds[j] = sd;
        if (sd < 1e-12) {
            X.col(static_cast<Eigen::Index>(j)).setZero();
        } else {
            X.col(static_cast<Eigen::Index>(j)) = (col.array() - mean) / sd;
            any_variance = true;
        }
    }
    if (!any_variance) {
        throw DegenerateFeatures("every feature has zero variance");
    }

    // One-vs-rest +-1 targets per class; a single column for regression.
    std::size_t n_outputs = 1;
    std::vector<std::size_t> class_index;
    if (classify) {
        model.alphabet = targets.alphabet();
        n_outputs = model.alphabet.size();
        class_index = targets.class_indices();
    }
    Eigen::MatrixXd Y(n, n_outputs);
    if (classify) {
        Y.setConstant(-1.0);
        for (std::size_t i = 0; i < n; ++i) {
            Y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(class_index[i])) = 1.0;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            Y(static_cast<Eigen::Index>(i), 0) = targets.target_values()[i];
        }
    }
    const Eigen::RowVectorXd y_mean = Y.colwise().mean();
    const Eigen::MatrixXd Yc = Y.rowwise() - y_mean;

    // One SVD serves every lambda: both the leave-one-out residuals
    // e_i = (y_i - yhat_i) / (1 - h_ii) and the final coefficients are exact
    // functions of U, sigma and V.
    const Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const Eigen::MatrixXd& U = svd.matrixU();
    const Eigen::MatrixXd UtYc = U.transpose() * Yc;
    const double rank_tol = static_cast<double>(std::max(n, p)) *
                            std::numeric_limits<double>::epsilon() * sigma.maxCoeff();

    const auto shrinkage = [&](double lambda) {
        Eigen::VectorXd s(sigma.size());
        for (Eigen::Index k = 0; k < sigma.size(); ++k) {
            const double sv = sigma(k);
            if (lambda == 0.0 && sv <= rank_tol) {
                s(k) = 0.0;
            } else {
                s(k) = sv * sv / (sv * sv + lambda);
            }
        }
        return s;
    };

    double best_error = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (std::size_t g = 0; g < lambda_grid.size(); ++g) {
        const Eigen::VectorXd s = shrinkage(lambda_grid[g]);
        const Eigen::MatrixXd fitted = U * (s.asDiagonal() * UtYc);
        double error = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto ei = static_cast<Eigen::Index>(i);
            // Hat diagonal includes the 1/n of the unpenalized intercept.
            const double h = 1.0 / static_cast<double>(n) +
                             (U.row(ei).array().square() * s.transpose().array()).sum();
            const double denom = 1.0 - h;
            if (denom < 1e-12) {
                error = std::numeric_limits<double>::infinity();
                break;
            }
            error += ((Yc.row(ei) - fitted.row(ei)) / denom).array().square().sum();
        }
        if (error < best_error) {
            best_error = error;
            best_index = g;
        }
    }

    const double lambda = lambda_grid[best_index];
    Eigen::VectorXd solve_factor(sigma.size());
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        const double sv = sigma(k);
        if (lambda == 0.0 && sv <= rank_tol) {
            solve_factor(k) = 0.0;
        } else {
            solve_factor(k) = sv / (sv * sv + lambda);
        }
    }
    const Eigen::MatrixXd beta = svd.matrixV() * (solve_factor.asDiagonal() * UtYc);

    model.lambda_selected = lambda;
    model.weights = Matrix(n_outputs, p);
    model.bias.resize(n_outputs);
    for (std::size_t out = 0; out < n_outputs; ++out) {
        model.bias[out] = y_mean(static_cast<Eigen::Index>(out));
        for (std::size_t j = 0; j < p; ++j) {
            model.weights(out, j) = beta(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(out));
        }
    }
    return model;
}

LabelVector ridge_predict(const RidgeModel& model, const Matrix& features) {
    const std::size_t p = model.weights.cols();
    if (features.cols() != p) {
        throw SchemaMismatch("model expects " + std::to_string(p) + " features, got " +
                                 std::to_string(features.cols()),
                             CollectionMeta{}, CollectionMeta{});
    }
    const std::size_t n = features.rows();
    const std::size_t n_outputs = model.weights.rows();

    std::vector<std::string> labels;
    std::vector<double> values;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> scores(n_outputs);
        for (std::size_t out = 0; out < n_outputs; ++out) {
            double score = model.bias[out];
            for (std::size_t j = 0; j < p; ++j) {
                if (model.feature_sds[j] < 1e-12) continue;
                const double standardized = (features(i, j) - model.feature_means[j]) /
                                            model.feature_sds[j];
                score += model.weights(out, j) * standardized;
            }
            scores[out] = score;
        }
        if (model.kind == LabelKind::Class) {
            std::size_t best = 0;
            for (std::size_t out = 1; out < n_outputs; ++out) {
                if (scores[out] > scores[best]) best = out;
            }
            labels.push_back(model.alphabet[best]);
        } else {
            values.push_back(scores[0]);
        }
    }
    if (model.kind == LabelKind::Class) {
        return LabelVector::classes(std::move(labels), model.alphabet);
    }
    return LabelVector::targets(std::move(values));
}

}  // namespace tsml::supervised
