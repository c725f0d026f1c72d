#pragma once

#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "tsml/data.hpp"

namespace helpers {

inline tsml::Series series(std::vector<double> values) { return tsml::Series(std::move(values)); }

inline tsml::Series random_series(std::mt19937_64& rng, std::size_t length,
                                  std::size_t channels = 1) {
    std::uniform_real_distribution<double> value(-2.0, 2.0);
    tsml::Series s(channels, length);
    for (std::size_t c = 0; c < channels; ++c) {
        for (std::size_t t = 0; t < length; ++t) s.at(c, t) = value(rng);
    }
    return s;
}

/// Series over the small value grid {0, 1, 2} used by the distance oracles.
inline tsml::Series random_grid_series(std::mt19937_64& rng, std::size_t length) {
    std::uniform_int_distribution<int> value(0, 2);
    tsml::Series s(1, length);
    for (std::size_t t = 0; t < length; ++t) s.at(0, t) = static_cast<double>(value(rng));
    return s;
}

/// Every univariate series of the given length with values in {0, 1, 2}.
inline std::vector<tsml::Series> all_grid_series(std::size_t length) {
    std::vector<tsml::Series> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < length; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<double> values(length);
        std::size_t rest = code;
        for (std::size_t t = 0; t < length; ++t) {
            values[t] = static_cast<double>(rest % 3);
            rest /= 3;
        }
        out.emplace_back(std::move(values));
    }
    return out;
}

}  // namespace helpers
