#pragma once

#include <string>
#include <string_view>
#include <tuple>

#include "tsml/data.hpp"

namespace tsml {

struct TsDataset {
    Collection collection;
    LabelVector labels;
    DatasetMetadata metadata;

    friend bool operator==(const TsDataset&, const TsDataset&) = default;
};

/// Parses a complete `.ts` document. Header keywords are case-insensitive
/// and may appear in any order before the mandatory '@data' marker; lines
/// beginning '#' are comments. Throws ParseError (with the offending line
/// number) on malformed input; the missing-value token '?' and
/// '@timeStamps true' are both rejected.
TsDataset parse_ts(std::string_view text);

/// Renders a dataset as a `.ts` document that parses back to a structurally
/// identical triple. Reals use shortest round-trip decimal form. Throws
/// ConsistencyError when the collection, labels and metadata disagree.
std::string write_ts(const Collection& collection, const LabelVector& labels,
                     const DatasetMetadata& metadata);

}  // namespace tsml
