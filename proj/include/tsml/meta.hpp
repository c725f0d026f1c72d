#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tsml {

/// Declarative estimator capabilities. Fixed at estimator construction;
/// querying never mutates state.
struct TagSet {
    bool multivariate = false;
    bool unequal_length = false;
    bool missing_values = false;
};

/// Shape summary of a collection, recorded at fit time.
struct CollectionMeta {
    std::size_t n_cases = 0;
    std::size_t n_channels = 0;
    std::size_t length_min = 0;
    std::size_t length_max = 0;
    bool is_equal_length = true;
    bool has_missing = false;
};

struct Violation {
    std::string tag;
    std::string detail;
};

/// Result of checking a TagSet against a CollectionMeta. ok iff no violations.
struct ValidationReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const { return violations.empty(); }
};

}  // namespace tsml
