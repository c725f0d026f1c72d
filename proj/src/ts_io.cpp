#include "tsml/ts_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <system_error>
#include <vector>

namespace tsml {

namespace {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<std::string_view> whitespace_tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

double parse_real(std::string_view token, std::size_t line) {
    token = trim(token);
    if (token == "?") {
        throw ParseError("missing-value token '?' is not supported", line);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
        throw ParseError("value token '" + std::string(token) + "' is not a real", line);
    }
    return value;
}

bool parse_bool(std::string_view token, std::size_t line) {
    const std::string lowered = to_lower(token);
    if (lowered == "true") return true;
    if (lowered == "false") return false;
    throw ParseError("expected 'true' or 'false', got '" + std::string(token) + "'", line);
}

std::size_t parse_count(std::string_view token, std::size_t line) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value == 0) {
        throw ParseError("expected a positive integer, got '" + std::string(token) + "'", line);
    }
    return value;
}

std::string render_real(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return {buf, ptr};
}

bool valid_token(const std::string& s) {
    if (s.empty()) return false;
    return std::none_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isspace(c) || c == ':' || c == ',';
    });
}

struct Header {
    std::optional<std::string> problem_name;
    std::optional<bool> univariate;
    std::optional<std::size_t> dimension;
    std::optional<bool> equal_length;
    std::optional<std::size_t> series_length;
    std::optional<LabelKind> label_kind;
    std::vector<std::string> alphabet;
};

void apply_header_line(Header& h, const std::vector<std::string_view>& tokens, std::size_t line) {
    const std::string keyword = to_lower(tokens[0]);
    const auto expect_args = [&](std::size_t n) {
        if (tokens.size() != n + 1) {
            throw ParseError("header '" + std::string(tokens[0]) + "' expects " + std::to_string(n) +
                                 " argument(s)",
                             line);
        }
    };
    const auto reject_duplicate = [&](bool already_set) {
        if (already_set) {
            throw ParseError("duplicate header '" + std::string(tokens[0]) + "'", line);
        }
    };

    if (keyword == "@problemname") {
        expect_args(1);
        reject_duplicate(h.problem_name.has_value());
        h.problem_name = std::string(tokens[1]);
    } else if (keyword == "@univariate") {
        expect_args(1);
        reject_duplicate(h.univariate.has_value());
        h.univariate = parse_bool(tokens[1], line);
    } else if (keyword == "@dimension") {
        expect_args(1);
        reject_duplicate(h.dimension.has_value());
        h.dimension = parse_count(tokens[1], line);
    } else if (keyword == "@equallength") {
        expect_args(1);
        reject_duplicate(h.equal_length.has_value());
        h.equal_length = parse_bool(tokens[1], line);
    } else if (keyword == "@serieslength") {
        expect_args(1);
        reject_duplicate(h.series_length.has_value());
        h.series_length = parse_count(tokens[1], line);
    } else if (keyword == "@classlabel") {
        reject_duplicate(h.label_kind.has_value());
        if (tokens.size() < 2) {
            throw ParseError("header '@classLabel' expects arguments", line);
        }
        if (parse_bool(tokens[1], line)) {
            if (tokens.size() < 3) {
                throw ParseError("'@classLabel true' requires an alphabet", line);
            }
            h.label_kind = LabelKind::Class;
            for (std::size_t i = 2; i < tokens.size(); ++i) {
                h.alphabet.emplace_back(tokens[i]);
            }
        } else {
            expect_args(1);
            h.label_kind = LabelKind::None;
        }
    } else if (keyword == "@targetlabel") {
        expect_args(1);
        reject_duplicate(h.label_kind.has_value());
        if (!parse_bool(tokens[1], line)) {
            throw ParseError("'@targetLabel false' is not part of the grammar", line);
        }
        h.label_kind = LabelKind::Target;
    } else if (keyword == "@timestamps") {
        expect_args(1);
        if (parse_bool(tokens[1], line)) {
            throw ParseError("'@timeStamps true' documents are not supported", line);
        }
    } else {
        throw ParseError("unknown header '" + std::string(tokens[0]) + "'", line);
    }
}

}  // namespace

TsDataset parse_ts(std::string_view text) {
    Header header;
    bool in_data = false;
    std::size_t data_line = 0;

    std::vector<Series> cases;
    std::vector<std::string> class_labels;
    std::vector<double> target_values;
    std::size_t expected_channels = 0;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view raw = (eol == std::string_view::npos) ? text.substr(pos)
                                                               : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

        const std::string_view stripped = trim(raw);
        if (stripped.empty() || stripped.front() == '#') continue;

        if (!in_data) {
            const auto tokens = whitespace_tokens(stripped);
            if (to_lower(tokens[0]) == "@data") {
                if (tokens.size() != 1) {
                    throw ParseError("'@data' takes no arguments", line_no);
                }
                // Validate header completeness before entering the data section.
                if (!header.problem_name) throw ParseError("missing '@problemName'", line_no);
                if (!header.univariate) throw ParseError("missing '@univariate'", line_no);
                if (!header.equal_length) throw ParseError("missing '@equalLength'", line_no);
                if (!header.label_kind) {
                    throw ParseError("missing '@classLabel' or '@targetLabel'", line_no);
                }
                if (*header.equal_length && !header.series_length) {
                    throw ParseError("'@seriesLength' is required when '@equalLength true'", line_no);
                }
                if (!*header.equal_length && header.series_length) {
                    throw ParseError("'@seriesLength' requires '@equalLength true'", line_no);
                }
                if (*header.univariate) {
                    if (header.dimension && *header.dimension != 1) {
                        throw ParseError("'@dimension' must be 1 for univariate data", line_no);
                    }
                    expected_channels = 1;
                } else {
                    if (!header.dimension) {
                        throw ParseError("'@dimension' is required when '@univariate false'", line_no);
                    }
                    expected_channels = *header.dimension;
                }
                in_data = true;
                data_line = line_no;
                continue;
            }
            if (stripped.front() != '@') {
                throw ParseError("expected a header line before '@data'", line_no);
            }
            apply_header_line(header, tokens, line_no);
            continue;
        }

        // Data section: one case per line, channels separated by ':'.
        auto fields = split(stripped, ':');
        const bool labelled = *header.label_kind != LabelKind::None;
        if (labelled) {
            if (fields.size() < 2) {
                throw ParseError("expected a trailing label field", line_no);
            }
            const std::string_view label = trim(fields.back());
            fields.pop_back();
            if (*header.label_kind == LabelKind::Class) {
                const std::string token(label);
                if (std::find(header.alphabet.begin(), header.alphabet.end(), token) ==
                    header.alphabet.end()) {
                    throw ParseError("class label '" + token + "' is not in the alphabet", line_no);
                }
                class_labels.push_back(token);
            } else {
                target_values.push_back(parse_real(label, line_no));
            }
        }
        if (fields.size() != expected_channels) {
            throw ParseError("case has " + std::to_string(fields.size()) + " channel(s), expected " +
                                 std::to_string(expected_channels),
                             line_no);
        }

        std::vector<std::vector<double>> channels;
        channels.reserve(fields.size());
        for (const auto field : fields) {
            std::vector<double> values;
            for (const auto token : split(field, ',')) {
                values.push_back(parse_real(token, line_no));
            }
            if (!channels.empty() && values.size() != channels[0].size()) {
                throw ParseError("channels within a case must share a length", line_no);
            }
            channels.push_back(std::move(values));
        }
        if (*header.equal_length && channels[0].size() != *header.series_length) {
            throw ParseError("case length " + std::to_string(channels[0].size()) +
                                 " does not match '@seriesLength'",
                             line_no);
        }
        cases.emplace_back(channels);
    }

    if (!in_data) {
        throw ParseError("missing '@data' marker", line_no == 0 ? 1 : line_no - 1);
    }
    if (cases.empty()) {
        throw ParseError("document contains no cases", data_line);
    }

    DatasetMetadata metadata;
    metadata.problem_name = *header.problem_name;
    metadata.is_univariate = *header.univariate;
    metadata.is_equal_length = *header.equal_length;
    metadata.series_length = header.series_length;
    metadata.label_kind = *header.label_kind;
    if (metadata.label_kind == LabelKind::Class) {
        metadata.class_alphabet = header.alphabet;
    }

    LabelVector labels;
    if (metadata.label_kind == LabelKind::Class) {
        labels = LabelVector::classes(std::move(class_labels), header.alphabet);
    } else if (metadata.label_kind == LabelKind::Target) {
        labels = LabelVector::targets(std::move(target_values));
    }

    const Layout layout = metadata.is_equal_length ? Layout::Dense : Layout::Ragged;
    return {Collection(layout, std::move(cases)), std::move(labels), std::move(metadata)};
}

std::string write_ts(const Collection& collection, const LabelVector& labels,
                     const DatasetMetadata& metadata) {
    if (collection.n_cases() == 0) {
        throw ConsistencyError("cannot write an empty collection");
    }
    if (!valid_token(metadata.problem_name)) {
        throw ConsistencyError("problem name must be a non-empty token");
    }
    if (metadata.is_univariate != (collection.n_channels() == 1)) {
        throw ConsistencyError("metadata univariate flag disagrees with the collection");
    }
    if (metadata.is_equal_length != (collection.layout() == Layout::Dense)) {
        throw ConsistencyError("metadata equal-length flag disagrees with the collection layout");
    }
    if (metadata.is_equal_length != metadata.series_length.has_value()) {
        throw ConsistencyError("series_length must be present exactly when equal-length");
    }
    if (metadata.series_length && *metadata.series_length != collection.n_timepoints()) {
        throw ConsistencyError("series_length disagrees with the collection");
    }
    if (metadata.label_kind != labels.kind()) {
        throw ConsistencyError("metadata label kind disagrees with the labels");
    }
    if (labels.kind() != LabelKind::None && labels.size() != collection.n_cases()) {
        throw ConsistencyError("label count disagrees with the number of cases");
    }
    if (labels.kind() == LabelKind::Class) {
        if (!metadata.class_alphabet || *metadata.class_alphabet != labels.alphabet()) {
            throw ConsistencyError("metadata class alphabet disagrees with the labels");
        }
        for (const auto& token : labels.alphabet()) {
            if (!valid_token(token)) {
                throw ConsistencyError("class label '" + token + "' is not a writable token");
            }
        }
    } else if (metadata.class_alphabet) {
        throw ConsistencyError("class alphabet is only valid for Class-kind labels");
    }
    for (const auto& c : collection.cases()) {
        if (c.has_missing()) {
            throw ConsistencyError("missing values cannot be written");
        }
    }

    std::ostringstream out;
    out << "@problemName " << metadata.problem_name << '\n';
    out << "@univariate " << (metadata.is_univariate ? "true" : "false") << '\n';
    if (!metadata.is_univariate) {
        out << "@dimension " << collection.n_channels() << '\n';
    }
    out << "@equalLength " << (metadata.is_equal_length ? "true" : "false") << '\n';
    if (metadata.series_length) {
        out << "@seriesLength " << *metadata.series_length << '\n';
    }
    switch (labels.kind()) {
        case LabelKind::Class: {
            out << "@classLabel true";
            for (const auto& token : labels.alphabet()) out << ' ' << token;
            out << '\n';
            break;
        }
        case LabelKind::Target: out << "@targetLabel true\n"; break;
        case LabelKind::None: out << "@classLabel false\n"; break;
    }
    out << "@data\n";

    for (std::size_t i = 0; i < collection.n_cases(); ++i) {
        const Series& s = collection.case_at(i);
        for (std::size_t ch = 0; ch < s.n_channels(); ++ch) {
            if (ch > 0) out << ':';
            const auto row = s.channel(ch);
            for (std::size_t t = 0; t < row.size(); ++t) {
                if (t > 0) out << ',';
                out << render_real(row[t]);
            }
        }
        if (labels.kind() == LabelKind::Class) {
            out << ':' << labels.class_labels()[i];
        } else if (labels.kind() == LabelKind::Target) {
            out << ':' << render_real(labels.target_values()[i]);
        }
        out << '\n';
    }
    return std::move(out).str();
}

}  // namespace tsml
