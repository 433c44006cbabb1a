#include "gabp/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

namespace gabp {

namespace {

bool parse_double(const std::string& token, double& out) {
    const char* begin = token.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + token.size() && !token.empty() && std::isfinite(out);
}

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) {
        ++a;
    }
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
        --b;
    }
    return s.substr(a, b - a);
}

}  // namespace

Dataset parse_libsvm(std::istream& in, std::optional<double> positive_label) {
    struct SparseRow {
        double label = 0.0;
        std::vector<std::pair<std::size_t, double>> features;
    };
    std::vector<SparseRow> rows;
    std::size_t max_index = 0;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string token;
        if (!(fields >> token)) {
            continue;  // blank line
        }
        SparseRow row;
        double raw_label = 0.0;
        if (!parse_double(token, raw_label)) {
            throw ParseError(line_no, "invalid label '" + token + "'");
        }
        if (positive_label.has_value()) {
            row.label = raw_label == *positive_label ? 1.0 : -1.0;
        } else if (raw_label == 1.0 || raw_label == -1.0) {
            row.label = raw_label;
        } else {
            throw ParseError(line_no, "label " + token +
                                          " is not -1/+1 and no positive class "
                                          "mapping was given");
        }
        std::size_t prev_index = 0;
        while (fields >> token) {
            const std::size_t colon = token.find(':');
            if (colon == std::string::npos) {
                throw ParseError(line_no, "expected index:value, got '" + token + "'");
            }
            double index_val = 0.0;
            if (!parse_double(token.substr(0, colon), index_val) ||
                index_val != std::floor(index_val) || index_val < 1.0) {
                throw ParseError(line_no, "invalid feature index in '" + token + "'");
            }
            const auto index = static_cast<std::size_t>(index_val);
            if (index <= prev_index) {
                throw NonMonotonicIndex(line_no, "feature index " +
                                                     std::to_string(index) +
                                                     " does not increase");
            }
            double value = 0.0;
            if (!parse_double(token.substr(colon + 1), value)) {
                throw ParseError(line_no, "invalid feature value in '" + token + "'");
            }
            row.features.emplace_back(index, value);
            prev_index = index;
        }
        max_index = std::max(max_index, prev_index);
        rows.push_back(std::move(row));
    }

    Dataset dataset;
    dataset.feature_dim = max_index;
    dataset.source = "libsvm";
    dataset.points.reserve(rows.size());
    for (SparseRow& row : rows) {
        std::vector<double> dense(max_index, 0.0);
        for (const auto& [index, value] : row.features) {
            dense[index - 1] = value;
        }
        dataset.points.push_back(SamplePoint{Vector(std::move(dense)), row.label});
    }
    return dataset;
}

Dataset parse_csv(std::istream& in, std::size_t label_column,
                  const std::string& positive_label) {
    Dataset dataset;
    dataset.source = "csv";
    std::string line;
    std::size_t line_no = 0;
    std::size_t expected_cells = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream fields(line);
        while (std::getline(fields, cell, ',')) {
            cells.push_back(trim(cell));
        }
        if (!line.empty() && line.back() == ',') {
            cells.push_back("");
        }
        if (expected_cells == 0) {
            expected_cells = cells.size();
            if (label_column >= expected_cells) {
                throw ParseError(line_no, "label column " +
                                              std::to_string(label_column) +
                                              " outside " +
                                              std::to_string(expected_cells) +
                                              " columns");
            }
            dataset.feature_dim = expected_cells - 1;
        } else if (cells.size() != expected_cells) {
            throw RaggedRows(line_no, "expected " + std::to_string(expected_cells) +
                                          " cells, got " +
                                          std::to_string(cells.size()));
        }
        std::vector<double> features;
        features.reserve(expected_cells - 1);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c == label_column) {
                continue;
            }
            double value = 0.0;
            if (!parse_double(cells[c], value)) {
                throw ParseError(line_no, c + 1,
                                 "non-numeric feature cell '" + cells[c] + "'");
            }
            features.push_back(value);
        }
        const double label = cells[label_column] == positive_label ? 1.0 : -1.0;
        dataset.points.push_back(SamplePoint{Vector(std::move(features)), label});
    }
    return dataset;
}

void write_libsvm(std::ostream& out, const Dataset& dataset) {
    char buffer[40];
    for (const SamplePoint& point : dataset.points) {
        out << (point.label > 0 ? "+1" : "-1");
        for (std::size_t i = 0; i < point.features.size(); ++i) {
            const double v = point.features[i];
            if (v != 0.0) {
                std::snprintf(buffer, sizeof(buffer), "%.17g", v);
                out << ' ' << (i + 1) << ':' << buffer;
            }
        }
        out << '\n';
    }
}

ScalingParams fit_min_max(const Dataset& data) {
    ScalingParams params;
    params.mins.assign(data.feature_dim, 0.0);
    params.ranges.assign(data.feature_dim, 0.0);
    if (data.points.empty()) {
        return params;
    }
    std::vector<double> maxs(data.feature_dim);
    for (std::size_t f = 0; f < data.feature_dim; ++f) {
        params.mins[f] = data.points[0].features[f];
        maxs[f] = data.points[0].features[f];
    }
    for (const SamplePoint& p : data.points) {
        for (std::size_t f = 0; f < data.feature_dim; ++f) {
            params.mins[f] = std::min(params.mins[f], p.features[f]);
            maxs[f] = std::max(maxs[f], p.features[f]);
        }
    }
    for (std::size_t f = 0; f < data.feature_dim; ++f) {
        params.ranges[f] = maxs[f] - params.mins[f];
    }
    return params;
}

Dataset apply_scaling(const Dataset& data, const ScalingParams& params) {
    if (params.mins.size() != data.feature_dim) {
        throw DimensionMismatch("apply_scaling: params fit on dimension " +
                                std::to_string(params.mins.size()) + ", data has " +
                                std::to_string(data.feature_dim));
    }
    Dataset out;
    out.feature_dim = data.feature_dim;
    out.source = data.source + "+minmax";
    out.points.reserve(data.points.size());
    for (const SamplePoint& p : data.points) {
        std::vector<double> scaled(data.feature_dim);
        for (std::size_t f = 0; f < data.feature_dim; ++f) {
            scaled[f] = params.ranges[f] == 0.0
                            ? 0.0
                            : (p.features[f] - params.mins[f]) / params.ranges[f];
        }
        out.points.push_back(SamplePoint{Vector(std::move(scaled)), p.label});
    }
    return out;
}

std::pair<Dataset, Dataset> split_holdout(const Dataset& data, double test_fraction,
                                          std::uint64_t seed) {
    if (!(test_fraction >= 0.0 && test_fraction <= 1.0)) {
        throw InvalidArgument("split_holdout: fraction must be in [0, 1]");
    }
    const std::size_t n = data.points.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = rng() % i;
        std::swap(order[i - 1], order[j]);
    }
    const auto test_count =
        static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));
    std::vector<std::size_t> test_idx(order.begin(),
                                      order.begin() + static_cast<std::ptrdiff_t>(
                                                          std::min(test_count, n)));
    std::sort(test_idx.begin(), test_idx.end());
    std::vector<bool> in_test(n, false);
    for (std::size_t i : test_idx) {
        in_test[i] = true;
    }
    Dataset train;
    Dataset test;
    train.feature_dim = test.feature_dim = data.feature_dim;
    train.source = data.source + "+train-split";
    test.source = data.source + "+test-split";
    for (std::size_t i = 0; i < n; ++i) {
        (in_test[i] ? test : train).points.push_back(data.points[i]);
    }
    return {std::move(train), std::move(test)};
}

}  // namespace gabp
