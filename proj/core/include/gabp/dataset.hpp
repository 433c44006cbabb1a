#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gabp/kernel.hpp"

namespace gabp {

/// A parsed collection of sample points with a uniform feature dimension.
/// `source` records where the data came from and what was done to it.
struct Dataset {
    std::vector<SamplePoint> points;
    std::size_t feature_dim = 0;
    std::string source;

    std::size_t size() const { return points.size(); }
};

/// Parses libsvm text: one "<label> <index>:<value> ..." record per
/// nonempty line, indices 1-based and strictly increasing. Features are
/// densified with zeros up to the largest index seen. When positive_label
/// is given, labels equal to it map to +1 and everything else to -1;
/// otherwise labels must already be -1 or +1.
Dataset parse_libsvm(std::istream& in, std::optional<double> positive_label = {});

/// Parses rectangular CSV. The 0-based label_column is compared (as text)
/// against positive_label to produce +-1; remaining cells are numeric
/// features in column order.
Dataset parse_csv(std::istream& in, std::size_t label_column,
                  const std::string& positive_label);

/// Writes libsvm text (nonzero features only, round-trip-exact doubles).
void write_libsvm(std::ostream& out, const Dataset& dataset);

/// Per-feature affine map onto [0, 1], fit on one dataset and applied to
/// any other of the same dimension. Constant features map to 0.
struct ScalingParams {
    std::vector<double> mins;
    std::vector<double> ranges;
};

ScalingParams fit_min_max(const Dataset& data);
Dataset apply_scaling(const Dataset& data, const ScalingParams& params);

/// Seeded shuffle split. The test set holds round(test_fraction * n)
/// points; both halves keep their original relative order.
std::pair<Dataset, Dataset> split_holdout(const Dataset& data, double test_fraction,
                                          std::uint64_t seed);

}  // namespace gabp
