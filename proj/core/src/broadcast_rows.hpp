#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gabp/numerics.hpp"

namespace gabp::detail {

/// Materializes one global matrix row into `out` (length n).
using RowSource = std::function<void(std::size_t row, std::span<double> out)>;

/// Aggregated-sum message state for a contiguous band of rows, the unit of
/// work one worker owns in the broadcast scheme.
///
/// For every owned node i the band stores the incoming messages (P_ki,
/// mu_ki) from all neighbors k, double-buffered across sweeps. Outgoing
/// messages are never stored: when an update needs this node's own previous
/// outgoing message it recomputes it from the previous sweep's aggregates,
/// which reproduces the value held by the receiving band bit for bit (both
/// sides evaluate the identical expression on identical inputs).
///
/// Aggregate buffers are laid out as [P-hat_0..P-hat_{n-1} |
/// numerator_0..numerator_{n-1}]; the marginal mean is numerator / P-hat.
class BroadcastRows {
public:
    BroadcastRows(const RowSource& rows, std::span<const double> b, RowRange range,
                  std::size_t n);

    RowRange range() const { return range_; }

    /// Adds this band's share of the aggregate sums into acc (length 2n).
    void add_contributions(std::span<double> acc) const;

    /// One synchronous update of the band's messages. `iteration` is
    /// 1-based; agg_cur holds this sweep's aggregates, agg_prev the previous
    /// sweep's (unused on the first sweep). Returns the largest absolute
    /// change over the band's P and mu messages.
    double update_messages(std::span<const double> agg_cur,
                           std::span<const double> agg_prev, int iteration);

    /// Writes marginal means and precisions of owned nodes from final
    /// aggregates; foreign entries are left untouched.
    void marginals(std::span<const double> agg, std::span<double> means,
                   std::span<double> precisions) const;

    /// Stored message value from -> to; `to` must be an owned row.
    double message_precision(std::size_t from, std::size_t to) const;
    double message_mean(std::size_t from, std::size_t to) const;

private:
    std::size_t local(std::size_t global_row) const { return global_row - range_.begin; }

    std::size_t n_ = 0;
    RowRange range_;
    std::vector<double> block_;     // owned rows of A, row-major d x n
    std::vector<double> fix_p_;     // P_ii = A_ii per owned row
    std::vector<double> fix_num_;   // P_ii * mu_ii per owned row
    std::vector<double> in_p_cur_, in_p_prev_;    // incoming precisions, d x n
    std::vector<double> in_mu_cur_, in_mu_prev_;  // incoming means, d x n
};

}  // namespace gabp::detail
