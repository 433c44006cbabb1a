#include "broadcast_rows.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gabp/errors.hpp"

namespace gabp::detail {

BroadcastRows::BroadcastRows(const RowSource& rows, std::span<const double> b,
                             RowRange range, std::size_t n)
    : n_(n), range_(range) {
    const std::size_t d = range.size();
    block_.resize(d * n);
    fix_p_.resize(d);
    fix_num_.resize(d);
    in_p_cur_.assign(d * n, 0.0);
    in_p_prev_.assign(d * n, 0.0);
    in_mu_cur_.assign(d * n, 0.0);
    in_mu_prev_.assign(d * n, 0.0);
    for (std::size_t r = 0; r < d; ++r) {
        const std::size_t i = range.begin + r;
        rows(i, std::span<double>(block_.data() + r * n, n));
        const double a_ii = block_[r * n + i];
        if (a_ii == 0.0) {
            throw ZeroPivot(i, i, "zero diagonal entry");
        }
        const double mu_ii = b[i] / a_ii;
        fix_p_[r] = a_ii;
        fix_num_[r] = a_ii * mu_ii;
    }
}

void BroadcastRows::add_contributions(std::span<double> acc) const {
    for (std::size_t r = 0; r < range_.size(); ++r) {
        const std::size_t i = range_.begin + r;
        const double* row = block_.data() + r * n_;
        const double* pin = in_p_cur_.data() + r * n_;
        const double* min = in_mu_cur_.data() + r * n_;
        double p_hat = fix_p_[r];
        double num = fix_num_[r];
        for (std::size_t k = 0; k < n_; ++k) {
            if (k != i && row[k] != 0.0) {
                p_hat += pin[k];
                num += pin[k] * min[k];
            }
        }
        acc[i] += p_hat;
        acc[n_ + i] += num;
    }
}

double BroadcastRows::update_messages(std::span<const double> agg_cur,
                                      std::span<const double> agg_prev,
                                      int iteration) {
    double delta = 0.0;
    for (std::size_t r = 0; r < range_.size(); ++r) {
        const std::size_t i = range_.begin + r;
        const double* row = block_.data() + r * n_;
        const double* p_cur = in_p_cur_.data() + r * n_;
        const double* mu_cur = in_mu_cur_.data() + r * n_;
        double* p_next = in_p_prev_.data() + r * n_;
        double* mu_next = in_mu_prev_.data() + r * n_;
        for (std::size_t k = 0; k < n_; ++k) {
            if (k == i || row[k] == 0.0) {
                continue;
            }
            const double a = row[k];  // A_ik == A_ki
            // This node's own outgoing message i -> k at the previous
            // level; the receiving band holds the identical value.
            double p_out = 0.0;
            double mu_out = 0.0;
            if (iteration > 1) {
                const double rdenom = agg_prev[i] - p_next[k];  // holds m^(t-2)
                if (rdenom == 0.0) {
                    throw ZeroPivot(i, k, "aggregate sum minus reverse message");
                }
                p_out = -(a * a) / rdenom;
                mu_out = (agg_prev[n_ + i] - p_next[k] * mu_next[k]) / a;
            }
            const double denom = agg_cur[k] - p_out;
            if (denom == 0.0) {
                throw ZeroPivot(k, i, "aggregate sum minus reverse message");
            }
            const double p_new = -(a * a) / denom;
            const double mu_new = (agg_cur[n_ + k] - p_out * mu_out) / a;
            delta = std::max(delta, std::abs(p_new - p_cur[k]));
            delta = std::max(delta, std::abs(mu_new - mu_cur[k]));
            p_next[k] = p_new;
            mu_next[k] = mu_new;
        }
    }
    in_p_cur_.swap(in_p_prev_);
    in_mu_cur_.swap(in_mu_prev_);
    return delta;
}

void BroadcastRows::marginals(std::span<const double> agg, std::span<double> means,
                              std::span<double> precisions) const {
    for (std::size_t r = 0; r < range_.size(); ++r) {
        const std::size_t i = range_.begin + r;
        if (agg[i] == 0.0) {
            throw ZeroPivot(i, i, "zero marginal precision");
        }
        means[i] = agg[n_ + i] / agg[i];
        precisions[i] = agg[i];
    }
}

double BroadcastRows::message_precision(std::size_t from, std::size_t to) const {
    return in_p_cur_[local(to) * n_ + from];
}

double BroadcastRows::message_mean(std::size_t from, std::size_t to) const {
    return in_mu_cur_[local(to) * n_ + from];
}

}  // namespace gabp::detail
