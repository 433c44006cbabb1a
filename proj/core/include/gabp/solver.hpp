#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "gabp/numerics.hpp"

namespace gabp {

/// How messages are propagated within one sweep. `synchronous` recomputes
/// every message from the previous sweep's values (flooding);
/// `asynchronous_sweep` walks the nodes in index order, each node consuming
/// the newest messages already written this sweep.
enum class Schedule { synchronous, asynchronous_sweep };

/// Which message representation runs. `edge` sends the per-edge scalar pair
/// (P_ij, mu_ij); `broadcast` sends per-node aggregated sums and recovers the
/// pairwise quantities by subtraction, cutting traffic from O(n^2) to O(n)
/// aggregates per sweep.
enum class Variant { edge, broadcast };

inline const char* to_string(Schedule s) {
    return s == Schedule::synchronous ? "sync" : "async";
}
inline const char* to_string(Variant v) {
    return v == Variant::edge ? "edge" : "broadcast";
}

/// The two scalars node i sends node j.
struct EdgeMessage {
    double precision = 0.0;
    double mean = 0.0;
};

/// Per-sweep observer payload. The message lookup is valid only for the
/// duration of the callback.
struct SweepTrace {
    int iteration = 0;
    double max_delta = 0.0;
    std::function<EdgeMessage(std::size_t from, std::size_t to)> message;
};

struct GabpOptions {
    double epsilon = 1e-6;
    int max_iters = 1000;
    Schedule schedule = Schedule::synchronous;
    Variant variant = Variant::edge;
    std::function<void(const SweepTrace&)> on_sweep;
};

/// A symmetric linear system W x = b posed for belief-propagation solving.
/// Requires finite entries, matching sizes, and a zero-free diagonal.
struct GabpProblem {
    SymmetricMatrix W;
    Vector b;
    GabpOptions options;
};

struct GabpSolution {
    Vector means;       ///< marginal means; the solution x* when converged
    Vector precisions;  ///< marginal precisions P_i
    int iterations_used = 0;
    bool converged = false;
    double final_delta = std::numeric_limits<double>::infinity();
};

/// Message state of the edge variant: scalar fixes P_ii = A_ii and
/// mu_ii = b_i / A_ii, plus one (P, mu) pair per ordered node pair with
/// A_ij != 0. All messages start at zero. The state borrows the problem;
/// it must not outlive it.
class GabpState {
public:
    explicit GabpState(const GabpProblem& problem);

    std::size_t order() const { return n_; }
    const GabpProblem& problem() const { return *problem_; }

    double precision_fix(std::size_t i) const { return in_p_[i * n_ + i]; }
    double mean_fix(std::size_t i) const { return in_mu_[i * n_ + i]; }

    EdgeMessage message(std::size_t from, std::size_t to) const {
        return {in_p_[to * n_ + from], in_mu_[to * n_ + from]};
    }
    void set_message(std::size_t from, std::size_t to, EdgeMessage m) {
        in_p_[to * n_ + from] = m.precision;
        in_mu_[to * n_ + from] = m.mean;
    }

    int iteration = 0;
    double last_delta = std::numeric_limits<double>::infinity();

private:
    const GabpProblem* problem_;
    std::size_t n_;
    // Incoming-major storage: slot [to * n + from] holds the message
    // from -> to, so one node's inputs sit in one row. The diagonal holds
    // the scalar fixes.
    std::vector<double> in_p_;
    std::vector<double> in_mu_;
};

/// The scalar message pair node `from` would send node `to` given the
/// current state: P = -A_ft^2 / (P_ff + sum_{k in N(f)\t} P_kf) and
/// mu = (P_ff mu_ff + sum_{k in N(f)\t} P_kf mu_kf) / A_ft.
/// Throws ZeroPivot when the excluded-sum denominator is exactly zero.
EdgeMessage edge_message(const GabpState& state, std::size_t from, std::size_t to);

/// Edge variant, flooding schedule: every message recomputed each sweep from
/// the previous sweep's values, until the largest message change is at most
/// epsilon or max_iters sweeps have run. Non-convergence is reported in the
/// solution, not thrown.
GabpSolution run_sync(const GabpProblem& problem);

/// Edge variant, node-order sweep with in-place updates. Same fixed point as
/// run_sync.
GabpSolution run_async(const GabpProblem& problem);

/// Broadcast variant: per sweep each node emits its aggregated sums
/// (P-hat_i and the matching numerator) and every pairwise quantity is
/// recovered by subtraction. Honors problem.options.schedule; the
/// synchronous form reproduces run_sync's iterates up to floating-point
/// reassociation.
GabpSolution run_broadcast(const GabpProblem& problem);

/// Dispatches on options.variant and options.schedule.
GabpSolution solve(const GabpProblem& problem);

/// Max-norm residual ||W x - b||_inf.
double residual(const SymmetricMatrix& W, const Vector& b, const Vector& x);

}  // namespace gabp
