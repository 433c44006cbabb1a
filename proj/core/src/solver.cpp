#include "gabp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "broadcast_rows.hpp"
#include "gabp/errors.hpp"

namespace gabp {

namespace {

void validate_problem(const GabpProblem& problem) {
    const std::size_t n = problem.W.order();
    if (n == 0) {
        throw InvalidArgument("solver: empty system");
    }
    if (problem.b.size() != n) {
        throw DimensionMismatch("solver: order " + std::to_string(n) +
                                " vs rhs length " + std::to_string(problem.b.size()));
    }
    if (!(problem.options.epsilon > 0.0)) {
        throw InvalidArgument("solver: epsilon must be positive");
    }
    if (problem.options.max_iters < 1) {
        throw InvalidArgument("solver: max_iters must be positive");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (problem.W(i, i) == 0.0) {
            throw ZeroPivot(i, i, "zero diagonal entry");
        }
    }
}

GabpSolution marginals_from_state(const GabpState& state) {
    const GabpProblem& p = state.problem();
    const std::size_t n = state.order();
    std::vector<double> means(n);
    std::vector<double> precisions(n);
    for (std::size_t i = 0; i < n; ++i) {
        double p_hat = state.precision_fix(i);
        double num = state.precision_fix(i) * state.mean_fix(i);
        for (std::size_t k = 0; k < n; ++k) {
            if (k != i && p.W(i, k) != 0.0) {
                const EdgeMessage m = state.message(k, i);
                p_hat += m.precision;
                num += m.precision * m.mean;
            }
        }
        if (p_hat == 0.0) {
            throw ZeroPivot(i, i, "zero marginal precision");
        }
        means[i] = num / p_hat;
        precisions[i] = p_hat;
    }
    GabpSolution out;
    out.means = Vector(std::move(means));
    out.precisions = Vector(std::move(precisions));
    out.iterations_used = state.iteration;
    out.final_delta = state.last_delta;
    return out;
}

void emit_trace(const GabpOptions& options, int iteration, double delta,
                const GabpState& state) {
    if (!options.on_sweep) {
        return;
    }
    SweepTrace trace;
    trace.iteration = iteration;
    trace.max_delta = delta;
    trace.message = [&state](std::size_t from, std::size_t to) {
        return state.message(from, to);
    };
    options.on_sweep(trace);
}

}  // namespace

GabpState::GabpState(const GabpProblem& problem)
    : problem_(&problem), n_(problem.W.order()) {
    in_p_.assign(n_ * n_, 0.0);
    in_mu_.assign(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        const double a_ii = problem.W(i, i);
        in_p_[i * n_ + i] = a_ii;
        in_mu_[i * n_ + i] = problem.b[i] / a_ii;
    }
}

EdgeMessage edge_message(const GabpState& state, std::size_t from, std::size_t to) {
    const GabpProblem& p = state.problem();
    const std::size_t n = state.order();
    const double a = p.W(from, to);
    if (from == to || a == 0.0) {
        throw InvalidArgument("edge_message: no edge " + std::to_string(from) +
                              " -> " + std::to_string(to));
    }
    double denom = state.precision_fix(from);
    double num = state.precision_fix(from) * state.mean_fix(from);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == from || k == to || p.W(from, k) == 0.0) {
            continue;
        }
        const EdgeMessage m = state.message(k, from);
        denom += m.precision;
        num += m.precision * m.mean;
    }
    if (denom == 0.0) {
        throw ZeroPivot(from, to, "excluded-sum precision");
    }
    return {-(a * a) / denom, num / a};
}

GabpSolution run_sync(const GabpProblem& problem) {
    validate_problem(problem);
    const std::size_t n = problem.W.order();
    GabpState cur(problem);
    GabpState next(problem);
    bool converged = false;
    for (int iter = 1; iter <= problem.options.max_iters; ++iter) {
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || problem.W(i, j) == 0.0) {
                    continue;
                }
                const EdgeMessage fresh = edge_message(cur, i, j);
                const EdgeMessage old = cur.message(i, j);
                delta = std::max(delta, std::abs(fresh.precision - old.precision));
                delta = std::max(delta, std::abs(fresh.mean - old.mean));
                next.set_message(i, j, fresh);
            }
        }
        std::swap(cur, next);
        cur.iteration = iter;
        cur.last_delta = delta;
        emit_trace(problem.options, iter, delta, cur);
        if (delta <= problem.options.epsilon) {
            converged = true;
            break;
        }
    }
    GabpSolution out = marginals_from_state(cur);
    out.converged = converged;
    return out;
}

GabpSolution run_async(const GabpProblem& problem) {
    validate_problem(problem);
    const std::size_t n = problem.W.order();
    GabpState state(problem);
    bool converged = false;
    for (int iter = 1; iter <= problem.options.max_iters; ++iter) {
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || problem.W(i, j) == 0.0) {
                    continue;
                }
                const EdgeMessage fresh = edge_message(state, i, j);
                const EdgeMessage old = state.message(i, j);
                delta = std::max(delta, std::abs(fresh.precision - old.precision));
                delta = std::max(delta, std::abs(fresh.mean - old.mean));
                state.set_message(i, j, fresh);
            }
        }
        state.iteration = iter;
        state.last_delta = delta;
        emit_trace(problem.options, iter, delta, state);
        if (delta <= problem.options.epsilon) {
            converged = true;
            break;
        }
    }
    GabpSolution out = marginals_from_state(state);
    out.converged = converged;
    return out;
}

namespace {

// Broadcast variant, flooding schedule. Runs the same band engine the
// distributed runtime drives, as a single band covering every row.
GabpSolution broadcast_sync(const GabpProblem& problem) {
    const std::size_t n = problem.W.order();
    const detail::RowSource rows = [&problem](std::size_t i, std::span<double> out) {
        const auto row = problem.W.row(i);
        std::copy(row.begin(), row.end(), out.begin());
    };
    detail::BroadcastRows band(rows, problem.b.entries(), RowRange{0, n}, n);

    std::vector<double> agg_a(2 * n, 0.0);
    std::vector<double> agg_b(2 * n, 0.0);
    std::span<double> cur = agg_a;
    std::span<double> prev = agg_b;

    bool converged = false;
    int iters = 0;
    double delta = std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= problem.options.max_iters; ++iter) {
        std::fill(cur.begin(), cur.end(), 0.0);
        band.add_contributions(cur);
        delta = band.update_messages(cur, prev, iter);
        iters = iter;
        if (problem.options.on_sweep) {
            SweepTrace trace;
            trace.iteration = iter;
            trace.max_delta = delta;
            trace.message = [&band](std::size_t from, std::size_t to) {
                return EdgeMessage{band.message_precision(from, to),
                                   band.message_mean(from, to)};
            };
            problem.options.on_sweep(trace);
        }
        std::swap(cur, prev);
        if (delta <= problem.options.epsilon) {
            converged = true;
            break;
        }
    }

    std::fill(cur.begin(), cur.end(), 0.0);
    band.add_contributions(cur);
    std::vector<double> means(n);
    std::vector<double> precisions(n);
    band.marginals(cur, means, precisions);

    GabpSolution out;
    out.means = Vector(std::move(means));
    out.precisions = Vector(std::move(precisions));
    out.iterations_used = iters;
    out.converged = converged;
    out.final_delta = delta;
    return out;
}

// Broadcast variant, node-order sweep: node i forms its aggregate sums from
// the freshest incoming messages and immediately rewrites its outgoing
// messages in place.
GabpSolution broadcast_async(const GabpProblem& problem) {
    const std::size_t n = problem.W.order();
    std::vector<double> fix_p(n);
    std::vector<double> fix_num(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a_ii = problem.W(i, i);
        fix_p[i] = a_ii;
        fix_num[i] = a_ii * (problem.b[i] / a_ii);
    }
    // Incoming-major: slot [to * n + from].
    std::vector<double> in_p(n * n, 0.0);
    std::vector<double> in_mu(n * n, 0.0);

    bool converged = false;
    int iters = 0;
    double delta = std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= problem.options.max_iters; ++iter) {
        delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double* pin = in_p.data() + i * n;
            const double* min = in_mu.data() + i * n;
            double p_hat = fix_p[i];
            double num = fix_num[i];
            for (std::size_t k = 0; k < n; ++k) {
                if (k != i && problem.W(i, k) != 0.0) {
                    p_hat += pin[k];
                    num += pin[k] * min[k];
                }
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || problem.W(i, j) == 0.0) {
                    continue;
                }
                const double a = problem.W(i, j);
                const double denom = p_hat - pin[j];
                if (denom == 0.0) {
                    throw ZeroPivot(i, j, "aggregate sum minus reverse message");
                }
                const double p_new = -(a * a) / denom;
                const double mu_new = (num - pin[j] * min[j]) / a;
                double& p_slot = in_p[j * n + i];
                double& mu_slot = in_mu[j * n + i];
                delta = std::max(delta, std::abs(p_new - p_slot));
                delta = std::max(delta, std::abs(mu_new - mu_slot));
                p_slot = p_new;
                mu_slot = mu_new;
            }
        }
        iters = iter;
        if (problem.options.on_sweep) {
            SweepTrace trace;
            trace.iteration = iter;
            trace.max_delta = delta;
            trace.message = [&in_p, &in_mu, n](std::size_t from, std::size_t to) {
                return EdgeMessage{in_p[to * n + from], in_mu[to * n + from]};
            };
            problem.options.on_sweep(trace);
        }
        if (delta <= problem.options.epsilon) {
            converged = true;
            break;
        }
    }

    std::vector<double> means(n);
    std::vector<double> precisions(n);
    for (std::size_t i = 0; i < n; ++i) {
        double p_hat = fix_p[i];
        double num = fix_num[i];
        for (std::size_t k = 0; k < n; ++k) {
            if (k != i && problem.W(i, k) != 0.0) {
                p_hat += in_p[i * n + k];
                num += in_p[i * n + k] * in_mu[i * n + k];
            }
        }
        if (p_hat == 0.0) {
            throw ZeroPivot(i, i, "zero marginal precision");
        }
        means[i] = num / p_hat;
        precisions[i] = p_hat;
    }

    GabpSolution out;
    out.means = Vector(std::move(means));
    out.precisions = Vector(std::move(precisions));
    out.iterations_used = iters;
    out.converged = converged;
    out.final_delta = delta;
    return out;
}

}  // namespace

GabpSolution run_broadcast(const GabpProblem& problem) {
    validate_problem(problem);
    if (problem.options.schedule == Schedule::asynchronous_sweep) {
        return broadcast_async(problem);
    }
    return broadcast_sync(problem);
}

GabpSolution solve(const GabpProblem& problem) {
    if (problem.options.variant == Variant::broadcast) {
        return run_broadcast(problem);
    }
    return problem.options.schedule == Schedule::synchronous ? run_sync(problem)
                                                             : run_async(problem);
}

double residual(const SymmetricMatrix& W, const Vector& b, const Vector& x) {
    const std::size_t n = W.order();
    if (b.size() != n || x.size() != n) {
        throw DimensionMismatch("residual: mismatched sizes");
    }
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double wx = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            wx += W(i, j) * x[j];
        }
        r = std::max(r, std::abs(wx - b[i]));
    }
    return r;
}

}  // namespace gabp
