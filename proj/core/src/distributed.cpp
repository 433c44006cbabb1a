#include "gabp/distributed.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>

#include "broadcast_rows.hpp"

namespace gabp {

WorkerPartition make_partition(std::size_t n, std::size_t workers) {
    if (workers < 1 || workers > n) {
        throw InvalidPartition("cannot split " + std::to_string(n) + " rows over " +
                               std::to_string(workers) + " workers");
    }
    WorkerPartition partition;
    partition.n = n;
    partition.workers = workers;
    const std::size_t base = n / workers;
    const std::size_t extra = n % workers;
    std::size_t begin = 0;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t size = base + (w < extra ? 1 : 0);
        partition.ranges.push_back(RowRange{begin, begin + size});
        begin += size;
    }
    return partition;
}

namespace {

// Ascending-rank accumulation shared by the public op and the runtime.
void reduce_in_place(std::span<const std::vector<double>> contributions,
                     std::span<double> out) {
    std::copy(contributions[0].begin(), contributions[0].end(), out.begin());
    for (std::size_t w = 1; w < contributions.size(); ++w) {
        const std::vector<double>& c = contributions[w];
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += c[i];
        }
    }
}

}  // namespace

Vector allreduce_sum(std::span<const Vector> contributions) {
    if (contributions.empty()) {
        throw InvalidArgument("allreduce_sum: no contributions");
    }
    const std::size_t n = contributions[0].size();
    std::vector<std::vector<double>> raw;
    raw.reserve(contributions.size());
    for (const Vector& v : contributions) {
        if (v.size() != n) {
            throw DimensionMismatch("allreduce_sum: contribution lengths differ");
        }
        raw.emplace_back(v.begin(), v.end());
    }
    std::vector<double> out(n);
    reduce_in_place(raw, out);
    return Vector(std::move(out));
}

MemoryFootprint memory_footprint(std::size_t n, std::size_t workers) {
    if (workers < 1 || workers > n) {
        throw InvalidPartition("memory_footprint: invalid worker count " +
                               std::to_string(workers) + " for " + std::to_string(n) +
                               " rows");
    }
    MemoryFootprint footprint;
    footprint.rows_per_worker = (n + workers - 1) / workers;
    footprint.block_bytes = footprint.rows_per_worker * n * sizeof(double);
    return footprint;
}

namespace {

struct BandSetup {
    detail::RowSource rows;
    std::span<const double> b;
};

// Runs the synchronous broadcast rounds over p worker bands. The aggregate
// buffers, reduction, sweep count, and stopping rule are shared between the
// serial and threaded drivers so both produce identical arithmetic.
class Runtime {
public:
    Runtime(const WorkerPartition& partition, const GabpOptions& options,
            std::size_t n)
        : partition_(partition),
          options_(options),
          n_(n),
          agg_cur_(2 * n, 0.0),
          agg_prev_(2 * n, 0.0),
          contributions_(partition.workers, std::vector<double>(2 * n, 0.0)),
          deltas_(partition.workers, 0.0) {
        bands_.resize(partition.workers);
        audits_.resize(partition.workers);
        for (std::size_t w = 0; w < partition.workers; ++w) {
            audits_[w].range = partition.ranges[w];
        }
    }

    // Materializes worker w's band through an audited row source.
    void build_band(std::size_t w, const BandSetup& setup) {
        WorkerAudit& audit = audits_[w];
        const detail::RowSource audited = [&setup, &audit](std::size_t row,
                                                           std::span<double> out) {
            audit.rows_materialized.push_back(row);
            setup.rows(row, out);
        };
        bands_[w].emplace(audited, setup.b, partition_.ranges[w], n_);
    }

    void contribution_phase(std::size_t w) {
        std::vector<double>& c = contributions_[w];
        std::fill(c.begin(), c.end(), 0.0);
        bands_[w]->add_contributions(c);
    }

    void reduce_phase() { reduce_in_place(contributions_, agg_cur_); }

    void update_phase(std::size_t w, int iteration) {
        deltas_[w] = bands_[w]->update_messages(agg_cur_, agg_prev_, iteration);
    }

    // Returns true when the sweep loop should stop.
    bool finish_iteration(int iteration) {
        double delta = 0.0;
        for (double d : deltas_) {
            delta = std::max(delta, d);
        }
        last_delta_ = delta;
        iterations_.push_back(IterationTelemetry{iteration, delta, 2 * n_});
        agg_cur_.swap(agg_prev_);
        converged_ = delta <= options_.epsilon;
        return converged_ || iteration >= options_.max_iters;
    }

    void marginal_phase(std::size_t w, std::span<double> means,
                        std::span<double> precisions) {
        bands_[w]->marginals(agg_cur_, means, precisions);
    }

    DistRun finish(std::vector<double> means, std::vector<double> precisions) {
        DistRun run;
        run.solution.means = Vector(std::move(means));
        run.solution.precisions = Vector(std::move(precisions));
        run.solution.iterations_used =
            iterations_.empty() ? 0 : iterations_.back().iteration;
        run.solution.converged = converged_;
        run.solution.final_delta = last_delta_;
        run.partition = partition_;
        run.iterations = std::move(iterations_);
        run.audits = std::move(audits_);
        return run;
    }

    std::size_t workers() const { return partition_.workers; }

private:
    WorkerPartition partition_;
    GabpOptions options_;
    std::size_t n_;
    std::vector<double> agg_cur_;
    std::vector<double> agg_prev_;
    std::vector<std::vector<double>> contributions_;
    std::vector<double> deltas_;
    std::vector<std::optional<detail::BroadcastRows>> bands_;
    std::vector<WorkerAudit> audits_;
    std::vector<IterationTelemetry> iterations_;
    double last_delta_ = std::numeric_limits<double>::infinity();
    bool converged_ = false;
};

DistRun drive_serial(Runtime& runtime, const BandSetup& setup, int max_iters,
                     std::size_t n) {
    const std::size_t p = runtime.workers();
    for (std::size_t w = 0; w < p; ++w) {
        runtime.build_band(w, setup);
    }
    bool stop = false;
    for (int iter = 1; !stop && iter <= max_iters; ++iter) {
        for (std::size_t w = 0; w < p; ++w) {
            runtime.contribution_phase(w);
        }
        runtime.reduce_phase();
        for (std::size_t w = 0; w < p; ++w) {
            runtime.update_phase(w, iter);
        }
        stop = runtime.finish_iteration(iter);
    }
    for (std::size_t w = 0; w < p; ++w) {
        runtime.contribution_phase(w);
    }
    runtime.reduce_phase();
    std::vector<double> means(n);
    std::vector<double> precisions(n);
    for (std::size_t w = 0; w < p; ++w) {
        runtime.marginal_phase(w, means, precisions);
    }
    return runtime.finish(std::move(means), std::move(precisions));
}

DistRun drive_threaded(Runtime& runtime, const BandSetup& setup, int max_iters,
                       std::size_t n) {
    const std::size_t p = runtime.workers();
    std::atomic<bool> stop{false};
    std::atomic<bool> aborted{false};
    std::vector<std::exception_ptr> failures(p);
    std::vector<double> means(n);
    std::vector<double> precisions(n);
    int iteration = 0;

    // Two barriers per sweep: one behind the contribution fill (its
    // completion performs the rank-ordered reduction) and one behind the
    // message update (its completion folds deltas and decides termination).
    auto on_reduced = [&runtime, &aborted]() noexcept {
        if (!aborted.load()) {
            runtime.reduce_phase();
        }
    };
    auto on_updated = [&runtime, &stop, &aborted, &iteration, max_iters]() noexcept {
        ++iteration;
        if (aborted.load() || runtime.finish_iteration(iteration) ||
            iteration >= max_iters) {
            stop.store(true);
        }
    };
    std::barrier reduce_barrier(static_cast<std::ptrdiff_t>(p), on_reduced);
    std::barrier update_barrier(static_cast<std::ptrdiff_t>(p), on_updated);

    auto worker_body = [&](std::size_t w) {
        bool failed = false;
        try {
            runtime.build_band(w, setup);
        } catch (...) {
            failures[w] = std::current_exception();
            failed = true;
            aborted.store(true);
        }
        reduce_barrier.arrive_and_wait();  // all bands built (or aborted)
        if (aborted.load()) {
            return;
        }
        for (int iter = 1; !stop.load() && iter <= max_iters; ++iter) {
            runtime.contribution_phase(w);
            reduce_barrier.arrive_and_wait();
            if (!failed) {
                try {
                    runtime.update_phase(w, iter);
                } catch (...) {
                    failures[w] = std::current_exception();
                    failed = true;
                    aborted.store(true);
                }
            }
            update_barrier.arrive_and_wait();
        }
        if (aborted.load()) {
            return;
        }
        runtime.contribution_phase(w);
        reduce_barrier.arrive_and_wait();
        try {
            runtime.marginal_phase(w, means, precisions);
        } catch (...) {
            failures[w] = std::current_exception();
            aborted.store(true);
        }
    };

    {
        std::vector<std::jthread> threads;
        threads.reserve(p);
        for (std::size_t w = 0; w < p; ++w) {
            threads.emplace_back(worker_body, w);
        }
    }
    for (std::size_t w = 0; w < p; ++w) {
        if (failures[w]) {
            std::rethrow_exception(failures[w]);
        }
    }
    return runtime.finish(std::move(means), std::move(precisions));
}

DistRun run_rows(const BandSetup& setup, std::size_t n, const DistConfig& config) {
    if (config.gabp.schedule != Schedule::synchronous) {
        throw InvalidArgument(
            "run_distributed: the distributed runtime supports synchronous rounds "
            "only; asynchronous sweeps are a single-process schedule");
    }
    if (!(config.gabp.epsilon > 0.0) || config.gabp.max_iters < 1) {
        throw InvalidArgument("run_distributed: invalid epsilon or max_iters");
    }
    const WorkerPartition partition = make_partition(n, config.workers);
    Runtime runtime(partition, config.gabp, n);
    if (config.mode == ExecutionMode::serial) {
        return drive_serial(runtime, setup, config.gabp.max_iters, n);
    }
    return drive_threaded(runtime, setup, config.gabp.max_iters, n);
}

}  // namespace

DistRun run_distributed(const SymmetricMatrix& W, const Vector& b,
                        const DistConfig& config) {
    const std::size_t n = W.order();
    if (b.size() != n) {
        throw DimensionMismatch("run_distributed: order " + std::to_string(n) +
                                " vs rhs length " + std::to_string(b.size()));
    }
    BandSetup setup;
    setup.rows = [&W](std::size_t row, std::span<double> out) {
        const auto r = W.row(row);
        std::copy(r.begin(), r.end(), out.begin());
    };
    setup.b = b.entries();
    return run_rows(setup, n, config);
}

DistTrainResult train_distributed(std::span<const SamplePoint> points,
                                  const TrainConfig& config, const DistConfig& dist) {
    if (points.size() < 2) {
        throw InvalidArgument("train_distributed: need at least two points");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double y = points[i].label;
        if (y != 1.0 && y != -1.0) {
            throw InvalidLabel("label of point " + std::to_string(i) + " is " +
                               std::to_string(y) + ", expected -1 or +1");
        }
    }
    if (!(config.cost_c > 0.0)) {
        throw InvalidArgument("train_distributed: cost_c must be positive");
    }
    const std::size_t n = points.size();
    const double ridge = 1.0 / config.cost_c;

    // Workers see dominance margins of their own loaded rows; the fold of
    // these minima is exact, so the diagnosis dominance fields stay exact.
    std::vector<double> worker_margins(dist.workers,
                                       std::numeric_limits<double>::infinity());
    const WorkerPartition partition = make_partition(n, dist.workers);

    BandSetup setup;
    setup.rows = [&](std::size_t row, std::span<double> out) {
        const SamplePoint& pi = points[row];
        for (std::size_t j = 0; j < n; ++j) {
            out[j] = (pi.label * points[j].label) *
                     kernel_eval(config.kernel, pi.features.entries(),
                                 points[j].features.entries());
        }
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != row) {
                off += std::abs(out[j]);
            }
        }
        double increment = ridge;
        if (config.loading == LoadingMode::enforce_dominance) {
            increment = std::max(ridge, off - out[row] + 1e-6);
        }
        out[row] = out[row] + increment;
        std::size_t w = 0;
        while (!partition.ranges[w].contains(row)) {
            ++w;
        }
        worker_margins[w] =
            std::min(worker_margins[w], std::abs(out[row]) - off);
    };
    const Vector ones = Vector::ones(n);
    setup.b = ones.entries();

    DistConfig run_config = dist;
    run_config.gabp = config.gabp;
    DistRun run = run_rows(setup, n, run_config);

    ConvergenceDiagnosis diagnosis;
    diagnosis.dominance_margin = *std::min_element(worker_margins.begin(),
                                                   worker_margins.end());
    diagnosis.is_diagonally_dominant = diagnosis.dominance_margin > 0.0;
    diagnosis.spectral_radius_estimate = 0.0;  // not estimated distributedly

    if (!run.solution.converged) {
        throw GabpNotConverged(run.solution, diagnosis);
    }

    TrainedModel model;
    model.weights = run.solution.means;
    model.sv_threshold =
        config.sv_threshold.value_or(1e-5 * infinity_norm(model.weights));
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(model.weights[i]) > model.sv_threshold) {
            model.support_indices.push_back(i);
        }
    }
    model.training_points.assign(points.begin(), points.end());
    model.kernel = config.kernel;
    model.diagnostics.iterations_used = run.solution.iterations_used;
    model.diagnostics.converged = run.solution.converged;
    model.diagnostics.final_delta = run.solution.final_delta;
    model.diagnostics.loaded_matrix = diagnosis;

    DistTrainResult result;
    result.model = std::move(model);
    result.run = std::move(run);
    return result;
}

}  // namespace gabp
