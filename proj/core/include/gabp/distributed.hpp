#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gabp/classifier.hpp"
#include "gabp/numerics.hpp"
#include "gabp/solver.hpp"

namespace gabp {

/// Whether the logical workers run on their own threads or are stepped one
/// after another on the calling thread. Results are identical either way;
/// serial mode exists so tests can exercise the runtime deterministically
/// under a debugger.
enum class ExecutionMode { serial, threaded };

/// Contiguous, disjoint, exhaustive assignment of matrix rows to workers.
/// Range sizes differ by at most one.
struct WorkerPartition {
    std::size_t n = 0;
    std::size_t workers = 0;
    std::vector<RowRange> ranges;
};

/// Balanced contiguous partition: the first (n mod p) workers receive
/// ceil(n/p) rows, the rest floor(n/p). Throws InvalidPartition unless
/// 1 <= p <= n.
WorkerPartition make_partition(std::size_t n, std::size_t workers);

/// Elementwise sum of equal-length contributions, accumulated in ascending
/// worker order so the floating-point result is reproducible. Every worker
/// in the runtime observes this identical vector.
Vector allreduce_sum(std::span<const Vector> contributions);

struct MemoryFootprint {
    std::size_t rows_per_worker = 0;  ///< ceil(n / p)
    std::size_t block_bytes = 0;      ///< rows_per_worker * n * sizeof(double)
};

MemoryFootprint memory_footprint(std::size_t n, std::size_t workers);

struct IterationTelemetry {
    int iteration = 0;
    double max_delta = 0.0;
    std::size_t reduced_scalars = 0;  ///< always 2n: the P-hat and numerator sums
};

/// Which global rows a worker materialized, for row-ownership audits.
struct WorkerAudit {
    RowRange range;
    std::vector<std::size_t> rows_materialized;
};

struct DistConfig {
    std::size_t workers = 1;
    ExecutionMode mode = ExecutionMode::threaded;
    GabpOptions gabp;  ///< schedule must be synchronous; variant is broadcast
};

struct DistRun {
    GabpSolution solution;
    WorkerPartition partition;
    std::vector<IterationTelemetry> iterations;
    std::vector<WorkerAudit> audits;
};

/// Row-partitioned broadcast-variant run of W x = b: each worker owns a band
/// of rows, keeps messages for those rows only, and per sweep the 2n
/// aggregate scalars are formed by allreduce. The result is identical across
/// worker counts; with one worker it reproduces run_broadcast bit for bit.
DistRun run_distributed(const SymmetricMatrix& W, const Vector& b,
                        const DistConfig& config);

struct DistTrainResult {
    TrainedModel model;
    DistRun run;
};

/// Distributed training: every worker computes only its own rows of the
/// loaded dual matrix from the training points (never materializing foreign
/// rows) and the system is solved as in run_distributed.
DistTrainResult train_distributed(std::span<const SamplePoint> points,
                                  const TrainConfig& config,
                                  const DistConfig& dist);

}  // namespace gabp
