#include "gabp/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace gabp {

namespace {

// Slack added on top of the off-diagonal row sum in enforce_dominance mode,
// so the dominance margin stays strictly positive.
constexpr double kDominanceSlack = 1e-6;

void validate_labels(std::span<const SamplePoint> points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double y = points[i].label;
        if (y != 1.0 && y != -1.0) {
            throw InvalidLabel("label of point " + std::to_string(i) + " is " +
                               std::to_string(y) + ", expected -1 or +1");
        }
    }
}

}  // namespace

SymmetricMatrix build_dual_matrix(std::span<const SamplePoint> points,
                                  const KernelSpec& kernel) {
    if (points.empty()) {
        throw InvalidArgument("build_dual_matrix: no points");
    }
    validate_labels(points);
    const std::size_t n = points.size();
    MatrixBlock block = assemble_kernel_rows(kernel, points, RowRange{0, n});
    for (std::size_t i = 0; i < n; ++i) {
        const double yi = points[i].label;
        auto row = block.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = (yi * points[j].label) * row[j];
        }
    }
    return SymmetricMatrix::from_rows(n, std::move(block.values));
}

SymmetricMatrix apply_diagonal_loading(const SymmetricMatrix& D,
                                       const TrainConfig& config) {
    if (!(config.cost_c > 0.0)) {
        throw InvalidArgument("apply_diagonal_loading: cost_c must be positive");
    }
    const std::size_t n = D.order();
    SymmetricMatrix out = D;
    const double ridge = 1.0 / config.cost_c;
    for (std::size_t i = 0; i < n; ++i) {
        double increment = ridge;
        if (config.loading == LoadingMode::enforce_dominance) {
            double off = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    off += std::abs(D(i, j));
                }
            }
            increment = std::max(ridge, off - D(i, i) + kDominanceSlack);
        }
        out.set(i, i, D(i, i) + increment);
    }
    return out;
}

TrainedModel train(std::span<const SamplePoint> points, const TrainConfig& config) {
    if (points.size() < 2) {
        throw InvalidArgument("train: need at least two points");
    }
    const std::size_t n = points.size();

    GabpProblem problem;
    problem.W = apply_diagonal_loading(build_dual_matrix(points, config.kernel), config);
    problem.b = Vector::ones(n);
    problem.options = config.gabp;

    const GabpSolution solution = solve(problem);
    const ConvergenceDiagnosis diagnosis =
        diagnose_convergence(problem.W, config.diagnosis_power_iters);
    if (!solution.converged) {
        throw GabpNotConverged(solution, diagnosis);
    }

    TrainedModel model;
    model.weights = solution.means;
    model.sv_threshold =
        config.sv_threshold.value_or(1e-5 * infinity_norm(model.weights));
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(model.weights[i]) > model.sv_threshold) {
            model.support_indices.push_back(i);
        }
    }
    model.training_points.assign(points.begin(), points.end());
    model.kernel = config.kernel;
    model.diagnostics.iterations_used = solution.iterations_used;
    model.diagnostics.converged = solution.converged;
    model.diagnostics.final_delta = solution.final_delta;
    model.diagnostics.loaded_matrix = diagnosis;
    return model;
}

PredictionReport predict(const TrainedModel& model,
                         std::span<const SamplePoint> queries, bool support_only) {
    const std::size_t n = model.training_points.size();
    PredictionReport report;
    std::vector<double> decisions(queries.size());
    report.labels.resize(queries.size());
    for (std::size_t q = 0; q < queries.size(); ++q) {
        const auto x = queries[q].features.entries();
        double value = 0.0;
        if (support_only) {
            for (std::size_t idx : model.support_indices) {
                const SamplePoint& p = model.training_points[idx];
                value += model.weights[idx] * p.label *
                         kernel_eval(model.kernel, p.features.entries(), x);
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                const SamplePoint& p = model.training_points[i];
                value += model.weights[i] * p.label *
                         kernel_eval(model.kernel, p.features.entries(), x);
            }
        }
        decisions[q] = value;
        report.labels[q] = value >= 0.0 ? 1.0 : -1.0;
    }
    report.decision_values = Vector(std::move(decisions));
    return report;
}

KrrModel krr_closed_form(std::span<const SamplePoint> points, double lambda,
                         const KernelSpec& kernel) {
    if (points.empty()) {
        throw InvalidArgument("krr_closed_form: no points");
    }
    if (!(lambda > 0.0)) {
        throw InvalidArgument("krr_closed_form: lambda must be positive");
    }
    const std::size_t n = points.size();
    MatrixBlock block = assemble_kernel_rows(kernel, points, RowRange{0, n});
    SymmetricMatrix regularized = SymmetricMatrix::from_rows(n, std::move(block.values));
    for (std::size_t i = 0; i < n; ++i) {
        regularized.set(i, i, regularized(i, i) + lambda);
    }
    std::vector<double> targets(n);
    for (std::size_t i = 0; i < n; ++i) {
        targets[i] = points[i].label;
    }
    KrrModel model;
    model.dual_coeffs = direct_solve(regularized, Vector(std::move(targets)));
    std::vector<double> alpha(n);
    for (std::size_t i = 0; i < n; ++i) {
        alpha[i] = 2.0 * lambda * model.dual_coeffs[i];
    }
    model.alpha = Vector(std::move(alpha));
    model.points.assign(points.begin(), points.end());
    model.kernel = kernel;
    model.lambda = lambda;
    return model;
}

double krr_predict(const KrrModel& model, const Vector& query) {
    double value = 0.0;
    for (std::size_t i = 0; i < model.points.size(); ++i) {
        value += model.dual_coeffs[i] *
                 kernel_eval(model.kernel, model.points[i].features.entries(),
                             query.entries());
    }
    return value;
}

}  // namespace gabp
