#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gabp/kernel.hpp"
#include "gabp/numerics.hpp"
#include "gabp/solver.hpp"

namespace gabp {

/// How the dual matrix diagonal is weighted before solving.
/// `one_over_c` adds 1/C to every diagonal entry (the 2-norm soft-margin
/// form); `enforce_dominance` adds at least that much and as much more as
/// needed to make every row strictly diagonally dominant.
enum class LoadingMode { one_over_c, enforce_dominance };

inline const char* to_string(LoadingMode m) {
    return m == LoadingMode::one_over_c ? "one-over-c" : "enforce-dominance";
}

struct TrainConfig {
    KernelSpec kernel = KernelSpec::linear();
    double cost_c = 1.0;
    GabpOptions gabp;
    LoadingMode loading = LoadingMode::one_over_c;
    /// Absolute support threshold; when unset it resolves to
    /// 1e-5 * max_i |h_i| at training time.
    std::optional<double> sv_threshold;
    /// Power-iteration steps for the spectral-radius diagnostic of the
    /// loaded matrix; 0 keeps only the (exact, cheap) dominance fields.
    int diagnosis_power_iters = 100;
};

struct TrainDiagnostics {
    int iterations_used = 0;
    bool converged = false;
    double final_delta = 0.0;
    ConvergenceDiagnosis loaded_matrix;
};

/// Everything prediction needs: the Lagrange weight vector h, the training
/// points and labels it was fit on, and the kernel. Immutable after
/// construction and safe to share across threads.
struct TrainedModel {
    Vector weights;
    std::vector<std::size_t> support_indices;
    double sv_threshold = 0.0;
    std::vector<SamplePoint> training_points;
    KernelSpec kernel = KernelSpec::linear();
    TrainDiagnostics diagnostics;
};

struct PredictionReport {
    Vector decision_values;
    std::vector<double> labels;  ///< sign of each decision value, sign(0) = +1
    std::optional<double> error_rate;
};

/// Thrown by train() when the solver hits max_iters without the message
/// change dropping to epsilon. Carries the partial solution and the
/// convergence diagnosis of the loaded matrix.
class GabpNotConverged : public Error {
public:
    GabpNotConverged(GabpSolution partial, ConvergenceDiagnosis diagnosis)
        : Error("gabp did not converge within " +
                std::to_string(partial.iterations_used) +
                " sweeps (last delta " + std::to_string(partial.final_delta) + ")"),
          partial_(std::move(partial)),
          diagnosis_(diagnosis) {}

    const GabpSolution& partial() const { return partial_; }
    const ConvergenceDiagnosis& diagnosis() const { return diagnosis_; }

private:
    GabpSolution partial_;
    ConvergenceDiagnosis diagnosis_;
};

/// D_ij = y_i y_j K(x_i, x_j). Labels must be exactly -1 or +1.
SymmetricMatrix build_dual_matrix(std::span<const SamplePoint> points,
                                  const KernelSpec& kernel);

/// Returns D with its diagonal weighted according to config.loading.
SymmetricMatrix apply_diagonal_loading(const SymmetricMatrix& D,
                                       const TrainConfig& config);

/// Builds the loaded dual system (D + loading) h = 1 and solves it with the
/// configured belief-propagation variant. The box and equality constraints
/// of the exact SVM dual are deliberately not enforced.
TrainedModel train(std::span<const SamplePoint> points, const TrainConfig& config);

/// Decision value sum_i h_i y_i K(x_i, x) over all training points, or over
/// the support set only when support_only is set. The bias term lives inside
/// the kernel's augmentation constant, not as a separate scalar.
PredictionReport predict(const TrainedModel& model,
                         std::span<const SamplePoint> queries,
                         bool support_only = false);

/// Kernel ridge regression in closed form: alpha = 2 lambda (K + lambda I)^{-1} y.
/// dual_coeffs holds (K + lambda I)^{-1} y, the coefficients of the
/// prediction function f(x) = sum_i dual_coeffs_i K(x_i, x).
struct KrrModel {
    Vector alpha;
    Vector dual_coeffs;
    std::vector<SamplePoint> points;
    KernelSpec kernel = KernelSpec::linear();
    double lambda = 0.0;
};

KrrModel krr_closed_form(std::span<const SamplePoint> points, double lambda,
                         const KernelSpec& kernel);

double krr_predict(const KrrModel& model, const Vector& query);

}  // namespace gabp
