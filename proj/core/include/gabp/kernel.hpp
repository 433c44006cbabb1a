#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gabp/numerics.hpp"

namespace gabp {

enum class KernelFamily { linear, rbf, polynomial };

/// Kernel family plus its parameters. The bias constant is the augmentation
/// term lambda: every evaluation gains an additive lambda^2, which is what
/// appending a constant coordinate lambda to each pattern does to a linear
/// kernel. Construct through the named factories; they validate parameters.
class KernelSpec {
public:
    static KernelSpec linear(double bias_constant = 0.0);
    static KernelSpec rbf(double gamma, double bias_constant = 0.0);
    static KernelSpec polynomial(int degree, double coef0, double bias_constant = 0.0);

    KernelFamily family() const { return family_; }
    double rbf_gamma() const { return rbf_gamma_; }
    int poly_degree() const { return poly_degree_; }
    double poly_coef0() const { return poly_coef0_; }
    double bias_constant() const { return bias_constant_; }

    /// Same kernel with a different augmentation constant.
    KernelSpec with_bias(double bias_constant) const;

private:
    KernelSpec() = default;

    KernelFamily family_ = KernelFamily::linear;
    double rbf_gamma_ = 0.0;
    int poly_degree_ = 0;
    double poly_coef0_ = 0.0;
    double bias_constant_ = 0.0;
};

/// One training or query pattern. The label is +-1 for classification and a
/// free real target for regression-style solves.
struct SamplePoint {
    Vector features;
    double label = 0.0;
};

/// The augmentation constant used when none is configured: 1/N for a
/// training set of N points.
double default_bias_constant(std::size_t n_train);

double kernel_eval(const KernelSpec& spec, std::span<const double> a,
                   std::span<const double> b);

inline double kernel_eval(const KernelSpec& spec, const Vector& a, const Vector& b) {
    return kernel_eval(spec, a.entries(), b.entries());
}

/// A contiguous band of rows of an n-by-n matrix, row-major.
struct MatrixBlock {
    std::size_t first_row = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double at(std::size_t local_row, std::size_t col) const {
        return values[local_row * cols + col];
    }
    std::span<double> row(std::size_t local_row) {
        return {values.data() + local_row * cols, cols};
    }
    std::span<const double> row(std::size_t local_row) const {
        return {values.data() + local_row * cols, cols};
    }
};

/// Rows [range.begin, range.end) of the full kernel matrix over `points`:
/// block(i, j) = K(x_{range.begin+i}, x_j) for every j in [0, n).
MatrixBlock assemble_kernel_rows(const KernelSpec& spec,
                                 std::span<const SamplePoint> points, RowRange range);

}  // namespace gabp
