#include "gabp/kernel.hpp"

#include <cmath>
#include <string>

namespace gabp {

namespace {

void require_bias(double bias_constant) {
    if (!(bias_constant >= 0.0) || !std::isfinite(bias_constant)) {
        throw InvalidArgument("bias_constant must be a finite nonnegative real");
    }
}

}  // namespace

KernelSpec KernelSpec::linear(double bias_constant) {
    require_bias(bias_constant);
    KernelSpec spec;
    spec.family_ = KernelFamily::linear;
    spec.bias_constant_ = bias_constant;
    return spec;
}

KernelSpec KernelSpec::rbf(double gamma, double bias_constant) {
    require_bias(bias_constant);
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw InvalidArgument("rbf gamma must be a finite positive real");
    }
    KernelSpec spec;
    spec.family_ = KernelFamily::rbf;
    spec.rbf_gamma_ = gamma;
    spec.bias_constant_ = bias_constant;
    return spec;
}

KernelSpec KernelSpec::polynomial(int degree, double coef0, double bias_constant) {
    require_bias(bias_constant);
    if (degree < 1) {
        throw InvalidArgument("polynomial degree must be a positive integer");
    }
    if (!std::isfinite(coef0)) {
        throw InvalidArgument("polynomial coef0 must be finite");
    }
    KernelSpec spec;
    spec.family_ = KernelFamily::polynomial;
    spec.poly_degree_ = degree;
    spec.poly_coef0_ = coef0;
    spec.bias_constant_ = bias_constant;
    return spec;
}

KernelSpec KernelSpec::with_bias(double bias_constant) const {
    require_bias(bias_constant);
    KernelSpec spec = *this;
    spec.bias_constant_ = bias_constant;
    return spec;
}

double default_bias_constant(std::size_t n_train) {
    if (n_train == 0) {
        throw InvalidArgument("default_bias_constant: empty training set");
    }
    return 1.0 / static_cast<double>(n_train);
}

double kernel_eval(const KernelSpec& spec, std::span<const double> a,
                   std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("kernel_eval: feature dims " + std::to_string(a.size()) +
                                " and " + std::to_string(b.size()));
    }
    const double offset = spec.bias_constant() * spec.bias_constant();
    switch (spec.family()) {
        case KernelFamily::linear: {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                s += a[i] * b[i];
            }
            return s + offset;
        }
        case KernelFamily::rbf: {
            double d2 = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double d = a[i] - b[i];
                d2 += d * d;
            }
            return std::exp(-spec.rbf_gamma() * d2) + offset;
        }
        case KernelFamily::polynomial: {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                s += a[i] * b[i];
            }
            return std::pow(s + spec.poly_coef0(),
                            static_cast<double>(spec.poly_degree())) +
                   offset;
        }
    }
    throw InvalidArgument("kernel_eval: unknown kernel family");
}

MatrixBlock assemble_kernel_rows(const KernelSpec& spec,
                                 std::span<const SamplePoint> points, RowRange range) {
    const std::size_t n = points.size();
    if (range.begin > range.end || range.end > n) {
        throw DimensionMismatch("assemble_kernel_rows: row range [" +
                                std::to_string(range.begin) + ", " +
                                std::to_string(range.end) + ") outside [0, " +
                                std::to_string(n) + ")");
    }
    MatrixBlock block;
    block.first_row = range.begin;
    block.rows = range.size();
    block.cols = n;
    block.values.resize(block.rows * block.cols);
    for (std::size_t r = 0; r < block.rows; ++r) {
        const auto xi = points[range.begin + r].features.entries();
        auto row = block.row(r);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = kernel_eval(spec, xi, points[j].features.entries());
        }
    }
    return block;
}

}  // namespace gabp
