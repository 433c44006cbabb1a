#include "gabp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gabp {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InvalidArgument(std::string(what) + " requires finite entries");
        }
    }
}

}  // namespace

Vector::Vector(std::initializer_list<double> values) : entries_(values) {
    require_finite(entries_, "Vector");
}

Vector::Vector(std::vector<double> values) : entries_(std::move(values)) {
    require_finite(entries_, "Vector");
}

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("dot: vector lengths " + std::to_string(a.size()) +
                                " and " + std::to_string(b.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

double infinity_norm(const Vector& v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double max_abs_diff(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("max_abs_diff: vector lengths differ");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t order) {
    SymmetricMatrix m(order);
    for (std::size_t i = 0; i < order; ++i) {
        m.set(i, i, 1.0);
    }
    return m;
}

SymmetricMatrix SymmetricMatrix::from_rows(std::size_t order, std::vector<double> row_major) {
    if (row_major.size() != order * order) {
        throw DimensionMismatch("from_rows: expected " + std::to_string(order * order) +
                                " values, got " + std::to_string(row_major.size()));
    }
    require_finite(row_major, "SymmetricMatrix");
    for (std::size_t i = 0; i < order; ++i) {
        for (std::size_t j = i + 1; j < order; ++j) {
            if (row_major[i * order + j] != row_major[j * order + i]) {
                throw InvalidArgument("from_rows: entry (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") is not symmetric");
            }
        }
    }
    SymmetricMatrix m;
    m.order_ = order;
    m.values_ = std::move(row_major);
    return m;
}

void SymmetricMatrix::set(std::size_t i, std::size_t j, double value) {
    if (!std::isfinite(value)) {
        throw InvalidArgument("SymmetricMatrix::set requires a finite value");
    }
    values_[i * order_ + j] = value;
    values_[j * order_ + i] = value;
}

double SymmetricMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < order_; ++i) {
        t += values_[i * order_ + i];
    }
    return t;
}

namespace {

// Lower-triangular Cholesky factor of W, dense row-major. The first
// nonpositive pivot aborts with NotPositiveDefinite.
std::vector<double> cholesky_factor(const SymmetricMatrix& W) {
    const std::size_t n = W.order();
    std::vector<double> L(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = W(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            diag -= L[j * n + k] * L[j * n + k];
        }
        if (!(diag > 0.0)) {
            throw NotPositiveDefinite("nonpositive pivot " + std::to_string(diag) +
                                      " at column " + std::to_string(j));
        }
        const double ljj = std::sqrt(diag);
        L[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double sum = W(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                sum -= L[i * n + k] * L[j * n + k];
            }
            L[i * n + j] = sum / ljj;
        }
    }
    return L;
}

// Solves L L^T x = rhs in place.
void cholesky_solve(const std::vector<double>& L, std::size_t n, std::span<double> x) {
    for (std::size_t i = 0; i < n; ++i) {
        double sum = x[i];
        for (std::size_t k = 0; k < i; ++k) {
            sum -= L[i * n + k] * x[k];
        }
        x[i] = sum / L[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double sum = x[ii];
        for (std::size_t k = ii + 1; k < n; ++k) {
            sum -= L[k * n + ii] * x[k];
        }
        x[ii] = sum / L[ii * n + ii];
    }
}

}  // namespace

Vector direct_solve(const SymmetricMatrix& W, const Vector& b) {
    if (b.size() != W.order()) {
        throw DimensionMismatch("direct_solve: order " + std::to_string(W.order()) +
                                " vs rhs length " + std::to_string(b.size()));
    }
    const std::size_t n = W.order();
    const std::vector<double> L = cholesky_factor(W);
    std::vector<double> x(b.begin(), b.end());
    cholesky_solve(L, n, x);
    return Vector(std::move(x));
}

Vector marginal_precisions(const SymmetricMatrix& W) {
    const std::size_t n = W.order();
    const std::vector<double> L = cholesky_factor(W);
    Vector out(n);
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(col.begin(), col.end(), 0.0);
        col[i] = 1.0;
        cholesky_solve(L, n, col);
        out[i] = 1.0 / col[i];  // col[i] == (W^{-1})_{ii}
    }
    return out;
}

ConvergenceDiagnosis diagnose_convergence(const SymmetricMatrix& W, int power_iters) {
    const std::size_t n = W.order();
    ConvergenceDiagnosis out;

    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                off += std::abs(W(i, j));
            }
        }
        margin = std::min(margin, std::abs(W(i, i)) - off);
    }
    out.dominance_margin = margin;
    out.is_diagonally_dominant = margin > 0.0;

    // Power iteration on the entrywise absolute value of I - W.
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> y(n);
    double estimate = 0.0;
    for (int it = 0; it < power_iters; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double m = std::abs((i == j ? 1.0 : 0.0) - W(i, j));
                sum += m * x[j];
            }
            y[i] = sum;
        }
        double norm = 0.0;
        for (double v : y) {
            norm += v * v;
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            estimate = 0.0;
            break;
        }
        estimate = norm;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = y[i] / norm;
        }
    }
    out.spectral_radius_estimate = estimate;
    return out;
}

}  // namespace gabp
