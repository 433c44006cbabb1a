#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "gabp/errors.hpp"

namespace gabp {

/// Half-open interval of row indices [begin, end).
struct RowRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    bool contains(std::size_t i) const { return i >= begin && i < end; }
};

/// Dense real vector. Entries are validated to be finite at construction;
/// in-place mutation through operator[] is the caller's responsibility.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t n, double fill = 0.0) : entries_(n, fill) {}
    Vector(std::initializer_list<double> values);
    explicit Vector(std::vector<double> values);

    static Vector zeros(std::size_t n) { return Vector(n, 0.0); }
    static Vector ones(std::size_t n) { return Vector(n, 1.0); }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    double operator[](std::size_t i) const { return entries_[i]; }
    double& operator[](std::size_t i) { return entries_[i]; }

    std::span<const double> entries() const { return entries_; }
    std::span<double> entries() { return entries_; }
    const std::vector<double>& values() const { return entries_; }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    bool operator==(const Vector& other) const = default;

private:
    std::vector<double> entries_;
};

double dot(const Vector& a, const Vector& b);
double infinity_norm(const Vector& v);
double max_abs_diff(const Vector& a, const Vector& b);

/// Dense symmetric matrix, stored row-major and in full (both triangles),
/// so that whole rows can be handed out to workers. set() writes both
/// mirror entries; from_rows() validates exact symmetry and finiteness.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t order)
        : order_(order), values_(order * order, 0.0) {}

    static SymmetricMatrix identity(std::size_t order);
    static SymmetricMatrix from_rows(std::size_t order, std::vector<double> row_major);

    std::size_t order() const { return order_; }

    double operator()(std::size_t i, std::size_t j) const {
        return values_[i * order_ + j];
    }

    void set(std::size_t i, std::size_t j, double value);

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * order_, order_};
    }
    std::span<const double> values() const { return values_; }

    double trace() const;

private:
    std::size_t order_ = 0;
    std::vector<double> values_;
};

/// Result of the convergence-condition checks for belief propagation on W:
/// a power-iteration estimate of rho(|I - W|) plus exact diagonal-dominance
/// figures. dominance_margin is min_i (|W_ii| - sum_{j!=i} |W_ij|).
struct ConvergenceDiagnosis {
    double spectral_radius_estimate = 0.0;
    bool is_diagonally_dominant = false;
    double dominance_margin = 0.0;
};

/// Solves W x = b for symmetric positive definite W by a Cholesky-type
/// factorization. Throws NotPositiveDefinite when a nonpositive pivot is
/// encountered, DimensionMismatch when sizes disagree.
Vector direct_solve(const SymmetricMatrix& W, const Vector& b);

/// Exact marginal precisions 1 / (W^{-1})_{ii} computed through the full
/// inverse. Expensive (n solves); intended as a reference for solver tests.
Vector marginal_precisions(const SymmetricMatrix& W);

/// Best-effort convergence diagnostics: power-iteration spectral radius
/// estimate of the entrywise |I - W| after `power_iters` steps (all-ones
/// start vector, normalized every step) and exact dominance fields.
ConvergenceDiagnosis diagnose_convergence(const SymmetricMatrix& W, int power_iters = 100);

}  // namespace gabp
