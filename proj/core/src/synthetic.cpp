#include "gabp/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace gabp {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// Box-Muller; avoids the implementation-defined std::normal_distribution so
// streams reproduce bit for bit everywhere.
double standard_normal(std::mt19937_64& rng) {
    const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

LinearSystem random_dominant_system(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = uniform(rng, -1.0, 1.0);
            values[i * n + j] = v;
            values[j * n + i] = v;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                off += std::abs(values[i * n + j]);
            }
        }
        values[i * n + i] = off * uniform(rng, 1.1, 1.5) + 0.5;
    }
    LinearSystem system;
    system.W = SymmetricMatrix::from_rows(n, std::move(values));
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        b[i] = uniform(rng, -1.0, 1.0);
    }
    system.b = Vector(std::move(b));
    return system;
}

LinearSystem random_spd_system(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> g(n * n);
    for (double& v : g) {
        v = standard_normal(rng);
    }
    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                sum += g[k * n + i] * g[k * n + j];
            }
            values[i * n + j] = sum;
            values[j * n + i] = sum;
        }
    }
    const double shift = 0.5 * static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i * n + i] += shift;
    }
    LinearSystem system;
    system.W = SymmetricMatrix::from_rows(n, std::move(values));
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        b[i] = uniform(rng, -1.0, 1.0);
    }
    system.b = Vector(std::move(b));
    return system;
}

Dataset two_gaussians(const TwoGaussianSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Dataset dataset;
    dataset.feature_dim = spec.dim;
    dataset.source = "synthetic-two-gaussians";
    const double offset =
        0.5 * spec.separation / std::sqrt(static_cast<double>(spec.dim));
    for (std::size_t i = 0; i < spec.count; ++i) {
        const double label = i % 2 == 0 ? 1.0 : -1.0;
        std::vector<double> features(spec.dim);
        for (std::size_t f = 0; f < spec.dim; ++f) {
            features[f] = label * offset + spec.sigma * standard_normal(rng);
        }
        dataset.points.push_back(SamplePoint{Vector(std::move(features)), label});
    }
    return dataset;
}

}  // namespace gabp
