#pragma once

#include <cstdint>

#include "gabp/dataset.hpp"
#include "gabp/numerics.hpp"

namespace gabp {

/// Seeded generators for benchmark and test problems. All draws go through
/// an explicit generator so results are identical across platforms.

struct LinearSystem {
    SymmetricMatrix W;
    Vector b;
};

/// Symmetric system with uniform off-diagonals in [-1, 1] and a diagonal
/// inflated past each row's absolute off-diagonal sum, so the matrix is
/// strictly diagonally dominant (hence SPD) with a positive margin.
LinearSystem random_dominant_system(std::size_t n, std::uint64_t seed);

/// SPD system G^T G + (n/2) I with standard-normal G; not necessarily
/// diagonally dominant.
LinearSystem random_spd_system(std::size_t n, std::uint64_t seed);

struct TwoGaussianSpec {
    std::size_t count = 200;
    std::size_t dim = 2;
    double separation = 6.0;  ///< distance between the class means
    double sigma = 1.0;
};

/// Balanced binary dataset: two isotropic Gaussian clouds labeled +-1 whose
/// means sit `separation` apart. With separation >= 3 sigma the Bayes error
/// is far below 5%.
Dataset two_gaussians(const TwoGaussianSpec& spec, std::uint64_t seed);

}  // namespace gabp
