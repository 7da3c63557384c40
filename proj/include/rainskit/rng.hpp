#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "rainskit/complex_matrix.hpp"

namespace rainskit {

/// Deterministic random source. Gaussian variates via hand-rolled Box-Muller
/// so that sequences are pinned by the seed alone, independent of the
/// standard library's distribution implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    /// Uniform in (0, 1].
    double uniform() {
        const uint64_t r = gen_();
        return (static_cast<double>(r >> 11) + 1.0) * 0x1p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(gen_() % static_cast<uint64_t>(hi - lo + 1));
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    cplx gaussian_complex() { return cplx(gaussian(), gaussian()); }

    ComplexMatrix ginibre(int rows, int cols) {
        ComplexMatrix g(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) g(i, j) = gaussian_complex();
        return g;
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace rainskit
