#pragma once

// Definitional oracles used by the test suites. These deliberately avoid the
// library's optimized paths: brute-force index loops and power iteration only.

#include <cmath>
#include <complex>
#include <vector>

#include "rainskit/complex_matrix.hpp"
#include "rainskit/rng.hpp"

namespace oracles {

using rainskit::ComplexMatrix;
using rainskit::cplx;
using rainskit::DimSpec;
using rainskit::Rng;

inline ComplexMatrix kron_definitional(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j)
            c(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
    return c;
}

// Index-contraction sum over the traced subsystem for a two-factor space.
inline ComplexMatrix partial_trace_definitional(const ComplexMatrix& x, int da, int db,
                                                int traced) {
    if (traced == 1) {
        ComplexMatrix out(da, da);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < da; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < db; ++k) s += x(i * db + k, j * db + k);
                out(i, j) = s;
            }
        return out;
    }
    ComplexMatrix out(db, db);
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < da; ++k) s += x(k * db + i, k * db + j);
            out(i, j) = s;
        }
    return out;
}

inline ComplexMatrix random_hermitian(Rng& rng, int n) {
    ComplexMatrix g = rng.ginibre(n, n);
    ComplexMatrix h = g + g.adjoint();
    h *= 0.5;
    return h;
}

inline ComplexMatrix random_density(Rng& rng, int n) {
    const ComplexMatrix g = rng.ginibre(n, n);
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return rho;
}

// Power iteration on h*h to estimate the largest |eigenvalue| of Hermitian h.
inline double power_iteration_abs_max(const ComplexMatrix& h, Rng& rng, int iters = 2000) {
    const int n = h.rows();
    const ComplexMatrix h2 = h * h;
    std::vector<cplx> v(static_cast<size_t>(n));
    for (auto& e : v) e = rng.gaussian_complex();
    double lam2 = 0.0;
    for (int it = 0; it < iters; ++it) {
        std::vector<cplx> w(static_cast<size_t>(n), cplx(0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w[static_cast<size_t>(i)] += h2(i, j) * v[static_cast<size_t>(j)];
        double nrm = 0.0;
        for (const auto& e : w) nrm += std::norm(e);
        nrm = std::sqrt(nrm);
        lam2 = nrm;
        for (size_t i = 0; i < w.size(); ++i) v[i] = w[i] / nrm;
    }
    return std::sqrt(lam2);
}

}  // namespace oracles
