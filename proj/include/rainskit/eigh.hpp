#pragma once

#include <vector>

#include "rainskit/complex_matrix.hpp"

namespace rainskit {

struct EighResult {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are orthonormal eigenvectors
};

/// Eigendecomposition of a complex Hermitian matrix: Householder reduction to
/// real tridiagonal form followed by implicit-shift QL. Off-diagonal deflation
/// at 1e-12 relative. Throws on non-Hermitian input (defect above 1e-10).
EighResult eigh(const ComplexMatrix& h);
std::vector<double> eigvalsh(const ComplexMatrix& h);

struct EighRealResult {
    std::vector<double> values;
    RealMatrix vectors;
};

// Real symmetric wrappers over the same kernel; with purely real input every
// intermediate stays exactly real.
EighRealResult eigh_real(const RealMatrix& s);
std::vector<double> eigvalsh_real(const RealMatrix& s);

double min_eigenvalue(const ComplexMatrix& h);
double max_abs_eigenvalue(const ComplexMatrix& h);

/// Hermitian square root of a PSD matrix; eigenvalues are floored at zero.
ComplexMatrix sqrtm_psd(const ComplexMatrix& h);

}  // namespace rainskit
