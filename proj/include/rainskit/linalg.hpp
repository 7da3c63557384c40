#pragma once

#include <vector>

#include "rainskit/complex_matrix.hpp"

namespace rainskit {

enum class Normalization { Unnormalized, Normalized };

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out subsystem `traced`; result lives on the remaining factors in
/// their original order.
ComplexMatrix partial_trace(const ComplexMatrix& x, const DimSpec& dims, int traced);

/// Transpose subsystem `transposed` in the fixed computational basis.
ComplexMatrix partial_transpose(const ComplexMatrix& x, const DimSpec& dims, int transposed);

/// Transpose a set of subsystems (single-factor transposes commute).
ComplexMatrix partial_transpose(const ComplexMatrix& x, const DimSpec& dims,
                                const std::vector<int>& transposed);

/// Reorder tensor factors: output factor k is input factor perm[k].
ComplexMatrix permute_systems(const ComplexMatrix& x, const DimSpec& dims,
                              const std::vector<int>& perm);

double trace_norm(const ComplexMatrix& x);

/// Largest |eigenvalue| of a Hermitian matrix; throws on non-Hermitian input.
double operator_norm(const ComplexMatrix& x);

/// Column vector sum_i |i>|i> on d x d; the Unnormalized flavor has squared
/// norm d, the Normalized one has norm 1.
ComplexMatrix max_entangled_vector(int d, Normalization flavor);

/// Normalized maximally entangled state (projector), trace 1.
ComplexMatrix phi_state(int d);

/// <Ups| m |Ups> with the unnormalized maximally entangled vector pairing the
/// equal-dimension factors `left` and `right`; result lives on the remaining
/// factors in order. Hermiticity is preserved.
ComplexMatrix sandwich_max_entangled(const ComplexMatrix& m, const DimSpec& dims, int left,
                                     int right);

/// Self-test primitive for the transpose trick: checks
/// (X_SR (x) I_A)|Ups>_RA = (T_A(X_SA) (x) I_R)|Ups>_RA entrywise at 1e-12,
/// with dims = (S, R) and A a fresh factor of dimension |R|.
bool transpose_trick_check(const ComplexMatrix& x, const DimSpec& dims);

/// Real symmetric embedding [[A, -B], [B, A]] of h = A + iB. The spectrum of
/// h is doubled in multiplicity; trace doubles; PSD iff h is PSD.
RealMatrix real_embedding(const ComplexMatrix& h);

/// Inverse of real_embedding on structured matrices; averages the two copies
/// so that any real symmetric input yields its structured projection.
ComplexMatrix from_real_embedding(const RealMatrix& x);

/// Uhlmann fidelity ||sqrt(tau) sqrt(kappa)||_1^2 of two density matrices.
double fidelity(const ComplexMatrix& tau, const ComplexMatrix& kappa);

}  // namespace rainskit
