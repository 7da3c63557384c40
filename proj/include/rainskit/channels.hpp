#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rainskit/complex_matrix.hpp"

namespace rainskit {

/// Completely positive trace-preserving map, held as a Kraus list and/or a
/// Choi operator on S (x) B with |S| = dim_in. Validated on construction:
/// trace preservation to 1e-10, Choi PSD to -1e-10, Tr_B(choi) = I_S, and
/// agreement of the two representations when both are present.
struct Channel {
    int dim_in = 0;
    int dim_out = 0;
    std::vector<ComplexMatrix> kraus;  // possibly empty
    ComplexMatrix choi;                // always populated after validation

    static Channel from_kraus(int dim_in, int dim_out, std::vector<ComplexMatrix> kraus);
    static Channel from_choi(int dim_in, int dim_out, ComplexMatrix choi);

    bool has_kraus() const { return !kraus.empty(); }
};

/// Density operator with declared tensor factors; PSD to -1e-10, unit trace
/// to 1e-10.
struct BipartiteState {
    ComplexMatrix matrix;
    DimSpec dims;

    static BipartiteState make(ComplexMatrix m, DimSpec dims);
};

ComplexMatrix choi_from_kraus(const std::vector<ComplexMatrix>& kraus);

/// Kraus operators of a Choi matrix via its eigendecomposition; eigenvalues
/// below 1e-12 relative are dropped.
std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, int dim_in, int dim_out);

/// Apply the channel to subsystem `acted` of rho through the Choi sandwich
/// identity; the output factor takes the acted slot with dimension dim_out.
BipartiteState apply_channel(const Channel& n, const BipartiteState& rho, int acted);

/// Kraus-sum application, kept as an independent route for cross-checking.
BipartiteState apply_channel_kraus(const Channel& n, const BipartiteState& rho, int acted);

Channel compose(const Channel& second, const Channel& first);

Channel make_identity(int d);
Channel make_depolarizing(int d, double p);
/// Erasure with the flag convention: output space is the input space plus one
/// extra coordinate |e> = |d>, inputs embedded in the first d coordinates.
Channel make_erasure(int d, double p);
/// Erasure acting on an already-flagged space C^{d+1}: damps the first d
/// coordinates toward the existing flag and fixes the flag itself. Composes
/// exactly within the erasure family.
Channel make_erasure_extend(int d, double q);
Channel make_dephasing(double p);
Channel make_amplitude_damping(double gamma);
/// Constant channel: discards the input and prepares `target`.
Channel make_replace(int dim_in, const ComplexMatrix& target);

/// Kraus from a random isometry: orthonormalized Gaussian of shape
/// (dim_out * env_dim) x dim_in. Deterministic per seed.
Channel random_channel(int dim_in, int dim_out, int env_dim, uint64_t seed);

Channel random_unitary_channel(int d, uint64_t seed);

BipartiteState random_state(const DimSpec& dims, uint64_t seed);

/// PPT by construction across the cut splitting the factor list at
/// `a_factors`: a mixture of random product states.
BipartiteState random_ppt_state(const DimSpec& dims, int a_factors, uint64_t seed);

/// One-way LOCC channel sum_x F^x (x) G^x on A (x) B: a rank-1-branch
/// instrument on A (Kraus slices of a random isometry A -> A' (x) X) with an
/// independent random conditional channel on B per branch.
Channel random_one_way_locc(int dim_a_in, int dim_b_in, int dim_a_out, int dim_b_out,
                            int branches, uint64_t seed);

/// LOCC-form channel that discards both sides and prepares a mixture of
/// product states (PPT output regardless of input).
Channel make_replace_with_product_mixture(int dim_a_in, int dim_b_in, int dim_a_out,
                                          int dim_b_out, int terms, uint64_t seed);

/// Choi of T_{B'} o L o T_B for a bipartite channel L : A(x)B -> A'(x)B';
/// PSD iff L is PPT-preserving.
ComplexMatrix ppt_conjugated_choi(const Channel& l, int dim_a_in, int dim_b_in, int dim_a_out,
                                  int dim_b_out);

}  // namespace rainskit
