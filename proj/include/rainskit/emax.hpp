#pragma once

#include <cstdint>
#include <vector>

#include "rainskit/channels.hpp"
#include "rainskit/rains.hpp"

namespace rainskit {

/// Separable-cone handling: the encoding {X >= 0, T_B X >= 0} is the exact
/// separable cone when |A|*|B| <= 6 and a relaxation (lower bound on the
/// minimum) otherwise.
enum class SepConeMode { ExactSmallDims, PptRelaxation };

bool sep_cone_exact_allowed(int dim_a, int dim_b);

/// Cone program min { Tr X : X >= op, X in cone } for an arbitrary PSD
/// operator; results carry exact = true only when the encoding is exact at
/// these dimensions. Optimizer is X.
MeasureResult w_sep_operator(const ComplexMatrix& op, const DimSpec& dims, const Bipartition& cut,
                             SepConeMode mode, const SdpOptions& opts = {});

MeasureResult w_sep(const BipartiteState& rho, const Bipartition& cut, SepConeMode mode,
                    const SdpOptions& opts = {});

double e_max_state(const BipartiteState& rho, const Bipartition& cut, SepConeMode mode,
                   const SdpOptions& opts = {});

/// Sigma(N) = min { ||Tr_B Y||_inf : Y >= J^N, Y in cone(S:B) }. Optimizer is Y.
MeasureResult sigma_channel(const Channel& n, SepConeMode mode, const SdpOptions& opts = {});

double e_max_channel(const Channel& n, SepConeMode mode, const SdpOptions& opts = {});

/// E = <Ups|_SA C (x) Y |Ups>_SA on (A', B, B') from cone-feasible C (input
/// program) and Y (channel program).
ComplexMatrix construct_feasible_e_sep(const ComplexMatrix& c, const ComplexMatrix& y,
                                       const DimSpec& state_dims, int dim_in, int dim_out);

struct EmaxAmortizationReport {
    MeasureResult w_sep_input;
    MeasureResult sigma;
    MeasureResult w_sep_output;
    ComplexMatrix constructed_e;
    double e_constraint_min_eig = 0.0;  // min eig of E - N(rho)
    double e_ppt_min_eig = 0.0;         // min eig of T_BB'(E): PPT witness of separability
    double e_trace = 0.0;
    double margin = 0.0;               // Sigma*W_in - W_out
    double construction_margin = 0.0;  // Sigma*W_in - Tr E
    double scale = 1.0;
    BipartiteState omega;
};

EmaxAmortizationReport verify_emax_amortization(const Channel& n, const BipartiteState& rho,
                                                SepConeMode mode, const SdpOptions& opts = {});

struct MinimaxReport {
    double log2_sigma = 0.0;
    std::vector<double> inner_values;  // per sampled input density
    double max_inner = 0.0;
    bool all_below = false;      // every inner value <= log2_sigma + 1e-6
    double gap_to_sigma = 0.0;   // log2_sigma - max_inner
};

/// Samples channel input densities (the maximally mixed and a near-singular
/// probe included), floors eigenvalues at 1e-8 with renormalization, and
/// solves the inner separable-cone minimization for each sandwiched Choi.
MinimaxReport minimax_consistency_check(const Channel& n, int samples, uint64_t seed,
                                        const SdpOptions& opts = {});

struct SubadditivityProbe {
    double tensor_relaxed_log2 = 0.0;  // relaxed value on N (x) M
    double sum_parts_log2 = 0.0;       // e_max(N) + e_max(M), exact when gated
    bool parts_exact = false;
    bool relaxed_subadditive = false;  // observational only
};

/// Relaxation probe on a tensor pair; the tensor dimensions force
/// PptRelaxation, so this observes the relaxed quantity, not E_max itself.
SubadditivityProbe sigma_subadditivity_probe(const Channel& n, const Channel& m,
                                             const SdpOptions& opts = {});

}  // namespace rainskit
