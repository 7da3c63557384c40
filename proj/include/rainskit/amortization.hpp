#pragma once

#include <cstdint>
#include <vector>

#include "rainskit/channels.hpp"
#include "rainskit/rains.hpp"

namespace rainskit {

struct FeasiblePair {
    ComplexMatrix e, f;
};

/// Postselected-teleportation contraction of W-feasible (C, D) on (A',A,B')
/// through Gamma-feasible (V, Y) on (S,B):
///   E = <Ups|_SA  C (x) V + D (x) Y  |Ups>_SA,
///   F = <Ups|_SA  C (x) Y + D (x) V  |Ups>_SA,
/// returned on factors (A', B, B'). The pair is feasible for the W program of
/// the channel output and satisfies Tr(E+F) <= Tr(C+D) * ||Tr_B(V+Y)||_inf.
FeasiblePair construct_feasible_pair(const ComplexMatrix& c, const ComplexMatrix& d,
                                     const ComplexMatrix& v, const ComplexMatrix& y,
                                     const DimSpec& state_dims, int dim_in, int dim_out);

struct AmortizationReport {
    MeasureResult w_input;   // W(A'A;B')_rho
    MeasureResult gamma;     // Gamma(N)
    MeasureResult w_output;  // W(A';BB')_omega
    ComplexMatrix constructed_e, constructed_f;
    double e_min_eig = 0.0;
    double f_min_eig = 0.0;
    double constraint_min_eig = 0.0;  // min eig of T_BB'(E-F) - N(rho)
    double pair_objective = 0.0;      // Tr(E+F)
    double margin = 0.0;              // Gamma*W_in - W_out
    double construction_margin = 0.0; // Gamma*W_in - Tr(E+F)
    double scale = 1.0;               // max(1, W_in, Gamma, W_out)
    BipartiteState omega;
};

/// Solves the three programs for (N, rho_{A'AB'}), builds the feasible pair
/// from their optimizers, and reports all margins and residuals.
AmortizationReport verify_amortization(const Channel& n, const BipartiteState& rho,
                                       const SdpOptions& opts = {});

/// Tr{Phi_M sigma} for sigma on M (x) M; requires PPT' membership and is at
/// most 1/M for members.
double entanglement_test_bound(const ComplexMatrix& sigma, int m_dim);

/// Checks R_max(omega) >= log2((1-eps) M) given fidelity F(omega, Phi_M) >= 1-eps.
bool fidelity_rmax_lower_bound(const BipartiteState& omega, int m_dim, double epsilon,
                               const SdpOptions& opts = {});

struct ConverseBound {
    bool bound_holds = false;
    double qubit_rate = 0.0;
    double fidelity_ceiling = 0.0;
};

/// log2 M <= n r_max + log2(1/(1-eps)) and the exponential-decay ceiling
/// min(1, 2^{-n(Q - r_max)}) with Q = log2(M)/n. eps = 1 is rejected.
ConverseBound strong_converse_bound(int n, long m, double epsilon, double r_max);

/// n-round assisted protocol: the initial preparation is a PPT state on
/// (A', A, B'), each round sends A through the channel and applies an
/// interleaved LOCC-form channel (A' : B B') -> (A' A : B').
struct ProtocolTranscript {
    int rounds = 0;
    Channel channel;
    std::vector<Channel> interleaved;          // rounds-1 channels
    std::vector<BipartiteState> rho_states;    // rho^(i), dims (A', A, B')
    std::vector<BipartiteState> sigma_states;  // sigma^(i) = N(rho^(i))
    int target_m = 2;
};

ProtocolTranscript build_random_transcript(const Channel& n, int rounds, uint64_t seed);
/// One round over the identity channel: Phi on A'A teleported to the ends.
ProtocolTranscript build_teleportation_transcript();
/// Every channel (including the main one) discards and prepares PPT states.
ProtocolTranscript build_degenerate_transcript(int rounds, uint64_t seed);

struct ProtocolCheck {
    double r_channel = 0.0;
    double r_initial = 0.0;
    std::vector<double> r_rho;    // R_max(A'A;B') per round
    std::vector<double> r_sigma;  // R_max(A';BB') per round
    double final_r = 0.0;
    bool transcript_consistent = false;  // sigma = N(rho), rho = P(sigma) chains
    bool initial_ppt_ok = false;         // R_max(rho^(1)) <= 1e-6
    bool monotone_ok = false;            // R_max(rho^(i)) <= R_max(sigma^(i-1)) + 1e-6
    bool per_round_gain_ok = false;      // gain per round <= r_channel + 1e-6
    bool final_bound_ok = false;         // final <= n r_channel + 1e-5
    double measured_epsilon = 1.0;       // 1 - F(omega_{A'B}, Phi_M)
    bool converse_arithmetic_ok = false;
    bool all_ok = false;
};

ProtocolCheck run_protocol_and_check(const ProtocolTranscript& t, const SdpOptions& opts = {});

}  // namespace rainskit
