#include "rainskit/amortization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rainskit/eigh.hpp"
#include "rainskit/hermitian_sdp.hpp"
#include "rainskit/linalg.hpp"
#include "rainskit/rng.hpp"

namespace rainskit {

namespace {

BipartiteState rewrap(const BipartiteState& s, DimSpec dims) {
    return BipartiteState::make(s.matrix, std::move(dims));
}

ComplexMatrix contract_through(const ComplexMatrix& state_op, const ComplexMatrix& channel_op,
                               const DimSpec& state_dims, int dim_in, int dim_out) {
    // factors (A', A, B', S, B); pair (A, S) contracted; output (A', B, B').
    std::vector<int> f = state_dims.factors;
    f.push_back(dim_in);
    f.push_back(dim_out);
    const DimSpec big{f};
    const ComplexMatrix joined = kron(state_op, channel_op);
    const ComplexMatrix contracted = sandwich_max_entangled(joined, big, 1, 3);
    const DimSpec res{state_dims.dim(0), state_dims.dim(2), dim_out};
    return permute_systems(contracted, res, {0, 2, 1});
}

}  // namespace

FeasiblePair construct_feasible_pair(const ComplexMatrix& c, const ComplexMatrix& d,
                                     const ComplexMatrix& v, const ComplexMatrix& y,
                                     const DimSpec& state_dims, int dim_in, int dim_out) {
    if (state_dims.count() != 3) throw std::invalid_argument("construct_feasible_pair: need (A',A,B')");
    if (state_dims.dim(1) != dim_in)
        throw std::invalid_argument("construct_feasible_pair: contraction legs S and A differ");
    state_dims.require_matches(c);
    state_dims.require_matches(d);
    if (v.rows() != dim_in * dim_out || y.rows() != dim_in * dim_out)
        throw std::invalid_argument("construct_feasible_pair: channel operator side mismatch");

    FeasiblePair p;
    p.e = contract_through(c, v, state_dims, dim_in, dim_out) +
          contract_through(d, y, state_dims, dim_in, dim_out);
    p.f = contract_through(c, y, state_dims, dim_in, dim_out) +
          contract_through(d, v, state_dims, dim_in, dim_out);
    p.e.hermitize();
    p.f.hermitize();
    return p;
}

AmortizationReport verify_amortization(const Channel& n, const BipartiteState& rho,
                                       const SdpOptions& opts) {
    if (rho.dims.count() != 3) throw std::invalid_argument("verify_amortization: need dims (A',A,B')");
    if (rho.dims.dim(1) != n.dim_in)
        throw std::invalid_argument("verify_amortization: factor A does not match channel input");

    AmortizationReport rep;
    rep.w_input = w_state(rho, Bipartition{{2}}, opts);
    rep.gamma = gamma_channel(n, opts);
    rep.omega = apply_channel(n, rho, 1);
    rep.w_output = w_state(rep.omega, Bipartition{{1, 2}}, opts);

    FeasiblePair pair = construct_feasible_pair(rep.w_input.optimizers[0], rep.w_input.optimizers[1],
                                                rep.gamma.optimizers[0], rep.gamma.optimizers[1],
                                                rho.dims, n.dim_in, n.dim_out);
    rep.constructed_e = pair.e;
    rep.constructed_f = pair.f;
    rep.e_min_eig = min_eigenvalue(pair.e);
    rep.f_min_eig = min_eigenvalue(pair.f);

    ComplexMatrix lhs = pair.e;
    lhs -= pair.f;
    lhs = partial_transpose(lhs, rep.omega.dims, std::vector<int>{1, 2});
    lhs -= rep.omega.matrix;
    rep.constraint_min_eig = min_eigenvalue(lhs);

    rep.pair_objective = (pair.e.trace() + pair.f.trace()).real();
    rep.margin = rep.gamma.value * rep.w_input.value - rep.w_output.value;
    rep.construction_margin = rep.gamma.value * rep.w_input.value - rep.pair_objective;
    rep.scale = std::max({1.0, rep.w_input.value, rep.gamma.value, rep.w_output.value});
    return rep;
}

double entanglement_test_bound(const ComplexMatrix& sigma, int m_dim) {
    const DimSpec dims{m_dim, m_dim};
    if (!ppt_prime_member(sigma, dims, Bipartition{{1}}, 1e-9))
        throw std::invalid_argument("entanglement_test_bound: operator is not in PPT'");
    return herm_inner(phi_state(m_dim), sigma);
}

bool fidelity_rmax_lower_bound(const BipartiteState& omega, int m_dim, double epsilon,
                               const SdpOptions& opts) {
    if (omega.dims.total() != m_dim * m_dim)
        throw std::invalid_argument("fidelity_rmax_lower_bound: dims do not match M");
    const double f = fidelity(omega.matrix, phi_state(m_dim));
    if (f < 1.0 - epsilon - 1e-9)
        throw std::invalid_argument("fidelity_rmax_lower_bound: fidelity premise violated");
    if (epsilon >= 1.0) return true;
    const double target = std::log2((1.0 - epsilon) * m_dim);
    const BipartiteState wrapped = BipartiteState::make(omega.matrix, DimSpec{m_dim, m_dim});
    return r_max_state(wrapped, Bipartition{{1}}, opts) >= target - 1e-6;
}

ConverseBound strong_converse_bound(int n, long m, double epsilon, double r_max) {
    if (n < 1 || m < 1) throw std::invalid_argument("strong_converse_bound: need n, M >= 1");
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("strong_converse_bound: epsilon must lie in [0, 1)");
    ConverseBound out;
    const double log2m = std::log2(static_cast<double>(m));
    out.qubit_rate = log2m / n;
    out.bound_holds = log2m <= n * r_max + std::log2(1.0 / (1.0 - epsilon)) + 1e-12;
    out.fidelity_ceiling = std::min(1.0, std::pow(2.0, -static_cast<double>(n) * (out.qubit_rate - r_max)));
    return out;
}

ProtocolTranscript build_random_transcript(const Channel& n, int rounds, uint64_t seed) {
    if (rounds < 1) throw std::invalid_argument("build_random_transcript: rounds >= 1");
    Rng rng(seed);
    ProtocolTranscript t;
    t.rounds = rounds;
    t.channel = n;
    t.target_m = 2;

    const int da = 2, db = 2;  // A' and B' stay qubits
    const DimSpec rho_dims{da, n.dim_in, db};
    const DimSpec sigma_dims{da, n.dim_out, db};

    BipartiteState rho = random_ppt_state(rho_dims, 2, static_cast<uint64_t>(rng.uniform() * 9007199254740992.0));
    for (int i = 0; i < rounds; ++i) {
        t.rho_states.push_back(rho);
        BipartiteState sigma = apply_channel(n, rho, 1);
        t.sigma_states.push_back(sigma);
        if (i + 1 < rounds) {
            const Channel p = random_one_way_locc(da, n.dim_out * db, da * n.dim_in, db, 2,
                                                  static_cast<uint64_t>(rng.uniform() * 9007199254740992.0));
            t.interleaved.push_back(p);
            BipartiteState flat = rewrap(sigma, DimSpec{sigma_dims.total()});
            BipartiteState next = apply_channel(p, flat, 0);
            rho = rewrap(next, rho_dims);
        }
    }
    return t;
}

ProtocolTranscript build_teleportation_transcript() {
    ProtocolTranscript t;
    t.rounds = 1;
    t.channel = make_identity(2);
    t.target_m = 2;
    ComplexMatrix zero_b(2, 2);
    zero_b(0, 0) = 1.0;
    const ComplexMatrix rho = kron(phi_state(2), zero_b);
    t.rho_states.push_back(BipartiteState::make(rho, DimSpec{2, 2, 2}));
    t.sigma_states.push_back(apply_channel(t.channel, t.rho_states.front(), 1));
    return t;
}

ProtocolTranscript build_degenerate_transcript(int rounds, uint64_t seed) {
    if (rounds < 1) throw std::invalid_argument("build_degenerate_transcript: rounds >= 1");
    Rng rng(seed);
    ProtocolTranscript t;
    t.rounds = rounds;
    t.target_m = 2;
    ComplexMatrix zero_b(2, 2);
    zero_b(0, 0) = 1.0;
    t.channel = make_replace(2, zero_b);  // constant channel, zero max-Rains information

    const DimSpec rho_dims{2, 2, 2};
    BipartiteState rho =
        random_ppt_state(rho_dims, 2, static_cast<uint64_t>(rng.uniform() * 9007199254740992.0));
    for (int i = 0; i < rounds; ++i) {
        t.rho_states.push_back(rho);
        BipartiteState sigma = apply_channel(t.channel, rho, 1);
        t.sigma_states.push_back(sigma);
        if (i + 1 < rounds) {
            const Channel p = make_replace_with_product_mixture(
                2, 4, 4, 2, 4, static_cast<uint64_t>(rng.uniform() * 9007199254740992.0));
            t.interleaved.push_back(p);
            BipartiteState flat = rewrap(sigma, DimSpec{8});
            rho = rewrap(apply_channel(p, flat, 0), rho_dims);
        }
    }
    return t;
}

ProtocolCheck run_protocol_and_check(const ProtocolTranscript& t, const SdpOptions& opts) {
    if (t.rounds < 1 || static_cast<int>(t.rho_states.size()) != t.rounds ||
        static_cast<int>(t.sigma_states.size()) != t.rounds ||
        static_cast<int>(t.interleaved.size()) != t.rounds - 1)
        throw std::invalid_argument("run_protocol_and_check: malformed transcript");

    ProtocolCheck chk;
    chk.r_channel = r_max_channel(t.channel, opts);

    // Transcript data-chain invariants.
    chk.transcript_consistent = true;
    for (int i = 0; i < t.rounds; ++i) {
        const BipartiteState direct = apply_channel(t.channel, t.rho_states[static_cast<size_t>(i)], 1);
        ComplexMatrix diff = direct.matrix;
        diff -= t.sigma_states[static_cast<size_t>(i)].matrix;
        if (diff.max_abs() > 1e-10) chk.transcript_consistent = false;
        if (i + 1 < t.rounds) {
            const BipartiteState flat =
                rewrap(t.sigma_states[static_cast<size_t>(i)], DimSpec{t.sigma_states[static_cast<size_t>(i)].dims.total()});
            const BipartiteState next = apply_channel(t.interleaved[static_cast<size_t>(i)], flat, 0);
            ComplexMatrix d2 = next.matrix;
            d2 -= t.rho_states[static_cast<size_t>(i + 1)].matrix;
            if (d2.max_abs() > 1e-10) chk.transcript_consistent = false;
        }
    }

    for (int i = 0; i < t.rounds; ++i) {
        chk.r_rho.push_back(r_max_state(t.rho_states[static_cast<size_t>(i)], Bipartition{{2}}, opts));
        chk.r_sigma.push_back(r_max_state(t.sigma_states[static_cast<size_t>(i)], Bipartition{{1, 2}}, opts));
    }
    chk.r_initial = chk.r_rho.front();
    chk.final_r = chk.r_sigma.back();

    chk.initial_ppt_ok = chk.r_initial <= 1e-6;
    chk.monotone_ok = true;
    for (int i = 1; i < t.rounds; ++i)
        if (chk.r_rho[static_cast<size_t>(i)] > chk.r_sigma[static_cast<size_t>(i - 1)] + 1e-6)
            chk.monotone_ok = false;
    chk.per_round_gain_ok = true;
    for (int i = 0; i < t.rounds; ++i)
        if (chk.r_sigma[static_cast<size_t>(i)] - chk.r_rho[static_cast<size_t>(i)] > chk.r_channel + 1e-6)
            chk.per_round_gain_ok = false;
    chk.final_bound_ok = chk.final_r <= t.rounds * chk.r_channel + 1e-5;

    // Final reduction to (M_A, M_B): trace out B' and measure the overlap
    // with Phi_M. Tracing out is itself a local channel, hence PPT-P.
    const BipartiteState& last = t.sigma_states.back();
    if (last.dims.dim(0) == t.target_m && last.dims.dim(1) == t.target_m) {
        const ComplexMatrix omega_ab = partial_trace(last.matrix, last.dims, 2);
        const double f = fidelity(omega_ab, phi_state(t.target_m));
        chk.measured_epsilon = std::clamp(1.0 - f, 0.0, 1.0);
        if (chk.measured_epsilon < 1.0) {
            const double rhs = t.rounds * chk.r_channel + std::log2(1.0 / (1.0 - chk.measured_epsilon));
            chk.converse_arithmetic_ok = std::log2(static_cast<double>(t.target_m)) <= rhs + 1e-6;
        } else {
            chk.converse_arithmetic_ok = true;  // vacuous at eps = 1
        }
    } else {
        chk.converse_arithmetic_ok = true;
    }

    chk.all_ok = chk.transcript_consistent && chk.initial_ppt_ok && chk.monotone_ok &&
                 chk.per_round_gain_ok && chk.final_bound_ok && chk.converse_arithmetic_ok;
    return chk;
}

}  // namespace rainskit
