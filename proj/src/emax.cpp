#include "rainskit/emax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rainskit/eigh.hpp"
#include "rainskit/hermitian_sdp.hpp"
#include "rainskit/linalg.hpp"
#include "rainskit/rng.hpp"

namespace rainskit {

namespace {

Certificate make_certificate(const VerifyReport& vr, int iterations) {
    Certificate c;
    c.lower = 0.5 * vr.dual_obj;
    c.upper = 0.5 * vr.primal_obj;
    c.primal_residual = vr.primal_residual;
    c.dual_residual = vr.dual_residual;
    c.min_eig_x = vr.min_eig_x;
    c.min_eig_s = vr.min_eig_s;
    c.iterations = iterations;
    return c;
}

SdpSolution solve_or_throw(const SdpProblem& p, const SdpOptions& opts, const char* what) {
    SdpSolution sol = solve(p, opts);
    if (sol.status != SdpStatus::Optimal)
        throw SolverFailure(sol.status, std::string(what) + ": solver returned " + to_string(sol.status));
    return sol;
}

int side_product(const DimSpec& dims, const std::vector<int>& factors) {
    int p = 1;
    for (int k : factors) p *= dims.dim(k);
    return p;
}

void require_gate(SepConeMode mode, int dim_a, int dim_b, const char* what) {
    if (mode == SepConeMode::ExactSmallDims && !sep_cone_exact_allowed(dim_a, dim_b))
        throw std::invalid_argument(std::string(what) +
                                    ": ExactSmallDims requested outside the |A||B| <= 6 regime");
}

Channel tensor_channel(const Channel& n, const Channel& m) {
    const std::vector<ComplexMatrix> kn =
        n.has_kraus() ? n.kraus : kraus_from_choi(n.choi, n.dim_in, n.dim_out);
    const std::vector<ComplexMatrix> km =
        m.has_kraus() ? m.kraus : kraus_from_choi(m.choi, m.dim_in, m.dim_out);
    std::vector<ComplexMatrix> ks;
    ks.reserve(kn.size() * km.size());
    for (const auto& a : kn)
        for (const auto& b : km) ks.push_back(kron(a, b));
    return Channel::from_kraus(n.dim_in * m.dim_in, n.dim_out * m.dim_out, std::move(ks));
}

}  // namespace

bool sep_cone_exact_allowed(int dim_a, int dim_b) { return dim_a * dim_b <= 6; }

MeasureResult w_sep_operator(const ComplexMatrix& op, const DimSpec& dims, const Bipartition& cut,
                             SepConeMode mode, const SdpOptions& opts) {
    dims.require_matches(op);
    cut.require_valid(dims);
    const int dim_b = side_product(dims, cut.b_side);
    const int dim_a = dims.total() / dim_b;
    require_gate(mode, dim_a, dim_b, "w_sep_operator");

    const int n = dims.total();
    const std::vector<int> b_side = cut.b_side;
    auto id_op = [](const ComplexMatrix& h) { return h; };
    auto neg_id = [](const ComplexMatrix& h) {
        ComplexMatrix k = h;
        k *= -1.0;
        return k;
    };
    auto tb = [&](const ComplexMatrix& h) { return partial_transpose(h, dims, b_side); };

    HermitianSdpBuilder b;
    const int vx = b.add_hermitian_var(n);
    const int vz1 = b.add_hermitian_var(n);  // X - op
    const int vz2 = b.add_hermitian_var(n);  // T_B X
    b.add_objective(vx, ComplexMatrix::identity(n));
    b.add_matrix_equality(n, {{vx, id_op}, {vz1, neg_id}}, {}, op);
    b.add_matrix_equality(n, {{vx, tb}, {vz2, neg_id}}, {}, ComplexMatrix::zero(n, n));

    const SdpProblem p = b.build();
    SdpSolution sol = solve_or_throw(p, opts, "w_sep_operator");
    const VerifyReport vr = verify(p, sol, opts.tol);

    MeasureResult r;
    r.value = HermitianSdpBuilder::primal_value(sol);
    r.log2_value = std::log2(r.value);
    r.optimizers = {b.extract_hermitian(sol, vx)};
    r.cert = make_certificate(vr, sol.iterations);
    r.exact = sep_cone_exact_allowed(dim_a, dim_b);
    return r;
}

MeasureResult w_sep(const BipartiteState& rho, const Bipartition& cut, SepConeMode mode,
                    const SdpOptions& opts) {
    return w_sep_operator(rho.matrix, rho.dims, cut, mode, opts);
}

double e_max_state(const BipartiteState& rho, const Bipartition& cut, SepConeMode mode,
                   const SdpOptions& opts) {
    return w_sep(rho, cut, mode, opts).log2_value;
}

MeasureResult sigma_channel(const Channel& n, SepConeMode mode, const SdpOptions& opts) {
    const int ds = n.dim_in;
    const int db = n.dim_out;
    require_gate(mode, ds, db, "sigma_channel");
    const int nsb = ds * db;
    const DimSpec dims{ds, db};

    auto id_op = [](const ComplexMatrix& h) { return h; };
    auto neg_id = [](const ComplexMatrix& h) {
        ComplexMatrix k = h;
        k *= -1.0;
        return k;
    };
    auto tb = [&](const ComplexMatrix& h) { return partial_transpose(h, dims, 1); };
    auto neg_trb_adj = [&](const ComplexMatrix& h) {
        ComplexMatrix k = kron(h, ComplexMatrix::identity(db));
        k *= -1.0;
        return k;
    };

    HermitianSdpBuilder b;
    const int vy = b.add_hermitian_var(nsb);
    const int vz1 = b.add_hermitian_var(nsb);  // Y - J
    const int vz2 = b.add_hermitian_var(nsb);  // T_B Y
    const int vz3 = b.add_hermitian_var(ds);   // t I - Tr_B Y
    const int vt = b.add_scalar_var();
    b.add_objective_scalar(vt, 1.0);
    b.add_matrix_equality(nsb, {{vy, id_op}, {vz1, neg_id}}, {}, n.choi);
    b.add_matrix_equality(nsb, {{vy, tb}, {vz2, neg_id}}, {}, ComplexMatrix::zero(nsb, nsb));
    b.add_matrix_equality(ds, {{vy, neg_trb_adj}, {vz3, neg_id}},
                          {{vt, ComplexMatrix::identity(ds)}}, ComplexMatrix::zero(ds, ds));

    const SdpProblem p = b.build();
    SdpSolution sol = solve_or_throw(p, opts, "sigma_channel");
    const VerifyReport vr = verify(p, sol, opts.tol);

    MeasureResult r;
    r.value = HermitianSdpBuilder::primal_value(sol);
    r.log2_value = std::log2(r.value);
    r.optimizers = {b.extract_hermitian(sol, vy)};
    r.cert = make_certificate(vr, sol.iterations);
    r.exact = sep_cone_exact_allowed(ds, db);
    return r;
}

double e_max_channel(const Channel& n, SepConeMode mode, const SdpOptions& opts) {
    return sigma_channel(n, mode, opts).log2_value;
}

ComplexMatrix construct_feasible_e_sep(const ComplexMatrix& c, const ComplexMatrix& y,
                                       const DimSpec& state_dims, int dim_in, int dim_out) {
    if (state_dims.count() != 3) throw std::invalid_argument("construct_feasible_e_sep: need (A',A,B')");
    if (state_dims.dim(1) != dim_in)
        throw std::invalid_argument("construct_feasible_e_sep: contraction legs differ");
    state_dims.require_matches(c);
    if (y.rows() != dim_in * dim_out)
        throw std::invalid_argument("construct_feasible_e_sep: channel operator side mismatch");

    std::vector<int> f = state_dims.factors;
    f.push_back(dim_in);
    f.push_back(dim_out);
    const DimSpec big{f};
    const ComplexMatrix joined = kron(c, y);
    const ComplexMatrix contracted = sandwich_max_entangled(joined, big, 1, 3);
    const DimSpec res{state_dims.dim(0), state_dims.dim(2), dim_out};
    ComplexMatrix e = permute_systems(contracted, res, {0, 2, 1});
    e.hermitize();
    return e;
}

EmaxAmortizationReport verify_emax_amortization(const Channel& n, const BipartiteState& rho,
                                                SepConeMode mode, const SdpOptions& opts) {
    if (rho.dims.count() != 3) throw std::invalid_argument("verify_emax_amortization: need dims (A',A,B')");
    if (rho.dims.dim(1) != n.dim_in)
        throw std::invalid_argument("verify_emax_amortization: factor A does not match channel input");

    EmaxAmortizationReport rep;
    rep.w_sep_input = w_sep(rho, Bipartition{{2}}, mode, opts);
    rep.sigma = sigma_channel(n, mode, opts);
    rep.omega = apply_channel(n, rho, 1);
    rep.w_sep_output = w_sep(rep.omega, Bipartition{{1, 2}}, mode, opts);

    rep.constructed_e = construct_feasible_e_sep(rep.w_sep_input.optimizers[0],
                                                 rep.sigma.optimizers[0], rho.dims, n.dim_in, n.dim_out);
    ComplexMatrix diff = rep.constructed_e;
    diff -= rep.omega.matrix;
    rep.e_constraint_min_eig = min_eigenvalue(diff);
    rep.e_ppt_min_eig =
        min_eigenvalue(partial_transpose(rep.constructed_e, rep.omega.dims, std::vector<int>{1, 2}));
    rep.e_trace = rep.constructed_e.trace().real();
    rep.margin = rep.sigma.value * rep.w_sep_input.value - rep.w_sep_output.value;
    rep.construction_margin = rep.sigma.value * rep.w_sep_input.value - rep.e_trace;
    rep.scale = std::max({1.0, rep.w_sep_input.value, rep.sigma.value, rep.w_sep_output.value});
    return rep;
}

MinimaxReport minimax_consistency_check(const Channel& n, int samples, uint64_t seed,
                                        const SdpOptions& opts) {
    if (!sep_cone_exact_allowed(n.dim_in, n.dim_out))
        throw std::invalid_argument("minimax_consistency_check: channel outside the exact-cone gate");
    if (samples < 1) throw std::invalid_argument("minimax_consistency_check: samples >= 1");

    MinimaxReport rep;
    rep.log2_sigma = sigma_channel(n, SepConeMode::ExactSmallDims, opts).log2_value;

    Rng rng(seed);
    const int ds = n.dim_in;
    const DimSpec dims{ds, n.dim_out};

    auto floored_density = [&](const ComplexMatrix& raw) {
        // Invertibility ansatz: floor the spectrum at 1e-8 and renormalize.
        EighResult eg = eigh(raw);
        ComplexMatrix out(ds, ds);
        double tr = 0.0;
        for (int k = 0; k < ds; ++k) tr += std::max(eg.values[static_cast<size_t>(k)], 1e-8);
        for (int k = 0; k < ds; ++k) {
            const double lam = std::max(eg.values[static_cast<size_t>(k)], 1e-8) / tr;
            for (int i = 0; i < ds; ++i)
                for (int j = 0; j < ds; ++j)
                    out(i, j) += lam * eg.vectors(i, k) * std::conj(eg.vectors(j, k));
        }
        return out;
    };

    std::vector<ComplexMatrix> inputs;
    inputs.push_back(ComplexMatrix::identity(ds) * cplx(1.0 / ds));  // maximally mixed probe
    {
        std::vector<double> d(static_cast<size_t>(ds), 1e-6 / std::max(1, ds - 1));
        d[0] = 1.0 - 1e-6;
        inputs.push_back(floored_density(ComplexMatrix::diag(d)));  // near-singular probe
    }
    while (static_cast<int>(inputs.size()) < samples) {
        const ComplexMatrix g = rng.ginibre(ds, ds);
        ComplexMatrix raw = g * g.adjoint();
        raw *= 1.0 / raw.trace().real();
        inputs.push_back(floored_density(raw));
    }

    rep.max_inner = -std::numeric_limits<double>::infinity();
    for (const auto& rho_s : inputs) {
        const ComplexMatrix half = kron(sqrtm_psd(rho_s), ComplexMatrix::identity(n.dim_out));
        ComplexMatrix sandwiched = half * n.choi * half;
        sandwiched.hermitize();
        const double inner =
            w_sep_operator(sandwiched, dims, Bipartition{{1}}, SepConeMode::ExactSmallDims, opts)
                .log2_value;
        rep.inner_values.push_back(inner);
        rep.max_inner = std::max(rep.max_inner, inner);
    }
    rep.all_below = true;
    for (double v : rep.inner_values)
        if (v > rep.log2_sigma + 1e-6) rep.all_below = false;
    rep.gap_to_sigma = rep.log2_sigma - rep.max_inner;
    return rep;
}

SubadditivityProbe sigma_subadditivity_probe(const Channel& n, const Channel& m,
                                             const SdpOptions& opts) {
    const Channel nm = tensor_channel(n, m);
    SubadditivityProbe probe;
    probe.tensor_relaxed_log2 =
        sigma_channel(nm, SepConeMode::PptRelaxation, opts).log2_value;

    const SepConeMode mode_n = sep_cone_exact_allowed(n.dim_in, n.dim_out)
                                   ? SepConeMode::ExactSmallDims
                                   : SepConeMode::PptRelaxation;
    const SepConeMode mode_m = sep_cone_exact_allowed(m.dim_in, m.dim_out)
                                   ? SepConeMode::ExactSmallDims
                                   : SepConeMode::PptRelaxation;
    probe.parts_exact =
        mode_n == SepConeMode::ExactSmallDims && mode_m == SepConeMode::ExactSmallDims;
    probe.sum_parts_log2 = e_max_channel(n, mode_n, opts) + e_max_channel(m, mode_m, opts);
    probe.relaxed_subadditive = probe.tensor_relaxed_log2 <= probe.sum_parts_log2 + 1e-6;
    return probe;
}

}  // namespace rainskit
