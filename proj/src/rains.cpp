#include "rainskit/rains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rainskit/eigh.hpp"
#include "rainskit/hermitian_sdp.hpp"
#include "rainskit/linalg.hpp"

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

}  // namespace

void Bipartition::require_valid(const DimSpec& dims) const {
    if (b_side.empty()) throw std::invalid_argument("Bipartition: empty B side");
    std::vector<bool> seen(static_cast<size_t>(dims.count()), false);
    for (int k : b_side) {
        if (k < 0 || k >= dims.count() || seen[static_cast<size_t>(k)])
            throw std::invalid_argument("Bipartition: bad factor index");
        seen[static_cast<size_t>(k)] = true;
    }
    if (static_cast<int>(b_side.size()) == dims.count())
        throw std::invalid_argument("Bipartition: A side is empty");
}

std::vector<int> Bipartition::a_side(const DimSpec& dims) const {
    std::vector<int> a;
    for (int k = 0; k < dims.count(); ++k)
        if (std::find(b_side.begin(), b_side.end(), k) == b_side.end()) a.push_back(k);
    return a;
}

ComplexMatrix positive_part(const ComplexMatrix& h) {
    EighResult eg = eigh(h);
    const int n = h.rows();
    ComplexMatrix out(n, n);
    for (int k = 0; k < n; ++k) {
        const double lam = eg.values[static_cast<size_t>(k)];
        if (lam <= 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out(i, j) += lam * eg.vectors(i, k) * std::conj(eg.vectors(j, k));
    }
    return out;
}

ComplexMatrix negative_part(const ComplexMatrix& h) {
    ComplexMatrix neg = positive_part(h);
    neg -= h;
    neg.hermitize();
    return neg;
}

double dmax(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    if (rho.rows() != sigma.rows() || !rho.square() || !sigma.square())
        throw std::invalid_argument("dmax: shape mismatch");
    const double scale_r = 1.0 + rho.max_abs();
    const double scale_s = 1.0 + sigma.max_abs();
    if (min_eigenvalue(rho) < -1e-9 * scale_r || min_eigenvalue(sigma) < -1e-9 * scale_s)
        throw std::invalid_argument("dmax: non-PSD input");

    const int n = rho.rows();
    EighResult es = eigh(sigma);
    const double lmax = std::max(es.values.back(), 0.0);
    const double support_tol = 1e-9 * std::max(1.0, lmax);

    // Kernel test: any sigma-null vector with rho-weight above tolerance
    // pushes the value to +infinity.
    ComplexMatrix sigma_inv_half(n, n);
    for (int k = 0; k < n; ++k) {
        const double lam = es.values[static_cast<size_t>(k)];
        if (lam <= support_tol) {
            cplx w = 0.0;
            for (int i = 0; i < n; ++i) {
                cplx rv = 0.0;
                for (int j = 0; j < n; ++j) rv += rho(i, j) * es.vectors(j, k);
                w += std::conj(es.vectors(i, k)) * rv;
            }
            if (w.real() > 1e-9 * scale_r) return std::numeric_limits<double>::infinity();
            continue;
        }
        const double inv = 1.0 / std::sqrt(lam);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                sigma_inv_half(i, j) += inv * es.vectors(i, k) * std::conj(es.vectors(j, k));
    }
    ComplexMatrix m = sigma_inv_half * rho * sigma_inv_half;
    m.hermitize();
    const double top = eigvalsh(m).back();
    return std::log2(std::max(top, 0.0));
}

bool ppt_prime_member(const ComplexMatrix& sigma, const DimSpec& dims, const Bipartition& cut,
                      double tol) {
    dims.require_matches(sigma);
    cut.require_valid(dims);
    if (!sigma.is_hermitian()) return false;
    if (min_eigenvalue(sigma) < -tol) return false;
    const ComplexMatrix tb = partial_transpose(sigma, dims, cut.b_side);
    return trace_norm(tb) <= 1.0 + tol;
}

MeasureResult w_state(const BipartiteState& rho, const Bipartition& cut, const SdpOptions& opts) {
    cut.require_valid(rho.dims);
    const int n = rho.dims.total();
    const DimSpec dims = rho.dims;
    const std::vector<int> b_side = cut.b_side;

    auto tb = [&](const ComplexMatrix& h) { return partial_transpose(h, dims, b_side); };
    auto neg_tb = [&](const ComplexMatrix& h) {
        ComplexMatrix k = partial_transpose(h, dims, b_side);
        k *= -1.0;
        return k;
    };
    auto neg_id = [](const ComplexMatrix& h) {
        ComplexMatrix k = h;
        k *= -1.0;
        return k;
    };

    HermitianSdpBuilder b;
    const int vc = b.add_hermitian_var(n);
    const int vd = b.add_hermitian_var(n);
    const int vz = b.add_hermitian_var(n);
    b.add_objective(vc, ComplexMatrix::identity(n));
    b.add_objective(vd, ComplexMatrix::identity(n));
    b.add_matrix_equality(n, {{vc, tb}, {vd, neg_tb}, {vz, neg_id}}, {}, rho.matrix);

    const SdpProblem p = b.build();
    SdpSolution sol = solve_or_throw(p, opts, "w_state");
    const VerifyReport vr = verify(p, sol, opts.tol);

    MeasureResult r;
    r.value = HermitianSdpBuilder::primal_value(sol);
    r.log2_value = std::log2(r.value);
    r.optimizers = {b.extract_hermitian(sol, vc), b.extract_hermitian(sol, vd)};
    r.cert = make_certificate(vr, sol.iterations);
    return r;
}

double r_max_state(const BipartiteState& rho, const Bipartition& cut, const SdpOptions& opts) {
    return w_state(rho, cut, opts).log2_value;
}

MeasureResult gamma_channel(const Channel& n, const SdpOptions& opts) {
    const int ds = n.dim_in;
    const int db = n.dim_out;
    const int nsb = ds * db;
    const DimSpec dims{ds, db};

    auto tb = [&](const ComplexMatrix& h) { return partial_transpose(h, dims, 1); };
    auto neg_tb = [&](const ComplexMatrix& h) {
        ComplexMatrix k = partial_transpose(h, dims, 1);
        k *= -1.0;
        return k;
    };
    auto neg_id = [](const ComplexMatrix& h) {
        ComplexMatrix k = h;
        k *= -1.0;
        return k;
    };
    // Adjoint of Tr_B with a minus sign: H -> -(H (x) I_B).
    auto neg_trb_adj = [&](const ComplexMatrix& h) {
        ComplexMatrix k = kron(h, ComplexMatrix::identity(db));
        k *= -1.0;
        return k;
    };

    HermitianSdpBuilder b;
    const int vv = b.add_hermitian_var(nsb);
    const int vy = b.add_hermitian_var(nsb);
    const int vz1 = b.add_hermitian_var(nsb);
    const int vz2 = b.add_hermitian_var(ds);
    const int vt = b.add_scalar_var();
    b.add_objective_scalar(vt, 1.0);
    b.add_matrix_equality(nsb, {{vv, tb}, {vy, neg_tb}, {vz1, neg_id}}, {}, n.choi);
    b.add_matrix_equality(ds, {{vv, neg_trb_adj}, {vy, neg_trb_adj}, {vz2, neg_id}},
                          {{vt, ComplexMatrix::identity(ds)}}, ComplexMatrix::zero(ds, ds));

    const SdpProblem p = b.build();
    SdpSolution sol = solve_or_throw(p, opts, "gamma_channel");
    const VerifyReport vr = verify(p, sol, opts.tol);

    MeasureResult r;
    r.value = HermitianSdpBuilder::primal_value(sol);
    r.log2_value = std::log2(r.value);
    r.optimizers = {b.extract_hermitian(sol, vv), b.extract_hermitian(sol, vy)};
    r.cert = make_certificate(vr, sol.iterations);
    return r;
}

double r_max_channel(const Channel& n, const SdpOptions& opts) {
    return gamma_channel(n, opts).log2_value;
}

MeasureResult transposed_diamond_norm(const Channel& n, const SdpOptions& opts) {
    const int ds = n.dim_in;
    const int db = n.dim_out;
    const int nsb = ds * db;
    const DimSpec dims{ds, db};
    const ComplexMatrix jt = partial_transpose(n.choi, dims, 1);
    ComplexMatrix neg_jt = jt;
    neg_jt *= -1.0;

    auto id_op = [](const ComplexMatrix& h) { return h; };
    auto neg_id = [](const ComplexMatrix& h) {
        ComplexMatrix k = h;
        k *= -1.0;
        return k;
    };
    auto neg_trb_adj = [&](const ComplexMatrix& h) {
        ComplexMatrix k = kron(h, ComplexMatrix::identity(db));
        k *= -1.0;
        return k;
    };

    HermitianSdpBuilder b;
    const int vy = b.add_hermitian_var(nsb);
    const int vzp = b.add_hermitian_var(nsb);
    const int vzm = b.add_hermitian_var(nsb);
    const int vz2 = b.add_hermitian_var(ds);
    const int vt = b.add_scalar_var();
    b.add_objective_scalar(vt, 1.0);
    b.add_matrix_equality(nsb, {{vy, id_op}, {vzp, neg_id}}, {}, jt);
    b.add_matrix_equality(nsb, {{vy, id_op}, {vzm, neg_id}}, {}, neg_jt);
    b.add_matrix_equality(ds, {{vy, neg_trb_adj}, {vz2, neg_id}},
                          {{vt, ComplexMatrix::identity(ds)}}, ComplexMatrix::zero(ds, ds));

    const SdpProblem p = b.build();
    SdpSolution sol = solve_or_throw(p, opts, "transposed_diamond_norm");
    const VerifyReport vr = verify(p, sol, opts.tol);

    MeasureResult r;
    r.value = HermitianSdpBuilder::primal_value(sol);
    r.log2_value = std::log2(r.value);
    r.optimizers = {b.extract_hermitian(sol, vy)};
    r.cert = make_certificate(vr, sol.iterations);
    return r;
}

double q_theta(const Channel& n, const SdpOptions& opts) {
    return transposed_diamond_norm(n, opts).log2_value;
}

WSlaterPoint w_state_slater_point(const BipartiteState& rho, const Bipartition& cut, double eps) {
    cut.require_valid(rho.dims);
    const int n = rho.dims.total();
    const ComplexMatrix tbr = partial_transpose(rho.matrix, rho.dims, cut.b_side);
    WSlaterPoint pt;
    pt.c = positive_part(tbr);
    ComplexMatrix shift = ComplexMatrix::identity(n);
    pt.c += (2.0 * eps) * shift;
    pt.d = negative_part(tbr);
    pt.d += eps * shift;
    pt.z = eps * shift;
    return pt;
}

GammaSlaterPoint gamma_slater_point(const Channel& n, double eps) {
    const DimSpec dims{n.dim_in, n.dim_out};
    const ComplexMatrix tbj = partial_transpose(n.choi, dims, 1);
    GammaSlaterPoint pt;
    pt.v = positive_part(tbj);
    pt.v += (2.0 * eps) * ComplexMatrix::identity(pt.v.rows());
    pt.y = negative_part(tbj);
    pt.y += eps * ComplexMatrix::identity(pt.y.rows());
    pt.z1 = eps * ComplexMatrix::identity(pt.v.rows());
    ComplexMatrix marg = partial_trace(pt.v + pt.y, dims, 1);
    pt.t = operator_norm(marg) + eps;
    pt.z2 = pt.t * ComplexMatrix::identity(n.dim_in) - marg;
    return pt;
}

}  // namespace rainskit
