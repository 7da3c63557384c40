#include "rainskit/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>

#include "rainskit/eigh.hpp"
#include "rainskit/kernels.hpp"

namespace rainskit {

double BlockMatrix::dot(const BlockMatrix& o) const {
    double s = 0.0;
    for (size_t b = 0; b < blocks.size(); ++b)
        s += kernels::dot(blocks[b].data().data(), o.blocks[b].data().data(), blocks[b].data().size());
    return s;
}

void BlockMatrix::axpy(double c, const BlockMatrix& o) {
    for (size_t b = 0; b < blocks.size(); ++b) {
        auto dst = blocks[b].data();
        auto src = o.blocks[b].data();
        for (size_t i = 0; i < dst.size(); ++i) dst[i] += c * src[i];
    }
}

double BlockMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& b : blocks) m = std::max(m, b.max_abs());
    return m;
}

double BlockMatrix::trace() const {
    double t = 0.0;
    for (const auto& b : blocks) t += b.trace();
    return t;
}

void BlockMatrix::symmetrize() {
    for (auto& b : blocks) b.symmetrize();
}

const char* to_string(SdpStatus s) {
    switch (s) {
        case SdpStatus::Optimal: return "Optimal";
        case SdpStatus::PrimalInfeasibleCertificate: return "PrimalInfeasibleCertificate";
        case SdpStatus::DualInfeasibleCertificate: return "DualInfeasibleCertificate";
        case SdpStatus::NumericalTrouble: return "NumericalTrouble";
    }
    return "?";
}

namespace {

bool conforms(const BlockMatrix& m, const std::vector<int>& sides) {
    if (m.blocks.size() != sides.size()) return false;
    for (size_t b = 0; b < sides.size(); ++b)
        if (m.blocks[b].rows() != sides[b] || m.blocks[b].cols() != sides[b]) return false;
    return true;
}

// Dense Cholesky, lower triangular; returns false when a pivot drops below
// ridge * scale.
bool cholesky(RealMatrix& a, double ridge) {
    const int n = a.rows();
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i)));
    scale = std::max(scale, 1e-300);
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (d <= ridge * scale) return false;
        const double l = std::sqrt(d);
        a(j, j) = l;
        for (int i = j + 1; i < n; ++i) {
            double v = a(i, j);
            for (int k = 0; k < j; ++k) v -= a(i, k) * a(j, k);
            a(i, j) = v / l;
        }
        for (int i = 0; i < j; ++i) a(i, j) = 0.0;
    }
    return true;
}

void chol_solve(const RealMatrix& l, std::vector<double>& rhs) {
    const int n = l.rows();
    for (int i = 0; i < n; ++i) {
        double v = rhs[static_cast<size_t>(i)];
        for (int k = 0; k < i; ++k) v -= l(i, k) * rhs[static_cast<size_t>(k)];
        rhs[static_cast<size_t>(i)] = v / l(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        double v = rhs[static_cast<size_t>(i)];
        for (int k = i + 1; k < n; ++k) v -= l(k, i) * rhs[static_cast<size_t>(k)];
        rhs[static_cast<size_t>(i)] = v / l(i, i);
    }
}

RealMatrix matfun(const EighRealResult& eg, double (*f)(double)) {
    const int n = eg.vectors.rows();
    RealMatrix out(n, n);
    for (int k = 0; k < n; ++k) {
        const double v = f(eg.values[static_cast<size_t>(k)]);
        if (v == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out(i, j) += v * eg.vectors(i, k) * eg.vectors(j, k);
    }
    return out;
}

double sqrt_floor(double v) { return std::sqrt(std::max(v, 1e-300)); }
double inv_sqrt_floor(double v) { return 1.0 / std::sqrt(std::max(v, 1e-300)); }

// Per-block Nesterov-Todd scaling data: W = G G^T, Ginv G = I, and
// G^T S G = Ginv X Ginv^T = diag(omega).
struct NtBlock {
    RealMatrix w;
    RealMatrix g;
    RealMatrix ginv;
    std::vector<double> omega;
};

std::optional<NtBlock> nt_scaling(const RealMatrix& x, const RealMatrix& s) {
    NtBlock nt;
    EighRealResult es = eigh_real(s);
    if (es.values.front() <= 0.0) return std::nullopt;
    const RealMatrix s_half = matfun(es, +[](double v) { return std::sqrt(std::max(v, 0.0)); });
    const RealMatrix s_mhalf = matfun(es, inv_sqrt_floor);

    const RealMatrix k = s_half * x * s_half;
    EighRealResult ek = eigh_real(k);
    if (ek.values.front() <= 0.0) return std::nullopt;
    const RealMatrix k_half = matfun(ek, +[](double v) { return std::sqrt(std::max(v, 0.0)); });

    nt.w = s_mhalf * k_half * s_mhalf;
    nt.w.symmetrize();

    EighRealResult ew = eigh_real(nt.w);
    if (ew.values.front() <= 0.0) return std::nullopt;
    const int n = nt.w.rows();
    RealMatrix g0(n, n), g0inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            g0(i, j) = ew.vectors(i, j) * sqrt_floor(ew.values[static_cast<size_t>(j)]);
            g0inv(i, j) = ew.vectors(j, i) * inv_sqrt_floor(ew.values[static_cast<size_t>(i)]);
        }
    RealMatrix h0 = g0.transpose() * s * g0;
    h0.symmetrize();
    EighRealResult eh = eigh_real(h0);
    if (eh.values.front() <= 0.0) return std::nullopt;
    nt.g = g0 * eh.vectors;
    nt.ginv = eh.vectors.transpose() * g0inv;
    nt.omega = eh.values;
    return nt;
}

// Largest step alpha with X + alpha*D >= 0, through lambda_min of
// X^{-1/2} D X^{-1/2}.
double max_step(const RealMatrix& x, const RealMatrix& d) {
    EighRealResult ex = eigh_real(x);
    const RealMatrix x_mhalf = matfun(ex, inv_sqrt_floor);
    RealMatrix m = x_mhalf * d * x_mhalf;
    m.symmetrize();
    const double lmin = eigvalsh_real(m).front();
    if (lmin >= -1e-14) return std::numeric_limits<double>::infinity();
    return -1.0 / lmin;
}

struct Residuals {
    std::vector<double> rp;  // b - A(X)
    BlockMatrix rd;          // C - S - sum y_k A_k
    double rp_max = 0.0;
    double rd_max = 0.0;
};

Residuals compute_residuals(const SdpProblem& p, const BlockMatrix& x, const std::vector<double>& y,
                            const BlockMatrix& s) {
    Residuals r;
    const int m = static_cast<int>(p.a.size());
    r.rp.resize(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) {
        r.rp[static_cast<size_t>(k)] = p.b[static_cast<size_t>(k)] - p.a[static_cast<size_t>(k)].dot(x);
        r.rp_max = std::max(r.rp_max, std::abs(r.rp[static_cast<size_t>(k)]));
    }
    r.rd = p.c;
    r.rd.axpy(-1.0, s);
    for (int k = 0; k < m; ++k) r.rd.axpy(-y[static_cast<size_t>(k)], p.a[static_cast<size_t>(k)]);
    r.rd_max = r.rd.max_abs();
    return r;
}

}  // namespace

void SdpProblem::validate() const {
    if (block_sides.empty()) throw std::invalid_argument("SdpProblem: no blocks");
    for (int s : block_sides)
        if (s <= 0) throw std::invalid_argument("SdpProblem: nonpositive block side");
    if (!conforms(c, block_sides)) throw std::invalid_argument("SdpProblem: C does not conform");
    if (a.size() != b.size()) throw std::invalid_argument("SdpProblem: |A| != |b|");
    if (a.empty()) throw std::invalid_argument("SdpProblem: no constraints");
    for (const auto& ak : a)
        if (!conforms(ak, block_sides)) throw std::invalid_argument("SdpProblem: A_k does not conform");

    // Linear independence of the A_k through a Gram-matrix Cholesky.
    const int m = static_cast<int>(a.size());
    RealMatrix gram(m, m);
    for (int j = 0; j < m; ++j)
        for (int k = j; k < m; ++k) {
            const double v = a[static_cast<size_t>(j)].dot(a[static_cast<size_t>(k)]);
            gram(j, k) = v;
            gram(k, j) = v;
        }
    if (!cholesky(gram, 1e-10))
        throw std::invalid_argument("SdpProblem: constraint matrices are linearly dependent");
}

SdpSolution solve(const SdpProblem& p, const SdpOptions& opts) {
    p.validate();
    if (!(opts.tol >= 1e-12 && opts.tol <= 1e-4))
        throw std::invalid_argument("solve: tol outside [1e-12, 1e-4]");

    const int m = static_cast<int>(p.a.size());
    const size_t nblocks = p.block_sides.size();
    int ntot = 0;
    for (int s : p.block_sides) ntot += s;

    double bmax = 0.0;
    for (double v : p.b) bmax = std::max(bmax, std::abs(v));
    const double eta = (1.0 + std::max(bmax, p.c.max_abs())) * opts.init_scale;

    SdpSolution sol;
    sol.x = BlockMatrix::scaled_identity(p.block_sides, eta);
    sol.s = BlockMatrix::scaled_identity(p.block_sides, eta);
    sol.y.assign(static_cast<size_t>(m), 0.0);

    // Active-block lists per constraint; zero blocks never touch the Schur
    // assembly.
    std::vector<std::vector<int>> active(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k)
        for (size_t b = 0; b < nblocks; ++b)
            if (p.a[static_cast<size_t>(k)].blocks[b].max_abs() > 0.0)
                active[static_cast<size_t>(k)].push_back(static_cast<int>(b));

    double best_err = std::numeric_limits<double>::infinity();
    SdpSolution best = sol;

    const double step_frac = 0.98;  // fraction to boundary
    int stall_count = 0;

    auto finish = [&](SdpStatus st, SdpSolution&& out, const Residuals& res) {
        out.status = st;
        out.primal_obj = p.c.dot(out.x);
        double dobj = 0.0;
        for (int k = 0; k < m; ++k) dobj += p.b[static_cast<size_t>(k)] * out.y[static_cast<size_t>(k)];
        out.dual_obj = dobj;
        out.gap = out.primal_obj - out.dual_obj;
        out.primal_residual = res.rp_max;
        out.dual_residual = res.rd_max;
        return std::move(out);
    };

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        sol.iterations = iter;
        Residuals res = compute_residuals(p, sol.x, sol.y, sol.s);
        const double xs = sol.x.dot(sol.s);
        const double mu = xs / ntot;

        const double pobj = p.c.dot(sol.x);
        double dobj = 0.0;
        for (int k = 0; k < m; ++k) dobj += p.b[static_cast<size_t>(k)] * sol.y[static_cast<size_t>(k)];

        IterateTrace tr;
        tr.primal_obj = pobj;
        tr.dual_obj = dobj;
        tr.xs_inner = xs;
        double yrp = 0.0;
        for (int k = 0; k < m; ++k) yrp += sol.y[static_cast<size_t>(k)] * res.rp[static_cast<size_t>(k)];
        tr.primal_feas_gap = std::abs(yrp);
        tr.dual_feas_gap = std::abs(res.rd.dot(sol.x));
        sol.trace.push_back(tr);

        const double objscale = 1.0 + std::abs(pobj) + std::abs(dobj);
        const double rel_gap = std::abs(xs) / objscale;
        const double rel_rp = res.rp_max / (1.0 + bmax);
        const double rel_rd = res.rd_max / (1.0 + p.c.max_abs());
        const double err = std::max({rel_gap, rel_rp, rel_rd});

        if (err < best_err) {
            best_err = err;
            best = sol;
        }
        if (rel_gap <= opts.tol && rel_rp <= opts.tol && rel_rd <= opts.tol)
            return finish(SdpStatus::Optimal, std::move(sol), res);

        // Divergence: test the iterate as an infeasibility certificate.
        double ymax = 0.0;
        for (double v : sol.y) ymax = std::max(ymax, std::abs(v));
        if (sol.x.max_abs() > 1e14 * eta || ymax > 1e14 * (1.0 + bmax)) {
            if (ymax > 0.0) {
                BlockMatrix ray = sol.s;
                for (auto& blk : ray.blocks)
                    for (auto& v : blk.data()) v /= ymax;
                BlockMatrix lhs = ray;
                for (int k = 0; k < m; ++k) lhs.axpy(sol.y[static_cast<size_t>(k)] / ymax, p.a[static_cast<size_t>(k)]);
                double bty = 0.0;
                for (int k = 0; k < m; ++k) bty += p.b[static_cast<size_t>(k)] * sol.y[static_cast<size_t>(k)] / ymax;
                if (lhs.max_abs() <= 1e-8 * (1.0 + p.c.max_abs()) && bty > 1e-8)
                    return finish(SdpStatus::PrimalInfeasibleCertificate, std::move(sol), res);
            }
            const double xmax = sol.x.max_abs();
            if (xmax > 0.0) {
                double amax = 0.0;
                for (int k = 0; k < m; ++k)
                    amax = std::max(amax, std::abs(p.a[static_cast<size_t>(k)].dot(sol.x)) / xmax);
                if (amax <= 1e-8 && p.c.dot(sol.x) / xmax < -1e-8)
                    return finish(SdpStatus::DualInfeasibleCertificate, std::move(sol), res);
            }
            Residuals bres = compute_residuals(p, best.x, best.y, best.s);
            return finish(SdpStatus::NumericalTrouble, std::move(best), bres);
        }

        // Nesterov-Todd scaling per block.
        std::vector<NtBlock> nt(nblocks);
        bool scaling_ok = true;
        for (size_t b = 0; b < nblocks; ++b) {
            auto ntb = nt_scaling(sol.x.blocks[b], sol.s.blocks[b]);
            if (!ntb) {
                scaling_ok = false;
                break;
            }
            nt[b] = std::move(*ntb);
        }
        if (!scaling_ok) {
            Residuals bres = compute_residuals(p, best.x, best.y, best.s);
            return finish(SdpStatus::NumericalTrouble, std::move(best), bres);
        }

        // Schur complement M[j][k] = sum_b <A_j, W A_k W>, assembled in
        // parallel over constraints.
        std::vector<BlockMatrix> waw(static_cast<size_t>(m));
        const bool par = kernels::parallel_enabled();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (par)
#endif
        for (int k = 0; k < m; ++k) {
            BlockMatrix t = BlockMatrix::zeros(p.block_sides);
            for (int b : active[static_cast<size_t>(k)]) {
                const int n = p.block_sides[static_cast<size_t>(b)];
                RealMatrix scratch(n, n);
                kernels::congruence_serial(p.a[static_cast<size_t>(k)].blocks[static_cast<size_t>(b)].data().data(),
                                           nt[static_cast<size_t>(b)].w.data().data(), n,
                                           scratch.data().data(),
                                           t.blocks[static_cast<size_t>(b)].data().data());
            }
            waw[static_cast<size_t>(k)] = std::move(t);
        }

        RealMatrix schur(m, m);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (par)
#endif
        for (int j = 0; j < m; ++j) {
            for (int k = j; k < m; ++k) {
                double v = 0.0;
                for (int b : active[static_cast<size_t>(j)])
                    v += kernels::dot(p.a[static_cast<size_t>(j)].blocks[static_cast<size_t>(b)].data().data(),
                                      waw[static_cast<size_t>(k)].blocks[static_cast<size_t>(b)].data().data(),
                                      p.a[static_cast<size_t>(j)].blocks[static_cast<size_t>(b)].data().size());
                schur(j, k) = v;
                schur(k, j) = v;
            }
        }

        RealMatrix schur_l = schur;
        bool fact_ok = cholesky(schur_l, 1e-16);
        if (!fact_ok) {
            for (double ridge = 1e-12; ridge <= 1e-6 && !fact_ok; ridge *= 100.0) {
                schur_l = schur;
                double tr_m = 0.0;
                for (int i = 0; i < m; ++i) tr_m += schur(i, i);
                for (int i = 0; i < m; ++i) schur_l(i, i) += ridge * (tr_m / m + 1.0);
                fact_ok = cholesky(schur_l, 1e-16);
            }
            if (!fact_ok) {
                Residuals bres = compute_residuals(p, best.x, best.y, best.s);
                return finish(SdpStatus::NumericalTrouble, std::move(best), bres);
            }
        }

        // W R_d W, shared by both solves.
        BlockMatrix wrdw = BlockMatrix::zeros(p.block_sides);
        for (size_t b = 0; b < nblocks; ++b) {
            const int n = p.block_sides[b];
            RealMatrix scratch(n, n);
            kernels::congruence(res.rd.blocks[b].data().data(), nt[b].w.data().data(), n,
                                scratch.data().data(), wrdw.blocks[b].data().data());
        }

        auto solve_direction = [&](const BlockMatrix& rc, std::vector<double>& dy, BlockMatrix& dx,
                                   BlockMatrix& ds) {
            dy.assign(static_cast<size_t>(m), 0.0);
            for (int j = 0; j < m; ++j)
                dy[static_cast<size_t>(j)] = res.rp[static_cast<size_t>(j)] -
                                             p.a[static_cast<size_t>(j)].dot(rc) +
                                             p.a[static_cast<size_t>(j)].dot(wrdw);
            chol_solve(schur_l, dy);
            ds = res.rd;
            for (int k = 0; k < m; ++k) ds.axpy(-dy[static_cast<size_t>(k)], p.a[static_cast<size_t>(k)]);
            // dx = rc - W ds W
            dx = rc;
            for (size_t b = 0; b < nblocks; ++b) {
                const int n = p.block_sides[b];
                RealMatrix scratch(n, n), wdsw(n, n);
                kernels::congruence(ds.blocks[b].data().data(), nt[b].w.data().data(), n,
                                    scratch.data().data(), wdsw.data().data());
                auto dst = dx.blocks[b].data();
                auto src = wdsw.data();
                for (size_t i = 0; i < dst.size(); ++i) dst[i] -= src[i];
            }
            dx.symmetrize();
        };

        // Predictor (affine scaling): Rc = -X.
        BlockMatrix rc_aff = sol.x;
        for (auto& blk : rc_aff.blocks)
            for (auto& v : blk.data()) v = -v;
        std::vector<double> dy_a;
        BlockMatrix dx_a, ds_a;
        solve_direction(rc_aff, dy_a, dx_a, ds_a);

        double ap = 1.0, ad = 1.0;
        for (size_t b = 0; b < nblocks; ++b) {
            ap = std::min(ap, max_step(sol.x.blocks[b], dx_a.blocks[b]));
            ad = std::min(ad, max_step(sol.s.blocks[b], ds_a.blocks[b]));
        }

        BlockMatrix xa = sol.x;
        xa.axpy(ap, dx_a);
        BlockMatrix sa = sol.s;
        sa.axpy(ad, ds_a);
        const double mu_aff = std::max(0.0, xa.dot(sa)) / ntot;
        double sigma = std::pow(mu_aff / mu, 3.0);
        sigma = std::clamp(sigma, 1e-10, 1.0);

        // Corrector right-hand side assembled in the scaled space:
        // Lyap_omega(sigma*mu*I - Omega^2 - sym(dXhat dShat)).
        BlockMatrix rc = BlockMatrix::zeros(p.block_sides);
        for (size_t b = 0; b < nblocks; ++b) {
            const int n = p.block_sides[b];
            const auto& gb = nt[b].g;
            const auto& gib = nt[b].ginv;
            RealMatrix dxh = gib * dx_a.blocks[b] * gib.transpose();
            RealMatrix dsh = gb.transpose() * ds_a.blocks[b] * gb;
            RealMatrix prod = dxh * dsh;
            RealMatrix k(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double v = -0.5 * (prod(i, j) + prod(j, i));
                    if (i == j) v += sigma * mu - nt[b].omega[static_cast<size_t>(i)] * nt[b].omega[static_cast<size_t>(i)];
                    k(i, j) = 2.0 * v / (nt[b].omega[static_cast<size_t>(i)] + nt[b].omega[static_cast<size_t>(j)]);
                }
            rc.blocks[b] = gb * k * gb.transpose();
            rc.blocks[b].symmetrize();
        }

        std::vector<double> dy;
        BlockMatrix dx, ds;
        solve_direction(rc, dy, dx, ds);

        double ap2 = std::numeric_limits<double>::infinity();
        double ad2 = std::numeric_limits<double>::infinity();
        for (size_t b = 0; b < nblocks; ++b) {
            ap2 = std::min(ap2, max_step(sol.x.blocks[b], dx.blocks[b]));
            ad2 = std::min(ad2, max_step(sol.s.blocks[b], ds.blocks[b]));
        }
        const double alpha_p = std::min(1.0, step_frac * ap2);
        const double alpha_d = std::min(1.0, step_frac * ad2);

        if (alpha_p < 1e-10 && alpha_d < 1e-10) {
            if (++stall_count >= 3) {
                Residuals bres = compute_residuals(p, best.x, best.y, best.s);
                return finish(SdpStatus::NumericalTrouble, std::move(best), bres);
            }
        } else {
            stall_count = 0;
        }

        sol.x.axpy(alpha_p, dx);
        for (int k = 0; k < m; ++k) sol.y[static_cast<size_t>(k)] += alpha_d * dy[static_cast<size_t>(k)];
        sol.s.axpy(alpha_d, ds);
        sol.x.symmetrize();
        sol.s.symmetrize();
    }

    Residuals bres = compute_residuals(p, best.x, best.y, best.s);
    best.iterations = opts.max_iters;
    return finish(SdpStatus::NumericalTrouble, std::move(best), bres);
}

VerifyReport verify(const SdpProblem& p, const SdpSolution& sol, double tol) {
    VerifyReport r;
    r.primal_obj = p.c.dot(sol.x);
    double dobj = 0.0;
    for (size_t k = 0; k < p.a.size(); ++k) dobj += p.b[k] * sol.y[k];
    r.dual_obj = dobj;
    r.gap = r.primal_obj - r.dual_obj;

    double rp = 0.0;
    for (size_t k = 0; k < p.a.size(); ++k)
        rp = std::max(rp, std::abs(p.a[k].dot(sol.x) - p.b[k]));
    r.primal_residual = rp;

    BlockMatrix rd = p.c;
    rd.axpy(-1.0, sol.s);
    for (size_t k = 0; k < p.a.size(); ++k) rd.axpy(-sol.y[k], p.a[k]);
    r.dual_residual = rd.max_abs();

    double mex = std::numeric_limits<double>::infinity();
    double mes = std::numeric_limits<double>::infinity();
    for (size_t b = 0; b < sol.x.blocks.size(); ++b) {
        mex = std::min(mex, eigvalsh_real(sol.x.blocks[b]).front());
        mes = std::min(mes, eigvalsh_real(sol.s.blocks[b]).front());
    }
    r.min_eig_x = mex;
    r.min_eig_s = mes;
    r.lower = r.dual_obj;
    r.upper = r.primal_obj;

    double bmax = 0.0;
    for (double v : p.b) bmax = std::max(bmax, std::abs(v));
    const double objscale = 1.0 + std::abs(r.primal_obj) + std::abs(r.dual_obj);
    r.ok = r.gap <= tol * objscale && r.gap >= -tol * objscale && rp <= tol * (1.0 + bmax) &&
           r.dual_residual <= tol * (1.0 + p.c.max_abs()) && mex >= -tol && mes >= -tol;
    return r;
}

std::string to_debug_json(const SdpProblem& p) {
    std::string out = "{\"block_sides\":[";
    for (size_t i = 0; i < p.block_sides.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(p.block_sides[i]);
    }
    out += "],\"m\":" + std::to_string(p.a.size());
    auto dump_block_matrix = [](const BlockMatrix& m) {
        std::string s = "[";
        for (size_t b = 0; b < m.blocks.size(); ++b) {
            if (b) s += ",";
            s += "[";
            auto data = m.blocks[b].data();
            for (size_t i = 0; i < data.size(); ++i) {
                if (i) s += ",";
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.17g", data[i]);
                s += buf;
            }
            s += "]";
        }
        return s + "]";
    };
    out += ",\"c\":" + dump_block_matrix(p.c);
    out += ",\"b\":[";
    for (size_t i = 0; i < p.b.size(); ++i) {
        if (i) out += ",";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", p.b[i]);
        out += buf;
    }
    out += "],\"a\":[";
    for (size_t k = 0; k < p.a.size(); ++k) {
        if (k) out += ",";
        out += dump_block_matrix(p.a[k]);
    }
    out += "]}";
    return out;
}

}  // namespace rainskit
