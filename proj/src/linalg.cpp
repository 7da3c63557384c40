#include "rainskit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rainskit/eigh.hpp"

namespace rainskit {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

ComplexMatrix partial_trace(const ComplexMatrix& x, const DimSpec& dims, int traced) {
    dims.require_matches(x);
    if (traced < 0 || traced >= dims.count()) throw std::invalid_argument("partial_trace: bad subsystem");
    const auto strides = dims.strides();
    const int dt = dims.dim(traced);
    const int st = strides[static_cast<size_t>(traced)];
    const int n = dims.total();
    const int nr = n / dt;

    // Enumerate the reduced space by walking full indices with digit 0 at the
    // traced slot.
    std::vector<int> base;
    base.reserve(static_cast<size_t>(nr));
    for (int i = 0; i < n; ++i)
        if ((i / st) % dt == 0) base.push_back(i);

    ComplexMatrix out(nr, nr);
    for (int a = 0; a < nr; ++a)
        for (int b = 0; b < nr; ++b) {
            cplx s = 0.0;
            for (int t = 0; t < dt; ++t) s += x(base[static_cast<size_t>(a)] + t * st, base[static_cast<size_t>(b)] + t * st);
            out(a, b) = s;
        }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& x, const DimSpec& dims, int transposed) {
    dims.require_matches(x);
    if (transposed < 0 || transposed >= dims.count())
        throw std::invalid_argument("partial_transpose: bad subsystem");
    const auto strides = dims.strides();
    const int dt = dims.dim(transposed);
    const int st = strides[static_cast<size_t>(transposed)];
    const int n = dims.total();

    ComplexMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        const int di = (i / st) % dt;
        for (int j = 0; j < n; ++j) {
            const int dj = (j / st) % dt;
            out(i + (dj - di) * st, j + (di - dj) * st) = x(i, j);
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& x, const DimSpec& dims,
                                const std::vector<int>& transposed) {
    ComplexMatrix out = x;
    for (int t : transposed) out = partial_transpose(out, dims, t);
    return out;
}

ComplexMatrix permute_systems(const ComplexMatrix& x, const DimSpec& dims,
                              const std::vector<int>& perm) {
    dims.require_matches(x);
    const int m = dims.count();
    if (static_cast<int>(perm.size()) != m) throw std::invalid_argument("permute_systems: bad perm size");
    std::vector<bool> seen(static_cast<size_t>(m), false);
    for (int p : perm) {
        if (p < 0 || p >= m || seen[static_cast<size_t>(p)])
            throw std::invalid_argument("permute_systems: not a permutation");
        seen[static_cast<size_t>(p)] = true;
    }

    std::vector<int> new_factors(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) new_factors[static_cast<size_t>(k)] = dims.dim(perm[static_cast<size_t>(k)]);
    const DimSpec out_dims{new_factors};
    const auto in_strides = dims.strides();
    const auto out_strides = out_dims.strides();
    const int n = dims.total();

    // map[new index] = old index
    std::vector<int> map(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        int old = 0;
        for (int k = 0; k < m; ++k) {
            const int digit = (i / out_strides[static_cast<size_t>(k)]) % out_dims.dim(k);
            old += digit * in_strides[static_cast<size_t>(perm[static_cast<size_t>(k)])];
        }
        map[static_cast<size_t>(i)] = old;
    }

    ComplexMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = x(map[static_cast<size_t>(i)], map[static_cast<size_t>(j)]);
    return out;
}

double trace_norm(const ComplexMatrix& x) {
    if (!x.square()) throw std::invalid_argument("trace_norm: not square");
    if (x.is_hermitian()) {
        double s = 0.0;
        for (double v : eigvalsh(x)) s += std::abs(v);
        return s;
    }
    // General case: singular values from the Gram matrix.
    const ComplexMatrix gram = x.adjoint() * x;
    double s = 0.0;
    for (double v : eigvalsh(gram)) s += std::sqrt(std::max(0.0, v));
    return s;
}

double operator_norm(const ComplexMatrix& x) {
    if (!x.is_hermitian()) throw std::invalid_argument("operator_norm: non-Hermitian input");
    return max_abs_eigenvalue(x);
}

ComplexMatrix max_entangled_vector(int d, Normalization flavor) {
    if (d < 1) throw std::invalid_argument("max_entangled_vector: d must be >= 1");
    ComplexMatrix v(d * d, 1);
    const double amp = flavor == Normalization::Normalized ? 1.0 / std::sqrt(static_cast<double>(d)) : 1.0;
    for (int i = 0; i < d; ++i) v(i * d + i, 0) = amp;
    return v;
}

ComplexMatrix phi_state(int d) {
    const ComplexMatrix v = max_entangled_vector(d, Normalization::Normalized);
    return v * v.adjoint();
}

ComplexMatrix sandwich_max_entangled(const ComplexMatrix& m, const DimSpec& dims, int left,
                                     int right) {
    dims.require_matches(m);
    const int nf = dims.count();
    if (left == right || left < 0 || right < 0 || left >= nf || right >= nf)
        throw std::invalid_argument("sandwich_max_entangled: bad subsystem pair");
    if (dims.dim(left) != dims.dim(right))
        throw std::invalid_argument("sandwich_max_entangled: contraction dims differ");
    const int d = dims.dim(left);
    const auto strides = dims.strides();
    const int sl = strides[static_cast<size_t>(left)];
    const int sr = strides[static_cast<size_t>(right)];
    const int n = dims.total();
    const int nr = n / (d * d);

    std::vector<int> base;
    base.reserve(static_cast<size_t>(nr));
    for (int i = 0; i < n; ++i)
        if ((i / sl) % d == 0 && (i / sr) % d == 0) base.push_back(i);

    ComplexMatrix out(nr, nr);
    for (int a = 0; a < nr; ++a)
        for (int b = 0; b < nr; ++b) {
            cplx acc = 0.0;
            for (int s = 0; s < d; ++s)
                for (int t = 0; t < d; ++t)
                    acc += m(base[static_cast<size_t>(a)] + s * (sl + sr), base[static_cast<size_t>(b)] + t * (sl + sr));
            out(a, b) = acc;
        }
    return out;
}

bool transpose_trick_check(const ComplexMatrix& x, const DimSpec& dims) {
    if (dims.count() != 2) throw std::invalid_argument("transpose_trick_check: need dims (S, R)");
    dims.require_matches(x);
    const int ds = dims.dim(0);
    const int dr = dims.dim(1);
    const int da = dr;  // A is a fresh factor isomorphic to R

    const ComplexMatrix ups = max_entangled_vector(dr, Normalization::Unnormalized);
    // I_S tensor |Ups>_RA as a map H_S -> H_S (x) H_R (x) H_A
    ComplexMatrix ext(ds * dr * da, ds);
    for (int s = 0; s < ds; ++s)
        for (int r = 0; r < dr; ++r) ext((s * dr + r) * da + r, s) = 1.0;

    const ComplexMatrix lhs = kron(x, ComplexMatrix::identity(da)) * ext;

    // T_A(X_SA) acting on factors (S, A) of (S, R, A)
    const DimSpec sa{ds, da};
    const ComplexMatrix xt = partial_transpose(x, sa, 1);
    // reorder (S, A, R) -> (S, R, A)
    const DimSpec sar{ds, da, dr};
    const ComplexMatrix rhs_op = permute_systems(kron(xt, ComplexMatrix::identity(dr)), sar, {0, 2, 1});
    const ComplexMatrix rhs = rhs_op * ext;

    const double tol = 1e-12 * (1.0 + x.max_abs());
    return lhs.approx_equal(rhs, tol);
}

RealMatrix real_embedding(const ComplexMatrix& h) {
    if (!h.is_hermitian()) throw std::invalid_argument("real_embedding: non-Hermitian input");
    const int n = h.rows();
    RealMatrix out(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double re = h(i, j).real();
            const double im = h(i, j).imag();
            out(i, j) = re;
            out(n + i, n + j) = re;
            out(i, n + j) = -im;
            out(n + i, j) = im;
        }
    return out;
}

ComplexMatrix from_real_embedding(const RealMatrix& x) {
    if (x.rows() != x.cols() || x.rows() % 2 != 0)
        throw std::invalid_argument("from_real_embedding: need even square matrix");
    const int n = x.rows() / 2;
    ComplexMatrix h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double re = 0.5 * (x(i, j) + x(n + i, n + j));
            const double im = 0.5 * (x(n + i, j) - x(i, n + j));
            h(i, j) = cplx(re, im);
        }
    h.hermitize(1e300);  // unconditional projection onto Hermitian part
    return h;
}

double fidelity(const ComplexMatrix& tau, const ComplexMatrix& kappa) {
    if (!tau.square() || tau.rows() != kappa.rows() || !kappa.square())
        throw std::invalid_argument("fidelity: shape mismatch");
    const double mt = min_eigenvalue(tau);
    const double mk = min_eigenvalue(kappa);
    const double scale = 1.0 + std::max(tau.max_abs(), kappa.max_abs());
    if (mt < -1e-9 * scale || mk < -1e-9 * scale)
        throw std::invalid_argument("fidelity: non-PSD input");
    const ComplexMatrix rt = sqrtm_psd(tau);
    const ComplexMatrix inner = rt * kappa * rt;
    const auto vals = eigvalsh(inner);
    // Eigenvalues indistinguishable from zero only add noise through the
    // square root; drop them below 1e-11 relative.
    const double floor_at = 1e-11 * std::max(0.0, vals.back());
    double f = 0.0;
    for (double v : vals)
        if (v > floor_at) f += std::sqrt(v);
    return std::clamp(f * f, 0.0, 1.0);
}

}  // namespace rainskit
