#include "rainskit/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rainskit/eigh.hpp"
#include "rainskit/linalg.hpp"
#include "rainskit/rng.hpp"

namespace rainskit {

namespace {

void require_prob(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + ": parameter outside [0,1]");
}

// Columns of g orthonormalized in place; modified Gram-Schmidt, two passes.
void orthonormalize_columns(ComplexMatrix& g) {
    const int rows = g.rows();
    const int cols = g.cols();
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < cols; ++j) {
            for (int k = 0; k < j; ++k) {
                cplx proj = 0.0;
                for (int i = 0; i < rows; ++i) proj += std::conj(g(i, k)) * g(i, j);
                for (int i = 0; i < rows; ++i) g(i, j) -= proj * g(i, k);
            }
            double nrm2 = 0.0;
            for (int i = 0; i < rows; ++i) nrm2 += std::norm(g(i, j));
            if (nrm2 < 1e-28) throw std::runtime_error("orthonormalize_columns: rank deficient sample");
            const double inv = 1.0 / std::sqrt(nrm2);
            for (int i = 0; i < rows; ++i) g(i, j) *= inv;
        }
    }
}

std::vector<ComplexMatrix> replace_kraus(int dim_in, const ComplexMatrix& target, double weight) {
    EighResult eg = eigh(target);
    const int d = target.rows();
    std::vector<ComplexMatrix> ks;
    for (int k = 0; k < d; ++k) {
        const double lam = eg.values[static_cast<size_t>(k)];
        if (lam <= 1e-14) continue;
        const double amp = std::sqrt(lam * weight);
        for (int j = 0; j < dim_in; ++j) {
            ComplexMatrix kr(d, dim_in);
            for (int i = 0; i < d; ++i) kr(i, j) = amp * eg.vectors(i, k);
            ks.push_back(std::move(kr));
        }
    }
    return ks;
}

}  // namespace

ComplexMatrix choi_from_kraus(const std::vector<ComplexMatrix>& kraus) {
    if (kraus.empty()) throw std::invalid_argument("choi_from_kraus: empty Kraus list");
    const int dout = kraus.front().rows();
    const int din = kraus.front().cols();
    ComplexMatrix j(din * dout, din * dout);
    for (const auto& k : kraus) {
        if (k.rows() != dout || k.cols() != din)
            throw std::invalid_argument("choi_from_kraus: inconsistent Kraus shapes");
        // (I (x) K)|Ups> has entry K[b][i] at index (i, b)
        ComplexMatrix v(din * dout, 1);
        for (int i = 0; i < din; ++i)
            for (int b = 0; b < dout; ++b) v(i * dout + b, 0) = k(b, i);
        j += v * v.adjoint();
    }
    return j;
}

std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, int dim_in, int dim_out) {
    if (choi.rows() != dim_in * dim_out) throw std::invalid_argument("kraus_from_choi: dim mismatch");
    EighResult eg = eigh(choi);
    const double lmax = std::max(1.0, std::abs(eg.values.back()));
    std::vector<ComplexMatrix> ks;
    for (int k = 0; k < choi.rows(); ++k) {
        const double lam = eg.values[static_cast<size_t>(k)];
        if (lam <= 1e-12 * lmax) continue;
        const double s = std::sqrt(lam);
        ComplexMatrix kr(dim_out, dim_in);
        for (int i = 0; i < dim_in; ++i)
            for (int b = 0; b < dim_out; ++b) kr(b, i) = s * eg.vectors(i * dim_out + b, k);
        ks.push_back(std::move(kr));
    }
    return ks;
}

Channel Channel::from_kraus(int dim_in, int dim_out, std::vector<ComplexMatrix> kraus) {
    if (kraus.empty()) throw std::invalid_argument("Channel: empty Kraus list");
    for (const auto& k : kraus)
        if (k.rows() != dim_out || k.cols() != dim_in)
            throw std::invalid_argument("Channel: Kraus shape does not match dims");
    ComplexMatrix tp(dim_in, dim_in);
    for (const auto& k : kraus) tp += k.adjoint() * k;
    tp -= ComplexMatrix::identity(dim_in);
    if (tp.max_abs() > 1e-10)
        throw std::invalid_argument("Channel: Kraus set not trace preserving (residual " +
                                    std::to_string(tp.max_abs()) + ")");
    Channel n;
    n.dim_in = dim_in;
    n.dim_out = dim_out;
    n.choi = choi_from_kraus(kraus);
    n.kraus = std::move(kraus);
    return n;
}

Channel Channel::from_choi(int dim_in, int dim_out, ComplexMatrix choi) {
    if (choi.rows() != dim_in * dim_out || !choi.square())
        throw std::invalid_argument("Channel: Choi side does not match dims");
    choi.hermitize();
    const double scale = 1.0 + choi.max_abs();
    if (min_eigenvalue(choi) < -1e-10 * scale)
        throw std::invalid_argument("Channel: Choi operator not PSD");
    ComplexMatrix marg = partial_trace(choi, DimSpec{dim_in, dim_out}, 1);
    marg -= ComplexMatrix::identity(dim_in);
    if (marg.max_abs() > 1e-10 * scale)
        throw std::invalid_argument("Channel: Tr_B of Choi is not the identity (not TP)");
    Channel n;
    n.dim_in = dim_in;
    n.dim_out = dim_out;
    n.choi = std::move(choi);
    return n;
}

BipartiteState BipartiteState::make(ComplexMatrix m, DimSpec dims) {
    dims.require_matches(m);
    m.hermitize();
    const double scale = 1.0 + m.max_abs();
    if (min_eigenvalue(m) < -1e-10 * scale)
        throw std::invalid_argument("BipartiteState: matrix not PSD");
    if (std::abs(m.trace().real() - 1.0) > 1e-10 * scale)
        throw std::invalid_argument("BipartiteState: trace differs from 1");
    return BipartiteState{std::move(m), std::move(dims)};
}

BipartiteState apply_channel(const Channel& n, const BipartiteState& rho, int acted) {
    const int m = rho.dims.count();
    if (acted < 0 || acted >= m) throw std::invalid_argument("apply_channel: bad subsystem");
    if (rho.dims.dim(acted) != n.dim_in)
        throw std::invalid_argument("apply_channel: acted dim " + std::to_string(rho.dims.dim(acted)) +
                                    " differs from channel input " + std::to_string(n.dim_in));

    std::vector<int> big_factors = rho.dims.factors;
    big_factors.push_back(n.dim_in);   // R
    big_factors.push_back(n.dim_out);  // B
    const DimSpec big_dims{big_factors};
    const ComplexMatrix big = kron(rho.matrix, n.choi);
    ComplexMatrix contracted = sandwich_max_entangled(big, big_dims, acted, m);

    // Remaining factor order: (.. acted removed ..), B last; move B to the
    // acted slot.
    std::vector<int> res_factors;
    for (int k = 0; k < m; ++k)
        if (k != acted) res_factors.push_back(rho.dims.dim(k));
    res_factors.push_back(n.dim_out);
    std::vector<int> perm;
    for (int k = 0; k < acted; ++k) perm.push_back(k);
    perm.push_back(m - 1);
    for (int k = acted; k < m - 1; ++k) perm.push_back(k);
    contracted = permute_systems(contracted, DimSpec{res_factors}, perm);

    std::vector<int> out_factors = rho.dims.factors;
    out_factors[static_cast<size_t>(acted)] = n.dim_out;
    return BipartiteState::make(std::move(contracted), DimSpec{out_factors});
}

BipartiteState apply_channel_kraus(const Channel& n, const BipartiteState& rho, int acted) {
    const int m = rho.dims.count();
    if (acted < 0 || acted >= m || rho.dims.dim(acted) != n.dim_in)
        throw std::invalid_argument("apply_channel_kraus: dim mismatch");
    const std::vector<ComplexMatrix> ks =
        n.has_kraus() ? n.kraus : kraus_from_choi(n.choi, n.dim_in, n.dim_out);

    int before = 1, after = 1;
    for (int k = 0; k < acted; ++k) before *= rho.dims.dim(k);
    for (int k = acted + 1; k < m; ++k) after *= rho.dims.dim(k);

    std::vector<int> out_factors = rho.dims.factors;
    out_factors[static_cast<size_t>(acted)] = n.dim_out;
    ComplexMatrix out(before * n.dim_out * after, before * n.dim_out * after);
    const ComplexMatrix ib = ComplexMatrix::identity(before);
    const ComplexMatrix ia = ComplexMatrix::identity(after);
    for (const auto& k : ks) {
        const ComplexMatrix big = kron(kron(ib, k), ia);
        out += big * rho.matrix * big.adjoint();
    }
    return BipartiteState::make(std::move(out), DimSpec{out_factors});
}

Channel compose(const Channel& second, const Channel& first) {
    if (first.dim_out != second.dim_in) throw std::invalid_argument("compose: dim mismatch");
    const std::vector<ComplexMatrix> k1 =
        first.has_kraus() ? first.kraus : kraus_from_choi(first.choi, first.dim_in, first.dim_out);
    const std::vector<ComplexMatrix> k2 =
        second.has_kraus() ? second.kraus : kraus_from_choi(second.choi, second.dim_in, second.dim_out);
    std::vector<ComplexMatrix> ks;
    ks.reserve(k1.size() * k2.size());
    for (const auto& b : k2)
        for (const auto& a : k1) ks.push_back(b * a);
    return Channel::from_kraus(first.dim_in, second.dim_out, std::move(ks));
}

Channel make_identity(int d) {
    return Channel::from_kraus(d, d, {ComplexMatrix::identity(d)});
}

Channel make_depolarizing(int d, double p) {
    require_prob(p, "make_depolarizing");
    const ComplexMatrix ups = max_entangled_vector(d, Normalization::Unnormalized);
    ComplexMatrix j = (1.0 - p) * (ups * ups.adjoint());
    j += (p / d) * ComplexMatrix::identity(d * d);
    return Channel::from_choi(d, d, std::move(j));
}

Channel make_erasure(int d, double p) {
    require_prob(p, "make_erasure");
    std::vector<ComplexMatrix> ks;
    ComplexMatrix embed(d + 1, d);
    for (int i = 0; i < d; ++i) embed(i, i) = std::sqrt(1.0 - p);
    ks.push_back(std::move(embed));
    for (int i = 0; i < d; ++i) {
        ComplexMatrix k(d + 1, d);
        k(d, i) = std::sqrt(p);
        ks.push_back(std::move(k));
    }
    return Channel::from_kraus(d, d + 1, std::move(ks));
}

Channel make_erasure_extend(int d, double q) {
    require_prob(q, "make_erasure_extend");
    std::vector<ComplexMatrix> ks;
    ComplexMatrix keep = ComplexMatrix::identity(d + 1);
    keep *= std::sqrt(1.0 - q);
    ks.push_back(std::move(keep));
    for (int i = 0; i <= d; ++i) {
        ComplexMatrix k(d + 1, d + 1);
        k(d, i) = std::sqrt(q);
        ks.push_back(std::move(k));
    }
    return Channel::from_kraus(d + 1, d + 1, std::move(ks));
}

Channel make_dephasing(double p) {
    require_prob(p, "make_dephasing");
    ComplexMatrix z = ComplexMatrix::identity(2);
    z(1, 1) = -1.0;
    ComplexMatrix k0 = ComplexMatrix::identity(2);
    k0 *= std::sqrt(1.0 - p);
    z *= std::sqrt(p);
    std::vector<ComplexMatrix> ks;
    ks.push_back(std::move(k0));
    if (p > 0.0) ks.push_back(std::move(z));
    return Channel::from_kraus(2, 2, std::move(ks));
}

Channel make_amplitude_damping(double gamma) {
    require_prob(gamma, "make_amplitude_damping");
    ComplexMatrix k0(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - gamma);
    ComplexMatrix k1(2, 2);
    k1(0, 1) = std::sqrt(gamma);
    std::vector<ComplexMatrix> ks;
    ks.push_back(std::move(k0));
    if (gamma > 0.0) ks.push_back(std::move(k1));
    return Channel::from_kraus(2, 2, std::move(ks));
}

Channel make_replace(int dim_in, const ComplexMatrix& target) {
    return Channel::from_kraus(dim_in, target.rows(), replace_kraus(dim_in, target, 1.0));
}

Channel random_channel(int dim_in, int dim_out, int env_dim, uint64_t seed) {
    if (env_dim < 1) throw std::invalid_argument("random_channel: env_dim must be >= 1");
    if (dim_out * env_dim < dim_in)
        throw std::invalid_argument("random_channel: no isometry with dim_out*env_dim < dim_in");
    Rng rng(seed);
    ComplexMatrix v = rng.ginibre(dim_out * env_dim, dim_in);
    orthonormalize_columns(v);
    std::vector<ComplexMatrix> ks;
    ks.reserve(static_cast<size_t>(env_dim));
    for (int e = 0; e < env_dim; ++e) {
        ComplexMatrix k(dim_out, dim_in);
        for (int b = 0; b < dim_out; ++b)
            for (int i = 0; i < dim_in; ++i) k(b, i) = v(b * env_dim + e, i);
        ks.push_back(std::move(k));
    }
    return Channel::from_kraus(dim_in, dim_out, std::move(ks));
}

Channel random_unitary_channel(int d, uint64_t seed) { return random_channel(d, d, 1, seed); }

BipartiteState random_state(const DimSpec& dims, uint64_t seed) {
    Rng rng(seed);
    const int n = dims.total();
    const ComplexMatrix g = rng.ginibre(n, n);
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return BipartiteState::make(std::move(rho), dims);
}

BipartiteState random_ppt_state(const DimSpec& dims, int a_factors, uint64_t seed) {
    if (a_factors < 1 || a_factors >= dims.count())
        throw std::invalid_argument("random_ppt_state: cut must leave factors on both sides");
    Rng rng(seed);
    int da = 1, db = 1;
    for (int k = 0; k < a_factors; ++k) da *= dims.dim(k);
    for (int k = a_factors; k < dims.count(); ++k) db *= dims.dim(k);

    const int terms = 2 * dims.total();
    std::vector<double> p(static_cast<size_t>(terms));
    double psum = 0.0;
    for (auto& w : p) {
        w = rng.uniform();
        psum += w;
    }
    ComplexMatrix rho(da * db, da * db);
    for (int x = 0; x < terms; ++x) {
        const ComplexMatrix ga = rng.ginibre(da, da);
        const ComplexMatrix gb = rng.ginibre(db, db);
        ComplexMatrix ta = ga * ga.adjoint();
        ComplexMatrix tb = gb * gb.adjoint();
        ta *= 1.0 / ta.trace().real();
        tb *= 1.0 / tb.trace().real();
        rho += (p[static_cast<size_t>(x)] / psum) * kron(ta, tb);
    }
    return BipartiteState::make(std::move(rho), dims);
}

Channel random_one_way_locc(int dim_a_in, int dim_b_in, int dim_a_out, int dim_b_out,
                            int branches, uint64_t seed) {
    if (branches < 1) throw std::invalid_argument("random_one_way_locc: branches must be >= 1");
    if (dim_a_out * branches < dim_a_in)
        throw std::invalid_argument("random_one_way_locc: instrument isometry needs dim_a_out*branches >= dim_a_in");
    Rng rng(seed);

    // Instrument on A: one Kraus slice per classical outcome x.
    const uint64_t seed_a = static_cast<uint64_t>(rng.uniform() * 9007199254740992.0);
    const Channel instr = random_channel(dim_a_in, dim_a_out, branches, seed_a);

    const int env_b = (dim_b_in + dim_b_out - 1) / dim_b_out;
    std::vector<ComplexMatrix> ks;
    for (int x = 0; x < branches; ++x) {
        const uint64_t seed_b = static_cast<uint64_t>(rng.uniform() * 9007199254740992.0);
        const Channel gx = random_channel(dim_b_in, dim_b_out, std::max(1, env_b), seed_b);
        for (const auto& kb : gx.kraus) ks.push_back(kron(instr.kraus[static_cast<size_t>(x)], kb));
    }
    return Channel::from_kraus(dim_a_in * dim_b_in, dim_a_out * dim_b_out, std::move(ks));
}

Channel make_replace_with_product_mixture(int dim_a_in, int dim_b_in, int dim_a_out,
                                          int dim_b_out, int terms, uint64_t seed) {
    if (terms < 1) throw std::invalid_argument("make_replace_with_product_mixture: terms >= 1");
    Rng rng(seed);
    std::vector<double> p(static_cast<size_t>(terms));
    double psum = 0.0;
    for (auto& w : p) {
        w = rng.uniform();
        psum += w;
    }
    std::vector<ComplexMatrix> ks;
    for (int x = 0; x < terms; ++x) {
        const ComplexMatrix ga = rng.ginibre(dim_a_out, dim_a_out);
        const ComplexMatrix gb = rng.ginibre(dim_b_out, dim_b_out);
        ComplexMatrix ta = ga * ga.adjoint();
        ComplexMatrix tb = gb * gb.adjoint();
        ta *= 1.0 / ta.trace().real();
        tb *= 1.0 / tb.trace().real();
        const auto ka = replace_kraus(dim_a_in, ta, p[static_cast<size_t>(x)] / psum);
        const auto kb = replace_kraus(dim_b_in, tb, 1.0);
        for (const auto& a : ka)
            for (const auto& b : kb) ks.push_back(kron(a, b));
    }
    return Channel::from_kraus(dim_a_in * dim_b_in, dim_a_out * dim_b_out, std::move(ks));
}

ComplexMatrix ppt_conjugated_choi(const Channel& l, int dim_a_in, int dim_b_in, int dim_a_out,
                                  int dim_b_out) {
    if (l.dim_in != dim_a_in * dim_b_in || l.dim_out != dim_a_out * dim_b_out)
        throw std::invalid_argument("ppt_conjugated_choi: dims do not match channel");
    const DimSpec refined{dim_a_in, dim_b_in, dim_a_out, dim_b_out};
    return partial_transpose(l.choi, refined, std::vector<int>{1, 3});
}

}  // namespace rainskit
