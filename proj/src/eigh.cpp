#include "rainskit/eigh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rainskit {

namespace {

constexpr double kOffdiagRelTol = 1e-12;
constexpr int kMaxQlSweeps = 64;

struct Tridiag {
    std::vector<double> d;   // diagonal
    std::vector<double> e;   // subdiagonal, e[i] couples i and i+1; e[n-1] = 0
    ComplexMatrix q;         // accumulated unitary, empty when values-only
    bool want_vectors = false;
};

// Householder reduction A -> Q^dag A Q tridiagonal, then a diagonal phase
// rotation making the subdiagonal real nonnegative (absorbed into Q).
Tridiag reduce_to_tridiagonal(ComplexMatrix a, bool want_vectors) {
    const int n = a.rows();
    Tridiag t;
    t.d.assign(static_cast<size_t>(n), 0.0);
    t.e.assign(static_cast<size_t>(n), 0.0);
    t.want_vectors = want_vectors;

    std::vector<std::vector<cplx>> house_v;
    std::vector<double> house_tau;
    std::vector<int> house_k;

    for (int k = 0; k + 2 < n; ++k) {
        const int len = n - 1 - k;
        double rest2 = 0.0;
        for (int j = k + 2; j < n; ++j) rest2 += std::norm(a(j, k));
        if (rest2 == 0.0) continue;  // column already tridiagonal

        const cplx x0 = a(k + 1, k);
        const double sigma = std::sqrt(std::norm(x0) + rest2);
        const cplx phase = (x0 != cplx(0.0)) ? x0 / std::abs(x0) : cplx(1.0);
        const cplx alpha = -phase * sigma;

        std::vector<cplx> v(static_cast<size_t>(len));
        for (int j = 0; j < len; ++j) v[static_cast<size_t>(j)] = a(k + 1 + j, k);
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (const cplx& vi : v) vnorm2 += std::norm(vi);
        if (vnorm2 == 0.0) continue;
        const double tau = 2.0 / vnorm2;

        // p = tau * B v on the trailing block B = a[k+1.., k+1..]
        std::vector<cplx> p(static_cast<size_t>(len), cplx(0.0));
        for (int i = 0; i < len; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < len; ++j) s += a(k + 1 + i, k + 1 + j) * v[static_cast<size_t>(j)];
            p[static_cast<size_t>(i)] = tau * s;
        }
        cplx vdp = 0.0;
        for (int i = 0; i < len; ++i) vdp += std::conj(v[static_cast<size_t>(i)]) * p[static_cast<size_t>(i)];
        const double kappa = 0.5 * tau * vdp.real();  // v^dag B v is real
        std::vector<cplx> w(static_cast<size_t>(len));
        for (int i = 0; i < len; ++i) w[static_cast<size_t>(i)] = p[static_cast<size_t>(i)] - kappa * v[static_cast<size_t>(i)];

        // B -= v w^dag + w v^dag
        for (int i = 0; i < len; ++i)
            for (int j = 0; j < len; ++j)
                a(k + 1 + i, k + 1 + j) -= v[static_cast<size_t>(i)] * std::conj(w[static_cast<size_t>(j)]) +
                                           w[static_cast<size_t>(i)] * std::conj(v[static_cast<size_t>(j)]);

        a(k + 1, k) = alpha;
        a(k, k + 1) = std::conj(alpha);
        for (int j = k + 2; j < n; ++j) {
            a(j, k) = 0.0;
            a(k, j) = 0.0;
        }

        if (want_vectors) {
            house_v.push_back(std::move(v));
            house_tau.push_back(tau);
            house_k.push_back(k);
        }
    }

    for (int i = 0; i < n; ++i) t.d[static_cast<size_t>(i)] = a(i, i).real();
    std::vector<cplx> esub(static_cast<size_t>(n), cplx(0.0));
    for (int i = 0; i + 1 < n; ++i) esub[static_cast<size_t>(i)] = a(i + 1, i);

    // Phases making the subdiagonal real: ph[0] = 1, ph[i+1] = e_i ph[i]/|e_i|.
    std::vector<cplx> ph(static_cast<size_t>(n), cplx(1.0));
    for (int i = 0; i + 1 < n; ++i) {
        const double m = std::abs(esub[static_cast<size_t>(i)]);
        ph[static_cast<size_t>(i + 1)] = (m > 0.0) ? esub[static_cast<size_t>(i)] * ph[static_cast<size_t>(i)] / m : ph[static_cast<size_t>(i)];
        t.e[static_cast<size_t>(i)] = m;
    }

    if (want_vectors) {
        // Q = P_0 P_1 ... applied to identity, then column phases.
        t.q = ComplexMatrix::identity(n);
        for (int h = static_cast<int>(house_v.size()) - 1; h >= 0; --h) {
            const auto& v = house_v[static_cast<size_t>(h)];
            const double tau = house_tau[static_cast<size_t>(h)];
            const int k = house_k[static_cast<size_t>(h)];
            const int len = static_cast<int>(v.size());
            for (int col = 0; col < n; ++col) {
                cplx s = 0.0;
                for (int i = 0; i < len; ++i) s += std::conj(v[static_cast<size_t>(i)]) * t.q(k + 1 + i, col);
                s *= tau;
                for (int i = 0; i < len; ++i) t.q(k + 1 + i, col) -= v[static_cast<size_t>(i)] * s;
            }
        }
        for (int col = 0; col < n; ++col)
            for (int row = 0; row < n; ++row) t.q(row, col) *= ph[static_cast<size_t>(col)];
    }
    return t;
}

// Implicit-shift QL on the real tridiagonal, rotations accumulated into q.
void ql_implicit(Tridiag& t) {
    const int n = static_cast<int>(t.d.size());
    auto& d = t.d;
    auto& e = t.e;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        while (true) {
            int m = l;
            while (m < n - 1) {
                const double dd = std::abs(d[static_cast<size_t>(m)]) + std::abs(d[static_cast<size_t>(m + 1)]);
                if (std::abs(e[static_cast<size_t>(m)]) <= kOffdiagRelTol * dd + 1e-300) break;
                ++m;
            }
            if (m == l) break;
            if (++iter > kMaxQlSweeps) throw std::runtime_error("eigh: QL failed to converge");

            double g = (d[static_cast<size_t>(l + 1)] - d[static_cast<size_t>(l)]) / (2.0 * e[static_cast<size_t>(l)]);
            double r = std::hypot(g, 1.0);
            g = d[static_cast<size_t>(m)] - d[static_cast<size_t>(l)] +
                e[static_cast<size_t>(l)] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[static_cast<size_t>(i)];
                const double b = c * e[static_cast<size_t>(i)];
                r = std::hypot(f, g);
                e[static_cast<size_t>(i + 1)] = r;
                if (r == 0.0) {
                    d[static_cast<size_t>(i + 1)] -= p;
                    e[static_cast<size_t>(m)] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[static_cast<size_t>(i + 1)] - p;
                r = (d[static_cast<size_t>(i)] - g) * s + 2.0 * c * b;
                p = s * r;
                d[static_cast<size_t>(i + 1)] = g + p;
                g = c * r - b;
                if (t.want_vectors) {
                    for (int k = 0; k < n; ++k) {
                        const cplx h = t.q(k, i + 1);
                        t.q(k, i + 1) = s * t.q(k, i) + c * h;
                        t.q(k, i) = c * t.q(k, i) - s * h;
                    }
                }
            }
            if (underflow) continue;
            d[static_cast<size_t>(l)] -= p;
            e[static_cast<size_t>(l)] = g;
            e[static_cast<size_t>(m)] = 0.0;
        }
    }
}

ComplexMatrix as_hermitian(const ComplexMatrix& h) {
    if (!h.square()) throw std::invalid_argument("eigh: matrix not square");
    ComplexMatrix a = h;
    a.hermitize();  // throws when the defect exceeds 1e-10 relative
    return a;
}

}  // namespace

EighResult eigh(const ComplexMatrix& h) {
    ComplexMatrix a = as_hermitian(h);
    const int n = a.rows();
    Tridiag t = reduce_to_tridiagonal(std::move(a), true);
    ql_implicit(t);

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return t.d[static_cast<size_t>(i)] < t.d[static_cast<size_t>(j)]; });

    EighResult r;
    r.values.resize(static_cast<size_t>(n));
    r.vectors = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        r.values[static_cast<size_t>(j)] = t.d[static_cast<size_t>(order[static_cast<size_t>(j)])];
        for (int i = 0; i < n; ++i) r.vectors(i, j) = t.q(i, order[static_cast<size_t>(j)]);
    }
    return r;
}

std::vector<double> eigvalsh(const ComplexMatrix& h) {
    ComplexMatrix a = as_hermitian(h);
    Tridiag t = reduce_to_tridiagonal(std::move(a), false);
    ql_implicit(t);
    std::sort(t.d.begin(), t.d.end());
    return t.d;
}

EighRealResult eigh_real(const RealMatrix& s) {
    if (s.rows() != s.cols()) throw std::invalid_argument("eigh_real: matrix not square");
    const int n = s.rows();
    ComplexMatrix h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = s(i, j);
    EighResult c = eigh(h);
    EighRealResult r;
    r.values = std::move(c.values);
    r.vectors = RealMatrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.vectors(i, j) = c.vectors(i, j).real();
    return r;
}

std::vector<double> eigvalsh_real(const RealMatrix& s) {
    if (s.rows() != s.cols()) throw std::invalid_argument("eigvalsh_real: matrix not square");
    const int n = s.rows();
    ComplexMatrix h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = s(i, j);
    return eigvalsh(h);
}

double min_eigenvalue(const ComplexMatrix& h) {
    auto v = eigvalsh(h);
    return v.front();
}

double max_abs_eigenvalue(const ComplexMatrix& h) {
    auto v = eigvalsh(h);
    return std::max(std::abs(v.front()), std::abs(v.back()));
}

ComplexMatrix sqrtm_psd(const ComplexMatrix& h) {
    EighResult r = eigh(h);
    const int n = h.rows();
    ComplexMatrix out(n, n);
    for (int k = 0; k < n; ++k) {
        const double s = std::sqrt(std::max(0.0, r.values[static_cast<size_t>(k)]));
        if (s == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out(i, j) += s * r.vectors(i, k) * std::conj(r.vectors(j, k));
    }
    return out;
}

}  // namespace rainskit
