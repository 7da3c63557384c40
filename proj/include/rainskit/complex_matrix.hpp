#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rainskit {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Carrier for states, Choi operators and
/// SDP variables; tensor structure is tracked separately via DimSpec.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows <= 0 || cols <= 0) throw std::invalid_argument("ComplexMatrix: nonpositive dims");
    }

    static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diag(std::span<const double> d) {
        ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    std::span<cplx> data() { return a_; }
    std::span<const cplx> data() const { return a_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);  // matmul

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;

    cplx trace() const;
    double max_abs() const;

    /// Hermiticity test at the standard relative tolerance
    /// max |M[i][j] - conj(M[j][i])| <= tol * (1 + max|M|).
    bool is_hermitian(double tol = 1e-12) const;

    /// Symmetrize to (M + M^dag)/2 when the Hermiticity defect is at most
    /// reject_tol relative; throw otherwise.
    void hermitize(double reject_tol = 1e-10);

    bool approx_equal(const ComplexMatrix& o, double tol) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> a_;
};

/// Dense real matrix, row-major. Used by the real-arithmetic SDP kernel and
/// the Hermitian-to-real-symmetric embedding.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows <= 0 || cols <= 0) throw std::invalid_argument("RealMatrix: nonpositive dims");
    }

    static RealMatrix zero(int rows, int cols) { return RealMatrix(rows, cols); }
    static RealMatrix identity(int n) {
        RealMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const double& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    std::span<double> data() { return a_; }
    std::span<const double> data() const { return a_; }

    RealMatrix& operator+=(const RealMatrix& o);
    RealMatrix& operator-=(const RealMatrix& o);
    RealMatrix& operator*=(double s);
    friend RealMatrix operator+(RealMatrix a, const RealMatrix& b) { return a += b; }
    friend RealMatrix operator-(RealMatrix a, const RealMatrix& b) { return a -= b; }
    friend RealMatrix operator*(double s, RealMatrix a) { return a *= s; }
    friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);  // matmul

    RealMatrix transpose() const;
    double trace() const;
    double max_abs() const;
    void symmetrize();  // (M + M^T)/2 in place

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

/// Ordered subsystem dimensions of a square operator on a tensor-product
/// space; product(factors) must equal the matrix side.
struct DimSpec {
    std::vector<int> factors;

    DimSpec() = default;
    DimSpec(std::initializer_list<int> f) : factors(f) { check(); }
    explicit DimSpec(std::vector<int> f) : factors(std::move(f)) { check(); }

    int total() const {
        int p = 1;
        for (int d : factors) p *= d;
        return p;
    }
    int count() const { return static_cast<int>(factors.size()); }
    int dim(int k) const { return factors.at(static_cast<size_t>(k)); }

    /// Row-major strides: index = sum_k i_k * stride_k.
    std::vector<int> strides() const {
        std::vector<int> s(factors.size());
        int acc = 1;
        for (int k = count() - 1; k >= 0; --k) {
            s[static_cast<size_t>(k)] = acc;
            acc *= factors[static_cast<size_t>(k)];
        }
        return s;
    }

    void require_matches(const ComplexMatrix& m) const {
        if (!m.square() || m.rows() != total())
            throw std::invalid_argument("DimSpec: factor product " + std::to_string(total()) +
                                        " does not match matrix side " + std::to_string(m.rows()));
    }

private:
    void check() const {
        if (factors.empty()) throw std::invalid_argument("DimSpec: empty factor list");
        for (int d : factors)
            if (d <= 0) throw std::invalid_argument("DimSpec: nonpositive factor");
    }
};

}  // namespace rainskit
