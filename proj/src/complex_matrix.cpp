#include "rainskit/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "rainskit/kernels.hpp"

namespace rainskit {

static void require_same_shape(int ar, int ac, int br, int bc, const char* what) {
    if (ar != br || ac != bc) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_shape(rows_, cols_, o.rows_, o.cols_, "ComplexMatrix::+=");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_shape(rows_, cols_, o.rows_, o.cols_, "ComplexMatrix::-=");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("ComplexMatrix::*: inner dim mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    kernels::gemm(a.data().data(), a.rows(), a.cols(), b.data().data(), b.cols(), c.data().data());
    return c;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = std::conj(a_[i]);
    return r;
}

cplx ComplexMatrix::trace() const {
    if (!square()) throw std::invalid_argument("ComplexMatrix::trace: not square");
    cplx t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!square()) return false;
    const double scale = 1.0 + max_abs();
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol * scale) return false;
    return true;
}

void ComplexMatrix::hermitize(double reject_tol) {
    if (!square()) throw std::invalid_argument("hermitize: not square");
    const double scale = 1.0 + max_abs();
    double defect = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            defect = std::max(defect, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    if (defect > reject_tol * scale)
        throw std::invalid_argument("hermitize: Hermiticity defect " + std::to_string(defect) +
                                    " exceeds tolerance");
    for (int i = 0; i < rows_; ++i) {
        (*this)(i, i) = cplx((*this)(i, i).real(), 0.0);
        for (int j = i + 1; j < cols_; ++j) {
            const cplx v = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
            (*this)(i, j) = v;
            (*this)(j, i) = std::conj(v);
        }
    }
}

bool ComplexMatrix::approx_equal(const ComplexMatrix& o, double tol) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
        if (std::abs(a_[i] - o.a_[i]) > tol) return false;
    return true;
}

RealMatrix& RealMatrix::operator+=(const RealMatrix& o) {
    require_same_shape(rows_, cols_, o.rows_, o.cols_, "RealMatrix::+=");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

RealMatrix& RealMatrix::operator-=(const RealMatrix& o) {
    require_same_shape(rows_, cols_, o.rows_, o.cols_, "RealMatrix::-=");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

RealMatrix& RealMatrix::operator*=(double s) {
    for (auto& v : a_) v *= s;
    return *this;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("RealMatrix::*: inner dim mismatch");
    RealMatrix c(a.rows(), b.cols());
    kernels::gemm(a.data().data(), a.rows(), a.cols(), b.data().data(), b.cols(), c.data().data());
    return c;
}

RealMatrix RealMatrix::transpose() const {
    RealMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

double RealMatrix::trace() const {
    if (rows_ != cols_) throw std::invalid_argument("RealMatrix::trace: not square");
    double t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double RealMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

void RealMatrix::symmetrize() {
    if (rows_ != cols_) throw std::invalid_argument("RealMatrix::symmetrize: not square");
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j) {
            const double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
            (*this)(i, j) = v;
            (*this)(j, i) = v;
        }
}

}  // namespace rainskit
