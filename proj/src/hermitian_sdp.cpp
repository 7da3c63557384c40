#include "rainskit/hermitian_sdp.hpp"

#include <cmath>
#include <stdexcept>

#include "rainskit/linalg.hpp"

namespace rainskit {

std::vector<ComplexMatrix> hermitian_basis(int n) {
    std::vector<ComplexMatrix> basis;
    basis.reserve(static_cast<size_t>(n) * n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        ComplexMatrix e(n, n);
        e(i, i) = 1.0;
        basis.push_back(std::move(e));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            ComplexMatrix re(n, n);
            re(i, j) = inv_sqrt2;
            re(j, i) = inv_sqrt2;
            basis.push_back(std::move(re));
            ComplexMatrix im(n, n);
            im(i, j) = cplx(0.0, inv_sqrt2);
            im(j, i) = cplx(0.0, -inv_sqrt2);
            basis.push_back(std::move(im));
        }
    return basis;
}

double herm_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("herm_inner: shape mismatch");
    cplx s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * b(j, i);
    return s.real();
}

int HermitianSdpBuilder::add_hermitian_var(int side) {
    if (side < 1) throw std::invalid_argument("add_hermitian_var: side must be positive");
    vars_.push_back({side, false});
    block_sides_.push_back(2 * side);
    objective_.blocks.emplace_back(RealMatrix::zero(2 * side, 2 * side));
    for (auto& row : rows_) row.blocks.emplace_back(RealMatrix::zero(2 * side, 2 * side));
    return static_cast<int>(vars_.size()) - 1;
}

int HermitianSdpBuilder::add_scalar_var() {
    vars_.push_back({0, true});
    block_sides_.push_back(1);
    objective_.blocks.emplace_back(RealMatrix::zero(1, 1));
    for (auto& row : rows_) row.blocks.emplace_back(RealMatrix::zero(1, 1));
    return static_cast<int>(vars_.size()) - 1;
}

void HermitianSdpBuilder::add_objective(int var, const ComplexMatrix& g) {
    const auto& info = vars_.at(static_cast<size_t>(var));
    if (info.scalar || g.rows() != info.side)
        throw std::invalid_argument("add_objective: variable/matrix mismatch");
    objective_.blocks[static_cast<size_t>(var)] += real_embedding(g);
}

void HermitianSdpBuilder::add_objective_scalar(int var, double coeff) {
    if (!vars_.at(static_cast<size_t>(var)).scalar)
        throw std::invalid_argument("add_objective_scalar: not a scalar variable");
    objective_.blocks[static_cast<size_t>(var)](0, 0) += 2.0 * coeff;
}

void HermitianSdpBuilder::add_matrix_equality(int side, const std::vector<MatrixTerm>& terms,
                                              const std::vector<ScalarTerm>& scalars,
                                              const ComplexMatrix& rhs) {
    if (rhs.rows() != side || rhs.cols() != side)
        throw std::invalid_argument("add_matrix_equality: rhs side mismatch");
    for (const ComplexMatrix& h : hermitian_basis(side)) {
        BlockMatrix row = BlockMatrix::zeros(block_sides_);
        for (const auto& t : terms) {
            const auto& info = vars_.at(static_cast<size_t>(t.var));
            if (info.scalar) throw std::invalid_argument("add_matrix_equality: matrix term on scalar var");
            ComplexMatrix k = t.adjoint_op(h);
            if (k.rows() != info.side)
                throw std::invalid_argument("add_matrix_equality: adjoint_op output side mismatch");
            k.hermitize();
            row.blocks[static_cast<size_t>(t.var)] += real_embedding(k);
        }
        for (const auto& s : scalars) {
            if (!vars_.at(static_cast<size_t>(s.var)).scalar)
                throw std::invalid_argument("add_matrix_equality: scalar term on matrix var");
            row.blocks[static_cast<size_t>(s.var)](0, 0) += 2.0 * herm_inner(h, s.g);
        }
        rows_.push_back(std::move(row));
        rhs_.push_back(2.0 * herm_inner(h, rhs));
    }
}

SdpProblem HermitianSdpBuilder::build() const {
    SdpProblem p;
    p.block_sides = block_sides_;
    p.c = objective_;
    p.a = rows_;
    p.b = rhs_;
    p.validate();
    return p;
}

ComplexMatrix HermitianSdpBuilder::extract_hermitian(const SdpSolution& sol, int var) const {
    const auto& info = vars_.at(static_cast<size_t>(var));
    if (info.scalar) throw std::invalid_argument("extract_hermitian: scalar variable");
    return from_real_embedding(sol.x.blocks[static_cast<size_t>(var)]);
}

double HermitianSdpBuilder::extract_scalar(const SdpSolution& sol, int var) const {
    if (!vars_.at(static_cast<size_t>(var)).scalar)
        throw std::invalid_argument("extract_scalar: not a scalar variable");
    return sol.x.blocks[static_cast<size_t>(var)](0, 0);
}

}  // namespace rainskit
