#pragma once

#include <functional>
#include <vector>

#include "rainskit/complex_matrix.hpp"
#include "rainskit/sdp.hpp"

namespace rainskit {

/// Orthonormal basis of the real vector space of n x n Hermitian matrices
/// (n^2 elements) under <X, Y> = Tr(X Y).
std::vector<ComplexMatrix> hermitian_basis(int n);

/// Re Tr(a b) for Hermitian a, b.
double herm_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Assembles complex-Hermitian conic programs into real symmetric standard
/// form through the [[A,-B],[B,A]] embedding. The embedding doubles traces,
/// so objective and right-hand-side data are doubled on ingestion and
/// reported optima are halved back; primal_value/dual_value apply the factor.
class HermitianSdpBuilder {
public:
    /// PSD complex Hermitian variable; embedded real block side is 2*side.
    int add_hermitian_var(int side);
    /// Nonnegative real scalar variable (1x1 block).
    int add_scalar_var();

    /// Objective += <G, X_var> with G Hermitian.
    void add_objective(int var, const ComplexMatrix& g);
    void add_objective_scalar(int var, double coeff);

    struct MatrixTerm {
        int var;
        /// Adjoint action: for a Hermitian basis element H, returns K with
        /// <H, Op(X)> = <K, X>. Partial transpose and identity are their own
        /// adjoints; the adjoint of Tr_B is K -> K (x) I_B.
        std::function<ComplexMatrix(const ComplexMatrix&)> adjoint_op;
    };
    struct ScalarTerm {
        int var;
        ComplexMatrix g;  // contributes x * G to the equality
    };

    /// Matrix equality sum_v Op_v(X_v) + sum_s x_s G_s = rhs over the
    /// Hermitian space of the given side; expands into side^2 rows.
    void add_matrix_equality(int side, const std::vector<MatrixTerm>& terms,
                             const std::vector<ScalarTerm>& scalars, const ComplexMatrix& rhs);

    SdpProblem build() const;

    ComplexMatrix extract_hermitian(const SdpSolution& sol, int var) const;
    double extract_scalar(const SdpSolution& sol, int var) const;

    static double primal_value(const SdpSolution& sol) { return 0.5 * sol.primal_obj; }
    static double dual_value(const SdpSolution& sol) { return 0.5 * sol.dual_obj; }

private:
    struct VarInfo {
        int side;  // complex side, 0 for scalars
        bool scalar;
    };
    std::vector<VarInfo> vars_;
    std::vector<int> block_sides_;
    BlockMatrix objective_;
    std::vector<BlockMatrix> rows_;
    std::vector<double> rhs_;
};

}  // namespace rainskit
