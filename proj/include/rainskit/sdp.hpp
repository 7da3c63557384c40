#pragma once

#include <string>
#include <vector>

#include "rainskit/complex_matrix.hpp"

namespace rainskit {

/// Block-diagonal real symmetric matrix over a fixed block structure.
struct BlockMatrix {
    std::vector<RealMatrix> blocks;

    static BlockMatrix zeros(const std::vector<int>& sides) {
        BlockMatrix m;
        m.blocks.reserve(sides.size());
        for (int s : sides) m.blocks.emplace_back(RealMatrix::zero(s, s));
        return m;
    }
    static BlockMatrix scaled_identity(const std::vector<int>& sides, double eta) {
        BlockMatrix m = zeros(sides);
        for (auto& b : m.blocks)
            for (int i = 0; i < b.rows(); ++i) b(i, i) = eta;
        return m;
    }

    double dot(const BlockMatrix& o) const;
    void axpy(double c, const BlockMatrix& o);  // this += c * o
    double max_abs() const;
    double trace() const;
    void symmetrize();
};

enum class SdpStatus {
    Optimal,
    PrimalInfeasibleCertificate,
    DualInfeasibleCertificate,
    NumericalTrouble,
};

const char* to_string(SdpStatus s);

/// minimize <C, X>  subject to  <A_k, X> = b_k,  X >= 0 (blockwise PSD).
struct SdpProblem {
    std::vector<int> block_sides;
    BlockMatrix c;
    std::vector<BlockMatrix> a;
    std::vector<double> b;

    /// Conformance plus linear-independence rank check on the constraint
    /// Gram matrix (tolerance 1e-10). Throws std::invalid_argument.
    void validate() const;
};

struct IterateTrace {
    double primal_obj = 0.0;
    double dual_obj = 0.0;
    double xs_inner = 0.0;        // <X, S>
    double primal_feas_gap = 0.0; // |y . r_p|
    double dual_feas_gap = 0.0;   // |<R_d, X>|
};

struct SdpSolution {
    SdpStatus status = SdpStatus::NumericalTrouble;
    BlockMatrix x;
    std::vector<double> y;
    BlockMatrix s;  // dual slack C - sum_k y_k A_k
    double primal_obj = 0.0;
    double dual_obj = 0.0;
    double gap = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    int iterations = 0;
    std::vector<IterateTrace> trace;
};

struct SdpOptions {
    double tol = 1e-8;
    int max_iters = 200;
    double init_scale = 1.0;  // multiplies the default eta, for re-solve checks
};

/// Infeasible-start primal-dual path following with Nesterov-Todd scaling and
/// a Mehrotra predictor-corrector step; fraction-to-boundary 0.98. The
/// iterate sequence is a deterministic function of the problem data.
SdpSolution solve(const SdpProblem& p, const SdpOptions& opts = {});

struct VerifyReport {
    double primal_obj = 0.0;
    double dual_obj = 0.0;
    double gap = 0.0;
    double primal_residual = 0.0;  // max_k |<A_k, X> - b_k|
    double dual_residual = 0.0;    // max entry of |C - S - sum y_k A_k|
    double min_eig_x = 0.0;
    double min_eig_s = 0.0;
    double lower = 0.0;  // certified interval [dual_obj, primal_obj]
    double upper = 0.0;
    bool ok = false;
};

/// Recomputes objectives and residuals from the solution data alone,
/// independently of solver internals.
VerifyReport verify(const SdpProblem& p, const SdpSolution& sol, double tol);

std::string to_debug_json(const SdpProblem& p);

}  // namespace rainskit
