#pragma once

#include <stdexcept>
#include <vector>

#include "rainskit/channels.hpp"
#include "rainskit/complex_matrix.hpp"
#include "rainskit/sdp.hpp"

namespace rainskit {

/// Raised when a measure's SDP does not reach Optimal status.
class SolverFailure : public std::runtime_error {
public:
    SolverFailure(SdpStatus status, const std::string& what)
        : std::runtime_error(what), status_(status) {}
    SdpStatus status() const { return status_; }

private:
    SdpStatus status_;
};

/// Independently recomputed optimality evidence, in complex-domain units.
struct Certificate {
    double lower = 0.0;  // dual objective
    double upper = 0.0;  // primal objective
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double min_eig_x = 0.0;
    double min_eig_s = 0.0;
    int iterations = 0;
};

struct MeasureResult {
    double value = 0.0;
    double log2_value = 0.0;
    std::vector<ComplexMatrix> optimizers;
    Certificate cert;
    bool exact = true;  // false when computed under the PPT relaxation
};

/// Bipartition of the tensor factors: indices listed here form the B side.
struct Bipartition {
    std::vector<int> b_side;

    void require_valid(const DimSpec& dims) const;
    std::vector<int> a_side(const DimSpec& dims) const;
};

/// D_max(rho || sigma) = log2 of the smallest lambda with rho <= lambda sigma;
/// +infinity when supp(rho) is not contained in supp(sigma) (support test at
/// tolerance 1e-9).
double dmax(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// sigma >= 0 and || T_B(sigma) ||_1 <= 1, both at the given tolerance.
bool ppt_prime_member(const ComplexMatrix& sigma, const DimSpec& dims, const Bipartition& cut,
                      double tol);

/// W(A;B)_rho: minimize Tr(C + D) subject to C, D >= 0 and
/// T_B(C - D) >= rho. Optimizers are (C, D).
MeasureResult w_state(const BipartiteState& rho, const Bipartition& cut,
                      const SdpOptions& opts = {});

/// log2 W.
double r_max_state(const BipartiteState& rho, const Bipartition& cut, const SdpOptions& opts = {});

/// Gamma(N): minimize || Tr_B(V + Y) ||_inf subject to V, Y >= 0 and
/// T_B(V - Y) >= J^N, with the norm handled by an epigraph scalar t and
/// t I_S >= Tr_B(V + Y). Optimizers are (V, Y).
MeasureResult gamma_channel(const Channel& n, const SdpOptions& opts = {});

/// log2 Gamma.
double r_max_channel(const Channel& n, const SdpOptions& opts = {});

/// Diamond norm of the transpose-composed channel T o N; for the
/// Hermiticity-preserving T o N this is
/// min { ||Tr_B Y||_inf : Y >= +-T_B(J^N) }. Optimizer is Y.
MeasureResult transposed_diamond_norm(const Channel& n, const SdpOptions& opts = {});

/// Q_Theta = log2 || T o N ||_diamond.
double q_theta(const Channel& n, const SdpOptions& opts = {});

/// Strictly feasible points used as solver sanity probes.
struct WSlaterPoint {
    ComplexMatrix c, d, z;
};
WSlaterPoint w_state_slater_point(const BipartiteState& rho, const Bipartition& cut, double eps);

struct GammaSlaterPoint {
    ComplexMatrix v, y, z1, z2;
    double t = 0.0;
};
GammaSlaterPoint gamma_slater_point(const Channel& n, double eps);

ComplexMatrix positive_part(const ComplexMatrix& h);
ComplexMatrix negative_part(const ComplexMatrix& h);  // h = pos - neg, both PSD

}  // namespace rainskit
