#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "rainskit/channels.hpp"
#include "rainskit/eigh.hpp"
#include "rainskit/hermitian_sdp.hpp"
#include "rainskit/linalg.hpp"
#include "rainskit/rains.hpp"

using namespace rainskit;

TEST_CASE("dmax: coincidence, scalar multiple, disjoint support") {
    Rng rng(101);
    const ComplexMatrix rho = oracles::random_density(rng, 4);
    CHECK(dmax(rho, rho) == doctest::Approx(0.0).epsilon(1e-9));

    for (int d : {2, 3}) {
        ComplexMatrix sigma = phi_state(d);
        sigma *= 1.0 / d;
        CHECK(dmax(phi_state(d), sigma) == doctest::Approx(std::log2(d)).epsilon(1e-9));
    }

    ComplexMatrix p0(2, 2), p1(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    CHECK(dmax(p0, p1) == std::numeric_limits<double>::infinity());
}

TEST_CASE("ppt_prime_member: separable, normalized Phi_d, raw Phi_d") {
    const Bipartition cut{{1}};
    for (uint64_t seed = 0; seed < 5; ++seed) {
        const BipartiteState s = random_ppt_state(DimSpec{2, 2}, 1, seed);
        CHECK(ppt_prime_member(s.matrix, s.dims, cut, 1e-9));
    }
    for (int d : {2, 3}) {
        ComplexMatrix phi_over_d = phi_state(d);
        phi_over_d *= 1.0 / d;
        CHECK(ppt_prime_member(phi_over_d, DimSpec{d, d}, cut, 1e-9));
        CHECK(!ppt_prime_member(phi_state(d), DimSpec{d, d}, cut, 1e-9));
    }
}

TEST_CASE("adjoint identity <T_B X, Y> = <X, T_B Y>") {
    Rng rng(103);
    const DimSpec dims{2, 3};
    for (int t = 0; t < 10; ++t) {
        const ComplexMatrix x = oracles::random_hermitian(rng, 6);
        const ComplexMatrix y = oracles::random_hermitian(rng, 6);
        const double lhs = herm_inner(partial_transpose(x, dims, 1), y);
        const double rhs = herm_inner(x, partial_transpose(y, dims, 1));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("w_state: PPT states sit at the trace lower bound") {
    // Feasible point C = T_B(rho), D = 0 gives Tr = 1; the trace argument
    // gives W >= 1; so any PPT state has W = 1.
    for (uint64_t seed = 0; seed < 4; ++seed) {
        const BipartiteState rho = random_ppt_state(DimSpec{2, 2}, 1, 300 + seed);
        const MeasureResult r = w_state(rho, Bipartition{{1}});
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(std::abs(r.log2_value) <= 1e-6);
        CHECK(r.value >= r.cert.lower - 1e-9);
        CHECK(r.value <= r.cert.upper + 1e-9);
    }
    const BipartiteState rho23 = random_ppt_state(DimSpec{2, 3}, 1, 42);
    CHECK(w_state(rho23, Bipartition{{1}}).value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("w_state: maximally entangled states, two-sided derivation") {
    for (int d : {2, 3}) {
        const BipartiteState phi = BipartiteState::make(phi_state(d), DimSpec{d, d});
        const MeasureResult r = w_state(phi, Bipartition{{1}});

        // Upper bound: sigma = Phi_d/d is PPT', so W <= 2^{D_max(Phi || Phi/d)}.
        ComplexMatrix sigma = phi_state(d);
        sigma *= 1.0 / d;
        REQUIRE(ppt_prime_member(sigma, phi.dims, Bipartition{{1}}, 1e-9));
        const double upper = std::pow(2.0, dmax(phi.matrix, sigma));
        // Lower bound from the entanglement test: Tr(Phi sigma') <= 1/d for
        // every PPT' sigma', forcing W >= d.
        CHECK(r.value <= upper + 1e-6);
        CHECK(r.value == doctest::Approx(static_cast<double>(d)).epsilon(1e-6));
        CHECK(r.log2_value == doctest::Approx(std::log2(d)).epsilon(1e-6));

        // Optimizers are feasible: C, D >= 0 and T_B(C - D) >= rho.
        const ComplexMatrix& c = r.optimizers[0];
        const ComplexMatrix& dd = r.optimizers[1];
        CHECK(min_eigenvalue(c) >= -1e-8);
        CHECK(min_eigenvalue(dd) >= -1e-8);
        ComplexMatrix slack = partial_transpose(c - dd, phi.dims, 1);
        slack -= phi.matrix;
        CHECK(min_eigenvalue(slack) >= -1e-8);
    }
}

TEST_CASE("w_state: random states certified and stable under re-solve") {
    for (uint64_t seed = 0; seed < 3; ++seed) {
        const BipartiteState rho = random_state(DimSpec{2, 2}, 500 + seed);
        const MeasureResult r = w_state(rho, Bipartition{{1}});
        CHECK(r.value >= 1.0 - 1e-8);  // trace argument
        CHECK(r.value >= r.cert.lower - 1e-9);
        CHECK(r.value <= r.cert.upper + 1e-9);
        CHECK(r.cert.upper - r.cert.lower <= 1e-6 * (1.0 + r.value));

        SdpOptions perturbed;
        perturbed.init_scale = 2.0;
        const MeasureResult r2 = w_state(rho, Bipartition{{1}}, perturbed);
        CHECK(r2.value == doctest::Approx(r.value).epsilon(1e-6));
    }
}

TEST_CASE("w_state Slater point is strictly feasible") {
    const BipartiteState rho = random_state(DimSpec{2, 2}, 7);
    const WSlaterPoint pt = w_state_slater_point(rho, Bipartition{{1}}, 1e-3);
    CHECK(min_eigenvalue(pt.c) >= 1e-3 - 1e-12);
    CHECK(min_eigenvalue(pt.d) >= 1e-3 - 1e-12);
    ComplexMatrix slack = partial_transpose(pt.c - pt.d, rho.dims, 1);
    slack -= rho.matrix;
    CHECK(min_eigenvalue(slack) >= 1e-3 - 1e-10);
}

TEST_CASE("r_max_state: vanishes on 50 random PPT states") {
    for (int i = 0; i < 50; ++i) {
        const DimSpec dims = (i % 2 == 0) ? DimSpec{2, 2} : DimSpec{2, 3};
        const BipartiteState rho = random_ppt_state(dims, 1, 4200 + static_cast<uint64_t>(i));
        CHECK(std::abs(r_max_state(rho, Bipartition{{1}})) <= 1e-6);
    }
}

TEST_CASE("gamma_channel: never below 1 on random channels") {
    for (uint64_t seed = 0; seed < 8; ++seed) {
        const Channel n = random_channel(2, 2, 2, 4300 + seed);
        CHECK(gamma_channel(n).value >= 1.0 - 1e-8);
    }
}

TEST_CASE("r_max_state: monotone under generated one-way LOCC channels") {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        const BipartiteState rho = random_state(DimSpec{2, 2}, 700 + seed);
        const double before = r_max_state(rho, Bipartition{{1}});
        const Channel locc = random_one_way_locc(2, 2, 2, 2, 2, 800 + seed);
        const BipartiteState flat = BipartiteState::make(rho.matrix, DimSpec{4});
        const BipartiteState out_flat = apply_channel(locc, flat, 0);
        const BipartiteState out = BipartiteState::make(out_flat.matrix, DimSpec{2, 2});
        const double after = r_max_state(out, Bipartition{{1}});
        CHECK(after <= before + 1e-6);
    }
}

TEST_CASE("gamma_channel: identity qubit equals 2 with analytic feasible pair") {
    const Channel id2 = make_identity(2);
    const MeasureResult r = gamma_channel(id2);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(r.log2_value == doctest::Approx(1.0).epsilon(1e-6));

    // Analytic feasible pair V = P_sym, Y = P_anti: T_B(V - Y) = T_B(SWAP) = J.
    ComplexMatrix swap(4, 4);
    swap(0, 0) = 1.0;
    swap(1, 2) = 1.0;
    swap(2, 1) = 1.0;
    swap(3, 3) = 1.0;
    const ComplexMatrix tb_swap = partial_transpose(swap, DimSpec{2, 2}, 1);
    CHECK(tb_swap.approx_equal(id2.choi, 1e-13));
    // so || Tr_B (P_sym + P_anti) ||_inf = || Tr_B I ||_inf = 2 upper-bounds Gamma
    CHECK(r.value <= 2.0 + 1e-6);
    // and the Phi input lower bound: W(id(Phi)) = W(Phi) = 2 <= Gamma.
    const BipartiteState phi = BipartiteState::make(phi_state(2), DimSpec{2, 2});
    CHECK(w_state(phi, Bipartition{{1}}).value <= r.value + 1e-6);

    // Optimizer feasibility.
    const ComplexMatrix& v = r.optimizers[0];
    const ComplexMatrix& y = r.optimizers[1];
    CHECK(min_eigenvalue(v) >= -1e-8);
    CHECK(min_eigenvalue(y) >= -1e-8);
    ComplexMatrix slack = partial_transpose(v - y, DimSpec{2, 2}, 1);
    slack -= id2.choi;
    CHECK(min_eigenvalue(slack) >= -1e-8);
}

TEST_CASE("gamma_channel: depolarizing and erasure endpoints") {
    CHECK(gamma_channel(make_depolarizing(2, 1.0)).value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(gamma_channel(make_erasure(2, 1.0)).value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r_max_channel(make_depolarizing(2, 0.0)) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r_max_channel(make_erasure(2, 0.0)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("gamma Slater point is strictly feasible") {
    const Channel n = random_channel(2, 2, 2, 11);
    const GammaSlaterPoint pt = gamma_slater_point(n, 1e-3);
    CHECK(min_eigenvalue(pt.v) >= 1e-3 - 1e-12);
    CHECK(min_eigenvalue(pt.y) >= 1e-3 - 1e-12);
    ComplexMatrix slack = partial_transpose(pt.v - pt.y, DimSpec{2, 2}, 1);
    slack -= n.choi;
    CHECK(min_eigenvalue(slack) >= 1e-3 - 1e-10);
    ComplexMatrix z2 = pt.t * ComplexMatrix::identity(2) - partial_trace(pt.v + pt.y, DimSpec{2, 2}, 1);
    CHECK(min_eigenvalue(z2) >= 1e-3 - 1e-10);
}

TEST_CASE("q_theta: identity, fully depolarizing, dominance over R_max") {
    CHECK(q_theta(make_identity(2)) == doctest::Approx(1.0).epsilon(1e-6));  // ||T||_dia = 2
    CHECK(q_theta(make_depolarizing(2, 1.0)) == doctest::Approx(0.0).epsilon(1e-6));

    for (uint64_t seed = 0; seed < 5; ++seed) {
        const Channel n = random_channel(2, 2, 2, 900 + seed);
        CHECK(q_theta(n) >= r_max_channel(n) - 1e-6);
    }
}

TEST_CASE("channel-vs-state consistency on pure inputs") {
    for (uint64_t seed = 0; seed < 4; ++seed) {
        const Channel n = random_channel(2, 2, 2, 1000 + seed);
        const double chan = r_max_channel(n);
        Rng rng(1100 + seed);
        ComplexMatrix g = rng.ginibre(4, 1);
        double nrm = 0.0;
        for (int i = 0; i < 4; ++i) nrm += std::norm(g(i, 0));
        g *= 1.0 / std::sqrt(nrm);
        const BipartiteState psi = BipartiteState::make(g * g.adjoint(), DimSpec{2, 2});
        const BipartiteState out = apply_channel(n, psi, 1);
        CHECK(r_max_state(out, Bipartition{{1}}) <= chan + 1e-6);
    }
}

TEST_CASE("dmax rejects non-PSD input") {
    ComplexMatrix bad = ComplexMatrix::identity(2);
    bad(0, 0) = -1.0;
    CHECK_THROWS_AS(dmax(bad, ComplexMatrix::identity(2)), std::invalid_argument);
}
