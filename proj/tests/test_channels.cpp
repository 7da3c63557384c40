#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rainskit/channels.hpp"
#include "rainskit/eigh.hpp"
#include "rainskit/linalg.hpp"

using namespace rainskit;

TEST_CASE("choi_from_kraus: identity, depolarizing, basis round trip") {
    const Channel id2 = make_identity(2);
    const ComplexMatrix ups = max_entangled_vector(2, Normalization::Unnormalized);
    CHECK(id2.choi.approx_equal(ups * ups.adjoint(), 1e-14));
    CHECK(id2.choi.trace().real() == doctest::Approx(2.0));
    auto ev = eigvalsh(id2.choi);
    CHECK(ev.back() == doctest::Approx(2.0).epsilon(1e-12));  // rank 1
    CHECK(std::abs(ev[2]) < 1e-12);

    // Completely depolarizing qubit channel has Choi I_4/2 (column expansion).
    const Channel dep = make_depolarizing(2, 1.0);
    ComplexMatrix half_i = ComplexMatrix::identity(4);
    half_i *= 0.5;
    CHECK(dep.choi.approx_equal(half_i, 1e-14));

    // Random channel: Choi action reproduces Kraus action on a basis of
    // input operators.
    const Channel n = random_channel(3, 2, 2, 5);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            ComplexMatrix eij(3, 3);
            eij(i, j) = 1.0;
            ComplexMatrix via_kraus(2, 2);
            for (const auto& k : n.kraus) via_kraus += k * eij * k.adjoint();
            // <i| (x) I J |j> (x) I block of the Choi
            ComplexMatrix block(2, 2);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) block(a, b) = n.choi(i * 2 + a, j * 2 + b);
            CHECK(block.approx_equal(via_kraus, 1e-12));
        }
}

TEST_CASE("apply_channel: identity, depolarizing marginal, Kraus oracle") {
    Rng rng(61);
    const BipartiteState rho = random_state(DimSpec{2, 2}, 19);

    const BipartiteState same = apply_channel(make_identity(2), rho, 0);
    CHECK(same.matrix.approx_equal(rho.matrix, 1e-12));

    // Fully depolarizing on one qubit marginal: that marginal becomes I/2 and
    // the other is untouched.
    const BipartiteState out = apply_channel(make_depolarizing(2, 1.0), rho, 1);
    const ComplexMatrix marg_b = partial_trace(out.matrix, out.dims, 0);
    ComplexMatrix half = ComplexMatrix::identity(2);
    half *= 0.5;
    CHECK(marg_b.approx_equal(half, 1e-12));
    CHECK(partial_trace(out.matrix, out.dims, 1)
              .approx_equal(partial_trace(rho.matrix, rho.dims, 1), 1e-12));
    ComplexMatrix expected = kron(partial_trace(rho.matrix, rho.dims, 1), half);
    CHECK(out.matrix.approx_equal(expected, 1e-12));

    // 50 random (channel, state) pairs, dims <= 3: Choi sandwich equals the
    // Kraus sum to 1e-10.
    for (int trial = 0; trial < 50; ++trial) {
        const int din = 2 + trial % 2;
        const int dout = 2 + (trial / 2) % 2;
        const int dother = 2 + (trial / 4) % 2;
        const Channel n = random_channel(din, dout, 2, 100 + trial);
        const BipartiteState s = random_state(DimSpec{dother, din}, 200 + trial);
        const BipartiteState via_choi = apply_channel(n, s, 1);
        const BipartiteState via_kraus = apply_channel_kraus(n, s, 1);
        CHECK(via_choi.matrix.approx_equal(via_kraus.matrix, 1e-10));
        CHECK(via_choi.dims.factors == std::vector<int>{dother, dout});
    }
}

TEST_CASE("named channels: parameter endpoints") {
    CHECK(make_depolarizing(2, 0.0).choi.approx_equal(make_identity(2).choi, 1e-14));
    CHECK(make_amplitude_damping(0.0).choi.approx_equal(make_identity(2).choi, 1e-14));
    CHECK(make_dephasing(0.0).choi.approx_equal(make_identity(2).choi, 1e-14));

    // Erasure at p = 1 is the constant channel onto |e><e| = |d><d|.
    const Channel er = make_erasure(2, 1.0);
    const BipartiteState rho = random_state(DimSpec{2}, 3);
    const BipartiteState out = apply_channel(er, rho, 0);
    ComplexMatrix flag(3, 3);
    flag(2, 2) = 1.0;
    CHECK(out.matrix.approx_equal(flag, 1e-12));

    CHECK_THROWS_AS(make_depolarizing(2, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(make_erasure(2, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_amplitude_damping(2.0), std::invalid_argument);
}

TEST_CASE("erasure composition law on Choi matrices") {
    const double p = 0.3, q = 0.45;
    const Channel lhs = compose(make_erasure_extend(2, q), make_erasure(2, p));
    const Channel rhs = make_erasure(2, 1.0 - (1.0 - q) * (1.0 - p));
    CHECK(lhs.choi.approx_equal(rhs.choi, 1e-10));
}

TEST_CASE("random_channel: unitary case, TP residual, determinism") {
    const Channel u = random_channel(2, 2, 1, 9);
    auto ev = eigvalsh(u.choi);
    CHECK(ev.back() == doctest::Approx(2.0).epsilon(1e-10));  // rank-1 Choi
    CHECK(std::abs(ev[2]) < 1e-10);

    const Channel n = random_channel(3, 2, 4, 42);
    ComplexMatrix tp(3, 3);
    for (const auto& k : n.kraus) tp += k.adjoint() * k;
    tp -= ComplexMatrix::identity(3);
    CHECK(tp.max_abs() <= 1e-10);

    const Channel n2 = random_channel(3, 2, 4, 42);
    CHECK(n.choi.approx_equal(n2.choi, 0.0));  // identical per seed
    const Channel n3 = random_channel(3, 2, 4, 43);
    CHECK(!n.choi.approx_equal(n3.choi, 1e-6));
}

TEST_CASE("random states: validity, PPT by construction, determinism") {
    const BipartiteState s = random_state(DimSpec{2, 3}, 7);
    CHECK(s.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(min_eigenvalue(s.matrix) >= -1e-12);
    CHECK(random_state(DimSpec{2, 3}, 7).matrix.approx_equal(s.matrix, 0.0));

    const BipartiteState ppt = random_ppt_state(DimSpec{2, 2}, 1, 11);
    CHECK(min_eigenvalue(partial_transpose(ppt.matrix, ppt.dims, 1)) >= -1e-10);
    CHECK(random_ppt_state(DimSpec{2, 2}, 1, 11).matrix.approx_equal(ppt.matrix, 0.0));
}

TEST_CASE("kraus_from_choi reproduces the channel") {
    const Channel dep = make_depolarizing(2, 0.7);  // Choi-only construction
    const auto ks = kraus_from_choi(dep.choi, 2, 2);
    CHECK(choi_from_kraus(ks).approx_equal(dep.choi, 1e-11));
}

TEST_CASE("random_one_way_locc: structure, TP, determinism, PPT-preserving") {
    const Channel prod = random_one_way_locc(2, 2, 2, 2, 1, 13);
    // Single branch: a product channel F (x) G; its Choi is a permutation of
    // kron(choi_F, choi_G). Check the PPT-preserving consequence instead of
    // unpacking: T o L o T completely positive.
    CHECK(min_eigenvalue(ppt_conjugated_choi(prod, 2, 2, 2, 2)) >= -1e-8);

    for (uint64_t seed = 20; seed < 26; ++seed) {
        const Channel l = random_one_way_locc(2, 4, 4, 2, 2, seed);
        ComplexMatrix tp(8, 8);
        for (const auto& k : l.kraus) tp += k.adjoint() * k;
        tp -= ComplexMatrix::identity(8);
        CHECK(tp.max_abs() <= 1e-10);
        CHECK(min_eigenvalue(ppt_conjugated_choi(l, 2, 4, 4, 2)) >= -1e-8);
    }

    const Channel a = random_one_way_locc(2, 4, 4, 2, 2, 99);
    const Channel b = random_one_way_locc(2, 4, 4, 2, 2, 99);
    CHECK(a.choi.approx_equal(b.choi, 0.0));
}

TEST_CASE("replace-with-product-mixture is a PPT-preserving channel") {
    const Channel r = make_replace_with_product_mixture(2, 4, 4, 2, 3, 31);
    CHECK(min_eigenvalue(ppt_conjugated_choi(r, 2, 4, 4, 2)) >= -1e-8);
    // Output is independent of the input.
    const BipartiteState s1 = random_state(DimSpec{8}, 1);
    const BipartiteState s2 = random_state(DimSpec{8}, 2);
    const BipartiteState o1 = apply_channel(r, s1, 0);
    const BipartiteState o2 = apply_channel(r, s2, 0);
    CHECK(o1.matrix.approx_equal(o2.matrix, 1e-10));
}

TEST_CASE("channel validation rejects bad inputs") {
    // Non-TP Kraus set.
    ComplexMatrix k(2, 2);
    k(0, 0) = 1.0;
    CHECK_THROWS_AS(Channel::from_kraus(2, 2, {k}), std::invalid_argument);
    // Non-PSD Choi.
    ComplexMatrix j = ComplexMatrix::identity(4);
    j(0, 0) = -1.0;
    CHECK_THROWS_AS(Channel::from_choi(2, 2, j), std::invalid_argument);
}
