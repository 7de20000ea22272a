#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "states.hpp"
#include "test_support.hpp"

using namespace spinalign;

namespace {

PureState ghz() {
    std::vector<cplx> amps(8, 0.0);
    amps[0] = 1.0 / std::sqrt(2.0);
    amps[7] = 1.0 / std::sqrt(2.0);
    return PureState::checked({2, 2, 2}, amps);
}

PureState bell_times_zero() {
    // |Phi+>_AB (x) |0>_C
    std::vector<cplx> amps(8, 0.0);
    amps[0] = 1.0 / std::sqrt(2.0);  // |000>
    amps[6] = 1.0 / std::sqrt(2.0);  // |110>
    return PureState::checked({2, 2, 2}, amps);
}

ComplexMatrix basis_state_8(std::size_t k) {
    ComplexMatrix rho(8);
    rho.at(k, k) = 1.0;
    return rho;
}

}  // namespace

TEST_CASE("haar_random_pure: unit norm and determinism") {
    const PureState a = haar_random_pure({2}, 7);
    CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-14));
    const PureState b = haar_random_pure({2}, 7);
    REQUIRE(a.amplitudes.size() == b.amplitudes.size());
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
        CHECK(a.amplitudes[i] == b.amplitudes[i]);
    const PureState c = haar_random_pure({2}, 8);
    CHECK(a.amplitudes != c.amplitudes);
}

TEST_CASE("haar_random_pure: mean single-qubit marginal concentrates on I/2") {
    const long samples = 10000;
    ComplexMatrix mean(2);
    for (long t = 0; t < samples; ++t) {
        const PureState psi = haar_random_pure({2, 2, 2}, derive_seed(900, t));
        mean += partial_trace(psi.projector(), {2, 2, 2}, 0b001);
    }
    mean *= cplx(1.0 / samples);
    CHECK(mean.max_abs_diff(0.5 * ComplexMatrix::identity(2)) < 0.02);
}

TEST_CASE("random_density: rank-1 gives a projector") {
    const ComplexMatrix rho = random_density(8, 1, 5);
    const Spectrum spec = hermitian_eigenvalues(rho);
    CHECK(spec.values[0] == doctest::Approx(1.0).epsilon(1e-10));
    for (std::size_t i = 1; i < 8; ++i) CHECK(std::abs(spec.values[i]) < 1e-10);
}

TEST_CASE("random_density: full rank is strictly positive with unit trace") {
    for (long t = 0; t < 1000; ++t) {
        const ComplexMatrix rho = random_density(8, 8, derive_seed(31, t));
        const Spectrum spec = hermitian_eigenvalues(rho);
        CHECK(spec.values.back() > 0.0);
        CHECK(std::abs(spec.sum() - 1.0) < 1e-10);
        for (double v : spec.values) CHECK(v < 1.0);
    }
}

TEST_CASE("random_density: rejects invalid rank") {
    CHECK_THROWS_AS(random_density(4, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_density(4, 5, 1), std::invalid_argument);
}

TEST_CASE("random_density: marginals over every subset keep unit trace") {
    const std::vector<std::size_t> dims{2, 2, 2};
    for (std::uint64_t t = 0; t < 50; ++t) {
        const ComplexMatrix rho = random_density(8, 4, derive_seed(61, t));
        for (std::uint32_t keep = 1; keep < 8; ++keep)
            CHECK(std::abs(partial_trace(rho, dims, keep).trace() - cplx(1.0)) < 1e-10);
    }
}

TEST_CASE("single_qubit_marginals: product, GHZ, and Bell states") {
    std::vector<cplx> zero(8, 0.0);
    zero[0] = 1.0;
    const MarginalTriple product = single_qubit_marginals(PureState::checked({2, 2, 2}, zero));
    CHECK(product.r_a == 0.0);
    CHECK(product.r_b == 0.0);
    CHECK(product.r_c == 0.0);

    const MarginalTriple g = single_qubit_marginals(ghz());
    CHECK(g.r_a == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g.r_b == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g.r_c == doctest::Approx(0.5).epsilon(1e-12));

    const MarginalTriple bell = single_qubit_marginals(bell_times_zero());
    CHECK(bell.r_a == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bell.r_b == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(bell.r_c) < 1e-12);
    // polygon inequality r_A <= r_B + r_C holds with equality here
    CHECK(std::abs(bell.r_a - (bell.r_b + bell.r_c)) < 1e-12);
    CHECK(bell.polygon_ok());
}

TEST_CASE("single_qubit_marginals: polygon inequalities hold on Haar samples") {
    for (long t = 0; t < 2000; ++t) {
        const PureState psi = haar_random_pure({2, 2, 2}, derive_seed(77, t));
        const MarginalTriple m = single_qubit_marginals(psi);
        CHECK(m.polygon_ok(1e-10));
        CHECK(m.r_a >= 0.0);
        CHECK(m.r_a <= 0.5);
        CHECK(m.r_b >= 0.0);
        CHECK(m.r_b <= 0.5);
        CHECK(m.r_c >= 0.0);
        CHECK(m.r_c <= 0.5);
    }
}

TEST_CASE("spin_flip_tilde: computational basis flip and fixed point") {
    CHECK(spin_flip_tilde(basis_state_8(0)).max_abs_diff(basis_state_8(7)) < 1e-15);
    const ComplexMatrix mixed = 0.125 * ComplexMatrix::identity(8);
    CHECK(spin_flip_tilde(mixed).max_abs_diff(mixed) < 1e-15);
}

TEST_CASE("spin_flip_tilde: involution, trace, and spectrum preservation") {
    for (long t = 0; t < 50; ++t) {
        const ComplexMatrix rho = haar_random_pure({2, 2, 2}, derive_seed(101, t)).projector();
        const ComplexMatrix flipped = spin_flip_tilde(rho);
        CHECK(spin_flip_tilde(flipped).max_abs_diff(rho) < 1e-12);
        CHECK(std::abs(flipped.trace() - cplx(1.0)) < 1e-12);
        const Spectrum a = hermitian_eigenvalues(rho);
        const Spectrum b = hermitian_eigenvalues(flipped);
        for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(a.values[i] - b.values[i]) < 1e-10);
    }
}

TEST_CASE("spin_flip_tilde: linear expansion in the marginals") {
    // tilde(rho) = I - sum_X rho_X + sum_XY rho_XY - rho, embedded on (2,2,2)
    const std::vector<std::size_t> dims{2, 2, 2};
    for (long t = 0; t < 20; ++t) {
        const ComplexMatrix rho = haar_random_pure(dims, derive_seed(131, t)).projector();
        ComplexMatrix expansion = ComplexMatrix::identity(8) - rho;
        for (std::uint32_t single : {0b001u, 0b010u, 0b100u})
            expansion -= embed_on_subset(partial_trace(rho, dims, single), single, dims);
        for (std::uint32_t pair : {0b011u, 0b101u, 0b110u})
            expansion += embed_on_subset(partial_trace(rho, dims, pair), pair, dims);
        CHECK(spin_flip_tilde(rho).max_abs_diff(expansion) < 1e-12);
    }
}

TEST_CASE("spin_flip_tilde: rejects wrong dimension") {
    CHECK_THROWS_AS(spin_flip_tilde(ComplexMatrix::identity(4)), DimensionError);
}

TEST_CASE("p_operator: pure basis state and maximally mixed state") {
    const ComplexMatrix p = p_operator(basis_state_8(0));
    const Spectrum spec = hermitian_eigenvalues(p);
    CHECK(spec.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spec.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 2; i < 8; ++i) CHECK(std::abs(spec.values[i]) < 1e-12);

    const ComplexMatrix mixed = 0.125 * ComplexMatrix::identity(8);
    CHECK(p_operator(mixed).max_abs_diff(0.25 * ComplexMatrix::identity(8)) < 1e-15);
}

TEST_CASE("p_operator: PSD with trace 2 on random pure states") {
    for (long t = 0; t < 1000; ++t) {
        const ComplexMatrix rho = haar_random_pure({2, 2, 2}, derive_seed(151, t)).projector();
        const ComplexMatrix p = p_operator(rho);
        CHECK(std::abs(p.trace() - cplx(2.0)) < 1e-10);
        CHECK(hermitian_eigenvalues(p).values.back() >= -1e-10);
    }
}

TEST_CASE("p_operator: rejects non-states") {
    CHECK_THROWS_AS(p_operator(ComplexMatrix::identity(8)), NotAStateError);  // trace 8
    ComplexMatrix negative = basis_state_8(0);
    negative.at(1, 1) = -0.5;
    negative.at(0, 0) = 1.5;
    CHECK_THROWS_AS(p_operator(negative), NotAStateError);
}

TEST_CASE("PureState: constructors validate") {
    CHECK_THROWS_AS(PureState::checked({2}, {cplx(1.0), cplx(1.0)}), NotAStateError);
    CHECK_THROWS_AS(PureState::normalized({2}, {cplx(0.0), cplx(0.0)}), NotAStateError);
    CHECK_THROWS_AS(PureState::normalized({2, 2}, {cplx(1.0)}), DimensionError);
    const PureState s = PureState::normalized({2}, {cplx(3.0), cplx(4.0)});
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-15));
}
