#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "alignment.hpp"
#include "errors.hpp"
#include "majorization.hpp"
#include "test_support.hpp"

using namespace spinalign;

namespace {

AlignmentProblem aligned_problem() {
    // every free state |0...0> on its subset; Q = I/2
    AlignmentProblem p;
    p.n = 3;
    p.d = 2;
    p.q = 0.5 * ComplexMatrix::identity(2);
    p.mu = SubsetMeasure::uniform_two_subsets(3);
    for (std::uint32_t mask : {0b011u, 0b101u, 0b110u}) {
        std::vector<cplx> amps(4, 0.0);
        amps[0] = 1.0;
        p.free_states.emplace(mask, PureState::checked({2, 2}, amps));
    }
    return p;
}

}  // namespace

TEST_CASE("SubsetMeasure: uniform two-subsets and validation") {
    const SubsetMeasure mu = SubsetMeasure::uniform_two_subsets(3);
    CHECK(mu.weights.size() == 3);
    CHECK(mu.weight(0b011) == doctest::Approx(1.0 / 3));
    mu.validate();

    SubsetMeasure bad;
    bad.n = 2;
    bad.weights[0b01] = 0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.weights[0b10] = 0.6;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.weights[0b10] = 0.5;
    bad.validate();
    SubsetMeasure out_of_range;
    out_of_range.n = 2;
    out_of_range.weights[0b100] = 1.0;
    CHECK_THROWS_AS(out_of_range.validate(), std::invalid_argument);
}

TEST_CASE("counterexample_fixture: states are exactly normalized") {
    const AlignmentProblem fixture = counterexample_fixture();
    REQUIRE(fixture.free_states.size() == 3);
    for (const auto& [mask, psi] : fixture.free_states)
        CHECK(std::abs(psi.norm() - 1.0) < 1e-15);
    fixture.validate();
}

TEST_CASE("counterexample_fixture: reference eigenvalues and Ky Fan excess") {
    const ComplexMatrix h = build_alignment_operator(counterexample_fixture());
    const Spectrum spec = hermitian_eigenvalues(h);
    CHECK(std::abs(spec.values[0] - 0.32276) < 5e-6);
    CHECK(std::abs(spec.values[1] - 0.31510) < 5e-6);
    CHECK(std::abs(spec.values[2] - 0.19654) < 5e-6);
    CHECK(spec.kyfan[2] > 5.0 / 6.0);
    CHECK(spec.kyfan[2] >= 0.834395);
    CHECK(spec.kyfan[2] <= 0.834405);
}

TEST_CASE("counterexample_fixture: entropies of both operators") {
    const AlignmentProblem fixture = counterexample_fixture();
    const Spectrum h = hermitian_eigenvalues(build_alignment_operator(fixture));
    const Spectrum t = hermitian_eigenvalues(build_target_operator(fixture));
    CHECK(std::abs(von_neumann_entropy(h) - 2.064) < 1e-3);
    CHECK(std::abs(von_neumann_entropy(t) - 1.792) < 1e-3);
    // the aligned-side entropy has a closed form
    CHECK(von_neumann_entropy(t) == doctest::Approx(0.5 + 0.5 * std::log2(6.0)).epsilon(1e-12));
    // entropy ordering is not violated even though majorization is
    CHECK(von_neumann_entropy(h) > von_neumann_entropy(t));
}

TEST_CASE("build_target_operator: three-qubit aligned spectrum") {
    const Spectrum spec = hermitian_eigenvalues(build_target_operator(counterexample_fixture()));
    const std::vector<double> expected{0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6, 0, 0, 0, 0};
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(std::abs(spec.values[i] - expected[i]) < 1e-12);
}

TEST_CASE("build_alignment_operator: aligned states reproduce the target") {
    const AlignmentProblem p = aligned_problem();
    const ComplexMatrix h = build_alignment_operator(p);
    const ComplexMatrix t = build_target_operator(p);
    CHECK(h.max_abs_diff(t) < 1e-15);
}

TEST_CASE("build_alignment_operator: all weight on the full set gives a pure projector") {
    AlignmentProblem p;
    p.n = 2;
    p.d = 2;
    p.q = 0.5 * ComplexMatrix::identity(2);
    p.mu.n = 2;
    p.mu.weights[0b11] = 1.0;
    p.free_states.emplace(0b11u, haar_random_pure({2, 2}, 99));
    const Spectrum spec = hermitian_eigenvalues(build_alignment_operator(p));
    CHECK(spec.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(spec.values[i]) < 1e-12);
}

TEST_CASE("build_alignment_operator: missing weighted state is rejected") {
    AlignmentProblem p = aligned_problem();
    p.free_states.erase(0b011u);
    CHECK_THROWS_AS(build_alignment_operator(p), std::invalid_argument);
}

TEST_CASE("build_target_operator: empty subset carries Q tensor powers") {
    AlignmentProblem p;
    p.n = 2;
    p.d = 2;
    p.q = ComplexMatrix::diagonal({0.75, 0.25});
    p.mu.n = 2;
    p.mu.weights[0u] = 1.0;
    const ComplexMatrix t = build_target_operator(p);
    CHECK(t.max_abs_diff(tensor(p.q, p.q)) < 1e-15);
    // free builder agrees: no free parameters affect the operator
    const ComplexMatrix h = build_alignment_operator(p);
    CHECK(h.max_abs_diff(t) == 0.0);
}

TEST_CASE("build_target_operator: pure Q collapses every term") {
    AlignmentProblem p;
    p.n = 3;
    p.d = 2;
    p.q = ComplexMatrix(2);
    p.q.at(0, 0) = 1.0;  // Q = |0><0|
    p.mu = SubsetMeasure::uniform_two_subsets(3);
    const Spectrum spec = hermitian_eigenvalues(build_target_operator(p));
    CHECK(spec.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 1; i < 8; ++i) CHECK(std::abs(spec.values[i]) < 1e-12);
}

TEST_CASE("maximal_eigenvector: degenerate diagonal resolves to |0>") {
    const std::vector<cplx> v = maximal_eigenvector(0.5 * ComplexMatrix::identity(2));
    CHECK(v[0] == cplx(1.0));
    CHECK(v[1] == cplx(0.0));
}

TEST_CASE("maximal_eigenvector: picks the dominant eigenvector of a generic Q") {
    // Q = 0.25 I + 0.5 |+><+| has top eigenvector |+>
    ComplexMatrix q(2);
    q.at(0, 0) = 0.5;
    q.at(0, 1) = 0.25;
    q.at(1, 0) = 0.25;
    q.at(1, 1) = 0.5;
    const std::vector<cplx> v = maximal_eigenvector(q);
    CHECK(std::abs(v[0] - v[1]) < 1e-10);
    CHECK(std::abs(std::abs(v[0]) - 1.0 / std::sqrt(2.0)) < 1e-10);
}

TEST_CASE("build_compatible_operator: aligned global state reproduces the target") {
    AlignmentProblem p;
    p.n = 3;
    p.d = 2;
    p.q = 0.5 * ComplexMatrix::identity(2);
    p.mu = SubsetMeasure::uniform_two_subsets(3);
    ComplexMatrix rho(8);
    rho.at(0, 0) = 1.0;  // |000><000|
    p.global_state = rho;
    CHECK(build_compatible_operator(p).max_abs_diff(build_target_operator(p)) < 1e-15);
}

TEST_CASE("build_compatible_operator: maximally mixed fixed point") {
    AlignmentProblem p;
    p.n = 3;
    p.d = 2;
    p.q = 0.5 * ComplexMatrix::identity(2);
    p.mu = SubsetMeasure::uniform_two_subsets(3);
    p.global_state = 0.125 * ComplexMatrix::identity(8);
    CHECK(build_compatible_operator(p).max_abs_diff(0.125 * ComplexMatrix::identity(8)) < 1e-15);
}

TEST_CASE("build_compatible_operator: product of aligned factors matches the target") {
    AlignmentProblem p;
    p.n = 3;
    p.d = 2;
    p.q = ComplexMatrix::diagonal({0.7, 0.3});
    p.mu = SubsetMeasure::uniform_two_subsets(3);
    ComplexMatrix rho(8);
    rho.at(0, 0) = 1.0;  // (x)_X |q1><q1| with q1 = |0>
    p.global_state = rho;
    CHECK(build_compatible_operator(p).max_abs_diff(build_target_operator(p)) < 1e-12);
}

TEST_CASE("builders: unit trace and positivity") {
    const AlignmentProblem fixture = counterexample_fixture();
    for (const ComplexMatrix& m :
         {build_alignment_operator(fixture), build_target_operator(fixture)}) {
        CHECK(std::abs(m.trace() - cplx(1.0)) < 1e-10);
        CHECK(hermitian_eigenvalues(m).values.back() >= -1e-10);
        CHECK(m.is_hermitian(1e-12));
    }
    AlignmentProblem compat;
    compat.n = 3;
    compat.d = 2;
    compat.q = 0.5 * ComplexMatrix::identity(2);
    compat.mu = SubsetMeasure::uniform_two_subsets(3);
    compat.global_state = haar_random_pure({2, 2, 2}, 1234).projector();
    const ComplexMatrix m = build_compatible_operator(compat);
    CHECK(std::abs(m.trace() - cplx(1.0)) < 1e-10);
    CHECK(hermitian_eigenvalues(m).values.back() >= -1e-10);
}

TEST_CASE("partial trace of the counterexample operator keeps unit trace") {
    const ComplexMatrix h = build_alignment_operator(counterexample_fixture());
    const std::vector<std::size_t> dims{2, 2, 2};
    const ComplexMatrix reduced = partial_trace(h, dims, 0b011);  // trace out C
    CHECK(std::abs(reduced.trace() - cplx(1.0)) < 1e-12);
    CHECK(reduced.max_abs_diff(testsupport::oracle_partial_trace(h, dims, 0b011)) < 1e-13);
}

TEST_CASE("build_compatible_operator: sampled spectra are majorized by the target") {
    AlignmentProblem p;
    p.n = 3;
    p.d = 2;
    p.q = 0.5 * ComplexMatrix::identity(2);
    p.mu = SubsetMeasure::uniform_two_subsets(3);
    const ComplexMatrix target = build_target_operator(p);
    for (std::uint64_t t = 0; t < 300; ++t) {
        p.global_state = haar_random_pure({2, 2, 2}, derive_seed(60000, t)).projector();
        const ComplexMatrix op = build_compatible_operator(p);
        CHECK(std::abs(op.trace() - cplx(1.0)) < 1e-10);
        CHECK(majorized_by(op, target).holds);
    }
}

TEST_CASE("builders: permutation covariance of the counterexample") {
    const AlignmentProblem fixture = counterexample_fixture();
    const ComplexMatrix base = build_alignment_operator(fixture);

    // relabel: new slot k holds old party perm[k]
    const std::vector<std::size_t> perm{1, 2, 0};
    std::array<std::size_t, 3> pos{};  // old party -> new slot
    for (std::size_t k = 0; k < 3; ++k) pos[perm[k]] = k;
    const auto remap = [&pos](std::uint32_t mask) {
        std::uint32_t out = 0;
        for (std::size_t i = 0; i < 3; ++i)
            if (mask & (1u << i)) out |= 1u << pos[i];
        return out;
    };

    AlignmentProblem relabeled;
    relabeled.n = 3;
    relabeled.d = 2;
    relabeled.q = fixture.q;
    relabeled.mu.n = 3;
    for (const auto& [mask, w] : fixture.mu.weights) relabeled.mu.weights[remap(mask)] = w;
    for (const auto& [mask, psi] : fixture.free_states) {
        // a two-party state's amplitude order transposes iff the relabeling
        // reverses the relative order of its parties
        std::vector<std::size_t> parties;
        for (std::size_t i = 0; i < 3; ++i)
            if (mask & (1u << i)) parties.push_back(i);
        std::vector<cplx> amps = psi.amplitudes;
        if (pos[parties[0]] > pos[parties[1]]) {
            std::vector<cplx> swapped(4);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) swapped[j * 2 + i] = amps[i * 2 + j];
            amps = std::move(swapped);
        }
        relabeled.free_states.emplace(remap(mask), PureState::checked({2, 2}, std::move(amps)));
    }

    const ComplexMatrix rotated = build_alignment_operator(relabeled);
    CHECK(rotated.max_abs_diff(permute_subsystems(base, {2, 2, 2}, perm)) < 1e-14);
    const Spectrum sa = hermitian_eigenvalues(base);
    const Spectrum sb = hermitian_eigenvalues(rotated);
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(sa.values[i] - sb.values[i]) < 1e-10);
}

TEST_CASE("AlignmentProblem: validation rejects malformed inputs") {
    AlignmentProblem p = aligned_problem();
    p.q = ComplexMatrix::identity(2);  // trace 2
    CHECK_THROWS_AS(p.validate(), NotAStateError);

    AlignmentProblem q = aligned_problem();
    q.mu.weights[0b011] = 0.5;  // sums past 1
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);

    AlignmentProblem r = aligned_problem();
    r.global_state = 0.125 * ComplexMatrix::identity(8);
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);  // both kinds at once
}
