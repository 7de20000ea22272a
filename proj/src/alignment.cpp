#include "alignment.hpp"

#include <bit>
#include <cmath>

#include "errors.hpp"

namespace spinalign {

namespace {

constexpr double kMeasureTol = 1e-12;
constexpr double kStateTol = 1e-10;

// |psi_I><psi_I| (x) Q^(I^c) with interleaved global indexing. Both embeds
// act on disjoint factors, so their product is the interleaved tensor.
ComplexMatrix interleaved_term(const AlignmentProblem& p, std::uint32_t mask,
                               const ComplexMatrix& subset_op) {
    const auto dims = p.dims();
    const std::uint32_t full = (1u << p.n) - 1u;
    const std::uint32_t comp = full & ~mask;
    if (mask == 0) return tensor_power(p.q, p.n);
    ComplexMatrix term = embed_on_subset(subset_op, mask, dims);
    if (comp != 0)
        term = term * embed_on_subset(tensor_power(p.q, std::popcount(comp)), comp, dims);
    return term;
}

PureState aligned_state(const std::vector<cplx>& q1, int copies, int d) {
    std::vector<cplx> amps{1.0};
    for (int i = 0; i < copies; ++i) {
        std::vector<cplx> next(amps.size() * q1.size());
        for (std::size_t a = 0; a < amps.size(); ++a)
            for (std::size_t b = 0; b < q1.size(); ++b) next[a * q1.size() + b] = amps[a] * q1[b];
        amps = std::move(next);
    }
    return PureState::normalized(std::vector<std::size_t>(copies, std::size_t(d)), std::move(amps));
}

std::vector<std::size_t> subset_dims(std::uint32_t mask, int d) {
    return std::vector<std::size_t>(std::popcount(mask), std::size_t(d));
}

}  // namespace

SubsetMeasure SubsetMeasure::uniform_two_subsets(int n) {
    if (n < 2) throw std::invalid_argument("uniform_two_subsets: need n >= 2");
    SubsetMeasure mu;
    mu.n = n;
    const double w = 2.0 / (n * (n - 1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) mu.weights[(1u << i) | (1u << j)] = w;
    return mu;
}

double SubsetMeasure::weight(std::uint32_t mask) const {
    const auto it = weights.find(mask);
    return it == weights.end() ? 0.0 : it->second;
}

void SubsetMeasure::validate() const {
    if (n < 1 || n > 20) throw std::invalid_argument("SubsetMeasure: party count out of range");
    double total = 0.0;
    for (const auto& [mask, w] : weights) {
        if (mask >= (1u << n))
            throw std::invalid_argument("SubsetMeasure: subset mask exceeds the party count");
        if (w < 0.0) throw std::invalid_argument("SubsetMeasure: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > kMeasureTol)
        throw std::invalid_argument("SubsetMeasure: weights sum to " + std::to_string(total) +
                                    ", expected 1");
}

std::size_t AlignmentProblem::total_dimension() const {
    std::size_t dim = 1;
    for (int i = 0; i < n; ++i) dim *= static_cast<std::size_t>(d);
    return dim;
}

void AlignmentProblem::validate() const {
    if (n < 1) throw std::invalid_argument("AlignmentProblem: need at least one party");
    if (d < 2) throw std::invalid_argument("AlignmentProblem: local dimension must be >= 2");
    if (mu.n != n) throw std::invalid_argument("AlignmentProblem: measure party count mismatch");
    mu.validate();

    if (q.dim() != static_cast<std::size_t>(d))
        throw DimensionError("AlignmentProblem: Q must be d x d");
    if (!q.is_hermitian(1e-12)) throw NotHermitianError("AlignmentProblem: Q is not Hermitian");
    const Spectrum q_spec = hermitian_eigenvalues(q);
    if (q_spec.values.back() < -kStateTol)
        throw NotAStateError("AlignmentProblem: Q is not PSD");
    if (std::abs(q_spec.sum() - 1.0) > kStateTol)
        throw NotAStateError("AlignmentProblem: Q does not have unit trace");

    if (global_state) {
        if (!free_states.empty())
            throw std::invalid_argument(
                "AlignmentProblem: free states and a global state are mutually exclusive");
        if (global_state->dim() != total_dimension())
            throw DimensionError("AlignmentProblem: global state dimension mismatch");
        if (!global_state->is_hermitian(1e-12))
            throw NotHermitianError("AlignmentProblem: global state is not Hermitian");
        const Spectrum spec = hermitian_eigenvalues(*global_state);
        if (spec.values.back() < -kStateTol)
            throw NotAStateError("AlignmentProblem: global state is not PSD");
        if (std::abs(spec.sum() - 1.0) > kStateTol)
            throw NotAStateError("AlignmentProblem: global state does not have unit trace");
    } else {
        for (const auto& [mask, psi] : free_states) {
            if (mask == 0 || mask >= (1u << n))
                throw std::invalid_argument("AlignmentProblem: free-state subset out of range");
            if (psi.dims != subset_dims(mask, d))
                throw DimensionError("AlignmentProblem: free-state dimensions do not match subset");
            if (std::abs(psi.norm() - 1.0) > 1e-12)
                throw NotAStateError("AlignmentProblem: free state is not normalized");
        }
    }
}

std::vector<cplx> maximal_eigenvector(const ComplexMatrix& q) {
    const std::size_t d = q.dim();
    double offdiag = 0.0;
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            if (r != c) offdiag = std::max(offdiag, std::abs(q.at(r, c)));

    std::vector<cplx> vec(d, 0.0);
    if (offdiag <= 1e-12) {
        // diagonal: first basis vector among the (near-)maximal entries
        std::size_t best = 0;
        for (std::size_t i = 1; i < d; ++i)
            if (q.at(i, i).real() > q.at(best, best).real() + 1e-12) best = i;
        vec[best] = 1.0;
        return vec;
    }

    const EigenSystem sys = hermitian_eigensystem(q);
    std::size_t pivot = 0;
    double best_mag = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double mag = std::abs(sys.vectors.at(i, 0));
        if (mag > best_mag) {
            best_mag = mag;
            pivot = i;
        }
    }
    const cplx phase = sys.vectors.at(pivot, 0) / best_mag;
    for (std::size_t i = 0; i < d; ++i) vec[i] = sys.vectors.at(i, 0) / phase;
    return vec;
}

ComplexMatrix build_alignment_operator(const AlignmentProblem& p) {
    p.validate();
    if (p.kind() != ProblemKind::free_states)
        throw std::invalid_argument("build_alignment_operator: problem does not carry free states");
    ComplexMatrix h(p.total_dimension());
    for (const auto& [mask, w] : p.mu.weights) {
        if (w == 0.0) continue;
        if (mask == 0) {
            h += w * interleaved_term(p, 0, ComplexMatrix());
            continue;
        }
        const auto it = p.free_states.find(mask);
        if (it == p.free_states.end())
            throw std::invalid_argument(
                "build_alignment_operator: missing free state for a weighted subset");
        h += w * interleaved_term(p, mask, it->second.projector());
    }
    return h;
}

ComplexMatrix build_target_operator(const AlignmentProblem& p) {
    p.validate();
    const std::vector<cplx> q1 = maximal_eigenvector(p.q);
    ComplexMatrix h(p.total_dimension());
    for (const auto& [mask, w] : p.mu.weights) {
        if (w == 0.0) continue;
        if (mask == 0) {
            h += w * interleaved_term(p, 0, ComplexMatrix());
            continue;
        }
        const PureState aligned = aligned_state(q1, std::popcount(mask), p.d);
        h += w * interleaved_term(p, mask, aligned.projector());
    }
    return h;
}

ComplexMatrix build_compatible_operator(const AlignmentProblem& p) {
    p.validate();
    if (p.kind() != ProblemKind::compatible)
        throw std::invalid_argument("build_compatible_operator: problem does not carry a global state");
    const auto dims = p.dims();
    ComplexMatrix h(p.total_dimension());
    for (const auto& [mask, w] : p.mu.weights) {
        if (w == 0.0) continue;
        if (mask == 0) {
            h += w * interleaved_term(p, 0, ComplexMatrix());
            continue;
        }
        const ComplexMatrix marginal = partial_trace(*p.global_state, dims, mask);
        h += w * interleaved_term(p, mask, marginal);
    }
    return h;
}

ComplexMatrix build_operator(const AlignmentProblem& p) {
    return p.kind() == ProblemKind::compatible ? build_compatible_operator(p)
                                               : build_alignment_operator(p);
}

AlignmentProblem counterexample_fixture() {
    // two-qubit amplitudes as integer numerators over sqrt(radicand)
    struct RationalState {
        std::uint32_t mask;
        std::array<int, 4> numerators;
        int radicand;
    };
    static constexpr std::array<RationalState, 3> kStates{{
        {0b011u, {0, 6, -9, -10}, 217},   // parties {A,B}
        {0b101u, {-2, -4, -1, 5}, 46},    // parties {A,C}
        {0b110u, {-6, -1, -4, 0}, 53},    // parties {B,C}
    }};

    AlignmentProblem p;
    p.n = 3;
    p.d = 2;
    p.q = 0.5 * ComplexMatrix::identity(2);
    p.mu = SubsetMeasure::uniform_two_subsets(3);
    for (const auto& s : kStates) {
        std::vector<cplx> amps(4);
        const double inv = 1.0 / std::sqrt(static_cast<double>(s.radicand));
        for (std::size_t i = 0; i < 4; ++i) amps[i] = s.numerators[i] * inv;
        p.free_states.emplace(s.mask, PureState::checked({2, 2}, std::move(amps)));
    }
    return p;
}

}  // namespace spinalign
