#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "complex_matrix.hpp"
#include "linalg.hpp"
#include "states.hpp"

namespace spinalign {

/// Probability measure over subsets of the n parties, stored sparsely as
/// bitmask -> weight. The empty subset is allowed.
struct SubsetMeasure {
    int n = 0;
    std::map<std::uint32_t, double> weights;

    static SubsetMeasure uniform_two_subsets(int n);

    double weight(std::uint32_t mask) const;
    void validate() const;
};

enum class ProblemKind {
    free_states,  // independently chosen pure states per subset
    compatible    // marginals of one global state
};

/// One instance of the alignment comparison: n parties of local dimension
/// d, a reference state Q, a measure mu, and either a tuple of free pure
/// states or a global state whose marginals are used.
struct AlignmentProblem {
    int n = 0;
    int d = 0;
    ComplexMatrix q;
    SubsetMeasure mu;
    std::map<std::uint32_t, PureState> free_states;
    std::optional<ComplexMatrix> global_state;

    ProblemKind kind() const { return global_state ? ProblemKind::compatible : ProblemKind::free_states; }
    std::vector<std::size_t> dims() const { return std::vector<std::size_t>(n, std::size_t(d)); }
    std::size_t total_dimension() const;
    void validate() const;
};

/// Maximal eigenvector of a state Q. Degenerate diagonal Q resolves to the
/// first computational basis vector among the maximizers (so I/2 gives |0>);
/// otherwise the top eigenvector with its largest component made real
/// positive.
std::vector<cplx> maximal_eigenvector(const ComplexMatrix& q);

/// H = sum_I mu_I |psi_I><psi_I| (x) Q^(I^c), interleaved to the global
/// index order. The empty subset contributes mu_empty Q^(x)n.
ComplexMatrix build_alignment_operator(const AlignmentProblem& p);

/// Same sum with every free state replaced by tensor powers of a maximal
/// eigenvector of Q: the aligned configuration.
ComplexMatrix build_target_operator(const AlignmentProblem& p);

/// sum_I mu_I rho_I (x) Q^(I^c) with rho_I the marginals of the problem's
/// global state.
ComplexMatrix build_compatible_operator(const AlignmentProblem& p);

/// Dispatches to the free or compatible builder by problem kind.
ComplexMatrix build_operator(const AlignmentProblem& p);

/// The explicit three-qubit violation instance: Q = I/2, mu uniform on the
/// three 2-subsets, and a fixed tuple of two-qubit states with rational
/// amplitudes. Its top-3 Ky Fan sum exceeds the aligned target's 5/6.
AlignmentProblem counterexample_fixture();

}  // namespace spinalign
