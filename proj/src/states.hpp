#pragma once

#include <cstdint>
#include <vector>

#include "complex_matrix.hpp"
#include "linalg.hpp"
#include "rng.hpp"

namespace spinalign {

/// Normalized pure state on a multipartite Hilbert space with explicit
/// subsystem dimensions; party 1 is the most significant index digit.
struct PureState {
    std::vector<std::size_t> dims;
    std::vector<cplx> amplitudes;

    /// Builds a state after normalizing; rejects the zero vector and
    /// amplitude vectors of the wrong length.
    static PureState normalized(std::vector<std::size_t> dims, std::vector<cplx> amplitudes);

    /// Validates that the amplitudes are already unit norm within 1e-12.
    static PureState checked(std::vector<std::size_t> dims, std::vector<cplx> amplitudes);

    std::size_t dim() const;
    double norm() const;
    ComplexMatrix projector() const;
};

/// The smaller single-qubit marginal eigenvalues (r_A, r_B, r_C) of a
/// three-qubit state, each in [0, 1/2].
struct MarginalTriple {
    double r_a = 0.0;
    double r_b = 0.0;
    double r_c = 0.0;

    double s() const { return r_a + r_b + r_c; }
    double delta() const { return std::max(1.0 - s(), 0.0); }

    /// r_A <= r_B + r_C and cyclic permutations; holds for every pure
    /// three-qubit state, not in general for mixed ones.
    bool polygon_ok(double tol = 1e-10) const;
    double polygon_worst() const;
};

/// Haar-random pure state: normalized vector of independent standard
/// complex Gaussians. Deterministic for a fixed seed.
PureState haar_random_pure(const std::vector<std::size_t>& dims, std::uint64_t seed);
PureState haar_random_pure(const std::vector<std::size_t>& dims, Rng& rng);

/// PSD unit-trace matrix sampled as the reduced state of a Haar-random
/// pure state on dim x rank (Hilbert-Schmidt measure at rank = dim).
ComplexMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);
ComplexMatrix random_density(std::size_t dim, std::size_t rank, Rng& rng);

/// r-values of a pure three-qubit state, via the closed-form 2x2
/// eigenvalue formula on each single-qubit marginal.
MarginalTriple single_qubit_marginals(const PureState& psi);

/// Same extraction for an arbitrary 8x8 density matrix.
MarginalTriple marginal_triple_of(const ComplexMatrix& rho);

/// (sigma_y tensor^3) rho^T (sigma_y tensor^3) for an 8x8 Hermitian rho;
/// an involution that preserves the spectrum.
ComplexMatrix spin_flip_tilde(const ComplexMatrix& rho);

/// rho + spin_flip_tilde(rho) for a PSD unit-trace rho; PSD with trace 2.
ComplexMatrix p_operator(const ComplexMatrix& rho);

}  // namespace spinalign
