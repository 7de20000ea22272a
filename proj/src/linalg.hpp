#pragma once

#include <cstdint>
#include <vector>

#include "complex_matrix.hpp"

namespace spinalign {

/// Real eigenvalues sorted nonincreasing, together with their Ky Fan
/// prefix sums kyfan[r-1] = sum of the r largest values.
struct Spectrum {
    std::vector<double> values;
    std::vector<double> kyfan;

    /// Sorts the given values nonincreasing and fills the prefix sums.
    static Spectrum from_values(std::vector<double> values);

    double sum() const { return kyfan.empty() ? 0.0 : kyfan.back(); }
    std::size_t size() const { return values.size(); }
};

/// Eigendecomposition of a Hermitian matrix; vectors.at(i, k) is component
/// i of the eigenvector belonging to spectrum.values[k].
struct EigenSystem {
    Spectrum spectrum;
    ComplexMatrix vectors;
};

// Multipartite index conventions used throughout:
//  - dims[k] is the local dimension of party k+1 (parties are 1-based in
//    file formats and documentation);
//  - party 1 is the most significant digit of a computational-basis index;
//  - a subset of parties is a bitmask where bit (i-1) selects party i.

/// Kronecker product with a's index as the most significant factor.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// m tensored with itself count times; count = 0 gives the 1x1 identity.
ComplexMatrix tensor_power(const ComplexMatrix& m, std::size_t count);

std::size_t total_dim(const std::vector<std::size_t>& dims);
std::size_t subset_dim(std::uint32_t subset, const std::vector<std::size_t>& dims);

/// Places op on the factors selected by subset and the identity on the
/// rest, with the global interleaved index ordering. op's own index runs
/// over the subset's parties in increasing party order.
ComplexMatrix embed_on_subset(const ComplexMatrix& op, std::uint32_t subset,
                              const std::vector<std::size_t>& dims);

/// Traces out the parties not in keep; result indices run over the kept
/// parties in increasing party order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                            std::uint32_t keep);

/// Conjugates m by the permutation that sends party perm[k] of the input
/// to slot k of the output (0-based positions into dims).
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                                 const std::vector<std::size_t>& perm);

/// Eigenvalues of a Hermitian matrix, sorted nonincreasing. Inputs with a
/// hermiticity defect above 1e-12 are rejected; smaller asymmetry is
/// absorbed by symmetrization before solving.
Spectrum hermitian_eigenvalues(const ComplexMatrix& m);

/// Full eigendecomposition; same input contract as hermitian_eigenvalues.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

/// -sum p log2 p over the spectrum of a unit-trace operator, in bits.
/// Values in [-clip_tol, 0) are clipped to zero; anything below -clip_tol
/// is rejected as not a state. The total must be 1 within 1e-8; the
/// residual is normalized away before taking logs.
double von_neumann_entropy(const Spectrum& spec, double clip_tol = 1e-9);

}  // namespace spinalign
