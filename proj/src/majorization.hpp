#pragma once

#include <optional>
#include <vector>

#include "linalg.hpp"

namespace spinalign {

constexpr double kDefaultMajorizationTol = 1e-9;

/// Outcome of a majorization comparison X <= Y (Ky Fan sense).
/// gaps[k-1] = K_k(X) - K_k(Y); the relation holds iff every gap is at
/// most tol and the traces agree (unless weak majorization was asked for).
struct MajorizationReport {
    bool holds = false;
    std::vector<double> gaps;
    std::optional<std::size_t> first_violation;  // 1-based index of the smallest violated k
    double worst_gap = 0.0;
    double trace_mismatch = 0.0;
    double tol = kDefaultMajorizationTol;
    bool weak = false;
};

/// Ky Fan prefix sums K_r = sum of the r largest values.
std::vector<double> ky_fan_sums(const Spectrum& spec);

MajorizationReport majorized_by_spectra(const Spectrum& x, const Spectrum& y,
                                        double tol = kDefaultMajorizationTol, bool weak = false);

/// Compares Hermitian matrices of equal dimension by their spectra.
MajorizationReport majorized_by(const ComplexMatrix& x, const ComplexMatrix& y,
                                double tol = kDefaultMajorizationTol, bool weak = false);

}  // namespace spinalign
