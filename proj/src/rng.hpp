#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "complex_matrix.hpp"

namespace spinalign {

/// splitmix64 finalizer; used to derive independent per-trial seeds from
/// (seed, index) pairs so parallel loops stay deterministic.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic random source. Gaussian variates are produced from raw
/// mt19937_64 output via Box-Muller instead of std::normal_distribution,
/// whose output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in (0, 1).
    double uniform01();

    /// Standard normal.
    double gaussian();

    /// Standard complex Gaussian: independent N(0,1) real and imaginary parts.
    cplx complex_gaussian();

    /// Uniform draw from the probability simplex (flat Dirichlet).
    std::array<double, 3> simplex3();

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace spinalign
