#include "rng.hpp"

#include <cmath>
#include <numbers>

namespace spinalign {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform01() {
    // 53-bit mantissa, offset by half an ulp to stay inside (0, 1)
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::gaussian() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx Rng::complex_gaussian() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * std::numbers::pi * u2), r * std::sin(2.0 * std::numbers::pi * u2)};
}

std::array<double, 3> Rng::simplex3() {
    std::array<double, 3> w;
    double total = 0.0;
    for (double& x : w) {
        x = -std::log(uniform01());
        total += x;
    }
    for (double& x : w) x /= total;
    return w;
}

}  // namespace spinalign
