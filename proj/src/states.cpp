#include "states.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace spinalign {

namespace {

const ComplexMatrix& sigma_y_cubed() {
    static const ComplexMatrix y3 = [] {
        ComplexMatrix sy(2);
        sy.at(0, 1) = cplx(0.0, -1.0);
        sy.at(1, 0) = cplx(0.0, 1.0);
        return tensor(tensor(sy, sy), sy);
    }();
    return y3;
}

// smaller eigenvalue of a 2x2 Hermitian with unit trace, clamped to [0, 1/2]
double smaller_marginal_eigenvalue(const ComplexMatrix& rho2) {
    const double w = rho2.at(0, 0).real();
    const double z2 = std::norm(rho2.at(0, 1));
    const double r = 0.5 - std::sqrt((w - 0.5) * (w - 0.5) + z2);
    return std::clamp(r, 0.0, 0.5);
}

}  // namespace

PureState PureState::normalized(std::vector<std::size_t> dims, std::vector<cplx> amplitudes) {
    if (amplitudes.size() != total_dim(dims))
        throw DimensionError("PureState: amplitude count does not match the party dimensions");
    double norm2 = 0.0;
    for (const cplx& a : amplitudes) norm2 += std::norm(a);
    if (norm2 <= 0.0) throw NotAStateError("PureState: zero amplitude vector");
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& a : amplitudes) a *= inv;
    return PureState{std::move(dims), std::move(amplitudes)};
}

PureState PureState::checked(std::vector<std::size_t> dims, std::vector<cplx> amplitudes) {
    if (amplitudes.size() != total_dim(dims))
        throw DimensionError("PureState: amplitude count does not match the party dimensions");
    double norm2 = 0.0;
    for (const cplx& a : amplitudes) norm2 += std::norm(a);
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
        throw NotAStateError("PureState: amplitudes are not unit norm");
    return PureState{std::move(dims), std::move(amplitudes)};
}

std::size_t PureState::dim() const { return amplitudes.size(); }

double PureState::norm() const {
    double norm2 = 0.0;
    for (const cplx& a : amplitudes) norm2 += std::norm(a);
    return std::sqrt(norm2);
}

ComplexMatrix PureState::projector() const {
    ComplexMatrix p(dim());
    for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t c = 0; c < dim(); ++c)
            p.at(r, c) = amplitudes[r] * std::conj(amplitudes[c]);
    return p;
}

bool MarginalTriple::polygon_ok(double tol) const { return polygon_worst() <= tol; }

double MarginalTriple::polygon_worst() const {
    return std::max({r_a - r_b - r_c, r_b - r_c - r_a, r_c - r_a - r_b});
}

PureState haar_random_pure(const std::vector<std::size_t>& dims, std::uint64_t seed) {
    Rng rng(seed);
    return haar_random_pure(dims, rng);
}

PureState haar_random_pure(const std::vector<std::size_t>& dims, Rng& rng) {
    if (dims.empty()) throw std::invalid_argument("haar_random_pure: dims must be nonempty");
    std::vector<cplx> amps(total_dim(dims));
    for (cplx& a : amps) a = rng.complex_gaussian();
    return PureState::normalized(dims, std::move(amps));
}

ComplexMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    Rng rng(seed);
    return random_density(dim, rank, rng);
}

ComplexMatrix random_density(std::size_t dim, std::size_t rank, Rng& rng) {
    if (rank < 1 || rank > dim)
        throw std::invalid_argument("random_density: need 1 <= rank <= dim");
    // purification on dim x rank, traced over the rank-sized environment
    const PureState psi = haar_random_pure({dim, rank}, rng);
    ComplexMatrix rho(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            cplx acc = 0.0;
            for (std::size_t e = 0; e < rank; ++e)
                acc += psi.amplitudes[r * rank + e] * std::conj(psi.amplitudes[c * rank + e]);
            rho.at(r, c) = acc;
        }
    return rho;
}

MarginalTriple single_qubit_marginals(const PureState& psi) {
    if (psi.dims != std::vector<std::size_t>{2, 2, 2})
        throw DimensionError("single_qubit_marginals: state must have dims (2,2,2)");
    return marginal_triple_of(psi.projector());
}

MarginalTriple marginal_triple_of(const ComplexMatrix& rho) {
    if (rho.dim() != 8) throw DimensionError("marginal_triple_of: expected an 8x8 matrix");
    const std::vector<std::size_t> dims{2, 2, 2};
    MarginalTriple t;
    t.r_a = smaller_marginal_eigenvalue(partial_trace(rho, dims, 0b001));
    t.r_b = smaller_marginal_eigenvalue(partial_trace(rho, dims, 0b010));
    t.r_c = smaller_marginal_eigenvalue(partial_trace(rho, dims, 0b100));
    return t;
}

ComplexMatrix spin_flip_tilde(const ComplexMatrix& rho) {
    if (rho.dim() != 8) throw DimensionError("spin_flip_tilde: expected an 8x8 matrix");
    if (!rho.is_hermitian(1e-12))
        throw NotHermitianError("spin_flip_tilde: input is not Hermitian");
    const ComplexMatrix& y3 = sigma_y_cubed();
    return y3 * rho.transpose() * y3;
}

ComplexMatrix p_operator(const ComplexMatrix& rho) {
    if (rho.dim() != 8) throw DimensionError("p_operator: expected an 8x8 matrix");
    const Spectrum spec = hermitian_eigenvalues(rho);
    if (spec.values.back() < -1e-10)
        throw NotAStateError("p_operator: input is not PSD within tolerance");
    if (std::abs(spec.sum() - 1.0) > 1e-10)
        throw NotAStateError("p_operator: input does not have unit trace");
    return rho + spin_flip_tilde(rho);
}

}  // namespace spinalign
