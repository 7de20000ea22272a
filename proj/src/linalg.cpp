#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "errors.hpp"

namespace spinalign {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kJacobiRelTol = 1e-14;
constexpr int kMaxSweeps = 100;

std::vector<std::size_t> index_digits(std::size_t index, const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> digits(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
    return digits;
}

double offdiag_frobenius(const ComplexMatrix& a) {
    double acc = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            if (r != c) acc += std::norm(a.at(r, c));
    return std::sqrt(acc);
}

// Cyclic complex Jacobi on a Hermitian matrix. Each rotation zeroes one
// off-diagonal pair; convergence when the off-diagonal Frobenius mass
// drops below kJacobiRelTol * ||a||_F.
EigenSystem jacobi_eigensystem(ComplexMatrix a, bool want_vectors) {
    const std::size_t n = a.dim();
    ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix();
    const double threshold = kJacobiRelTol * a.frobenius_norm();

    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        if (offdiag_frobenius(a) <= threshold) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a.at(p, q);
                const double m = std::abs(apq);
                if (m == 0.0) continue;
                const cplx phase = apq / m;
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * m);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;

                // Unitary rotation on the (p,q) plane:
                //   u[p][p] = cs, u[p][q] = sn,
                //   u[q][p] = -sn conj(phase), u[q][q] = cs conj(phase).
                const cplx uqp = -sn * std::conj(phase);
                const cplx uqq = cs * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {  // a <- a u
                    const cplx akp = a.at(k, p);
                    const cplx akq = a.at(k, q);
                    a.at(k, p) = cs * akp + uqp * akq;
                    a.at(k, q) = sn * akp + uqq * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // a <- u^dagger a
                    const cplx apk = a.at(p, k);
                    const cplx aqk = a.at(q, k);
                    a.at(p, k) = cs * apk + std::conj(uqp) * aqk;
                    a.at(q, k) = sn * apk + std::conj(uqq) * aqk;
                }
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                a.at(p, p) = cplx(a.at(p, p).real(), 0.0);
                a.at(q, q) = cplx(a.at(q, q).real(), 0.0);

                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {  // v <- v u
                        const cplx vkp = v.at(k, p);
                        const cplx vkq = v.at(k, q);
                        v.at(k, p) = cs * vkp + uqp * vkq;
                        v.at(k, q) = sn * vkp + uqq * vkq;
                    }
                }
            }
        }
    }
    if (sweep == kMaxSweeps && offdiag_frobenius(a) > threshold)
        throw std::runtime_error("hermitian eigensolver did not converge within 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&a](std::size_t i, std::size_t j) {
        return a.at(i, i).real() > a.at(j, j).real();
    });

    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) values[k] = a.at(order[k], order[k]).real();

    EigenSystem out;
    out.spectrum.values = std::move(values);
    out.spectrum.kyfan.resize(n);
    std::partial_sum(out.spectrum.values.begin(), out.spectrum.values.end(),
                     out.spectrum.kyfan.begin());
    if (want_vectors) {
        out.vectors = ComplexMatrix(n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) out.vectors.at(i, k) = v.at(i, order[k]);
    }
    return out;
}

ComplexMatrix checked_hermitian_input(const ComplexMatrix& m) {
    const double defect = m.hermiticity_defect();
    if (defect > kHermTol)
        throw NotHermitianError("matrix is not Hermitian: asymmetry " + std::to_string(defect));
    ComplexMatrix a = m;
    a.symmetrize();
    return a;
}

}  // namespace

Spectrum Spectrum::from_values(std::vector<double> values) {
    std::sort(values.begin(), values.end(), std::greater<double>());
    Spectrum s;
    s.kyfan.resize(values.size());
    std::partial_sum(values.begin(), values.end(), s.kyfan.begin());
    s.values = std::move(values);
    return s;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t ra = 0; ra < na; ++ra)
        for (std::size_t ca = 0; ca < na; ++ca) {
            const cplx f = a.at(ra, ca);
            if (f == cplx(0.0)) continue;
            for (std::size_t rb = 0; rb < nb; ++rb)
                for (std::size_t cb = 0; cb < nb; ++cb)
                    out.at(ra * nb + rb, ca * nb + cb) = f * b.at(rb, cb);
        }
    return out;
}

ComplexMatrix tensor_power(const ComplexMatrix& m, std::size_t count) {
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (std::size_t i = 0; i < count; ++i) out = tensor(out, m);
    return out;
}

std::size_t total_dim(const std::vector<std::size_t>& dims) {
    std::size_t d = 1;
    for (std::size_t dk : dims) d *= dk;
    return d;
}

std::size_t subset_dim(std::uint32_t subset, const std::vector<std::size_t>& dims) {
    std::size_t d = 1;
    for (std::size_t k = 0; k < dims.size(); ++k)
        if (subset & (1u << k)) d *= dims[k];
    return d;
}

ComplexMatrix embed_on_subset(const ComplexMatrix& op, std::uint32_t subset,
                              const std::vector<std::size_t>& dims) {
    const std::size_t n = dims.size();
    if (subset == 0 || subset >= (1u << n))
        throw std::invalid_argument("embed_on_subset: subset must be a nonempty subset of the parties");
    if (op.dim() != subset_dim(subset, dims))
        throw DimensionError("embed_on_subset: operator dimension does not match the selected factors");

    const std::size_t dim = total_dim(dims);
    ComplexMatrix out(dim);
    for (std::size_t row = 0; row < dim; ++row) {
        const auto rd = index_digits(row, dims);
        for (std::size_t col = 0; col < dim; ++col) {
            const auto cd = index_digits(col, dims);
            std::size_t sub_row = 0, sub_col = 0;
            bool complement_diagonal = true;
            for (std::size_t k = 0; k < n; ++k) {
                if (subset & (1u << k)) {
                    sub_row = sub_row * dims[k] + rd[k];
                    sub_col = sub_col * dims[k] + cd[k];
                } else if (rd[k] != cd[k]) {
                    complement_diagonal = false;
                    break;
                }
            }
            if (complement_diagonal) out.at(row, col) = op.at(sub_row, sub_col);
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                            std::uint32_t keep) {
    const std::size_t n = dims.size();
    if (keep >= (1u << n)) throw std::invalid_argument("partial_trace: keep mask out of range");
    if (m.dim() != total_dim(dims))
        throw DimensionError("partial_trace: matrix dimension does not match the party dimensions");

    const std::size_t out_dim = subset_dim(keep, dims);
    ComplexMatrix out(out_dim);
    const std::size_t dim = m.dim();
    for (std::size_t row = 0; row < dim; ++row) {
        const auto rd = index_digits(row, dims);
        for (std::size_t col = 0; col < dim; ++col) {
            const auto cd = index_digits(col, dims);
            std::size_t kept_row = 0, kept_col = 0;
            bool traced_diagonal = true;
            for (std::size_t k = 0; k < n; ++k) {
                if (keep & (1u << k)) {
                    kept_row = kept_row * dims[k] + rd[k];
                    kept_col = kept_col * dims[k] + cd[k];
                } else if (rd[k] != cd[k]) {
                    traced_diagonal = false;
                    break;
                }
            }
            if (traced_diagonal) out.at(kept_row, kept_col) += m.at(row, col);
        }
    }
    return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                                 const std::vector<std::size_t>& perm) {
    const std::size_t n = dims.size();
    if (perm.size() != n) throw std::invalid_argument("permute_subsystems: permutation size mismatch");
    if (m.dim() != total_dim(dims))
        throw DimensionError("permute_subsystems: matrix dimension does not match the party dimensions");

    std::vector<std::size_t> out_dims(n);
    for (std::size_t k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];

    const std::size_t dim = m.dim();
    // index map: new global index -> old global index
    std::vector<std::size_t> to_old(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        const auto digits = index_digits(idx, out_dims);
        std::vector<std::size_t> old_digits(n);
        for (std::size_t k = 0; k < n; ++k) old_digits[perm[k]] = digits[k];
        std::size_t old_idx = 0;
        for (std::size_t k = 0; k < n; ++k) old_idx = old_idx * dims[k] + old_digits[k];
        to_old[idx] = old_idx;
    }

    ComplexMatrix out(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) out.at(r, c) = m.at(to_old[r], to_old[c]);
    return out;
}

Spectrum hermitian_eigenvalues(const ComplexMatrix& m) {
    return jacobi_eigensystem(checked_hermitian_input(m), false).spectrum;
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
    return jacobi_eigensystem(checked_hermitian_input(m), true);
}

double von_neumann_entropy(const Spectrum& spec, double clip_tol) {
    double sum = 0.0;
    for (double v : spec.values) {
        if (v < -clip_tol)
            throw NotAStateError("von_neumann_entropy: eigenvalue " + std::to_string(v) +
                                 " below -clip_tol, not a state");
        sum += std::max(v, 0.0);
    }
    if (std::abs(sum - 1.0) > 1e-8)
        throw NotAStateError("von_neumann_entropy: spectrum total " + std::to_string(sum) +
                             " is not a unit trace");
    double acc = 0.0;
    for (double v : spec.values) {
        const double p = std::max(v, 0.0) / sum;
        if (p > 0.0) acc -= p * std::log2(p);
    }
    return acc;
}

}  // namespace spinalign
