#include "complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinalign {

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), e_(std::move(entries)) {
    if (e_.size() != dim_ * dim_)
        throw std::invalid_argument("ComplexMatrix: entries size does not match dim^2");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m.at(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) m.at(c, r) = std::conj(at(r, c));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) m.at(c, r) = at(r, c);
    return m;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double acc = 0.0;
    for (const cplx& v : e_) acc += std::norm(v);
    return std::sqrt(acc);
}

double ComplexMatrix::hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = r; c < dim_; ++c)
            worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
    return worst;
}

void ComplexMatrix::symmetrize() {
    for (std::size_t r = 0; r < dim_; ++r) {
        at(r, r) = cplx(at(r, r).real(), 0.0);
        for (std::size_t c = r + 1; c < dim_; ++c) {
            cplx avg = 0.5 * (at(r, c) + std::conj(at(c, r)));
            at(r, c) = avg;
            at(c, r) = std::conj(avg);
        }
    }
}

double ComplexMatrix::max_abs() const {
    double worst = 0.0;
    for (const cplx& v : e_) worst = std::max(worst, std::abs(v));
    return worst;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (other.dim_ != dim_)
        throw std::invalid_argument("ComplexMatrix: dimension mismatch in max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < e_.size(); ++i)
        worst = std::max(worst, std::abs(e_[i] - other.e_[i]));
    return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch in +=");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += other.e_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch in -=");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= other.e_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx factor) {
    for (cplx& v : e_) v *= factor;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx factor, ComplexMatrix m) { return m *= factor; }
ComplexMatrix operator*(ComplexMatrix m, cplx factor) { return m *= factor; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("ComplexMatrix: dimension mismatch in matrix product");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx ark = a.at(r, k);
            if (ark == cplx(0.0)) continue;
            for (std::size_t c = 0; c < n; ++c) out.at(r, c) += ark * b.at(k, c);
        }
    }
    return out;
}

}  // namespace spinalign
