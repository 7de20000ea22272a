#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace spinalign {

using cplx = std::complex<double>;

/// Dense square complex matrix with row-major storage. The universal
/// carrier for operators and density matrices in this toolkit; value
/// semantics throughout.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), e_(dim * dim) {}
    ComplexMatrix(std::size_t dim, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(const std::vector<double>& diag);

    std::size_t dim() const { return dim_; }
    bool empty() const { return dim_ == 0; }

    cplx& at(std::size_t r, std::size_t c) { return e_[r * dim_ + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return e_[r * dim_ + c]; }

    const std::vector<cplx>& entries() const { return e_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    cplx trace() const;
    double frobenius_norm() const;

    /// max_{i,j} |m[i][j] - conj(m[j][i])|
    double hermiticity_defect() const;
    bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

    /// (m + m^dagger) / 2, in place.
    void symmetrize();

    double max_abs() const;
    double max_abs_diff(const ComplexMatrix& other) const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx factor);

private:
    std::size_t dim_ = 0;
    std::vector<cplx> e_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx factor, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, cplx factor);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace spinalign
