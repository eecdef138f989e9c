#ifndef QCOH_COMPLEX_MATRIX_HPP
#define QCOH_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace qcoh {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major. Dimensions in this library are
// tiny (2..8 for physics, up to 64 supported by the eigensolver), so the
// representation favours clarity over blocking tricks.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    ComplexMatrix adjoint() const;
    cplx trace() const;

    // max_ij |a_ij - conj(a_ji)|: zero for exactly Hermitian matrices.
    double hermiticity_defect() const;
    // max_ij |a_ij - b_ij|
    double max_abs_diff(const ComplexMatrix& other) const;
    // Frobenius norm of the strictly off-diagonal part.
    double offdiag_norm() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scalar);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

// Kronecker product; result dimension is the product of the operands'.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace qcoh

#endif
