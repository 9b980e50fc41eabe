#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace etx {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major storage. Sized for the 2x2,
/// 4x4 and 16x16 kernels used throughout; not a general linear-algebra
/// library.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim);
    /// Row-major entries; entries.size() must equal dim*dim.
    ComplexMatrix(int dim, std::initializer_list<Complex> entries);
    ComplexMatrix(int dim, std::vector<Complex> entries);

    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }
    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }

    Complex& operator()(int i, int j) { return a_[i * dim_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[i * dim_ + j]; }

    const std::vector<Complex>& data() const { return a_; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix dagger() const;

    Complex trace() const;
    double frobenius_norm() const;
    /// Max column sum of absolute values.
    double one_norm() const;
    double max_abs() const;
    /// max_ij |a_ij - conj(a_ji)|
    double hermiticity_defect() const;
    /// A <- (A + A^dagger)/2
    void hermitize();

private:
    int dim_ = 0;
    std::vector<Complex> a_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex s);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column-stacking vectorization: vec(rho)[i + dim*j] = rho(i,j), so that
/// vec(A rho B) = (B^T kron A) vec(rho).
std::vector<Complex> vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(const std::vector<Complex>& v);

std::vector<Complex> mat_vec(const ComplexMatrix& a, const std::vector<Complex>& v);
double vec_norm(const std::vector<Complex>& v);

}  // namespace etx
