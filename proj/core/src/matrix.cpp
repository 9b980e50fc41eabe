#include "etx/matrix.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

#include "etx/errors.hpp"

namespace etx {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {
    if (dim <= 0) throw DimensionMismatch("matrix dimension must be positive");
}

ComplexMatrix::ComplexMatrix(int dim, std::initializer_list<Complex> entries)
    : ComplexMatrix(dim, std::vector<Complex>(entries)) {}

ComplexMatrix::ComplexMatrix(int dim, std::vector<Complex> entries)
    : dim_(dim), a_(std::move(entries)) {
    if (dim <= 0) throw DimensionMismatch("matrix dimension must be positive");
    if (a_.size() != static_cast<size_t>(dim) * dim)
        throw DimensionMismatch("entry count does not match dimension");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (dim_ != rhs.dim_) throw DimensionMismatch("matrix sum dimension mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (dim_ != rhs.dim_) throw DimensionMismatch("matrix difference dimension mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& x : a_) x *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::dagger() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : a_) s += std::norm(x);
    return std::sqrt(s);
}

double ComplexMatrix::one_norm() const {
    double best = 0.0;
    for (int j = 0; j < dim_; ++j) {
        double col = 0.0;
        for (int i = 0; i < dim_; ++i) col += std::abs((*this)(i, j));
        best = std::max(best, col);
    }
    return best;
}

double ComplexMatrix::max_abs() const {
    double best = 0.0;
    for (const auto& x : a_) best = std::max(best, std::abs(x));
    return best;
}

double ComplexMatrix::hermiticity_defect() const {
    double best = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            best = std::max(best, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return best;
}

void ComplexMatrix::hermitize() {
    for (int i = 0; i < dim_; ++i) {
        (*this)(i, i) = Complex((*this)(i, i).real(), 0.0);
        for (int j = i + 1; j < dim_; ++j) {
            Complex avg = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
            (*this)(i, j) = avg;
            (*this)(j, i) = std::conj(avg);
        }
    }
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.dim() != rhs.dim()) throw DimensionMismatch("matrix product dimension mismatch");
    const int n = lhs.dim();
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const Complex aik = lhs(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) r(i, j) += aik * rhs(k, j);
        }
    }
    return r;
}

ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim(), nb = b.dim();
    ComplexMatrix r(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            if (aij == 0.0) continue;
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l)
                    r(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return r;
}

std::vector<Complex> vectorize(const ComplexMatrix& rho) {
    const int n = rho.dim();
    std::vector<Complex> v(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) v[i + static_cast<size_t>(n) * j] = rho(i, j);
    return v;
}

ComplexMatrix unvectorize(const std::vector<Complex>& v) {
    int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(v.size()))));
    if (static_cast<size_t>(n) * n != v.size())
        throw DimensionMismatch("vector length is not a square");
    ComplexMatrix rho(n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) rho(i, j) = v[i + static_cast<size_t>(n) * j];
    return rho;
}

std::vector<Complex> mat_vec(const ComplexMatrix& a, const std::vector<Complex>& v) {
    const int n = a.dim();
    if (v.size() != static_cast<size_t>(n)) throw DimensionMismatch("mat_vec dimension mismatch");
    std::vector<Complex> r(n);
    for (int i = 0; i < n; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < n; ++j) s += a(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

double vec_norm(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

}  // namespace etx
