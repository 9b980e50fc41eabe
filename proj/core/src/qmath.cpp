#include "etx/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "etx/errors.hpp"

namespace etx {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One cyclic Jacobi pass over all (p,q) pairs. The 2x2 subproblem is phased
// to a real symmetric one so the stable tan formula applies; new diagonal
// entries are products (a_pp - t|a_pq|), which keeps tiny eigenvalues at
// high relative accuracy.
void jacobi_sweep(ComplexMatrix& a, ComplexMatrix* v) {
    const int n = a.dim();
    for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const Complex apq = a(p, q);
            const double r = std::abs(apq);
            if (r == 0.0) continue;
            const Complex phase = apq / r;  // a_pq = r * phase
            const double app = a(p, p).real();
            const double aqq = a(q, q).real();
            const double theta = (aqq - app) / (2.0 * r);
            double t;
            if (std::abs(theta) > 1e150) {
                t = 1.0 / (2.0 * theta);
            } else {
                t = ((theta >= 0.0) ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
            }
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;
            // U = diag(1, conj(phase)) * [[c, s],[-s, c]] on (p,q); A <- U^dagger A U.
            const Complex cph = std::conj(phase);
            const Complex scp = s * cph;
            for (int i = 0; i < n; ++i) {
                const Complex aip = a(i, p);
                const Complex aiq = a(i, q);
                a(i, p) = c * aip - scp * aiq;
                a(i, q) = s * aip + c * cph * aiq;
            }
            const Complex sph = s * phase;
            for (int j = 0; j < n; ++j) {
                const Complex apj = a(p, j);
                const Complex aqj = a(q, j);
                a(p, j) = c * apj - sph * aqj;
                a(q, j) = s * apj + c * phase * aqj;
            }
            // Exact zero by construction; diagonals stay real.
            a(p, q) = 0.0;
            a(q, p) = 0.0;
            a(p, p) = Complex(app - t * r, 0.0);
            a(q, q) = Complex(aqq + t * r, 0.0);
            if (v) {
                for (int i = 0; i < n; ++i) {
                    const Complex vip = (*v)(i, p);
                    const Complex viq = (*v)(i, q);
                    (*v)(i, p) = c * vip - scp * viq;
                    (*v)(i, q) = s * vip + c * cph * viq;
                }
            }
        }
    }
}

EigenSystem jacobi_eigensystem(const ComplexMatrix& input, double tol, bool want_vectors) {
    if (input.hermiticity_defect() > tol)
        throw NonHermitianInput("hermitian eigensolver: input is not Hermitian within tolerance");

    ComplexMatrix a = input;
    a.hermitize();
    const int n = a.dim();
    ComplexMatrix v;
    if (want_vectors) v = ComplexMatrix::identity(n);

    const double scale = std::max(a.frobenius_norm(), 1e-300);
    const double target = 1e-14 * scale;
    constexpr int kMaxSweeps = 60;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= target) {
            converged = true;
            break;
        }
        jacobi_sweep(a, want_vectors ? &v : nullptr);
    }
    if (!converged && off_diagonal_norm(a) > target)
        throw ConvergenceFailure("hermitian eigensolver: sweep budget exhausted");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem out;
    out.values.resize(n);
    for (int k = 0; k < n; ++k) out.values[k] = a(order[k], order[k]).real();
    if (want_vectors) {
        out.vectors = ComplexMatrix(n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double tol) {
    return jacobi_eigensystem(a, tol, false).values;
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& a, double tol) {
    return jacobi_eigensystem(a, tol, true);
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho) {
    if (rho.dim() != 4) throw DimensionMismatch("partial_transpose expects a 4x4 matrix");
    ComplexMatrix out(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    out(2 * i + j, 2 * k + l) = rho(2 * i + l, 2 * k + j);
    return out;
}

namespace {

// Solve A X = B for matrix B, in-place LU with partial pivoting.
ComplexMatrix solve_matrix(ComplexMatrix a, ComplexMatrix b) {
    const int n = a.dim();
    std::vector<int> piv(n);
    std::iota(piv.begin(), piv.end(), 0);
    for (int k = 0; k < n; ++k) {
        int pr = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double m = std::abs(a(i, k));
            if (m > best) {
                best = m;
                pr = i;
            }
        }
        if (best == 0.0) throw NumericalFailure("linear solve: singular matrix");
        if (pr != k) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(k, j), a(pr, j));
                std::swap(b(k, j), b(pr, j));
            }
        }
        const Complex pivv = a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const Complex f = a(i, k) / pivv;
            if (f == 0.0) continue;
            a(i, k) = f;
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            for (int j = 0; j < n; ++j) b(i, j) -= f * b(k, j);
        }
    }
    // back substitution
    for (int k = n - 1; k >= 0; --k) {
        const Complex pivv = a(k, k);
        for (int j = 0; j < n; ++j) {
            Complex s = b(k, j);
            for (int i = k + 1; i < n; ++i) s -= a(k, i) * b(i, j);
            b(k, j) = s / pivv;
        }
    }
    return b;
}

}  // namespace

std::vector<Complex> solve_linear(ComplexMatrix a, std::vector<Complex> b) {
    const int n = a.dim();
    if (b.size() != static_cast<size_t>(n)) throw DimensionMismatch("solve_linear size mismatch");
    ComplexMatrix rhs(n);
    for (int i = 0; i < n; ++i) rhs(i, 0) = b[i];
    ComplexMatrix x = solve_matrix(std::move(a), std::move(rhs));
    for (int i = 0; i < n; ++i) b[i] = x(i, 0);
    return b;
}

ComplexMatrix matrix_exponential(const ComplexMatrix& a, double t, double norm_cap) {
    const int n = a.dim();
    for (const auto& x : a.data())
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw InvalidParameters("matrix_exponential: non-finite entry");
    if (!std::isfinite(t)) throw InvalidParameters("matrix_exponential: non-finite time");

    ComplexMatrix b = a;
    b *= Complex(t, 0.0);
    const double nrm = b.one_norm();
    if (nrm > norm_cap) throw OverflowRisk("matrix_exponential: ||A t|| exceeds the configured cap");

    int squarings = 0;
    if (nrm > 0.25) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.25)));
        b *= Complex(std::ldexp(1.0, -squarings), 0.0);
    }

    // [7/7] Pade: N(B)/D(B) with D(B) = N(-B).
    static constexpr double kPade7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                        25200.0,    1512.0,    56.0,      1.0};
    const ComplexMatrix id = ComplexMatrix::identity(n);
    const ComplexMatrix b2 = b * b;
    const ComplexMatrix b4 = b2 * b2;
    const ComplexMatrix b6 = b4 * b2;
    ComplexMatrix even = Complex(kPade7[0], 0) * id + Complex(kPade7[2], 0) * b2 +
                         Complex(kPade7[4], 0) * b4 + Complex(kPade7[6], 0) * b6;
    ComplexMatrix odd_core = Complex(kPade7[1], 0) * id + Complex(kPade7[3], 0) * b2 +
                             Complex(kPade7[5], 0) * b4 + Complex(kPade7[7], 0) * b6;
    ComplexMatrix odd = b * odd_core;
    ComplexMatrix x = solve_matrix(even - odd, even + odd);
    for (int k = 0; k < squarings; ++k) x = x * x;
    return x;
}

KernelResult kernel_vector(const ComplexMatrix& a, double tol) {
    const int n = a.dim();
    ComplexMatrix gram = a.dagger() * a;
    gram.hermitize();
    EigenSystem es = hermitian_eigensystem(gram, 1e-8 * std::max(1.0, gram.max_abs()));

    const double norm_a = std::sqrt(std::max(es.values.back(), 0.0));
    KernelResult out;
    if (norm_a == 0.0) {
        out.vector.assign(n, Complex(0.0, 0.0));
        out.vector[0] = 1.0;
        out.kernel_dim = n;
        out.residual = 0.0;
        return out;
    }

    // The Gram-matrix eigenvalues carry a noise floor of eps*||A||^2, i.e.
    // sqrt(eps)*||A|| in singular values, too coarse for tol*||A||. Screen
    // candidates by eigenvalue, then count by the direct residual ||A v_k||.
    const double screen = std::max(tol, 1.5e-7) * norm_a;
    out.kernel_dim = 0;
    for (int k = 0; k < n; ++k) {
        if (std::sqrt(std::max(es.values[k], 0.0)) > screen) break;
        std::vector<Complex> cand(n);
        for (int i = 0; i < n; ++i) cand[i] = es.vectors(i, k);
        if (vec_norm(mat_vec(a, cand)) <= tol * norm_a) ++out.kernel_dim;
    }

    std::vector<Complex> v(n);
    for (int i = 0; i < n; ++i) v[i] = es.vectors(i, 0);
    const double res = vec_norm(mat_vec(a, v));
    if (out.kernel_dim == 0 || res > tol * norm_a)
        throw EmptyKernel("kernel_vector: no direction meets the residual bound");

    // Fix global phase: largest-magnitude entry real positive.
    int imax = 0;
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        const double m = std::abs(v[i]);
        if (m > best) {
            best = m;
            imax = i;
        }
    }
    const Complex ph = v[imax] / best;
    double nrm2 = 0.0;
    for (int i = 0; i < n; ++i) {
        v[i] /= ph;
        nrm2 += std::norm(v[i]);
    }
    const double inv = 1.0 / std::sqrt(nrm2);
    for (auto& x : v) x *= inv;

    out.vector = std::move(v);
    out.residual = res;
    return out;
}

}  // namespace etx
