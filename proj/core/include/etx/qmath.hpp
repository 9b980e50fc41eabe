#pragma once

#include <vector>

#include "etx/matrix.hpp"

namespace etx {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kKernelTol = 1e-9;

struct EigenSystem {
    std::vector<double> values;  ///< ascending
    ComplexMatrix vectors;       ///< column k is the eigenvector of values[k]
};

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi rotations.
/// Throws NonHermitianInput if max |A_ij - conj(A_ji)| > tol, and
/// ConvergenceFailure if the sweep budget is exhausted.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double tol = kHermitianTol);

/// Same, with eigenvectors.
EigenSystem hermitian_eigensystem(const ComplexMatrix& a, double tol = kHermitianTol);

/// Partial transposition over the second qubit of a two-qubit operator in
/// the fixed basis |ee>,|eg>,|ge>,|gg>: ((i,j),(k,l)) -> ((i,l),(k,j)).
ComplexMatrix partial_transpose(const ComplexMatrix& rho);

/// exp(A t) by scaling-and-squaring with a [7/7] Pade core.
/// Throws OverflowRisk when ||A t||_1 exceeds norm_cap.
ComplexMatrix matrix_exponential(const ComplexMatrix& a, double t, double norm_cap = 1e4);

/// Solve A x = b by LU with partial pivoting (A copied).
std::vector<Complex> solve_linear(ComplexMatrix a, std::vector<Complex> b);

struct KernelResult {
    std::vector<Complex> vector;  ///< unit norm, largest entry real positive
    int kernel_dim = 0;           ///< singular directions below tol*||A||
    double residual = 0.0;        ///< ||A v||
};

/// Null-space direction of a square matrix via the Hermitian eigensystem of
/// A^dagger A. Throws EmptyKernel if no direction meets ||A v|| <= tol*||A||.
KernelResult kernel_vector(const ComplexMatrix& a, double tol = kKernelTol);

}  // namespace etx
