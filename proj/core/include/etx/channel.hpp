#pragma once

#include <array>
#include <iosfwd>

#include "etx/matrix.hpp"

namespace etx {

using Mat2 = std::array<std::array<double, 2>, 2>;

/// Standard-form second-order moment matrix of the two-mode driving field:
/// local blocks n*I, m*I and correlation block diag(c1, c2), normalized so
/// the vacuum diagonal is 1. Construction enforces physicality
/// (M - sigma_y (+) sigma_y >= 0) and n, m >= 0.
class MomentMatrix {
public:
    MomentMatrix(double n, double m, double c1, double c2);

    double n() const { return n_; }
    double m() const { return m_; }
    double c1() const { return c1_; }
    double c2() const { return c2_; }

    /// The 4x4 matrix in quadrature order (q1, p1, q2, p2).
    ComplexMatrix to_matrix() const;

private:
    double n_, m_, c1_, c2_;
};

/// Raw symmetrized second-order moments <{x_a, x_b}> in quadrature order
/// (q1, p1, q2, p2); symmetric within 1e-12.
class RawMomentMatrix {
public:
    explicit RawMomentMatrix(const std::array<std::array<double, 4>, 4>& entries);

    double operator()(int i, int j) const { return m_[i][j]; }
    ComplexMatrix to_matrix() const;

    /// Parse 4 lines x 4 comma-separated decimal fields.
    static RawMomentMatrix from_csv(std::istream& in);

private:
    std::array<std::array<double, 4>, 4> m_;
};

/// Physicality predicate M - sigma_y (+) sigma_y >= 0 (eigenvalue test at
/// tolerance 1e-10).
bool check_uncertainty(const MomentMatrix& m);
bool check_uncertainty(const RawMomentMatrix& m);

/// Entanglement of the Gaussian drive: momentum reversal of mode 2
/// (c2 -> -c2) followed by the uncertainty test. For |c1| = |c2| = c this
/// coincides with (n-1)(m-1) < c^2. Requires a physical input.
bool is_gaussian_entangled(const MomentMatrix& m);

/// Two-mode squeezed vacuum: n = m = cosh(2r), c1 = -c2 = sinh(2r).
MomentMatrix tmsv(double r);

/// Standard form from purity p = sqrt(n^2 - c^2) >= 1 and correlation
/// strength k = 1/(n - c) > 0.
MomentMatrix from_purity_correlation(double p, double k);

struct StandardFormReduction {
    MomentMatrix standard;
    Mat2 mode1;  ///< per-mode symplectic S1 with M_std = (S1 (+) S2) M (S1 (+) S2)^T
    Mat2 mode2;
    bool identity = false;
};

/// Reduce a raw moment matrix to standard form by local rotations and
/// single-mode squeezings. Preserves det of each block and det M.
StandardFormReduction reduce_to_standard_form(const RawMomentMatrix& raw);

/// Apply per-mode linear transforms: M -> (S1 (+) S2) M (S1 (+) S2)^T.
RawMomentMatrix apply_local(const RawMomentMatrix& raw, const Mat2& s1, const Mat2& s2);

}  // namespace etx
