#include "etx/channel.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <string>

#include "etx/errors.hpp"
#include "etx/qmath.hpp"

namespace etx {

namespace {

constexpr double kPhysicalityTol = 1e-10;

// M - sigma_y (+) sigma_y for a standard-form or raw 4x4 moment matrix.
ComplexMatrix uncertainty_form(const ComplexMatrix& m) {
    ComplexMatrix u = m;
    const Complex i(0.0, 1.0);
    // subtracting sigma_y adds +i/-i on the (q,p) off-diagonals
    u(0, 1) += i;
    u(1, 0) -= i;
    u(2, 3) += i;
    u(3, 2) -= i;
    return u;
}

bool uncertainty_holds(const ComplexMatrix& m) {
    auto ev = hermitian_eigenvalues(uncertainty_form(m), 1e-9);
    return ev.front() >= -kPhysicalityTol;
}

ComplexMatrix standard_matrix(double n, double m, double c1, double c2) {
    ComplexMatrix mm(4);
    mm(0, 0) = n;
    mm(1, 1) = n;
    mm(2, 2) = m;
    mm(3, 3) = m;
    mm(0, 2) = mm(2, 0) = c1;
    mm(1, 3) = mm(3, 1) = c2;
    return mm;
}

}  // namespace

MomentMatrix::MomentMatrix(double n, double m, double c1, double c2)
    : n_(n), m_(m), c1_(c1), c2_(c2) {
    if (!(n >= 0.0) || !(m >= 0.0))
        throw UnphysicalChannel("moment matrix: local moments must be nonnegative");
    if (!uncertainty_holds(standard_matrix(n, m, c1, c2)))
        throw UnphysicalChannel("moment matrix: uncertainty principle violated");
}

ComplexMatrix MomentMatrix::to_matrix() const { return standard_matrix(n_, m_, c1_, c2_); }

RawMomentMatrix::RawMomentMatrix(const std::array<std::array<double, 4>, 4>& entries)
    : m_(entries) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(m_[i][j] - m_[j][i]) > 1e-12)
                throw InvalidParameters("raw moment matrix: not symmetric");
}

ComplexMatrix RawMomentMatrix::to_matrix() const {
    ComplexMatrix mm(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) mm(i, j) = m_[i][j];
    return mm;
}

RawMomentMatrix RawMomentMatrix::from_csv(std::istream& in) {
    std::array<std::array<double, 4>, 4> e{};
    std::string line;
    for (int i = 0; i < 4; ++i) {
        if (!std::getline(in, line))
            throw InvalidParameters("raw moment matrix CSV: expected 4 lines");
        std::istringstream row(line);
        std::string field;
        for (int j = 0; j < 4; ++j) {
            if (!std::getline(row, field, ','))
                throw InvalidParameters("raw moment matrix CSV: expected 4 fields per line");
            try {
                e[i][j] = std::stod(field);
            } catch (const std::exception&) {
                throw InvalidParameters("raw moment matrix CSV: bad decimal field");
            }
        }
    }
    return RawMomentMatrix(e);
}

bool check_uncertainty(const MomentMatrix& m) { return uncertainty_holds(m.to_matrix()); }
bool check_uncertainty(const RawMomentMatrix& m) { return uncertainty_holds(m.to_matrix()); }

bool is_gaussian_entangled(const MomentMatrix& m) {
    if (!check_uncertainty(m)) throw UnphysicalChannel("is_gaussian_entangled: unphysical input");
    const bool violated =
        !uncertainty_holds(standard_matrix(m.n(), m.m(), m.c1(), -m.c2()));
    // Cross-check against the closed form where it applies, away from the
    // decision boundary.
    const double c1 = std::abs(m.c1());
    const double c2 = std::abs(m.c2());
    if (std::abs(c1 - c2) < 1e-12) {
        const double lhs = (m.n() - 1.0) * (m.m() - 1.0);
        const double rhs = c1 * c1;
        if (std::abs(lhs - rhs) > 1e-8 && violated != (lhs < rhs))
            throw NumericalFailure("is_gaussian_entangled: eigenvalue test disagrees with closed form");
    }
    return violated;
}

MomentMatrix tmsv(double r) {
    if (!std::isfinite(r)) throw InvalidParameters("tmsv: squeezing must be finite");
    const double n = std::cosh(2.0 * r);
    const double c = std::sinh(2.0 * std::abs(r));
    return MomentMatrix(n, n, c, -c);
}

MomentMatrix from_purity_correlation(double p, double k) {
    if (!(p >= 1.0) || !(k > 0.0))
        throw InvalidParameters("from_purity_correlation: require p >= 1 and k > 0");
    const double n = (1.0 / k + p * p * k) / 2.0;
    const double c = (p * p * k - 1.0 / k) / 2.0;
    if (c < 0.0) throw InvalidParameters("from_purity_correlation: negative correlation");
    return MomentMatrix(n, n, c, -c);  // throws UnphysicalChannel if infeasible
}

namespace {

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

constexpr Mat2 kIdentity2{{{1.0, 0.0}, {0.0, 1.0}}};

Mat2 rotation(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return Mat2{{{c, -s}, {s, c}}};
}

// Block extraction from a raw 4x4: block(0,0)=A, block(0,1)=C, block(1,1)=B.
Mat2 block_of(const RawMomentMatrix& m, int bi, int bj) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = m(2 * bi + i, 2 * bj + j);
    return r;
}

// Rotation angle diagonalizing a symmetric 2x2 via R^T S R.
double symmetric_eig_angle(const Mat2& s) {
    return 0.5 * std::atan2(2.0 * s[0][1], s[0][0] - s[1][1]);
}

// C = R(alpha) * diag(d1, d2) * R(beta)^T with both factors in SO(2),
// d1 >= |d2|, d1 >= 0 and sign(d2) = sign(det C).
struct RotSvd {
    Mat2 left, right;
    double d1, d2;
};

RotSvd svd2_rotations(const Mat2& c) {
    // right rotation from the eigenvectors of C^T C
    Mat2 g{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            g[i][j] = c[0][i] * c[0][j] + c[1][i] * c[1][j];
    double beta = symmetric_eig_angle(g);
    Mat2 rb = rotation(beta);
    Mat2 w = mat2_mul(c, rb);
    double s1 = std::hypot(w[0][0], w[1][0]);
    double s2 = std::hypot(w[0][1], w[1][1]);
    if (s1 < s2) {
        // rotate the right factor by pi/2 to swap the columns of W
        rb = mat2_mul(rb, rotation(M_PI / 2.0));
        w = mat2_mul(c, rb);
        s1 = std::hypot(w[0][0], w[1][0]);
        s2 = std::hypot(w[0][1], w[1][1]);
    }
    Mat2 ra = kIdentity2;
    if (s1 > 1e-300) {
        ra[0][0] = w[0][0] / s1;
        ra[1][0] = w[1][0] / s1;
        if (s2 > 1e-300 * s1) {
            ra[0][1] = w[0][1] / s2;
            ra[1][1] = w[1][1] / s2;
        } else {
            // orthonormal completion
            ra[0][1] = -ra[1][0];
            ra[1][1] = ra[0][0];
            s2 = 0.0;
        }
    } else {
        s1 = s2 = 0.0;
    }
    double det = ra[0][0] * ra[1][1] - ra[0][1] * ra[1][0];
    if (det < 0.0) {
        ra[0][1] = -ra[0][1];
        ra[1][1] = -ra[1][1];
        s2 = -s2;
    }
    return {ra, rb, s1, s2};
}

Mat2 transpose2(const Mat2& a) { return Mat2{{{a[0][0], a[1][0]}, {a[0][1], a[1][1]}}}; }

}  // namespace

RawMomentMatrix apply_local(const RawMomentMatrix& raw, const Mat2& s1, const Mat2& s2) {
    double s[4][4] = {};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            s[i][j] = s1[i][j];
            s[2 + i][2 + j] = s2[i][j];
        }
    std::array<std::array<double, 4>, 4> out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) acc += s[i][k] * raw(k, l) * s[j][l];
            out[i][j] = acc;
        }
    // symmetrize away rounding
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double avg = 0.5 * (out[i][j] + out[j][i]);
            out[i][j] = out[j][i] = avg;
        }
    return RawMomentMatrix(out);
}

StandardFormReduction reduce_to_standard_form(const RawMomentMatrix& raw) {
    if (!check_uncertainty(raw))
        throw UnphysicalChannel("reduce_to_standard_form: unphysical raw moments");

    // already standard?
    {
        const double n = raw(0, 0), m = raw(2, 2);
        const bool std_local = std::abs(raw(1, 1) - n) < 1e-14 && std::abs(raw(3, 3) - m) < 1e-14 &&
                               std::abs(raw(0, 1)) < 1e-14 && std::abs(raw(2, 3)) < 1e-14;
        const bool std_corr = std::abs(raw(0, 3)) < 1e-14 && std::abs(raw(1, 2)) < 1e-14;
        if (std_local && std_corr) {
            return {MomentMatrix(n, m, raw(0, 2), raw(1, 3)), kIdentity2, kIdentity2, true};
        }
    }

    RawMomentMatrix work = raw;
    Mat2 total1 = kIdentity2, total2 = kIdentity2;

    auto apply_step = [&](const Mat2& s1, const Mat2& s2) {
        work = apply_local(work, s1, s2);
        total1 = mat2_mul(s1, total1);
        total2 = mat2_mul(s2, total2);
    };

    // balance each local block: rotate to principal axes, then squeeze
    for (int mode = 0; mode < 2; ++mode) {
        const Mat2 blk = block_of(work, mode, mode);
        const double det = blk[0][0] * blk[1][1] - blk[0][1] * blk[1][0];
        if (det < 1e-12) throw DegenerateBlock("reduce_to_standard_form: singular local block");
        const Mat2 rot = transpose2(rotation(symmetric_eig_angle(blk)));
        const Mat2 after = mat2_mul(mat2_mul(rot, blk), transpose2(rot));
        const double a1 = after[0][0], a2 = after[1][1];
        const double s = std::pow(a2 / a1, 0.25);
        const Mat2 squeeze{{{s, 0.0}, {0.0, 1.0 / s}}};
        const Mat2 step = mat2_mul(squeeze, rot);
        if (mode == 0)
            apply_step(step, kIdentity2);
        else
            apply_step(kIdentity2, step);
    }

    // align the correlation block
    const RotSvd svd = svd2_rotations(block_of(work, 0, 1));
    apply_step(transpose2(svd.left), transpose2(svd.right));

    const double n = 0.5 * (work(0, 0) + work(1, 1));
    const double m = 0.5 * (work(2, 2) + work(3, 3));
    return {MomentMatrix(n, m, work(0, 2), work(1, 3)), total1, total2, false};
}

}  // namespace etx
