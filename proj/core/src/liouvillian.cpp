#include "etx/liouvillian.hpp"

#include <cmath>

#include "etx/errors.hpp"
#include "etx/qmath.hpp"

namespace etx {

namespace {

const ComplexMatrix& coupling_operator(int alpha) {
    static const ComplexMatrix sx(2, {0.0, 1.0, 1.0, 0.0});
    static const ComplexMatrix sy(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
    static const ComplexMatrix id2 = ComplexMatrix::identity(2);
    static const ComplexMatrix ops[4] = {kron(sx, id2), kron(sy, id2), kron(id2, sx),
                                         kron(id2, sy)};
    return ops[alpha];
}

// O_b O_a products, indexed [b][a].
const ComplexMatrix& coupling_product(int b, int a) {
    static const ComplexMatrix products[4][4] = {
        {coupling_operator(0) * coupling_operator(0), coupling_operator(0) * coupling_operator(1),
         coupling_operator(0) * coupling_operator(2), coupling_operator(0) * coupling_operator(3)},
        {coupling_operator(1) * coupling_operator(0), coupling_operator(1) * coupling_operator(1),
         coupling_operator(1) * coupling_operator(2), coupling_operator(1) * coupling_operator(3)},
        {coupling_operator(2) * coupling_operator(0), coupling_operator(2) * coupling_operator(1),
         coupling_operator(2) * coupling_operator(2), coupling_operator(2) * coupling_operator(3)},
        {coupling_operator(3) * coupling_operator(0), coupling_operator(3) * coupling_operator(1),
         coupling_operator(3) * coupling_operator(2), coupling_operator(3) * coupling_operator(3)}};
    return products[b][a];
}

void check_finite(const DissipatorSpec& s) {
    if (!std::isfinite(s.n) || !std::isfinite(s.m) || !std::isfinite(s.c1) ||
        !std::isfinite(s.c2) || !std::isfinite(s.gamma1) || !std::isfinite(s.gamma2))
        throw InvalidParameters("dissipator spec: non-finite field");
    if (s.gamma1 <= 0.0 || s.gamma2 <= 0.0)
        throw InvalidParameters("dissipator spec: decay rates must be positive");
}

}  // namespace

ComplexMatrix KossakowskiBlocks::assembled() const {
    ComplexMatrix d(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            d(i, j) = a(i, j);
            d(2 + i, 2 + j) = b(i, j);
            d(i, 2 + j) = c(i, j);
            d(2 + i, j) = std::conj(c(j, i));
        }
    d.hermitize();
    return d;
}

KossakowskiBlocks build_kossakowski(const DissipatorSpec& spec) {
    check_finite(spec);
    const Complex i(0.0, 1.0);
    KossakowskiBlocks blocks{ComplexMatrix(2), ComplexMatrix(2), ComplexMatrix(2)};
    const double fa = spec.gamma1 / 4.0;
    blocks.a(0, 0) = fa * spec.n;
    blocks.a(0, 1) = fa * i;
    blocks.a(1, 0) = -fa * i;
    blocks.a(1, 1) = fa * spec.n;
    const double fb = spec.gamma2 / 4.0;
    blocks.b(0, 0) = fb * spec.m;
    blocks.b(0, 1) = fb * i;
    blocks.b(1, 0) = -fb * i;
    blocks.b(1, 1) = fb * spec.m;
    const double fc = std::sqrt(spec.gamma1 * spec.gamma2) / 4.0;
    blocks.c(0, 0) = fc * spec.c1;
    blocks.c(1, 1) = fc * spec.c2;
    return blocks;
}

bool is_completely_positive(const KossakowskiBlocks& blocks, double tol) {
    auto ev = hermitian_eigenvalues(blocks.assembled(), 1e-9);
    return ev.front() >= -tol;
}

bool is_completely_positive(const DissipatorSpec& spec, double tol) {
    return is_completely_positive(build_kossakowski(spec), tol);
}

double cp_bound_closed(double n, double m) {
    if (n < 1.0 || m < 1.0) return 0.0;
    return std::sqrt(std::min((m - 1.0) * (n + 1.0), (m + 1.0) * (n - 1.0)));
}

ComplexMatrix assemble_superoperator(const DissipatorSpec& spec) {
    if (!is_completely_positive(spec))
        throw NotCompletelyPositive("assemble_superoperator: Kossakowski matrix is not PSD");
    const ComplexMatrix d = build_kossakowski(spec).assembled();
    const ComplexMatrix id4 = ComplexMatrix::identity(4);
    ComplexMatrix l(16);
    for (int al = 0; al < 4; ++al) {
        for (int be = 0; be < 4; ++be) {
            const Complex w = d(al, be);
            if (w == 0.0) continue;
            const ComplexMatrix& oa = coupling_operator(al);
            const ComplexMatrix& ob = coupling_operator(be);
            const ComplexMatrix& oba = coupling_product(be, al);
            // vec(Oa rho Ob) = (Ob^T kron Oa) vec(rho)
            l += w * kron(ob.transpose(), oa);
            l -= (0.5 * w) * kron(id4, oba);
            l -= (0.5 * w) * kron(oba.transpose(), id4);
        }
    }
    return l;
}

ComplexMatrix apply_generator(const DissipatorSpec& spec, const ComplexMatrix& rho) {
    if (rho.dim() != 4) throw DimensionMismatch("apply_generator expects a 4x4 state");
    const ComplexMatrix d = build_kossakowski(spec).assembled();
    ComplexMatrix out(4);
    for (int al = 0; al < 4; ++al) {
        for (int be = 0; be < 4; ++be) {
            const Complex w = d(al, be);
            if (w == 0.0) continue;
            const ComplexMatrix& oa = coupling_operator(al);
            const ComplexMatrix& ob = coupling_operator(be);
            const ComplexMatrix& oba = coupling_product(be, al);
            out += w * (oa * rho * ob);
            out -= (0.5 * w) * (oba * rho + rho * oba);
        }
    }
    return out;
}

}  // namespace etx
