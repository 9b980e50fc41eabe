#pragma once

#include "etx/channel.hpp"
#include "etx/matrix.hpp"

namespace etx {

/// Full parameter set of the effective two-qubit generator: channel moments
/// (n, m, c1, c2) plus the effective decay rates gamma_{1,2} of the two
/// qubit-environment couplings.
struct DissipatorSpec {
    double n = 1.0;
    double m = 1.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double gamma1 = 1.0;
    double gamma2 = 1.0;

    /// n = m, c1 = -c2 = c, gamma1 = gamma2 = gamma.
    static DissipatorSpec symmetric(double n, double c, double gamma = 1.0) {
        return {n, n, c, -c, gamma, gamma};
    }
    static DissipatorSpec from_channel(const MomentMatrix& ch, double gamma1, double gamma2) {
        return {ch.n(), ch.m(), ch.c1(), ch.c2(), gamma1, gamma2};
    }
};

/// The 2x2 blocks of the Kossakowski matrix D = [[A, C],[C^dag, B]]:
/// A = (gamma1/4)[[n, i],[-i, n]], B = (gamma2/4)[[m, i],[-i, m]],
/// C = (sqrt(gamma1 gamma2)/4) diag(c1, c2) (real by locality).
struct KossakowskiBlocks {
    ComplexMatrix a, b, c;  ///< 2x2 each
    /// Assembled Hermitian 4x4, symmetrized to remove representation noise.
    ComplexMatrix assembled() const;
};

KossakowskiBlocks build_kossakowski(const DissipatorSpec& spec);

/// True iff min eig(D) >= -tol.
bool is_completely_positive(const KossakowskiBlocks& blocks, double tol = 1e-10);
bool is_completely_positive(const DissipatorSpec& spec, double tol = 1e-10);

/// Largest |c| (with c1 = -c2 = c) keeping the map completely positive:
/// sqrt(min{(m-1)(n+1), (m+1)(n-1)}) for n, m >= 1, else 0.
double cp_bound_closed(double n, double m);

/// The 16x16 matrix of rho -> sum_{ab} D_ab (O_a rho O_b - {O_b O_a, rho}/2)
/// under column-stacking vectorization, with O_1 = sx(x)1, O_2 = sy(x)1,
/// O_3 = 1(x)sx, O_4 = 1(x)sy. Requires a completely positive spec.
ComplexMatrix assemble_superoperator(const DissipatorSpec& spec);

/// L(rho) evaluated directly from the operator sum (no 16x16 assembly).
ComplexMatrix apply_generator(const DissipatorSpec& spec, const ComplexMatrix& rho);

}  // namespace etx
