#include "etx/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "etx/errors.hpp"
#include "etx/qmath.hpp"

namespace etx {

namespace {

Complex quad_form(const ComplexMatrix& m, const Complex u0, const Complex u1, const Complex v0,
                  const Complex v1) {
    return std::conj(u0) * (m(0, 0) * v0 + m(0, 1) * v1) +
           std::conj(u1) * (m(1, 0) * v0 + m(1, 1) * v1);
}

double real_checked(Complex z, const char* what) {
    if (std::abs(z.imag()) > 1e-12 * std::max(1.0, std::abs(z.real())))
        throw NumericalFailure(std::string("conditions: ") + what + " has an imaginary residue");
    return z.real();
}

// Margin rhs - lhs as a function of a = cos 2theta, b = cos 2phi.
struct Margin {
    ComplexMatrix a, bt, c;  // A, B^T, C blocks

    double operator()(double av, double bv) const {
        const Complex i(0.0, 1.0);
        // u = (a, -i), v = (b, i)
        const double lhs1 = real_checked(quad_form(a, av, -i, av, -i), "u+Au");
        const double lhs2 = real_checked(quad_form(bt, bv, i, bv, i), "v+BTv");
        const Complex cross = quad_form(c, av, -i, bv, i);
        return std::norm(cross) - lhs1 * lhs2;
    }

    // Exact max over one coordinate in [-1, 1]: the slice is a quadratic.
    double best_first(double bv) const {
        return best_of_quadratic([&](double x) { return (*this)(x, bv); });
    }
    double best_second(double av) const {
        return best_of_quadratic([&](double x) { return (*this)(av, x); });
    }

    template <typename F>
    static double best_of_quadratic(const F& f) {
        // fit q(x) = q0 + q1 x + q2 x^2 through -1, 0, 1
        const double fm = f(-1.0), f0 = f(0.0), fp = f(1.0);
        const double q2 = 0.5 * (fp + fm) - f0;
        const double q1 = 0.5 * (fp - fm);
        double best_x = (fp >= fm) ? 1.0 : -1.0;
        if (q2 < 0.0) {
            const double vertex = -q1 / (2.0 * q2);
            if (vertex > -1.0 && vertex < 1.0) best_x = vertex;
        }
        return best_x;
    }
};

Margin make_margin(const DissipatorSpec& spec) {
    KossakowskiBlocks blocks = build_kossakowski(spec);
    return Margin{blocks.a, blocks.b.transpose(), blocks.c};
}

}  // namespace

InitialAngles ground_state_angles() { return {std::numbers::pi / 2.0, std::numbers::pi / 2.0}; }

ConditionEval sufficient_condition_general(const DissipatorSpec& spec,
                                           const InitialAngles& angles) {
    const Margin m = make_margin(spec);
    const Complex i(0.0, 1.0);
    const double a = std::cos(2.0 * angles.theta);
    const double b = std::cos(2.0 * angles.phi);
    const double lhs1 = real_checked(quad_form(m.a, a, -i, a, -i), "u+Au");
    const double lhs2 = real_checked(quad_form(m.bt, b, i, b, i), "v+BTv");
    const double rhs = std::norm(quad_form(m.c, a, -i, b, i));
    const double lhs = lhs1 * lhs2;
    return {lhs < rhs, lhs, rhs};
}

bool sufficient_condition_ground(const DissipatorSpec& spec) {
    if (std::abs(std::abs(spec.c1) - std::abs(spec.c2)) > 1e-12)
        throw UnsupportedCorrelation("sufficient_condition_ground: requires |c1| = |c2|");
    const double c = std::abs(spec.c1);
    return (spec.n - 1.0) * (spec.m - 1.0) < c * c;
}

AngleSearchResult exists_entangling_angles(const DissipatorSpec& spec, int grid) {
    if (grid < 8) throw InvalidParameters("exists_entangling_angles: grid must be >= 8");
    const Margin m = make_margin(spec);
    const double pi = std::numbers::pi;

    double best = -std::numeric_limits<double>::infinity();
    double best_a = -1.0, best_b = -1.0;
    for (int i = 0; i < grid; ++i) {
        const double a = std::cos(2.0 * (pi * i / grid));
        for (int j = 0; j < grid; ++j) {
            const double b = std::cos(2.0 * (pi * j / grid));
            const double v = m(a, b);
            if (v > best) {
                best = v;
                best_a = a;
                best_b = b;
            }
        }
    }
    // coordinate descent; each slice maximum is exact
    for (int round = 0; round < 64; ++round) {
        const double a_new = m.best_first(best_b);
        const double b_new = m.best_second(a_new);
        const double v = m(a_new, b_new);
        const bool done = v - best <= 1e-6 * std::max(1.0, std::abs(best));
        if (v > best) {
            best = v;
            best_a = a_new;
            best_b = b_new;
        }
        if (done) break;
    }
    InitialAngles angles{0.5 * std::acos(std::clamp(best_a, -1.0, 1.0)),
                         0.5 * std::acos(std::clamp(best_b, -1.0, 1.0))};
    return {best > 0.0, angles, best};
}

double initial_slope_probe(const DissipatorSpec& spec, const QubitState& rho0) {
    ComplexMatrix l = assemble_superoperator(spec);
    l *= Complex(1.0 / spec.gamma1, 0.0);
    const std::vector<Complex> v0 = vectorize(rho0.rho());

    auto min_pt_at = [&](double tau) {
        ComplexMatrix rho = unvectorize(mat_vec(matrix_exponential(l, tau), v0));
        rho.hermitize();
        ComplexMatrix pt = partial_transpose(rho);
        pt.hermitize();
        return hermitian_eigenvalues(pt, 1e-8).front();
    };

    constexpr double h = 1e-4;
    const double f0 = min_pt_at(0.0);
    const double d_full = (min_pt_at(h) - f0) / h;
    const double d_half = (min_pt_at(0.5 * h) - f0) / (0.5 * h);
    return 2.0 * d_half - d_full;
}

}  // namespace etx
