#include "etx/steady.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "etx/errors.hpp"
#include "etx/qmath.hpp"

namespace etx {

QubitState steady_state(const DissipatorSpec& spec) {
    const ComplexMatrix l = assemble_superoperator(spec);
    const KernelResult kr = kernel_vector(l, kKernelTol);
    if (kr.kernel_dim > 1)
        throw DegenerateSteadyState("steady_state: kernel dimension exceeds one");

    ComplexMatrix rho = unvectorize(kr.vector);
    rho.hermitize();
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-8)
        throw DegenerateSteadyState("steady_state: kernel vector is traceless");
    rho *= Complex(1.0 / tr, 0.0);

    const double residual = vec_norm(mat_vec(l, vectorize(rho)));
    if (residual > 1e-8 * std::max(1.0, l.frobenius_norm()))
        throw ConvergenceFailure("steady_state: residual above tolerance");
    return QubitState(std::move(rho));
}

double c_ss_closed_form(double n, double m, double gamma1, double gamma2) {
    if (!(n >= 1.0) || !(m >= 1.0))
        throw NonPhysicalInput("c_ss_closed_form: requires n, m >= 1");
    if (!(gamma1 > 0.0) || !(gamma2 > 0.0))
        throw NonPhysicalInput("c_ss_closed_form: requires positive decay rates");
    const double nm = n * m;
    const double mu = (nm - 1.0) * (nm - 1.0) + (nm + 1.0) - (n - m) * (n - m);
    const double nu = 4.0 * nm + 4.0 * (nm - 1.0) * (nm - 1.0) - 3.0 * (n - m) * (n - m);
    if (nu < 0.0) throw NonPhysicalInput("c_ss_closed_form: negative discriminant");
    const double denom = nm * nm - (n - m) * (n - m);
    const double bracket = (mu - std::sqrt(nu)) / denom;
    if (bracket < 0.0) throw NonPhysicalInput("c_ss_closed_form: negative bracketed ratio");
    const double prefactor = (n * gamma1 + m * gamma2) / (2.0 * std::sqrt(gamma1 * gamma2));
    return prefactor * std::sqrt(bracket);
}

double cqed_c_ss(double n) {
    const double n2 = n * n;
    return (std::sqrt((n2 - 1.0) * (n2 - 1.0) + n2) - 1.0) / n;
}

CssNumeric c_ss_numeric(double n, double m, double gamma1, double gamma2, double tol) {
    const double cmax = cp_bound_closed(n, m);
    if (cmax <= 0.0) return {cmax, false};

    auto entangled = [&](double c) {
        const DissipatorSpec spec{n, m, c, -c, gamma1, gamma2};
        return negativity(steady_state(spec)).e_npt > 1e-10;
    };
    auto entangled_guarded = [&](double c) {
        // the CP boundary itself can have a degenerate kernel; probe just inside
        try {
            return entangled(c);
        } catch (const DegenerateSteadyState&) {
            return entangled(c * (1.0 - 1e-9));
        }
    };

    if (!entangled_guarded(cmax)) return {cmax, false};
    double lo = 0.0, hi = cmax;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (entangled(mid))
            hi = mid;
        else
            lo = mid;
    }
    return {0.5 * (lo + hi), true};
}

BoundaryResult boundary_point(double n, double m, double gamma1, double gamma2, double tol) {
    const double closed = c_ss_closed_form(n, m, gamma1, gamma2);
    const CssNumeric numeric = c_ss_numeric(n, m, gamma1, gamma2, tol);
    if (!numeric.bracketed) {
        const double nan = std::nan("");
        return {closed, nan, nan, false};
    }
    return {closed, numeric.value, std::abs(closed - numeric.value), true};
}

void write_boundary_csv(std::ostream& out, const std::vector<BoundaryRow>& rows) {
    out << "n,m,gamma1,gamma2,c_ss_closed,c_ss_numeric,abs_diff\n";
    char buf[64];
    auto put = [&](double x, char sep) {
        std::snprintf(buf, sizeof buf, "%.12g", x);
        out << buf << sep;
    };
    for (const BoundaryRow& r : rows) {
        put(r.n, ',');
        put(r.m, ',');
        put(r.gamma1, ',');
        put(r.gamma2, ',');
        put(r.result.c_ss_closed, ',');
        put(r.result.c_ss_numeric, ',');
        put(r.result.agreement, '\n');
    }
}

}  // namespace etx
