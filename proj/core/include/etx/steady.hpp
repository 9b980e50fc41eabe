#pragma once

#include <iosfwd>
#include <vector>

#include "etx/dynamics.hpp"
#include "etx/liouvillian.hpp"

namespace etx {

/// Unique steady state from the kernel of the 16x16 superoperator:
/// reshape, Hermitize, normalize to trace 1. Throws DegenerateSteadyState
/// when the kernel is not one-dimensional.
QubitState steady_state(const DissipatorSpec& spec);

/// Closed-form boundary correlation c_ss(n, m, gamma1, gamma2): the steady
/// state is entangled iff c > c_ss (c1 = -c2 = c). Smaller positive root of
/// the quadratic in c^2 solved from the steady state of the four coupled
/// elements; returns the magnitude.
double c_ss_closed_form(double n, double m, double gamma1, double gamma2);

/// Bad-cavity steady-state boundary for the symmetric channel,
/// (sqrt((n^2-1)^2 + n^2) - 1)/n.
double cqed_c_ss(double n);

struct CssNumeric {
    double value;    ///< boundary, or the CP bound when not bracketed
    bool bracketed;  ///< false if the steady state is separable across the CP range
};

/// Bisection of c in [0, cp_bound] on the sign of the steady-state
/// negativity (threshold 1e-10), to absolute width tol.
CssNumeric c_ss_numeric(double n, double m, double gamma1, double gamma2, double tol = 1e-6);

struct BoundaryResult {
    double c_ss_closed;
    double c_ss_numeric;  ///< NaN when not bracketed
    double agreement;     ///< |closed - numeric|, NaN when not bracketed
    bool bracketed;
};

BoundaryResult boundary_point(double n, double m, double gamma1, double gamma2, double tol = 1e-6);

struct BoundaryRow {
    double n, m, gamma1, gamma2;
    BoundaryResult result;
};

/// CSV export: header n,m,gamma1,gamma2,c_ss_closed,c_ss_numeric,abs_diff;
/// 12 significant digits, nan for unbracketed numeric entries.
void write_boundary_csv(std::ostream& out, const std::vector<BoundaryRow>& rows);

}  // namespace etx
