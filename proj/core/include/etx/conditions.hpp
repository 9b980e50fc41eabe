#pragma once

#include "etx/dynamics.hpp"
#include "etx/liouvillian.hpp"

namespace etx {

/// Rotation angles (radians, [0, pi)) of the two qubits' initial states
/// about their Bloch z axes, entering through u = (cos 2theta, -i)^T and
/// v = (cos 2phi, i)^T.
struct InitialAngles {
    double theta;
    double phi;
};

/// Angles at which the general criterion reduces to the ground-state form
/// (n-1)(m-1) < c^2.
InitialAngles ground_state_angles();

struct ConditionEval {
    bool holds;  ///< lhs < rhs, strict
    double lhs;  ///< (u+ A u)(v+ B^T v)
    double rhs;  ///< |u+ C v|^2
};

/// The quadratic-form entanglement criterion on the Kossakowski blocks for
/// a product initial state rotated by the given angles.
ConditionEval sufficient_condition_general(const DissipatorSpec& spec, const InitialAngles& angles);

/// Closed form (n-1)(m-1) < c^2 for c1 = -c2 = c; agrees with the general
/// criterion at the ground-state angles.
bool sufficient_condition_ground(const DissipatorSpec& spec);

struct AngleSearchResult {
    bool found;
    InitialAngles best;
    double margin;  ///< max over angles of rhs - lhs
};

/// Deterministic grid scan over [0, pi)^2 with coordinate-descent
/// refinement (each 1-D slice of the margin is an exact quadratic).
AngleSearchResult exists_entangling_angles(const DissipatorSpec& spec, int grid = 32);

/// One-sided Richardson-refined slope of the minimum partial-transpose
/// eigenvalue at tau = 0 (h = 1e-4); negative slope means immediate
/// entanglement generation from a separable start.
double initial_slope_probe(const DissipatorSpec& spec, const QubitState& rho0);

}  // namespace etx
