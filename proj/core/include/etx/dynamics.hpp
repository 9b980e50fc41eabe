#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "etx/liouvillian.hpp"
#include "etx/matrix.hpp"

namespace etx {

/// Two-qubit density matrix in the fixed basis |ee>,|eg>,|ge>,|gg>.
/// Construction enforces trace 1 (1e-9), hermiticity (1e-9) and
/// min eigenvalue >= -1e-8.
class QubitState {
public:
    explicit QubitState(ComplexMatrix rho);

    /// Product basis kets: "ee", "eg", "ge", "gg".
    static QubitState ket(std::string_view which);

    const ComplexMatrix& rho() const { return rho_; }

private:
    ComplexMatrix rho_;
};

struct NegativityResult {
    double e_npt;       ///< max(0, -2 min_pt_eig)
    double min_pt_eig;  ///< smallest eigenvalue of rho^{T2}
};

/// Entanglement negativity from the partial transpose. For two qubits at
/// most one eigenvalue of rho^{T2} is negative, so -2 lambda_min is the
/// full negativity sum.
NegativityResult negativity(const QubitState& state);

/// Linearized entropy 4/3 (1 - Tr rho^2), clamped to [0, 1].
double linearized_entropy(const QubitState& state);

/// The four coupled real elements of the symmetric-case reduced equations
/// (n = m, gamma1 = gamma2, c1 = -c2); rho_gggg follows from normalization
/// and rho_ggee from hermiticity.
struct BlochState {
    double p_eeee = 0.0;
    double p_egeg = 0.0;
    double p_gege = 0.0;
    double p_eegg = 0.0;
};

/// Time grid (dimensionless tau = gamma1 * t), sampled states and derived
/// observables.
struct Trajectory {
    std::vector<double> times;
    std::vector<QubitState> states;
    std::vector<double> negativity;
    std::vector<double> min_pt_eigenvalue;
    std::vector<double> linearized_entropy;

    /// CSV export: header tau,negativity,min_pt_eig,linentropy,rho_eeee,
    /// rho_egeg,rho_gege,re_rho_eegg,im_rho_eegg; 12 significant digits.
    void write_csv(std::ostream& out) const;
};

/// Adaptive embedded Runge-Kutta 4(5) propagation of d rho/d tau = L(rho)/gamma1,
/// sampled on a uniform grid of `samples` points over [0, tau_max].
Trajectory evolve_rk(const DissipatorSpec& spec, const QubitState& rho0, double tau_max,
                     int samples, double rtol = 1e-9);

/// Propagation through exp(L tau) applied to the vectorized state at each
/// requested time; the independent oracle for evolve_rk.
Trajectory evolve_expm(const DissipatorSpec& spec, const QubitState& rho0,
                       const std::vector<double>& taus);

/// Fast path for the symmetric case: integrates the four coupled elements.
std::vector<BlochState> evolve_bloch(double n, double c, double gamma, const BlochState& b0,
                                     double tau_max, int samples);

/// Spec-level entry; throws UnsupportedRegime unless n = m, gamma1 = gamma2
/// and c1 = -c2.
std::vector<BlochState> evolve_bloch(const DissipatorSpec& spec, const BlochState& b0,
                                     double tau_max, int samples);

/// Embed a Bloch-sector state as a full density matrix (decoupled elements
/// zero).
QubitState bloch_to_state(const BlochState& b);
BlochState state_to_bloch(const QubitState& s);

}  // namespace etx
