#pragma once

#include "etx/channel.hpp"
#include "etx/liouvillian.hpp"

namespace etx {

/// Physical cavity-QED parameters behind the effective generator. Angular
/// frequencies; only ratios enter the dressed parameters, so the unit
/// cancels throughout.
struct CqedParams {
    double omega_a1;    ///< atom-cavity Rabi frequency, arm 1
    double omega_b2;    ///< atom-cavity Rabi frequency, arm 2
    double kappa;       ///< cavity-drive coupling rate
    double gamma_sp;    ///< atomic spontaneous emission rate
    MomentMatrix channel;
    double bandwidth;   ///< external drive bandwidth

    /// kappa >= 5 max(omega): heuristic for the adiabatic regime.
    bool weak_coupling_ok() const;
    /// bandwidth >= kappa; advisory only (the reference setup has ~kappa/6).
    bool bandwidth_ok() const;
};

struct CqedMapping {
    DissipatorSpec spec;
    double cooperativity;     ///< mean-Rabi cooperativity; +inf when gamma_sp = 0
    bool extrapolated_nm;     ///< n != m dressed with the same per-mode map
    bool unequal_couplings;   ///< per-arm cooperativities differ
};

/// Dress the channel and rates with spontaneous decay:
/// gamma'_j = (2 Omega_j^2/kappa)(1 + 1/C_j), n' = (n C + 1)/(1 + C),
/// c' = c C/(1 + C), with C = 2 Omega^2/(Gamma kappa). Exact passthrough at
/// gamma_sp = 0.
CqedMapping map_with_spontaneous_decay(const CqedParams& params);

/// Numerical check that (n'-1) < c' and (n-1) < c agree (both sides scale
/// by C/(1+C)).
bool ground_condition_invariance_check(const CqedParams& params);

/// Reference experimental numbers: bandwidth 2pi x 12 MHz, kappa = 6x that,
/// Omega/2pi = 20 MHz on both arms, Gamma/2pi = 3.5 MHz; vacuum channel
/// placeholder for the caller to replace.
CqedParams experimental_preset();

}  // namespace etx
