#include "etx/cqed.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "etx/errors.hpp"

namespace etx {

bool CqedParams::weak_coupling_ok() const {
    return kappa >= 5.0 * std::max(omega_a1, omega_b2);
}

bool CqedParams::bandwidth_ok() const { return bandwidth >= kappa; }

CqedMapping map_with_spontaneous_decay(const CqedParams& params) {
    if (!(params.kappa > 0.0)) throw InvalidParameters("cqed: kappa must be positive");
    if (!(params.omega_a1 >= 0.0) || !(params.omega_b2 >= 0.0) || !(params.gamma_sp >= 0.0))
        throw InvalidParameters("cqed: rates must be nonnegative");

    const MomentMatrix& ch = params.channel;
    const double g1_bare = 2.0 * params.omega_a1 * params.omega_a1 / params.kappa;
    const double g2_bare = 2.0 * params.omega_b2 * params.omega_b2 / params.kappa;
    const bool unequal = std::abs(params.omega_a1 - params.omega_b2) >
                         1e-12 * std::max(params.omega_a1, params.omega_b2);
    const bool nm_extrapolated = std::abs(ch.n() - ch.m()) > 1e-12 * std::max(1.0, ch.n());

    if (params.gamma_sp == 0.0) {
        DissipatorSpec spec{ch.n(), ch.m(), ch.c1(), ch.c2(), g1_bare, g2_bare};
        return {spec, std::numeric_limits<double>::infinity(), nm_extrapolated, unequal};
    }
    if (params.omega_a1 == 0.0 || params.omega_b2 == 0.0)
        throw ZeroCooperativity("cqed: spontaneous decay with a vanishing Rabi frequency");

    auto coop = [&](double omega) {
        return 2.0 * omega * omega / (params.gamma_sp * params.kappa);
    };
    const double c_a = coop(params.omega_a1);
    const double c_b = coop(params.omega_b2);
    // per-arm cooperativity for the rates; mean-Rabi cooperativity for the
    // dressed channel when the arms differ
    const double c_mean = coop(0.5 * (params.omega_a1 + params.omega_b2));

    const double shrink = c_mean / (1.0 + c_mean);
    DissipatorSpec spec{
        (ch.n() * c_mean + 1.0) / (1.0 + c_mean),
        (ch.m() * c_mean + 1.0) / (1.0 + c_mean),
        ch.c1() * shrink,
        ch.c2() * shrink,
        g1_bare * (1.0 + 1.0 / c_a),
        g2_bare * (1.0 + 1.0 / c_b),
    };
    return {spec, c_mean, nm_extrapolated, unequal};
}

bool ground_condition_invariance_check(const CqedParams& params) {
    const CqedMapping mapped = map_with_spontaneous_decay(params);
    const bool bare = (params.channel.n() - 1.0) < params.channel.c1();
    const bool dressed = (mapped.spec.n - 1.0) < mapped.spec.c1;
    return bare == dressed;
}

CqedParams experimental_preset() {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double bandwidth = two_pi * 12.0;  // MHz
    return CqedParams{
        two_pi * 20.0,          // omega_a1
        two_pi * 20.0,          // omega_b2
        6.0 * bandwidth,        // kappa = 2pi x 72 MHz
        two_pi * 3.5,           // gamma_sp
        MomentMatrix(1, 1, 0, 0),
        bandwidth,
    };
}

}  // namespace etx
