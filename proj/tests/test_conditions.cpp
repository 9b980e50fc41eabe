#include <cmath>

#include <doctest.h>

#include "etx/channel.hpp"
#include "etx/conditions.hpp"
#include "etx/errors.hpp"

using namespace etx;

namespace {
const DissipatorSpec kFig = DissipatorSpec::symmetric(2.4, 1.58);
}

TEST_CASE("sufficient_condition_general: ground angles reduce to the closed form") {
    ConditionEval ev = sufficient_condition_general(kFig, ground_state_angles());
    CHECK(ev.holds);
    // quadratic forms carry a gamma^2/4 factor relative to (n-1)(m-1) and c^2
    CHECK(4.0 * ev.lhs == doctest::Approx(1.96).epsilon(1e-12));
    CHECK(4.0 * ev.rhs == doctest::Approx(1.58 * 1.58).epsilon(1e-12));
}

TEST_CASE("sufficient_condition_general: excited angles never hold for CP specs") {
    const double cb = cp_bound_closed(2.4, 2.4);
    for (double c = 0.0; c <= cb; c += cb / 16.0) {
        ConditionEval ev = sufficient_condition_general(DissipatorSpec::symmetric(2.4, c),
                                                        InitialAngles{0.0, 0.0});
        CHECK_FALSE(ev.holds);
        // reduces to (n+1)(m+1) < c^2
        CHECK(4.0 * ev.lhs == doctest::Approx(3.4 * 3.4).epsilon(1e-12));
    }
}

TEST_CASE("sufficient_condition_general: vacuum has zero coupling") {
    ConditionEval ev = sufficient_condition_general(DissipatorSpec::symmetric(1.0, 0.0),
                                                    InitialAngles{0.7, 1.9});
    CHECK_FALSE(ev.holds);
    CHECK(ev.rhs == doctest::Approx(0.0));
}

TEST_CASE("sufficient_condition_ground: examples and correlation guard") {
    CHECK(sufficient_condition_ground(kFig));
    CHECK_FALSE(sufficient_condition_ground(DissipatorSpec::symmetric(2.4, 1.40)));
    CHECK(sufficient_condition_ground(DissipatorSpec{1.0, 3.0, 0.1, -0.1, 1, 1}));
    CHECK_THROWS_AS(sufficient_condition_ground(DissipatorSpec{2, 2, 1.0, -0.8, 1, 1}),
                    UnsupportedCorrelation);
}

TEST_CASE("ground angles and closed form agree on a grid") {
    for (int i = 0; i < 40; ++i) {
        const double n = 1.0 + 2.5 * i / 39.0;
        for (int j = 0; j < 40; ++j) {
            const double m = 1.0 + 2.5 * j / 39.0;
            const double cb = cp_bound_closed(n, m);
            if (cb <= 0.0) continue;
            for (int k = 0; k < 40; ++k) {
                const double c = cb * k / 39.0;
                const DissipatorSpec spec{n, m, c, -c, 1.2, 0.8};
                CHECK(sufficient_condition_general(spec, ground_state_angles()).holds ==
                      sufficient_condition_ground(spec));
            }
        }
    }
}

TEST_CASE("exists_entangling_angles: found iff the drive is entangled") {
    CHECK(exists_entangling_angles(kFig, 32).found);
    CHECK_FALSE(exists_entangling_angles(DissipatorSpec::symmetric(2.4, 1.3), 32).found);
    CHECK_FALSE(exists_entangling_angles(DissipatorSpec::symmetric(1.0, 0.0), 32).found);
    CHECK_THROWS_AS(exists_entangling_angles(kFig, 4), InvalidParameters);

    // the refined optimum at the symmetric point should sit at the ground angles
    AngleSearchResult best = exists_entangling_angles(kFig, 32);
    CHECK(best.margin == doctest::Approx((1.58 * 1.58 - 1.96) / 4.0).epsilon(1e-6));
}

TEST_CASE("exists_entangling_angles equivalence with the Gaussian criterion, |c1|=|c2|") {
    for (int i = 0; i < 12; ++i) {
        const double n = 1.05 + 2.0 * i / 11.0;
        const double cb = cp_bound_closed(n, n);
        for (int k = 0; k < 12; ++k) {
            const double c = cb * (k + 0.5) / 12.0;
            if (std::abs(c * c - (n - 1) * (n - 1)) < 1e-6) continue;
            const MomentMatrix channel(n, n, c, -c);
            const DissipatorSpec spec = DissipatorSpec::from_channel(channel, 1.0, 1.3);
            CHECK(exists_entangling_angles(spec, 24).found == is_gaussian_entangled(channel));
        }
    }
}

TEST_CASE("unbalanced correlations can strand drive entanglement") {
    // channel is PPT-entangled yet no initial angles satisfy the criterion
    const MomentMatrix channel(1.2, 1.4, 0.5, -0.05);
    REQUIRE(check_uncertainty(channel));
    REQUIRE(is_gaussian_entangled(channel));
    AngleSearchResult res = exists_entangling_angles(DissipatorSpec::from_channel(channel, 1, 1), 48);
    CHECK_FALSE(res.found);
    CHECK(res.margin < 0.0);
    CHECK(res.margin == doctest::Approx(-1.09375e-3).epsilon(1e-3));
}

TEST_CASE("initial_slope_probe: ground start, excited start, stationary point") {
    const double gg_slope = initial_slope_probe(kFig, QubitState::ket("gg"));
    CHECK(gg_slope < 0.0);
    CHECK(gg_slope == doctest::Approx(-0.09).epsilon(2e-3));  // -(c - (n-1))/2

    CHECK(initial_slope_probe(kFig, QubitState::ket("ee")) >= -1e-9);

    const double vac = initial_slope_probe(DissipatorSpec::symmetric(1.0, 0.0), QubitState::ket("gg"));
    CHECK(std::abs(vac) <= 1e-8);
}

TEST_CASE("criterion at ground angles implies a negative probe slope from |gg>") {
    for (double c : {1.50, 1.58, 1.9, 2.1}) {
        const DissipatorSpec spec = DissipatorSpec::symmetric(2.4, c);
        if (!sufficient_condition_general(spec, ground_state_angles()).holds) continue;
        CHECK(initial_slope_probe(spec, QubitState::ket("gg")) < 0.0);
    }
}
