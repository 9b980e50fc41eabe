#include <cmath>
#include <sstream>

#include <doctest.h>

#include "etx/dynamics.hpp"
#include "etx/errors.hpp"
#include "etx/steady.hpp"
#include "test_helpers.hpp"

using namespace etx;
using etx::testing::max_entry_diff;

TEST_CASE("steady_state: vacuum fixed point is |gg>") {
    QubitState ss = steady_state(DissipatorSpec::symmetric(1.0, 0.0));
    CHECK(ss.rho()(3, 3).real() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ss.rho().max_abs() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("steady_state: uncorrelated channel gives a thermal product state") {
    QubitState ss = steady_state(DissipatorSpec::symmetric(2.4, 0.0));
    // single-qubit excited population (n-1)/(2n) = 7/24
    CHECK(ss.rho()(0, 0).real() == doctest::Approx(49.0 / 576.0).epsilon(1e-9));
    CHECK(ss.rho()(1, 1).real() == doctest::Approx(119.0 / 576.0).epsilon(1e-9));
    CHECK(ss.rho()(2, 2).real() == doctest::Approx(119.0 / 576.0).epsilon(1e-9));
    CHECK(ss.rho()(3, 3).real() == doctest::Approx(289.0 / 576.0).epsilon(1e-9));
    CHECK(negativity(ss).e_npt == 0.0);
    CHECK(std::abs(ss.rho()(0, 3)) <= 1e-12);
}

TEST_CASE("steady_state: boundary channel has vanishing steady negativity") {
    const double c_boundary = c_ss_closed_form(2.4, 2.4, 1.0, 1.0);
    QubitState ss = steady_state(DissipatorSpec::symmetric(2.4, c_boundary));
    CHECK(negativity(ss).e_npt <= 1e-3);
}

TEST_CASE("c_ss_closed_form: reference values") {
    CHECK(std::abs(c_ss_closed_form(2.4, 2.4, 1.0, 1.0) - 1.804) <= 1e-3);
    CHECK(c_ss_closed_form(2.4, 2.4, 0.37, 0.37) ==
          doctest::Approx(c_ss_closed_form(2.4, 2.4, 1.0, 1.0)).epsilon(1e-13));
    // equal-rate asymmetric moments: exact closed value 5/sqrt(7)
    CHECK(c_ss_closed_form(2.0, 3.0, 1.0, 1.0) == doctest::Approx(5.0 / std::sqrt(7.0)).epsilon(1e-13));
    CHECK_THROWS_AS(c_ss_closed_form(0.9, 2.0, 1, 1), NonPhysicalInput);
    CHECK_THROWS_AS(c_ss_closed_form(2.0, 2.0, -1.0, 1.0), NonPhysicalInput);
}

TEST_CASE("c_ss_closed_form coincides with cqed_c_ss for symmetric moments") {
    for (int k = 0; k < 100; ++k) {
        const double n = 1.0 + 5.0 * k / 99.0;
        CHECK(std::abs(c_ss_closed_form(n, n, 1.0, 1.0) - cqed_c_ss(n)) <= 1e-10);
        CHECK(std::abs(c_ss_closed_form(n, n, 1.7, 1.7) - cqed_c_ss(n)) <= 1e-10);
    }
}

TEST_CASE("cqed_c_ss: values and bright-drive asymptotics") {
    CHECK(std::abs(cqed_c_ss(2.4) - 1.8045) <= 5e-5);
    CHECK(cqed_c_ss(1.0) == doctest::Approx(0.0));
    CHECK(cqed_c_ss(50.0) / std::sqrt(50.0 * 50.0 - 1.0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("c_ss_numeric: bisection matches the closed form when bracketable") {
    CssNumeric sym = c_ss_numeric(2.4, 2.4, 1.0, 1.0);
    REQUIRE(sym.bracketed);
    CHECK(std::abs(sym.value - c_ss_closed_form(2.4, 2.4, 1, 1)) <= 1e-3);

    CssNumeric asym = c_ss_numeric(2.4, 2.6, 1.0, 1.2);
    REQUIRE(asym.bracketed);
    CHECK(std::abs(asym.value - c_ss_closed_form(2.4, 2.6, 1.0, 1.2)) <= 1e-3);

    CssNumeric equal_rates = c_ss_numeric(2.0, 3.0, 1.0, 1.0);
    REQUIRE(equal_rates.bracketed);
    CHECK(std::abs(equal_rates.value - 5.0 / std::sqrt(7.0)) <= 1e-3);
}

TEST_CASE("c_ss_numeric: no sign change when the boundary exceeds the CP range") {
    // closed-form boundary 2.138 lies beyond the CP bound 2.0: the steady
    // state is separable across the whole admissible range
    CssNumeric res = c_ss_numeric(2.0, 3.0, 1.0, 2.0);
    CHECK_FALSE(res.bracketed);
    CHECK(res.value == doctest::Approx(cp_bound_closed(2.0, 3.0)));
    CHECK(c_ss_closed_form(2.0, 3.0, 1.0, 2.0) >= cp_bound_closed(2.0, 3.0) - 1e-3);

    CssNumeric vac = c_ss_numeric(1.0, 1.0, 1.0, 1.0);
    CHECK_FALSE(vac.bracketed);
    CHECK(vac.value == 0.0);
}

TEST_CASE("steady state is independent of the initial state") {
    for (double c : {1.58, std::sqrt(2.4 * 2.4 - 1.0)}) {
        const DissipatorSpec spec = DissipatorSpec::symmetric(2.4, c);
        const QubitState ss = steady_state(spec);
        Trajectory from_gg = evolve_expm(spec, QubitState::ket("gg"), {200.0});
        Trajectory from_ee = evolve_expm(spec, QubitState::ket("ee"), {200.0});
        CHECK(max_entry_diff(from_gg.states[0].rho(), ss.rho()) <= 1e-6);
        CHECK(max_entry_diff(from_ee.states[0].rho(), ss.rho()) <= 1e-6);
    }
}

TEST_CASE("steady entanglement iff c above the closed-form boundary") {
    const double ratios[3] = {1.0, 2.0, 3.0};
    for (int i = 0; i < 5; ++i) {
        const double n = 1.2 + (4.0 - 1.2) * i / 4.0;
        for (int j = 0; j < 5; ++j) {
            const double m = 1.2 + (4.0 - 1.2) * j / 4.0;
            for (double r : ratios) {
                const double closed = c_ss_closed_form(n, m, 1.0, r);
                const double cb = cp_bound_closed(n, m);
                const double delta = 2e-3;
                if (closed + delta < cb) {
                    const DissipatorSpec above{n, m, closed + delta, -(closed + delta), 1.0, r};
                    CHECK(negativity(steady_state(above)).e_npt > 1e-10);
                }
                if (closed - delta > 0.0 && closed - delta < cb) {
                    const DissipatorSpec below{n, m, closed - delta, -(closed - delta), 1.0, r};
                    CHECK(negativity(steady_state(below)).e_npt <= 1e-10);
                }
                if (closed >= cb) {
                    const double probe = cb * (1.0 - 1e-6);
                    const DissipatorSpec inside{n, m, probe, -probe, 1.0, r};
                    CHECK(negativity(steady_state(inside)).e_npt <= 1e-10);
                }
            }
        }
    }
}

TEST_CASE("steady negativity is nondecreasing in c (probed, not asserted)") {
    const double c0 = c_ss_closed_form(2.4, 2.4, 1, 1);
    const double c1 = cp_bound_closed(2.4, 2.4);
    double prev = -1.0;
    for (int k = 0; k <= 8; ++k) {
        const double c = c0 + (c1 - c0) * k / 8.0;
        const double e = negativity(steady_state(DissipatorSpec::symmetric(2.4, c))).e_npt;
        WARN_MESSAGE(e >= prev - 1e-9, "steady negativity dipped at c = ", c);
        prev = e;
    }
}

TEST_CASE("boundary_point and CSV export") {
    BoundaryResult br = boundary_point(2.4, 2.4, 1.0, 1.0, 1e-6);
    CHECK(br.bracketed);
    CHECK(br.agreement <= 1e-3);

    BoundaryResult nsc = boundary_point(2.0, 3.0, 1.0, 2.0, 1e-6);
    CHECK_FALSE(nsc.bracketed);
    CHECK(std::isnan(nsc.c_ss_numeric));

    std::ostringstream out;
    write_boundary_csv(out, {{2.4, 2.4, 1.0, 1.0, br}, {2.0, 3.0, 1.0, 2.0, nsc}});
    const std::string s = out.str();
    CHECK(s.rfind("n,m,gamma1,gamma2,c_ss_closed,c_ss_numeric,abs_diff\n", 0) == 0);
    CHECK(s.find("nan") != std::string::npos);
    int lines = 0;
    for (char ch : s)
        if (ch == '\n') ++lines;
    CHECK(lines == 3);
}
