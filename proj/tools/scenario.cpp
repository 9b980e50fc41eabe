#include "scenario.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "etx/channel.hpp"
#include "etx/conditions.hpp"
#include "etx/cqed.hpp"
#include "etx/dynamics.hpp"
#include "etx/errors.hpp"
#include "etx/liouvillian.hpp"
#include "etx/qmath.hpp"
#include "etx/steady.hpp"

namespace etx::cli {

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidParameters("cannot open output file: " + path);
    return out;
}

QubitState load_initial(const Scenario& s) {
    if (s.initial == "custom") {
        if (s.initial_csv.empty())
            throw InvalidParameters("custom initial state requires a CSV path");
        std::ifstream in(s.initial_csv);
        if (!in) throw InvalidParameters("cannot read initial state file: " + s.initial_csv);
        ComplexMatrix rho(4);
        std::string line;
        for (int i = 0; i < 4; ++i) {
            if (!std::getline(in, line))
                throw InvalidParameters("initial state CSV: expected 4 lines");
            std::istringstream row(line);
            std::string field;
            for (int j = 0; j < 4; ++j) {
                double re = 0.0, im = 0.0;
                if (!std::getline(row, field, ','))
                    throw InvalidParameters("initial state CSV: expected 8 fields per line");
                try {
                    re = std::stod(field);
                    if (!std::getline(row, field, ','))
                        throw InvalidParameters("initial state CSV: expected 8 fields per line");
                    im = std::stod(field);
                } catch (const InvalidParameters&) {
                    throw;
                } catch (const std::exception&) {
                    throw InvalidParameters("initial state CSV: bad decimal field");
                }
                rho(i, j) = Complex(re, im);
            }
        }
        return QubitState(std::move(rho));
    }
    return QubitState::ket(s.initial);
}

struct ResolvedSpec {
    DissipatorSpec spec;
    std::optional<CqedMapping> mapping;  // present when the preset dressed it
    std::vector<std::string> warnings;
};

// Channel physicality is validated here (MomentMatrix construction); the
// resolved spec is what every scenario actually runs with.
ResolvedSpec resolve_spec(const Scenario& s) {
    ResolvedSpec out;
    const double c1 = s.c_pair_set ? s.c1 : s.c;
    const double c2 = s.c_pair_set ? s.c2 : -s.c;
    MomentMatrix channel(s.n, s.m, c1, c2);
    if (s.use_preset) {
        CqedParams params = experimental_preset();
        params.channel = channel;
        CqedMapping mapped = map_with_spontaneous_decay(params);
        if (!params.weak_coupling_ok())
            out.warnings.push_back("preset kappa/Omega = " +
                                   fmt(params.kappa / std::max(params.omega_a1, params.omega_b2)) +
                                   " is below the weak-coupling heuristic of 5");
        if (!params.bandwidth_ok())
            out.warnings.push_back("preset drive bandwidth is below kappa (advisory)");
        if (mapped.extrapolated_nm)
            out.warnings.push_back("n != m dressing extrapolates the symmetric map per mode");
        out.spec = mapped.spec;
        out.mapping = mapped;
    } else {
        out.spec = DissipatorSpec::from_channel(channel, s.gamma1, s.gamma2);
    }
    return out;
}

void print_warnings(const ResolvedSpec& r) {
    for (const std::string& w : r.warnings) std::cerr << "warning: " << w << "\n";
}

int run_check(const Scenario& s) {
    std::optional<StandardFormReduction> reduction;
    Scenario eff = s;
    if (!s.raw_csv.empty()) {
        std::ifstream in(s.raw_csv);
        if (!in) throw InvalidParameters("cannot read raw moment matrix: " + s.raw_csv);
        RawMomentMatrix raw = RawMomentMatrix::from_csv(in);
        reduction = reduce_to_standard_form(raw);
        eff.n = reduction->standard.n();
        eff.m = reduction->standard.m();
        eff.c_pair_set = true;
        eff.c1 = reduction->standard.c1();
        eff.c2 = reduction->standard.c2();
    }
    ResolvedSpec r = resolve_spec(eff);
    print_warnings(r);
    const DissipatorSpec& spec = r.spec;

    std::ostream& out = std::cout;
    if (reduction) {
        out << "raw moments reduced to standard form"
            << (reduction->identity ? " (already standard)" : "") << "\n";
    }
    out << "channel: n=" << fmt(spec.n) << " m=" << fmt(spec.m) << " c1=" << fmt(spec.c1)
        << " c2=" << fmt(spec.c2) << " gamma1=" << fmt(spec.gamma1)
        << " gamma2=" << fmt(spec.gamma2) << "\n";
    if (r.mapping)
        out << "preset cooperativity: " << fmt(r.mapping->cooperativity) << "\n";

    const MomentMatrix channel(spec.n, spec.m, spec.c1, spec.c2);
    out << "uncertainty principle: " << (check_uncertainty(channel) ? "satisfied" : "violated")
        << "\n";
    out << "gaussian entangled: " << (is_gaussian_entangled(channel) ? "yes" : "no") << "\n";
    out << "cp bound c_max: " << fmt(cp_bound_closed(spec.n, spec.m)) << "\n";

    const bool canonical = std::abs(spec.c1 + spec.c2) < 1e-12;
    if (canonical) {
        const double c = std::abs(spec.c1);
        out << "ground-state transfer condition (n-1)(m-1) < c^2: "
            << (sufficient_condition_ground(spec) ? "satisfied" : "not satisfied") << " ("
            << fmt((spec.n - 1.0) * (spec.m - 1.0)) << " vs " << fmt(c * c) << ")\n";
        if (spec.n >= 1.0 && spec.m >= 1.0) {
            const double closed = c_ss_closed_form(spec.n, spec.m, spec.gamma1, spec.gamma2);
            const CssNumeric numeric =
                c_ss_numeric(spec.n, spec.m, spec.gamma1, spec.gamma2, s.bisect_tol);
            out << "steady-state boundary c_ss: closed " << fmt(closed) << ", numeric "
                << (numeric.bracketed ? fmt(numeric.value) : "none in CP range") << "\n";
            out << "steady-state entangled at c=" << fmt(c) << ": "
                << (negativity(steady_state(spec)).e_npt > 1e-10 ? "yes" : "no") << "\n";
        }
    } else {
        out << "ground-state transfer condition: n/a (requires c1 = -c2)\n";
        out << "steady-state entangled: "
            << (negativity(steady_state(spec)).e_npt > 1e-10 ? "yes" : "no") << "\n";
    }
    const AngleSearchResult angles = exists_entangling_angles(spec, 32);
    out << "entangling initial angles exist: " << (angles.found ? "yes" : "no") << "\n";
    return 0;
}

// Trajectory CSV verification: re-read and check the state invariants that
// the row format exposes.
void verify_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw NumericalFailure("verify: cannot re-read " + path);
    std::string line;
    if (!std::getline(in, line) ||
        line != "tau,negativity,min_pt_eig,linentropy,rho_eeee,rho_egeg,rho_gege,re_rho_eegg,im_"
                "rho_eegg")
        throw NumericalFailure("verify: unexpected header in " + path);
    double prev_tau = -1.0;
    int rows = 0;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string field;
        double v[9];
        for (int k = 0; k < 9; ++k) {
            if (!std::getline(row, field, ',')) throw NumericalFailure("verify: short row");
            v[k] = std::stod(field);
        }
        if (!(v[0] > prev_tau)) throw NumericalFailure("verify: time grid is not ascending");
        prev_tau = v[0];
        if (std::abs(v[1] - std::max(0.0, -2.0 * v[2])) > 1e-9)
            throw NumericalFailure("verify: negativity inconsistent with the PT eigenvalue");
        if (v[3] < -1e-12 || v[3] > 1.0 + 1e-12)
            throw NumericalFailure("verify: linearized entropy out of range");
        double pop_sum = 0.0;
        for (int k = 4; k < 7; ++k) {
            if (v[k] < -1e-9 || v[k] > 1.0 + 1e-9)
                throw NumericalFailure("verify: population out of range");
            pop_sum += v[k];
        }
        if (pop_sum > 1.0 + 1e-9) throw NumericalFailure("verify: populations exceed unit trace");
        const double gggg = 1.0 - pop_sum;
        const double coh2 = v[7] * v[7] + v[8] * v[8];
        if (coh2 > v[4] * gggg + 1e-9)
            throw NumericalFailure("verify: ee-gg coherence violates positivity");
        ++rows;
    }
    if (rows == 0) throw NumericalFailure("verify: no data rows in " + path);
}

int run_evolve(const Scenario& s) {
    ResolvedSpec r = resolve_spec(s);
    print_warnings(r);
    const QubitState rho0 = load_initial(s);
    Trajectory tr = evolve_rk(r.spec, rho0, s.tau_max, s.samples, s.rtol);
    const std::string path = s.output.empty() ? "trajectory.csv" : s.output;
    {
        std::ofstream out = open_output(path);
        tr.write_csv(out);
    }
    if (s.verify) verify_trajectory_csv(path);
    return 0;
}

struct FigCurve {
    std::string label;
    DissipatorSpec spec;
    std::string initial;
};

int run_fig(const Scenario& s) {
    std::vector<FigCurve> curves;
    std::string stem;
    if (s.kind == ScenarioKind::kFig2a || s.kind == ScenarioKind::kFig2b) {
        stem = s.kind == ScenarioKind::kFig2a ? "fig2a" : "fig2b";
        const std::string initial = s.kind == ScenarioKind::kFig2a ? "gg" : "ee";
        const double boundary = c_ss_closed_form(2.4, 2.4, 1.0, 1.0);
        const double pure = std::sqrt(2.4 * 2.4 - 1.0);
        curves = {
            {"c1.58", DissipatorSpec::symmetric(2.4, 1.58), initial},
            {"c1.804", DissipatorSpec::symmetric(2.4, boundary), initial},
            {"c2.18", DissipatorSpec::symmetric(2.4, pure), initial},
        };
    } else {
        stem = "fig3";
        for (const auto& [p, k] : {std::pair{1.0, 2.5}, {1.4, 2.5}, {1.4, 3.5}}) {
            MomentMatrix ch = from_purity_correlation(p, k);
            char label[32];
            std::snprintf(label, sizeof label, "p%.1f_k%.1f", p, k);
            curves.push_back({label, DissipatorSpec::from_channel(ch, 1.0, 1.0), "gg"});
        }
    }
    constexpr double kTauMax = 30.0;
    constexpr int kSamples = 601;
    for (const FigCurve& curve : curves) {
        Trajectory tr = evolve_rk(curve.spec, QubitState::ket(curve.initial), kTauMax, kSamples);
        const std::string path = s.output + stem + "_" + curve.label + ".csv";
        std::ofstream out = open_output(path);
        tr.write_csv(out);
        out.close();
        if (s.verify) verify_trajectory_csv(path);
        std::cout << path << "\n";
    }
    return 0;
}

template <typename Fn>
void parallel_for(int jobs, const Fn& fn) {
    const int workers = worker_count(jobs);
    if (workers <= 1) {
        for (int i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) fn(i);
        });
    for (std::thread& t : pool) t.join();
}

int run_boundary(const Scenario& s) {
    if (s.n_points < 1 || s.m_points < 1 || s.gamma_ratios.empty())
        throw InvalidParameters("boundary: empty grid");
    std::vector<BoundaryRow> rows;
    for (int i = 0; i < s.n_points; ++i) {
        const double n = s.n_points == 1
                             ? s.n_min
                             : s.n_min + (s.n_max - s.n_min) * i / (s.n_points - 1);
        for (int j = 0; j < s.m_points; ++j) {
            const double m = s.m_points == 1
                                 ? s.m_min
                                 : s.m_min + (s.m_max - s.m_min) * j / (s.m_points - 1);
            for (double ratio : s.gamma_ratios)
                rows.push_back({n, m, 1.0, ratio, BoundaryResult{}});
        }
    }
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    parallel_for(static_cast<int>(rows.size()), [&](int i) {
        if (failed.load()) return;
        try {
            BoundaryRow& r = rows[i];
            r.result = boundary_point(r.n, r.m, r.gamma1, r.gamma2, s.bisect_tol);
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);
    const std::string path = s.output.empty() ? "boundary.csv" : s.output;
    std::ofstream out = open_output(path);
    write_boundary_csv(out, rows);
    return 0;
}

struct SweepRow {
    double value = 0.0;
    bool physical = false;
    bool cp_ok = false;
    bool gaussian_entangled = false;
    bool ground_condition = false;
    double c_ss_closed = std::nan("");
    double steady_negativity = std::nan("");
    double peak_negativity = std::nan("");
};

int run_sweep(const Scenario& s) {
    if (s.sweep_points < 2) throw InvalidParameters("sweep: need at least two points");
    const bool valid_param = s.sweep_param == "c" || s.sweep_param == "n" ||
                             s.sweep_param == "m" || s.sweep_param == "gamma2";
    if (!valid_param) throw InvalidParameters("sweep: parameter must be one of c, n, m, gamma2");

    std::vector<SweepRow> rows(s.sweep_points);
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    parallel_for(s.sweep_points, [&](int i) {
        if (failed.load()) return;
        try {
            SweepRow& row = rows[i];
            row.value = s.sweep_from + (s.sweep_to - s.sweep_from) * i / (s.sweep_points - 1);
            Scenario point = s;
            if (s.sweep_param == "c") {
                point.c = row.value;
            } else if (s.sweep_param == "n") {
                point.n = row.value;
            } else if (s.sweep_param == "m") {
                point.m = row.value;
            } else {
                point.gamma2 = row.value;
            }
            point.c_pair_set = false;
            ResolvedSpec r;
            try {
                r = resolve_spec(point);
            } catch (const UnphysicalChannel&) {
                return;  // row stays flagged unphysical
            }
            row.physical = true;
            const DissipatorSpec& spec = r.spec;
            row.cp_ok = is_completely_positive(spec);
            row.gaussian_entangled =
                is_gaussian_entangled(MomentMatrix(spec.n, spec.m, spec.c1, spec.c2));
            row.ground_condition = sufficient_condition_ground(spec);
            if (spec.n >= 1.0 && spec.m >= 1.0)
                row.c_ss_closed = c_ss_closed_form(spec.n, spec.m, spec.gamma1, spec.gamma2);
            if (row.cp_ok) {
                row.steady_negativity = negativity(steady_state(spec)).e_npt;
                Trajectory tr = evolve_rk(spec, QubitState::ket("gg"), s.tau_max, s.samples, s.rtol);
                double peak = 0.0;
                for (size_t k = 1; k < tr.negativity.size(); ++k)
                    peak = std::max(peak, tr.negativity[k]);
                row.peak_negativity = peak;
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);

    const std::string path = s.output.empty() ? "sweep.csv" : s.output;
    std::ofstream out = open_output(path);
    out << "value,physical,cp_ok,gaussian_entangled,ground_condition,c_ss_closed,steady_"
           "negativity,peak_negativity\n";
    for (const SweepRow& r : rows) {
        out << fmt(r.value) << ',' << (r.physical ? 1 : 0) << ',' << (r.cp_ok ? 1 : 0) << ','
            << (r.gaussian_entangled ? 1 : 0) << ',' << (r.ground_condition ? 1 : 0) << ','
            << fmt(r.c_ss_closed) << ',' << fmt(r.steady_negativity) << ','
            << fmt(r.peak_negativity) << '\n';
    }
    return 0;
}

}  // namespace

int worker_count(int jobs) {
    int cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap <= 0) cap = 1;
    if (const char* env = std::getenv("ETX_THREADS")) {
        try {
            cap = std::min(cap, std::max(1, std::stoi(env)));
        } catch (const std::exception&) {
            // ignore malformed values
        }
    }
    return std::max(1, std::min(cap, jobs));
}

int run_scenario(const Scenario& s) {
    try {
        switch (s.kind) {
            case ScenarioKind::kCheck:
                return run_check(s);
            case ScenarioKind::kEvolve:
                return run_evolve(s);
            case ScenarioKind::kFig2a:
            case ScenarioKind::kFig2b:
            case ScenarioKind::kFig3:
                return run_fig(s);
            case ScenarioKind::kBoundary:
                return run_boundary(s);
            case ScenarioKind::kSweep:
                return run_sweep(s);
        }
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace etx::cli
