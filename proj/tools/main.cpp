#include <string>

#include <CLI11.hpp>

#include "scenario.hpp"

namespace {

using etx::cli::Scenario;
using etx::cli::ScenarioKind;

void add_spec_flags(CLI::App* cmd, Scenario& s, bool* c1_set, bool* c2_set,
                    std::string* preset) {
    cmd->add_option("--n", s.n, "local moment of mode 1 (vacuum = 1)");
    cmd->add_option("--m", s.m, "local moment of mode 2 (vacuum = 1)");
    cmd->add_option("--c", s.c, "correlation strength, c1 = -c2 = c");
    auto* o1 = cmd->add_option("--c1", s.c1, "explicit q1 q2 correlation");
    auto* o2 = cmd->add_option("--c2", s.c2, "explicit p1 p2 correlation");
    o1->each([c1_set](const std::string&) { *c1_set = true; });
    o2->each([c2_set](const std::string&) { *c2_set = true; });
    cmd->add_option("--gamma1", s.gamma1, "effective decay rate of qubit 1");
    cmd->add_option("--gamma2", s.gamma2, "effective decay rate of qubit 2");
    cmd->add_option("--preset", *preset,
                    "dress the channel through a named cavity preset (turchette-kimble)")
        ->check(CLI::IsMember({"turchette-kimble"}));
}

void add_config(CLI::App* cmd) {
    cmd->set_config("--config", "", "key=value configuration file; flags override it");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"etx: entanglement transfer from a two-mode driving field to two remote qubits"};
    app.require_subcommand(1);

    Scenario s;
    bool c1_set = false, c2_set = false;
    std::string preset_name;

    CLI::App* check = app.add_subcommand(
        "check", "report physicality, entanglement criteria and steady-state boundary");
    add_spec_flags(check, s, &c1_set, &c2_set, &preset_name);
    check->add_option("--raw", s.raw_csv, "raw 4x4 moment-matrix CSV to reduce first");
    check->add_option("--bisect-tol", s.bisect_tol, "bisection tolerance for the numeric boundary");
    add_config(check);

    CLI::App* evolve = app.add_subcommand("evolve", "integrate a trajectory and write its CSV");
    add_spec_flags(evolve, s, &c1_set, &c2_set, &preset_name);
    evolve->add_option("--initial", s.initial, "initial state: gg, ee, eg, ge or custom")
        ->check(CLI::IsMember({"gg", "ee", "eg", "ge", "custom"}));
    evolve->add_option("--initial-csv", s.initial_csv,
                       "custom initial state: 4 lines of re,im pairs (8 fields)");
    evolve->add_option("--tau-max", s.tau_max, "final dimensionless time tau = gamma1 t");
    evolve->add_option("--samples", s.samples, "number of uniform samples (includes tau = 0)");
    evolve->add_option("--rtol", s.rtol, "integrator relative tolerance");
    evolve->add_option("--output,-o", s.output, "output CSV path (default trajectory.csv)");
    evolve->add_flag("--verify", s.verify, "re-read the CSV and verify state invariants");
    add_config(evolve);

    CLI::App* fig2a = app.add_subcommand(
        "fig2a", "reproduce the ground-start transfer curves (n = m = 2.4, three c values)");
    CLI::App* fig2b = app.add_subcommand(
        "fig2b", "reproduce the excited-start transfer curves (n = m = 2.4, three c values)");
    CLI::App* fig3 = app.add_subcommand(
        "fig3", "reproduce the mixedness curves for pure and mixed drives");
    for (CLI::App* fig : {fig2a, fig2b, fig3}) {
        fig->add_option("--output,-o", s.output, "output prefix for the three CSV files");
        fig->add_flag("--verify", s.verify, "re-read the CSVs and verify state invariants");
        add_config(fig);
    }

    CLI::App* boundary =
        app.add_subcommand("boundary", "tabulate closed-form vs numeric steady-state boundaries");
    boundary->add_option("--n-min", s.n_min);
    boundary->add_option("--n-max", s.n_max);
    boundary->add_option("--n-points", s.n_points)->check(CLI::PositiveNumber);
    boundary->add_option("--m-min", s.m_min);
    boundary->add_option("--m-max", s.m_max);
    boundary->add_option("--m-points", s.m_points)->check(CLI::PositiveNumber);
    boundary->add_option("--gamma-ratio", s.gamma_ratios,
                         "gamma2/gamma1 ratios to tabulate (repeatable)");
    boundary->add_option("--bisect-tol", s.bisect_tol, "bisection tolerance");
    boundary->add_option("--output,-o", s.output, "output CSV path (default boundary.csv)");
    add_config(boundary);

    CLI::App* sweep = app.add_subcommand("sweep", "sweep one parameter and tabulate diagnostics");
    add_spec_flags(sweep, s, &c1_set, &c2_set, &preset_name);
    sweep->add_option("--param", s.sweep_param, "swept parameter: c, n, m or gamma2")
        ->check(CLI::IsMember({"c", "n", "m", "gamma2"}));
    sweep->add_option("--from", s.sweep_from, "first value");
    sweep->add_option("--to", s.sweep_to, "last value");
    sweep->add_option("--points", s.sweep_points, "number of sweep points");
    sweep->add_option("--tau-max", s.tau_max, "transfer-window horizon");
    sweep->add_option("--samples", s.samples, "trajectory samples per point");
    sweep->add_option("--rtol", s.rtol, "integrator relative tolerance");
    sweep->add_option("--output,-o", s.output, "output CSV path (default sweep.csv)");
    add_config(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    s.c_pair_set = c1_set || c2_set;
    s.use_preset = !preset_name.empty();
    if (check->parsed()) s.kind = ScenarioKind::kCheck;
    if (evolve->parsed()) s.kind = ScenarioKind::kEvolve;
    if (fig2a->parsed()) s.kind = ScenarioKind::kFig2a;
    if (fig2b->parsed()) s.kind = ScenarioKind::kFig2b;
    if (fig3->parsed()) s.kind = ScenarioKind::kFig3;
    if (boundary->parsed()) s.kind = ScenarioKind::kBoundary;
    if (sweep->parsed()) s.kind = ScenarioKind::kSweep;

    return etx::cli::run_scenario(s);
}
