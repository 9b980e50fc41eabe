#pragma once

#include <string>
#include <vector>

namespace etx::cli {

enum class ScenarioKind { kCheck, kEvolve, kFig2a, kFig2b, kFig3, kBoundary, kSweep };

/// Resolved configuration of one CLI run. Figure scenarios ignore the spec
/// fields and use their hard-coded parameter sets.
struct Scenario {
    ScenarioKind kind = ScenarioKind::kCheck;

    // channel and coupling parameters
    double n = 1.0;
    double m = 1.0;
    double c = 0.0;  ///< canonical correlations c1 = -c2 = c
    bool c_pair_set = false;
    double c1 = 0.0;  ///< explicit correlations when c_pair_set
    double c2 = 0.0;
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    bool use_preset = false;  ///< dress the channel through the CQED preset
    std::string raw_csv;      ///< optional raw moment matrix (check only)

    // evolution
    std::string initial = "gg";  ///< gg | ee | eg | ge | custom
    std::string initial_csv;     ///< custom initial state file
    double tau_max = 10.0;
    int samples = 401;
    double rtol = 1e-9;

    // output
    std::string output;  ///< file path; prefix for multi-file scenarios
    bool verify = false;

    // boundary grid
    double n_min = 1.2, n_max = 4.0;
    int n_points = 5;
    double m_min = 1.2, m_max = 4.0;
    int m_points = 5;
    std::vector<double> gamma_ratios = {1.0, 2.0, 3.0};
    double bisect_tol = 1e-6;

    // sweep
    std::string sweep_param = "c";  ///< c | n | m | gamma2
    double sweep_from = 0.0;
    double sweep_to = 1.0;
    int sweep_points = 21;
};

/// Execute a scenario. Returns the process exit code: 0 on success, 1 for
/// invalid or unphysical parameters, 2 for numerical failures.
int run_scenario(const Scenario& s);

/// Worker cap for sweep/boundary grids: ETX_THREADS when set, otherwise the
/// hardware concurrency.
int worker_count(int jobs);

}  // namespace etx::cli
