#pragma once

// Block coordinate ascent on system EE: cycles over the groups, replacing each
// power and then each rate by its exact constrained argmax, until a full cycle
// stops improving EE.

#include <cstddef>
#include <span>
#include <vector>

#include "cogmc/model.hpp"
#include "cogmc/power_solver.hpp"

namespace cogmc {

struct DescentSettings {
    double ee_rel_tol = 1e-8;
    int max_iterations = 200;
    /// Initial power as p_min + fraction * (p_max - p_min). 0 starts at p_min.
    double init_power_fraction = 0.0;

    void validate() const;
};

struct TracePoint {
    int iteration = 0;  // 0 is the initial allocation
    double ee = 0.0;
};

struct SolveReport {
    Allocation allocation;
    double ee = 0.0;
    std::vector<GroupMetrics> per_group;
    std::vector<TracePoint> trace;   // one entry per completed cycle
    std::vector<double> step_ee;     // EE after every coordinate step, starting with the initial point
    std::vector<PowerCase> power_cases;  // branch taken by the last power step of each group
    bool converged = false;
    int iterations_used = 0;
};

/// Joint power and rate allocation. Throws InfeasibleError/NumericalError;
/// non-convergence is reported through SolveReport::converged.
SolveReport solve(const SystemConfig& sys, const DescentSettings& settings = {});

/// Power-only adaptation with every rate frozen at `fixed_rates`, which must lie
/// within each group's rate box.
SolveReport solve_power_only(const SystemConfig& sys, std::span<const double> fixed_rates,
                             const DescentSettings& settings = {});

/// Throws NumericalError unless `alloc` respects every box and the interference
/// cap. Relative slack 1e-12.
void check_feasible(const SystemConfig& sys, const Allocation& alloc);

}  // namespace cogmc
