#include "cogmc/descent.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "cogmc/rate_solver.hpp"

namespace cogmc {

namespace {

constexpr double kSlack = 1e-12;

SolveReport run(const SystemConfig& sys, const DescentSettings& settings, std::optional<std::span<const double>> fixed)
{
    settings.validate();
    const auto n = sys.group_count();

    SolveReport rep;
    auto& alloc = rep.allocation;
    alloc.power.resize(n);
    alloc.rate.resize(n);
    for (std::size_t g = 0; g < n; ++g) {
        const double lo = sys.p_min(g);
        alloc.power[g] = lo + settings.init_power_fraction * (sys.p_max(g) - lo);
        alloc.rate[g] = fixed ? (*fixed)[g] : sys.group(g).rate_max;
    }
    rep.power_cases.assign(n, PowerCase::DecreasingEverywhere);

    double ee = system_ee(alloc, sys);
    rep.trace.push_back({0, ee});
    rep.step_ee.push_back(ee);

    for (int it = 1; it <= settings.max_iterations; ++it) {
        const double before = ee;
        for (std::size_t g = 0; g < n; ++g) {
            const auto step = optimal_power(make_power_subproblem(sys, alloc, g), sys, alloc, g);
            alloc.power[g] = step.power;
            rep.power_cases[g] = step.case_tag;
            rep.step_ee.push_back(system_ee(alloc, sys));

            if (!fixed) {
                alloc.rate[g] = optimal_rate(make_rate_subproblem(sys, alloc, g));
                rep.step_ee.push_back(system_ee(alloc, sys));
            }
        }
        ee = system_ee(alloc, sys);
        rep.trace.push_back({it, ee});
        rep.iterations_used = it;
        if (ee - before < settings.ee_rel_tol * before) {
            rep.converged = true;
            break;
        }
    }

    check_feasible(sys, alloc);
    rep.ee = ee;
    rep.per_group.reserve(n);
    for (std::size_t g = 0; g < n; ++g)
        rep.per_group.push_back(group_metrics(alloc.power[g], alloc.rate[g], sys.group(g), sys.noise_power()));
    return rep;
}

}  // namespace

void DescentSettings::validate() const
{
    if (!(ee_rel_tol > 0.0)) throw DomainError("ee_rel_tol must be > 0");
    if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
    if (!(init_power_fraction >= 0.0 && init_power_fraction <= 1.0))
        throw DomainError("init_power_fraction must lie in [0, 1]");
}

SolveReport solve(const SystemConfig& sys, const DescentSettings& settings) { return run(sys, settings, std::nullopt); }

SolveReport solve_power_only(const SystemConfig& sys, std::span<const double> fixed_rates,
                             const DescentSettings& settings)
{
    if (fixed_rates.size() != sys.group_count()) throw DomainError("fixed_rates size does not match the number of groups");
    for (std::size_t g = 0; g < fixed_rates.size(); ++g) {
        const auto& grp = sys.group(g);
        if (!(fixed_rates[g] >= grp.rate_min && fixed_rates[g] <= grp.rate_max))
            throw DomainError("fixed rate of group " + std::to_string(g) + " lies outside [rate_min, rate_max]");
    }
    return run(sys, settings, fixed_rates);
}

void check_feasible(const SystemConfig& sys, const Allocation& alloc)
{
    alloc.validate(sys.group_count());
    for (std::size_t g = 0; g < sys.group_count(); ++g) {
        const auto& grp = sys.group(g);
        const double p = alloc.power[g];
        const double r = alloc.rate[g];
        const std::string where = "group " + std::to_string(g) + ": ";
        if (grp.mean_gain_sp * p > grp.interference_threshold * (1.0 + kSlack))
            throw NumericalError(where + "interference cap violated");
        if (p < sys.p_min(g) * (1.0 - kSlack) || p > sys.p_max(g) * (1.0 + kSlack))
            throw NumericalError(where + "power outside [p_min, p_max]");
        if (r < grp.rate_min * (1.0 - kSlack) || r > grp.rate_max * (1.0 + kSlack))
            throw NumericalError(where + "rate outside [rate_min, rate_max]");
    }
}

}  // namespace cogmc
