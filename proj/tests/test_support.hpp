#pragma once

// Shared fixtures for the unit and acceptance suites: the reference parameter
// set, random instance generators, and one-dimensional views of EE used by
// the finite-difference and grid oracles.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cogmc/model.hpp"

namespace cogmc::testing {

inline constexpr double kNoiseDb = -90.0;
inline constexpr double kCircuitDb = 1.0;
inline constexpr double kThresholdDb = -12.3;

inline GroupConfig reference_group(int users = 10)
{
    GroupConfig g;
    g.user_count = users;
    g.mean_gain_ss = 1.0;
    g.mean_gain_sp = 1.0;
    g.interference_threshold = db_to_linear(kThresholdDb);
    g.rate_min = 15.0;
    g.rate_max = 18.5;
    g.outage_max = 0.3;
    return g;
}

inline SystemConfig reference_system(int groups = 2, int users = 10)
{
    return SystemConfig(std::vector<GroupConfig>(groups, reference_group(users)), db_to_linear(kNoiseDb),
                        db_to_linear(kCircuitDb));
}

/// A random group around the reference parameters; may be infeasible.
inline GroupConfig random_group(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GroupConfig g;
    g.user_count = 1 + static_cast<int>(u(rng) * 100);
    g.mean_gain_ss = 0.5 + 1.5 * u(rng);
    g.mean_gain_sp = 0.5 + 1.5 * u(rng);
    g.interference_threshold = db_to_linear(-16.0 + 8.0 * u(rng));
    g.rate_min = 8.0 + 8.0 * u(rng);
    g.rate_max = g.rate_min + 0.5 + 5.0 * u(rng);
    g.outage_max = 0.05 + 0.5 * u(rng);
    return g;
}

/// Draws until the instance is feasible.
inline SystemConfig random_system(std::mt19937_64& rng, std::size_t groups)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        std::vector<GroupConfig> gs;
        for (std::size_t i = 0; i < groups; ++i) gs.push_back(random_group(rng));
        const double pc = db_to_linear(-5.0 + 8.0 * u(rng));
        try {
            return SystemConfig(gs, db_to_linear(kNoiseDb), pc);
        } catch (const InfeasibleError&) {
        }
    }
}

/// A random allocation inside the boxes of `sys`.
inline Allocation random_allocation(std::mt19937_64& rng, const SystemConfig& sys)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Allocation a;
    for (std::size_t g = 0; g < sys.group_count(); ++g) {
        a.power.push_back(sys.p_min(g) + u(rng) * (sys.p_max(g) - sys.p_min(g)));
        const auto& grp = sys.group(g);
        a.rate.push_back(grp.rate_min + u(rng) * (grp.rate_max - grp.rate_min));
    }
    return a;
}

inline double ee_at_power(const SystemConfig& sys, Allocation a, std::size_t g, double p)
{
    a.power[g] = p;
    return system_ee(a, sys);
}

inline double ee_at_rate(const SystemConfig& sys, Allocation a, std::size_t g, double r)
{
    a.rate[g] = r;
    return system_ee(a, sys);
}

inline int sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace cogmc::testing
