#pragma once

// Independent checks for the closed forms and the optimizer: a Monte Carlo
// fading simulation of group outage, and an exhaustive grid search of EE.
// Each engine has an OpenMP kernel and a serial reference; both return
// identical results for the same inputs.

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "cogmc/model.hpp"

namespace cogmc {

struct McSettings {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;

    void validate() const;
};

struct McEstimate {
    double outage_hat = 0.0;
    double throughput_hat = 0.0;
    double stderr_outage = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t outages = 0;
};

/// Trials per work partition. Trial t of a run uses stream draws
/// [t * |K|, (t + 1) * |K|), so partitioning never changes the estimate.
inline constexpr std::uint64_t kMcPartition = 1u << 14;

/// Draws |K| exponential gains per trial (inverse CDF, -lambda ln u), takes the
/// weakest user's instantaneous rate and counts trials where it is <= rate.
McEstimate mc_group_outage(double power, double rate, const GroupConfig& group, double noise,
                           const McSettings& mc);
McEstimate mc_group_outage_serial(double power, double rate, const GroupConfig& group, double noise,
                                  const McSettings& mc);

class TractabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kGridMaxGroups = 2;

struct GridResult {
    Allocation allocation;
    double ee = 0.0;
};

/// Best point of eta over the product of per-group grids of `grid_p` powers
/// (uniform over [p_min, p_max]) and `grid_r` rates (uniform over
/// [rate_min, rate_max]), both endpoints included. Since a group's rate only
/// enters the numerator, each power tuple is scored with every group's best
/// rate at that power, which equals full enumeration of the joint grid.
/// Ties resolve to the lowest grid indices. Throws TractabilityError for more
/// than kGridMaxGroups groups.
GridResult grid_search(const SystemConfig& sys, std::size_t grid_p, std::size_t grid_r);
GridResult grid_search_serial(const SystemConfig& sys, std::size_t grid_p, std::size_t grid_r);

/// i-th of n uniformly spaced points on [lo, hi]; n == 1 yields lo.
double grid_point(double lo, double hi, std::size_t i, std::size_t n);

}  // namespace cogmc
