#include "cogmc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "cogmc/rng.hpp"

namespace cogmc {

namespace {

void check_mc_inputs(double power, double rate, const GroupConfig& group, double noise, const McSettings& mc)
{
    mc.validate();
    group.validate();
    if (!(power > 0.0)) throw DomainError("power must be > 0");
    if (!(rate >= 0.0)) throw DomainError("rate must be >= 0");
    if (!(noise > 0.0)) throw DomainError("noise power must be > 0");
}

// Outage indicator of one trial: the weakest user's rate does not reach `rate`.
inline bool trial_outage(const CounterRng& rng, std::uint64_t trial, int users, double lambda, double snr_scale,
                         double rate)
{
    double weakest = std::numeric_limits<double>::infinity();
    const std::uint64_t base = trial * static_cast<std::uint64_t>(users);
    for (int k = 0; k < users; ++k) {
        const double gain = -lambda * std::log(rng.uniform(base + k));
        const double r = std::log1p(gain * snr_scale) / std::numbers::ln2;
        weakest = std::min(weakest, r);
    }
    return weakest <= rate;
}

McEstimate finish(std::uint64_t outages, double rate, const McSettings& mc)
{
    McEstimate est;
    est.samples = mc.samples;
    est.outages = outages;
    const double n = static_cast<double>(mc.samples);
    est.outage_hat = static_cast<double>(outages) / n;
    est.throughput_hat = rate * static_cast<double>(mc.samples - outages) / n;
    est.stderr_outage = std::sqrt(est.outage_hat * (1.0 - est.outage_hat) / n);
    return est;
}

// Per-group power grid plus the best rate (and its throughput) at each power.
struct GroupGrid {
    std::vector<double> power;
    std::vector<double> best_rate;
    std::vector<double> best_throughput;
};

inline void score_power(const SystemConfig& sys, std::size_t g, std::size_t grid_r, GroupGrid& gg, std::size_t i)
{
    const auto& grp = sys.group(g);
    double best_t = -1.0;
    double best_r = grp.rate_min;
    for (std::size_t j = 0; j < grid_r; ++j) {
        const double r = grid_point(grp.rate_min, grp.rate_max, j, grid_r);
        const double t = group_throughput(gg.power[i], r, grp, sys.noise_power());
        if (t > best_t) {
            best_t = t;
            best_r = r;
        }
    }
    gg.best_rate[i] = best_r;
    gg.best_throughput[i] = best_t;
}

GroupGrid make_group_grid(const SystemConfig& sys, std::size_t g, std::size_t grid_p)
{
    GroupGrid gg;
    gg.power.resize(grid_p);
    gg.best_rate.resize(grid_p);
    gg.best_throughput.resize(grid_p);
    for (std::size_t i = 0; i < grid_p; ++i) gg.power[i] = grid_point(sys.p_min(g), sys.p_max(g), i, grid_p);
    return gg;
}

void check_grid_inputs(const SystemConfig& sys, std::size_t grid_p, std::size_t grid_r)
{
    if (grid_p < 1 || grid_r < 1) throw DomainError("grid sizes must be >= 1");
    if (sys.group_count() > kGridMaxGroups)
        throw TractabilityError("grid search supports at most " + std::to_string(kGridMaxGroups) + " groups, got " +
                                std::to_string(sys.group_count()));
}

inline double pair_ee(const std::vector<GroupGrid>& grids, std::size_t i0, std::size_t i1, double pc)
{
    if (grids.size() == 1) return grids[0].best_throughput[i0] / (grids[0].power[i0] + pc);
    return (grids[0].best_throughput[i0] + grids[1].best_throughput[i1]) / (grids[0].power[i0] + grids[1].power[i1] + pc);
}

GridResult assemble(const std::vector<GroupGrid>& grids, std::size_t i0, std::size_t i1, double ee)
{
    GridResult res;
    res.ee = ee;
    const std::size_t idx[2] = {i0, i1};
    for (std::size_t g = 0; g < grids.size(); ++g) {
        res.allocation.power.push_back(grids[g].power[idx[g]]);
        res.allocation.rate.push_back(grids[g].best_rate[idx[g]]);
    }
    return res;
}

}  // namespace

void McSettings::validate() const
{
    if (samples < 1) throw DomainError("Monte Carlo samples must be >= 1");
}

McEstimate mc_group_outage_serial(double power, double rate, const GroupConfig& group, double noise,
                                  const McSettings& mc)
{
    check_mc_inputs(power, rate, group, noise, mc);
    if (rate == 0.0) return finish(0, rate, mc);
    const CounterRng rng(mc.seed);
    const double scale = power / noise;
    std::uint64_t outages = 0;
    for (std::uint64_t t = 0; t < mc.samples; ++t)
        outages += trial_outage(rng, t, group.user_count, group.mean_gain_ss, scale, rate);
    return finish(outages, rate, mc);
}

McEstimate mc_group_outage(double power, double rate, const GroupConfig& group, double noise, const McSettings& mc)
{
    check_mc_inputs(power, rate, group, noise, mc);
    if (rate == 0.0) return finish(0, rate, mc);
    const CounterRng rng(mc.seed);
    const double scale = power / noise;
    const int users = group.user_count;
    const double lambda = group.mean_gain_ss;
    const std::uint64_t n = mc.samples;
    const auto partitions = static_cast<std::int64_t>((n + kMcPartition - 1) / kMcPartition);
    std::uint64_t outages = 0;

#pragma omp parallel for schedule(static) reduction(+ : outages)
    for (std::int64_t part = 0; part < partitions; ++part) {
        const std::uint64_t first = static_cast<std::uint64_t>(part) * kMcPartition;
        const std::uint64_t last = std::min(n, first + kMcPartition);
        std::uint64_t local = 0;
        for (std::uint64_t t = first; t < last; ++t) local += trial_outage(rng, t, users, lambda, scale, rate);
        outages += local;
    }
    return finish(outages, rate, mc);
}

double grid_point(double lo, double hi, std::size_t i, std::size_t n)
{
    if (n <= 1) return lo;
    if (i + 1 == n) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

GridResult grid_search_serial(const SystemConfig& sys, std::size_t grid_p, std::size_t grid_r)
{
    check_grid_inputs(sys, grid_p, grid_r);
    std::vector<GroupGrid> grids;
    for (std::size_t g = 0; g < sys.group_count(); ++g) {
        grids.push_back(make_group_grid(sys, g, grid_p));
        for (std::size_t i = 0; i < grid_p; ++i) score_power(sys, g, grid_r, grids[g], i);
    }

    const double pc = sys.circuit_power();
    const std::size_t inner = grids.size() == 1 ? 1 : grid_p;
    double best = -1.0;
    std::size_t b0 = 0;
    std::size_t b1 = 0;
    for (std::size_t i0 = 0; i0 < grid_p; ++i0)
        for (std::size_t i1 = 0; i1 < inner; ++i1) {
            const double ee = pair_ee(grids, i0, i1, pc);
            if (ee > best) {
                best = ee;
                b0 = i0;
                b1 = i1;
            }
        }
    return assemble(grids, b0, b1, best);
}

GridResult grid_search(const SystemConfig& sys, std::size_t grid_p, std::size_t grid_r)
{
    check_grid_inputs(sys, grid_p, grid_r);
    std::vector<GroupGrid> grids;
    for (std::size_t g = 0; g < sys.group_count(); ++g) grids.push_back(make_group_grid(sys, g, grid_p));

    const auto np = static_cast<std::int64_t>(grid_p);
    for (std::size_t g = 0; g < grids.size(); ++g) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < np; ++i) score_power(sys, g, grid_r, grids[g], static_cast<std::size_t>(i));
    }

    // Best per outer index, then a serial scan so ties resolve exactly as in
    // the serial reference.
    const double pc = sys.circuit_power();
    const std::size_t inner = grids.size() == 1 ? 1 : grid_p;
    std::vector<double> row_best(grid_p, -1.0);
    std::vector<std::size_t> row_arg(grid_p, 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t i0 = 0; i0 < np; ++i0) {
        const auto r = static_cast<std::size_t>(i0);
        for (std::size_t i1 = 0; i1 < inner; ++i1) {
            const double ee = pair_ee(grids, r, i1, pc);
            if (ee > row_best[r]) {
                row_best[r] = ee;
                row_arg[r] = i1;
            }
        }
    }
    double best = -1.0;
    std::size_t b0 = 0;
    for (std::size_t i0 = 0; i0 < grid_p; ++i0)
        if (row_best[i0] > best) {
            best = row_best[i0];
            b0 = i0;
        }
    return assemble(grids, b0, row_arg[b0], best);
}

}  // namespace cogmc
