#include "cogmc/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace cogmc {

namespace {

std::string infeasible_message(std::size_t group, double p_min, double p_max)
{
    std::ostringstream os;
    os.precision(12);
    os << "infeasible instance";
    if (group != std::numeric_limits<std::size_t>::max()) os << " (group " << group << ")";
    os << ": minimum power " << p_min << " W exceeds interference cap " << p_max << " W";
    return os.str();
}

// Exponent N0 |K| (2^R - 1) / (lambda_ss P) shared by outage and throughput.
double outage_exponent(double power, double rate, const GroupConfig& group, double noise)
{
    if (!(power > 0.0)) throw DomainError("power must be > 0");
    if (!(rate >= 0.0)) throw DomainError("rate must be >= 0");
    if (!(noise > 0.0)) throw DomainError("noise power must be > 0");
    return noise * group.user_count * pow2_minus_one(rate) / (group.mean_gain_ss * power);
}

}  // namespace

InfeasibleError::InfeasibleError(std::size_t group, double p_min, double p_max)
    : std::runtime_error(infeasible_message(group, p_min, p_max)),
      group_(group),
      p_min_(p_min),
      p_max_(p_max)
{
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double pow2_minus_one(double rate) { return std::expm1(rate * std::numbers::ln2); }

void GroupConfig::validate() const
{
    if (user_count < 1) throw DomainError("user_count must be >= 1");
    if (!(mean_gain_ss > 0.0) || !std::isfinite(mean_gain_ss))
        throw DomainError("mean_gain_ss must be a positive finite number");
    if (!(mean_gain_sp > 0.0) || !std::isfinite(mean_gain_sp))
        throw DomainError("mean_gain_sp must be a positive finite number");
    if (!(interference_threshold > 0.0) || !std::isfinite(interference_threshold))
        throw DomainError("interference_threshold must be a positive finite number");
    if (!(rate_min > 0.0)) throw DomainError("rate_min must be > 0");
    if (!(rate_max >= rate_min) || !std::isfinite(rate_max))
        throw DomainError("rate_max must be finite and >= rate_min");
    if (!(outage_max > 0.0 && outage_max < 1.0)) throw DomainError("outage_max must lie in (0, 1)");
}

SystemConfig::SystemConfig(std::vector<GroupConfig> groups, double noise_power, double circuit_power)
    : groups_(std::move(groups)), noise_power_(noise_power), circuit_power_(circuit_power)
{
    if (groups_.empty()) throw DomainError("at least one group is required");
    if (!(noise_power_ > 0.0) || !std::isfinite(noise_power_))
        throw DomainError("noise_power must be a positive finite number");
    if (!(circuit_power_ >= 0.0) || !std::isfinite(circuit_power_))
        throw DomainError("circuit_power must be a nonnegative finite number");

    p_min_.reserve(groups_.size());
    p_max_.reserve(groups_.size());
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        const auto& grp = groups_[g];
        try {
            grp.validate();
        } catch (const DomainError& e) {
            throw DomainError("group " + std::to_string(g) + ": " + e.what());
        }
        const double hi = max_power(grp);
        double lo = 0.0;
        try {
            lo = min_power(grp, noise_power_);
        } catch (const InfeasibleError& e) {
            throw InfeasibleError(g, e.p_min(), e.p_max());
        }
        p_min_.push_back(lo);
        p_max_.push_back(hi);
    }
}

void Allocation::validate(std::size_t groups) const
{
    if (power.size() != groups || rate.size() != groups)
        throw DomainError("allocation size does not match the number of groups");
    for (std::size_t g = 0; g < groups; ++g) {
        if (!(power[g] > 0.0)) throw DomainError("allocation power must be > 0");
        if (!(rate[g] > 0.0)) throw DomainError("allocation rate must be > 0");
    }
}

double instantaneous_rate(double gain, double power, double noise)
{
    if (!(gain > 0.0) || !(power > 0.0) || !(noise > 0.0))
        throw DomainError("instantaneous_rate requires positive gain, power and noise");
    return std::log1p(gain * power / noise) / std::numbers::ln2;
}

double group_outage(double power, double rate, const GroupConfig& group, double noise)
{
    return -std::expm1(-outage_exponent(power, rate, group, noise));
}

double group_throughput(double power, double rate, const GroupConfig& group, double noise)
{
    return rate * std::exp(-outage_exponent(power, rate, group, noise));
}

GroupMetrics group_metrics(double power, double rate, const GroupConfig& group, double noise)
{
    const double x = outage_exponent(power, rate, group, noise);
    return {-std::expm1(-x), rate * std::exp(-x)};
}

double system_ee(const Allocation& alloc, const SystemConfig& sys)
{
    const auto n = sys.group_count();
    if (alloc.power.size() != n || alloc.rate.size() != n)
        throw DomainError("allocation size does not match the number of groups");
    double throughput = 0.0;
    double consumed = sys.circuit_power();
    for (std::size_t g = 0; g < n; ++g) {
        throughput += group_throughput(alloc.power[g], alloc.rate[g], sys.group(g), sys.noise_power());
        consumed += alloc.power[g];
    }
    return throughput / consumed;
}

double min_power(const GroupConfig& group, double noise)
{
    group.validate();
    if (!(noise > 0.0)) throw DomainError("noise power must be > 0");
    const double p = -noise * group.user_count * pow2_minus_one(group.rate_min) /
                     (group.mean_gain_ss * std::log1p(-group.outage_max));
    const double cap = max_power(group);
    if (p > cap) throw InfeasibleError(std::numeric_limits<std::size_t>::max(), p, cap);
    return p;
}

double max_power(const GroupConfig& group) { return group.interference_threshold / group.mean_gain_sp; }

}  // namespace cogmc
