#pragma once

// Domain types and closed-form link/outage/efficiency expressions for a
// cognitive base station multicasting to G groups over Rayleigh fading
// channels, each group on its own primary-user channel.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cogmc {

/// Raised when an input violates a documented precondition or type invariant.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a root bracket cannot be established or a solver fails.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when the bounds of the problem cannot be satisfied simultaneously
/// (minimum outage-supporting power above the interference-limited maximum).
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(std::size_t group, double p_min, double p_max);

    std::size_t group() const noexcept { return group_; }
    double p_min() const noexcept { return p_min_; }
    double p_max() const noexcept { return p_max_; }

private:
    std::size_t group_;
    double p_min_;
    double p_max_;
};

/// Linear value of a power ratio given in dB (10^(dB/10)).
double db_to_linear(double db);

/// 2^r - 1, accurate for small r.
double pow2_minus_one(double rate);

struct GroupConfig {
    int user_count = 1;                 // |K_g|
    double mean_gain_ss = 1.0;          // mean CBS->SU power gain
    double mean_gain_sp = 1.0;          // mean CBS->PU-RX interference gain
    double interference_threshold = 1; // Q_m, Watts
    double rate_min = 1.0;              // bps/Hz
    double rate_max = 1.0;              // bps/Hz
    double outage_max = 0.5;            // in (0, 1)

    /// Throws DomainError on a violated invariant.
    void validate() const;
};

/// A validated problem instance. Construction checks every group and rejects
/// instances whose power box is empty.
class SystemConfig {
public:
    SystemConfig(std::vector<GroupConfig> groups, double noise_power, double circuit_power);

    std::span<const GroupConfig> groups() const noexcept { return groups_; }
    const GroupConfig& group(std::size_t g) const { return groups_.at(g); }
    std::size_t group_count() const noexcept { return groups_.size(); }
    double noise_power() const noexcept { return noise_power_; }
    double circuit_power() const noexcept { return circuit_power_; }

    // Cached feasible power interval per group.
    double p_min(std::size_t g) const { return p_min_.at(g); }
    double p_max(std::size_t g) const { return p_max_.at(g); }

private:
    std::vector<GroupConfig> groups_;
    double noise_power_;
    double circuit_power_;
    std::vector<double> p_min_;
    std::vector<double> p_max_;
};

struct Allocation {
    std::vector<double> power;  // Watts
    std::vector<double> rate;   // bps/Hz

    std::size_t size() const noexcept { return power.size(); }
    /// Throws DomainError unless both vectors have `groups` strictly positive entries.
    void validate(std::size_t groups) const;
};

struct GroupMetrics {
    double outage = 0.0;
    double throughput = 0.0;
};

/// log2(1 + gain * power / noise).
double instantaneous_rate(double gain, double power, double noise);

/// Probability that the weakest of the group's users cannot decode at `rate`:
/// 1 - exp(-N0 |K| (2^R - 1) / (lambda_ss P)).
double group_outage(double power, double rate, const GroupConfig& group, double noise);

/// Average throughput R (1 - outage), computed from the exponential form.
double group_throughput(double power, double rate, const GroupConfig& group, double noise);

GroupMetrics group_metrics(double power, double rate, const GroupConfig& group, double noise);

/// Sum of group throughputs over total consumed power (sum P_g + P_c).
double system_ee(const Allocation& alloc, const SystemConfig& sys);

/// Power at which the outage at rate_min equals outage_max.
/// Throws InfeasibleError when it exceeds max_power(group).
double min_power(const GroupConfig& group, double noise);

/// Interference-limited power cap Q / lambda_sp.
double max_power(const GroupConfig& group);

}  // namespace cogmc
