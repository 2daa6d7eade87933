#pragma once

// Per-group power step: maximize system EE over one group's power with every
// rate and every other power frozen.
//
// With T_g = chi * exp(-omega / P), d(eta)/dP carries the sign of
//
//     F2(P) = -chi P^2 + gamma P + mu - zeta P^2 exp(omega / P)
//
// F2 is strictly concave with a single peak at beta. If F2(beta) <= 0 the
// efficiency decreases in P everywhere; otherwise it rises between the two
// roots alpha1 < beta < alpha2 and falls beyond alpha2, so the constrained
// maximum is either the lower power bound or alpha2 clamped into the box.

#include <cstddef>
#include <optional>

#include "cogmc/model.hpp"

namespace cogmc {

/// Frozen coefficients of one group's power step.
struct PowerSubproblem {
    double omega = 0.0;  // N0 |K| (2^R - 1) / lambda_ss
    double chi = 0.0;    // R
    double gamma = 0.0;  // omega * chi
    double mu = 0.0;     // gamma * (sum of other powers + P_c)
    double zeta = 0.0;   // sum of other groups' throughputs
    double p_min = 0.0;
    double p_max = 0.0;

    void validate() const;
    /// Absolute bracket tolerance on power.
    double power_tolerance() const noexcept { return 1e-10 * p_max; }
    /// Residual tolerance on F2.
    double f2_tolerance() const noexcept { return 1e-12 * mu; }
};

/// Builds the subproblem for group `g` at the current allocation.
PowerSubproblem make_power_subproblem(const SystemConfig& sys, const Allocation& alloc, std::size_t g);

/// Which branch produced the chosen power.
enum class PowerCase {
    DecreasingEverywhere,  // F2(beta) <= 0: efficiency falls with power, take p_min
    InteriorRoot,          // alpha2 inside the box beats p_min
    ClampedToMax,          // alpha2 above the interference cap, p_max beats p_min
    ClampedToMin,          // alpha2 exists but p_min wins (or alpha2 < p_min)
};

const char* to_string(PowerCase c) noexcept;

struct PowerStepResult {
    double power = 0.0;
    PowerCase case_tag = PowerCase::DecreasingEverywhere;
    std::optional<double> beta;
    std::optional<double> alpha1;  // only with PowerStepOptions::compute_alpha1
    std::optional<double> alpha2;
};

struct PowerStepOptions {
    bool compute_alpha1 = false;
};

double f2(double p, const PowerSubproblem& sub);
double f2_prime(double p, const PowerSubproblem& sub);
double f2_second(double p, const PowerSubproblem& sub);

/// Unique root of F2' (the peak of F2). The upper bracket starts at
/// `bracket_hi` and doubles until F2' turns negative.
double find_beta(const PowerSubproblem& sub, double bracket_hi);
inline double find_beta(const PowerSubproblem& sub) { return find_beta(sub, sub.p_max); }

/// Larger root of F2, or nullopt when F2(beta) <= 0.
std::optional<double> find_alpha2(const PowerSubproblem& sub, double beta);

/// Smaller root of F2; exists only when zeta > 0 and F2(beta) > 0.
std::optional<double> find_alpha1(const PowerSubproblem& sub, double beta);

/// Chooses the EE-maximizing power for group `g` from {p_min, clamp(alpha2)}
/// evaluating system_ee with `current` as the frozen context. Ties go to the
/// lower power.
PowerStepResult optimal_power(const PowerSubproblem& sub, const SystemConfig& sys, const Allocation& current,
                              std::size_t g, const PowerStepOptions& options = {});

}  // namespace cogmc
