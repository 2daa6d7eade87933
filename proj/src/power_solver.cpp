#include "cogmc/power_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cogmc/bisection.hpp"

namespace cogmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Largest argument for which exp() is finite.
const double kMaxExp = std::log(std::numeric_limits<double>::max());

// sign(d) * zeta * p^k * exp(omega/p) * |d|, evaluated in log space. Returns
// +-inf when the magnitude overflows.
double scaled_exp_term(double zeta, double p, int k, double omega, double d)
{
    if (zeta == 0.0 || d == 0.0) return 0.0;
    const double log_mag = std::log(zeta) + k * std::log(p) + omega / p + std::log(std::abs(d));
    if (log_mag > kMaxExp) return d > 0.0 ? kInf : -kInf;
    return std::copysign(std::exp(log_mag), d);
}

double eta_with_power(const SystemConfig& sys, Allocation& trial, std::size_t g, double p)
{
    trial.power[g] = p;
    return system_ee(trial, sys);
}

}  // namespace

void PowerSubproblem::validate() const
{
    if (!(omega > 0.0 && chi > 0.0 && gamma > 0.0 && mu > 0.0))
        throw DomainError("power subproblem requires omega, chi, gamma, mu > 0");
    if (!(zeta >= 0.0)) throw DomainError("power subproblem requires zeta >= 0");
    if (!(p_min > 0.0) || !(p_min <= p_max)) throw DomainError("power subproblem requires 0 < p_min <= p_max");
}

PowerSubproblem make_power_subproblem(const SystemConfig& sys, const Allocation& alloc, std::size_t g)
{
    const auto& grp = sys.group(g);
    PowerSubproblem sub;
    sub.omega = sys.noise_power() * grp.user_count * pow2_minus_one(alloc.rate.at(g)) / grp.mean_gain_ss;
    sub.chi = alloc.rate[g];
    sub.gamma = sub.omega * sub.chi;
    double others = sys.circuit_power();
    double zeta = 0.0;
    for (std::size_t i = 0; i < sys.group_count(); ++i) {
        if (i == g) continue;
        others += alloc.power.at(i);
        zeta += group_throughput(alloc.power[i], alloc.rate.at(i), sys.group(i), sys.noise_power());
    }
    sub.mu = sub.gamma * others;
    sub.zeta = zeta;
    sub.p_min = sys.p_min(g);
    sub.p_max = sys.p_max(g);
    sub.validate();
    return sub;
}

const char* to_string(PowerCase c) noexcept
{
    switch (c) {
    case PowerCase::DecreasingEverywhere: return "decreasing_everywhere";
    case PowerCase::InteriorRoot: return "interior_root";
    case PowerCase::ClampedToMax: return "clamped_to_max";
    case PowerCase::ClampedToMin: return "clamped_to_min";
    }
    return "unknown";
}

double f2(double p, const PowerSubproblem& sub)
{
    if (!(p > 0.0)) throw DomainError("f2 requires p > 0");
    const double tail = scaled_exp_term(sub.zeta, p, 2, sub.omega, 1.0);
    if (std::isinf(tail)) return -kInf;
    return -sub.chi * p * p + sub.gamma * p + sub.mu - tail;
}

double f2_prime(double p, const PowerSubproblem& sub)
{
    if (!(p > 0.0)) throw DomainError("f2_prime requires p > 0");
    const double tail = scaled_exp_term(sub.zeta, p, 0, sub.omega, sub.omega - 2.0 * p);
    if (std::isinf(tail)) return tail;
    return -2.0 * sub.chi * p + sub.gamma + tail;
}

double f2_second(double p, const PowerSubproblem& sub)
{
    if (!(p > 0.0)) throw DomainError("f2_second requires p > 0");
    const double q = (p * p + (p - sub.omega) * (p - sub.omega)) / (p * p);
    const double tail = scaled_exp_term(sub.zeta, p, 0, sub.omega, q);
    if (std::isinf(tail)) return -kInf;
    return -2.0 * sub.chi - tail;
}

double find_beta(const PowerSubproblem& sub, double bracket_hi)
{
    auto fp = [&](double p) { return f2_prime(p, sub); };
    // F2' -> +inf as p -> 0 when zeta > 0 and -> gamma otherwise, so a small
    // enough lower end is always positive.
    double lo = 1e-12 * sub.p_max;
    for (int i = 0; fp(lo) <= 0.0; ++i) {
        if (i == kMaxDoublings) throw NumericalError("no positive lower bracket for beta");
        lo *= 0.5;
    }
    const double hi = expand_upper(fp, std::max(bracket_hi, 2.0 * lo), "beta");
    const double f_tol = 1e-12 * sub.gamma;
    return bisect(fp, lo, hi, sub.power_tolerance(), f_tol).root;
}

std::optional<double> find_alpha2(const PowerSubproblem& sub, double beta)
{
    if (!(f2(beta, sub) > 0.0)) return std::nullopt;
    auto fn = [&](double p) { return f2(p, sub); };
    const double hi = expand_upper(fn, std::max(sub.p_max, 2.0 * beta), "alpha2");
    return bisect(fn, beta, hi, sub.power_tolerance(), sub.f2_tolerance()).root;
}

std::optional<double> find_alpha1(const PowerSubproblem& sub, double beta)
{
    if (sub.zeta == 0.0 || !(f2(beta, sub) > 0.0)) return std::nullopt;
    // F2 rises on (0, beta); bisect on -F2 so the positive side is on the left.
    auto neg = [&](double p) { return -f2(p, sub); };
    double lo = 0.5 * beta;
    for (int i = 0; neg(lo) <= 0.0; ++i) {
        if (i == kMaxDoublings) throw NumericalError("no negative lower bracket for alpha1");
        lo *= 0.5;
    }
    return bisect(neg, lo, beta, sub.power_tolerance(), sub.f2_tolerance()).root;
}

PowerStepResult optimal_power(const PowerSubproblem& sub, const SystemConfig& sys, const Allocation& current,
                              std::size_t g, const PowerStepOptions& options)
{
    sub.validate();
    PowerStepResult out;
    const double beta = find_beta(sub);
    out.beta = beta;
    out.alpha2 = find_alpha2(sub, beta);
    if (options.compute_alpha1) out.alpha1 = find_alpha1(sub, beta);

    if (!out.alpha2) {
        out.power = sub.p_min;
        out.case_tag = PowerCase::DecreasingEverywhere;
        return out;
    }

    const double a2 = *out.alpha2;
    const double candidate = std::clamp(a2, sub.p_min, sub.p_max);
    Allocation trial = current;
    const double eta_min = eta_with_power(sys, trial, g, sub.p_min);
    const double eta_cand = eta_with_power(sys, trial, g, candidate);
    if (eta_cand > eta_min) {
        out.power = candidate;
        out.case_tag = a2 > sub.p_max ? PowerCase::ClampedToMax : PowerCase::InteriorRoot;
    } else {
        out.power = sub.p_min;
        out.case_tag = PowerCase::ClampedToMin;
    }
    return out;
}

}  // namespace cogmc
