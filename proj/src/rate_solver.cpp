#include "cogmc/rate_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cogmc/bisection.hpp"

namespace cogmc {

namespace {
const double kMaxExp = std::log(std::numeric_limits<double>::max());
constexpr double kLn2 = std::numbers::ln2;
}  // namespace

void RateSubproblem::validate() const
{
    if (!(phi > 0.0) || !std::isfinite(phi)) throw DomainError("rate subproblem requires a finite phi > 0");
    if (!(rate_min > 0.0) || !(rate_min <= rate_max))
        throw DomainError("rate subproblem requires 0 < rate_min <= rate_max");
}

RateSubproblem make_rate_subproblem(const SystemConfig& sys, const Allocation& alloc, std::size_t g)
{
    const auto& grp = sys.group(g);
    RateSubproblem sub{sys.noise_power() * grp.user_count / (grp.mean_gain_ss * alloc.power.at(g)), grp.rate_min,
                       grp.rate_max};
    sub.validate();
    return sub;
}

double l2(double r, const RateSubproblem& sub)
{
    if (!(r >= 0.0)) throw DomainError("l2 requires r >= 0");
    if (r == 0.0) return 1.0;
    const double log_term = std::log(sub.phi * r * kLn2) + r * kLn2;
    if (log_term > kMaxExp) return -std::numeric_limits<double>::infinity();
    return 1.0 - std::exp(log_term);
}

double l2_prime(double r, const RateSubproblem& sub, L2DerivativeForm form)
{
    if (!(r >= 0.0)) throw DomainError("l2_prime requires r >= 0");
    const double p2 = std::exp2(r);
    const double inner = form == L2DerivativeForm::Calculus ? 1.0 + r * kLn2 : 1.0 + r * p2 * kLn2;
    return -sub.phi * p2 * kLn2 * inner;
}

double find_delta(const RateSubproblem& sub)
{
    sub.validate();
    auto fn = [&](double r) { return l2(r, sub); };
    const double hi = expand_upper(fn, 1.0, "delta");
    return bisect(fn, 0.0, hi, sub.rate_tolerance(), 1e-12).root;
}

double optimal_rate(const RateSubproblem& sub) { return std::clamp(find_delta(sub), sub.rate_min, sub.rate_max); }

}  // namespace cogmc
