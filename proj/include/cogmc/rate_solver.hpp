#pragma once

// Per-group rate step. With power frozen, d(eta)/dR carries the sign of
//
//     L2(R) = 1 - phi R 2^R ln 2,    phi = N0 |K| / (lambda_ss P)
//
// which falls strictly from L2(0) = 1, so eta is quasi-concave in R with its
// peak at the unique root delta.

#include <cstddef>

#include "cogmc/model.hpp"

namespace cogmc {

struct RateSubproblem {
    double phi = 0.0;
    double rate_min = 0.0;
    double rate_max = 0.0;

    void validate() const;
    double rate_tolerance() const noexcept { return 1e-10 * (rate_max > 1.0 ? rate_max : 1.0); }
};

RateSubproblem make_rate_subproblem(const SystemConfig& sys, const Allocation& alloc, std::size_t g);

/// Selects the closed form of dL2/dR. `AsPrinted` keeps the inner factor
/// (1 + R 2^R ln 2) found in the original derivation for comparison only;
/// `Calculus` is the exact derivative (1 + R ln 2).
enum class L2DerivativeForm { Calculus, AsPrinted };

double l2(double r, const RateSubproblem& sub);
double l2_prime(double r, const RateSubproblem& sub, L2DerivativeForm form = L2DerivativeForm::Calculus);

/// Root of L2 by bisection on [0, r_hi], r_hi doubled from 1.
double find_delta(const RateSubproblem& sub);

/// delta clamped into [rate_min, rate_max].
double optimal_rate(const RateSubproblem& sub);

}  // namespace cogmc
