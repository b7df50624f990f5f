#pragma once

#include <functional>

namespace ulindley {

/// Exponential integral E1(x) = int_1^inf exp(-x t) / t dt, x > 0.
/// Power series for x <= 1, Lentz continued fraction above.
double exp_integral_e1(double x);

/// e^x E1(x); finite for every x > 0 where E1 alone would underflow.
double exp_integral_e1_scaled(double x);

/// psi(x) for x > 0: upward recurrence past 10, then the asymptotic series.
double digamma(double x);

/// psi'(x) for x > 0, same scheme as digamma.
double trigamma(double x);

/// Standard normal quantile.
double normal_quantile(double p);

/// Two-sided Wald multiplier z_{1-(1-level)/2}; level in (0.5, 1).
double wald_z(double level);

/// A one-dimensional root problem with a sign-changing bracket.
struct BracketedRootProblem {
    std::function<double(double)> objective;
    double lo = 0.0;
    double hi = 0.0;
    double tolerance = 1e-12;  // absolute, on the argument
};

inline constexpr int kRootIterationCap = 200;

/// Bisection safeguarded false-position. Stops when the bracket is no wider
/// than `tolerance` (or cannot shrink in floating point) and returns the
/// bracket end with the smaller |objective|.
///
/// Throws NoSignChangeError when objective(lo) and objective(hi) share a
/// sign, DomainError when lo >= hi, ConvergenceError after
/// kRootIterationCap iterations.
double solve_bracketed(const BracketedRootProblem& problem);

}  // namespace ulindley
