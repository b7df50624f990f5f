#include "ulindley/special_math.hpp"

#include "ulindley/errors.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ulindley {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double e1_series(double x) {
    // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    double sum = 0.0;
    double term = 1.0;  // (-x)^k / k!
    for (int k = 1; k < 100; ++k) {
        term *= -x / k;
        const double add = term / k;
        sum += add;
        if (std::abs(add) < kEps * std::abs(sum)) break;
    }
    return -std::numbers::egamma - std::log(x) - sum;
}

// Returns e^x E1(x).
double e1_scaled_continued_fraction(double x) {
    // Modified Lentz on E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) return h;
    }
    throw ConvergenceError("exp_integral_e1: continued fraction did not converge", 1000, x);
}

void require_positive(double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(name) + ": argument must be a positive finite number");
    }
}

}  // namespace

double exp_integral_e1(double x) {
    require_positive(x, "exp_integral_e1");
    return x <= 1.0 ? e1_series(x) : e1_scaled_continued_fraction(x) * std::exp(-x);
}

double exp_integral_e1_scaled(double x) {
    require_positive(x, "exp_integral_e1_scaled");
    return x <= 1.0 ? std::exp(x) * e1_series(x) : e1_scaled_continued_fraction(x);
}

double digamma(double x) {
    require_positive(x, "digamma");
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli-number tail: B_{2k} / (2k x^{2k}) for k = 1..7
    const double tail =
        inv2 * (1.0 / 12 -
                inv2 * (1.0 / 120 -
                        inv2 * (1.0 / 252 -
                                inv2 * (1.0 / 240 -
                                        inv2 * (1.0 / 132 -
                                                inv2 * (691.0 / 32760 - inv2 * (1.0 / 12)))))));
    return shift + std::log(x) - 0.5 * inv - tail;
}

double trigamma(double x) {
    require_positive(x, "trigamma");
    double shift = 0.0;
    while (x < 10.0) {
        shift += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // 1/x + 1/(2x^2) + sum_k B_{2k} / x^{2k+1}
    const double tail =
        inv * inv2 *
        (1.0 / 6 -
         inv2 * (1.0 / 30 -
                 inv2 * (1.0 / 42 -
                         inv2 * (1.0 / 30 -
                                 inv2 * (5.0 / 66 - inv2 * (691.0 / 2730 - inv2 * (7.0 / 6)))))));
    return shift + inv + 0.5 * inv2 + tail;
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0,1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double wald_z(double level) {
    if (!(level > 0.5 && level < 1.0)) {
        throw DomainError("confidence level must lie in (0.5, 1)");
    }
    return normal_quantile(0.5 + 0.5 * level);
}

double solve_bracketed(const BracketedRootProblem& problem) {
    if (!(problem.lo < problem.hi)) throw DomainError("solve_bracketed: requires lo < hi");
    if (!(problem.tolerance > 0.0)) throw DomainError("solve_bracketed: tolerance must be positive");

    const auto& f = problem.objective;
    double a = problem.lo;
    double b = problem.hi;
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::signbit(fa) == std::signbit(fb)) {
        throw NoSignChangeError("solve_bracketed: objective has the same sign at both bracket ends");
    }

    // ga/gb are the interpolation weights; the Illinois rule halves the
    // weight of an end that survives two consecutive steps.
    double ga = fa;
    double gb = fb;
    int last_moved = 0;  // -1: a moved, +1: b moved
    double width_two_steps_ago = b - a;
    double width_last = b - a;
    bool force_bisect = false;
    for (int iter = 0; iter < kRootIterationCap; ++iter) {
        const double width = b - a;
        const double mid = a + 0.5 * width;
        if (width <= problem.tolerance || mid <= a || mid >= b) {
            return std::abs(fa) <= std::abs(fb) ? a : b;
        }

        double x = b - gb * (b - a) / (gb - ga);
        if (force_bisect || !(x > a && x < b)) x = mid;

        const double fx = f(x);
        if (fx == 0.0) return x;
        if (std::signbit(fx) == std::signbit(fa)) {
            a = x;
            fa = ga = fx;
            if (last_moved == -1) gb *= 0.5;
            last_moved = -1;
        } else {
            b = x;
            fb = gb = fx;
            if (last_moved == +1) ga *= 0.5;
            last_moved = +1;
        }

        // Guarantee geometric shrinkage: bisect whenever two steps failed
        // to halve the bracket.
        const double new_width = b - a;
        force_bisect = new_width > 0.5 * width_two_steps_ago;
        width_two_steps_ago = width_last;
        width_last = new_width;
    }
    throw ConvergenceError("solve_bracketed: iteration cap reached", kRootIterationCap, 0.5 * (a + b));
}

}  // namespace ulindley
