#include "dirops/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dirops/accum.hpp"
#include "dirops/errors.hpp"

namespace dirops {

namespace {

constexpr double kDomainFloor = 1.0 + 1e-6;
constexpr long kZetaTermCap = 60'000'000;
constexpr long kPolylogTermCap = 50'000'000;

void check_domain(double s, const char* who) {
    if (!(s > kDomainFloor))
        throw std::invalid_argument(std::string(who) + ": requires s > 1 + 1e-6");
}

// int_a^inf x^{-s} dx
double power_tail_integral(double a, double s) {
    return std::pow(a, 1.0 - s) / (s - 1.0);
}

// int_a^inf (ln x)^k x^{-s} dx  =  e^{-(s-1)L} sum_{j=0..k} (k!/(k-j)!) L^{k-j} / (s-1)^{j+1}
double weighted_tail_integral(double a, int k, double s) {
    const double L = std::log(a);
    const double q = s - 1.0;
    double falling = 1.0; // k!/(k-j)!
    NeumaierSum acc;
    for (int j = 0; j <= k; ++j) {
        acc.add(falling * std::pow(L, k - j) / std::pow(q, j + 1));
        falling *= static_cast<double>(k - j);
    }
    return std::exp(-q * L) * acc.value();
}

} // namespace

TailBoundedSum zeta(double s, double tol) {
    check_domain(s, "zeta");
    if (!(tol > 0.0))
        throw std::invalid_argument("zeta: tol must be positive");

    // Bracket half-width behaves like (s/4) N^{-(s+1)}; start near the model
    // prediction and extend if the measured bracket is still too wide.
    double predicted = std::pow(s / (4.0 * tol), 1.0 / (s + 1.0));
    long n_terms = static_cast<long>(std::clamp(predicted, 32.0, 4e7)) + 1;

    NeumaierSum partial;
    long n = 0;
    for (;;) {
        while (n < n_terms) {
            ++n;
            partial.add(std::pow(static_cast<double>(n), -s));
        }
        const double x = static_cast<double>(n);
        // Convex decreasing integrand: midpoint rule under-, trapezoid
        // over-estimates the integral, which brackets the discrete tail.
        const double upper = power_tail_integral(x + 0.5, s);
        const double lower = power_tail_integral(x + 1.0, s) + 0.5 * std::pow(x + 1.0, -s);
        const double half_width = 0.5 * (upper - lower);
        if (half_width <= tol) {
            return {partial.value() + 0.5 * (upper + lower), half_width, n};
        }
        if (n >= kZetaTermCap)
            throw NonConvergence("zeta: tail bound target not reached within term cap");
        n_terms = std::min(2 * n_terms, kZetaTermCap);
    }
}

TailBoundedSum polylog_sum(int k, double s, double rel_tol) {
    if (k < 0 || k > 12)
        throw std::invalid_argument("polylog_sum: requires 0 <= k <= 12");
    check_domain(s, "polylog_sum");
    if (!(rel_tol > 0.0))
        throw std::invalid_argument("polylog_sum: rel_tol must be positive");
    if (k == 0) return zeta(s, 1e-13);

    // f(x) = (ln x)^k x^{-s} peaks at x = e^{k/s}; the decreasing-tail
    // bracket is only valid past that point.
    const double x_max = std::exp(static_cast<double>(k) / s);
    long n_terms = std::max<long>(static_cast<long>(x_max) + 2, 64);

    NeumaierSum partial;
    long n = 1; // (ln 1)^k = 0
    for (;;) {
        while (n < n_terms) {
            ++n;
            const double ln = std::log(static_cast<double>(n));
            partial.add(std::pow(ln, k) * std::pow(static_cast<double>(n), -s));
        }
        const double x = static_cast<double>(n);
        const double upper = weighted_tail_integral(x, k, s);
        const double lower = weighted_tail_integral(x + 1.0, k, s);
        const double half_width = 0.5 * (upper - lower);
        const double value = partial.value() + 0.5 * (upper + lower);
        if (half_width <= rel_tol * std::max(std::abs(value), 1e-300)) {
            return {value, half_width, n};
        }
        if (n >= kPolylogTermCap)
            throw NonConvergence("polylog_sum: tail bound target not reached within term cap");
        n_terms = std::min(2 * n_terms, kPolylogTermCap);
    }
}

double norm_lower_bound(double c1_re) {
    if (!(c1_re > 0.5))
        throw std::invalid_argument("norm_lower_bound: requires Re(c1) > 1/2");
    const double d = 2.0 * c1_re - 1.0;
    return 2.0 / (d * d * d);
}

double norm_upper_bound(double c1_re) {
    if (!(c1_re > 0.5))
        throw std::invalid_argument("norm_upper_bound: requires Re(c1) > 1/2");
    const double d = 2.0 * c1_re - 1.0;
    return 2.0 / (d * d) * zeta(2.0 * c1_re).value;
}

} // namespace dirops
