#pragma once

namespace dirops {

// Partial sum plus a rigorous tail bracket: the true value lies in
// [value - tail_bound, value + tail_bound].
struct TailBoundedSum {
    double value = 0.0;
    double tail_bound = 0.0;
    long terms_used = 0;
};

// Riemann zeta on the real ray, zeta(s) = sum n^{-s}.
// Requires s > 1 + 1e-6 (the lemmas in use only address s > 1, and no
// consumer needs pole-adjacent values). `tol` is the absolute target for
// tail_bound; the tail is bracketed between the midpoint-rule and
// trapezoid-rule comparison integrals of the convex integrand x^{-s}.
TailBoundedSum zeta(double s, double tol = 1e-13);

// L_k(s) = sum_{n>=1} (ln n)^k n^{-s}, 0 <= k <= 12, s > 1 + 1e-6.
// `rel_tol` is relative to the running value. The partial sum starts past
// the integrand maximum at x = e^{k/s}; the tail is bracketed between the
// exact integrals int_{N+1} and int_N of (ln x)^k x^{-s} (closed form by
// repeated integration by parts). k = 0 reduces to zeta at absolute 1e-13.
TailBoundedSum polylog_sum(int k, double s, double rel_tol = 1e-9);

// 2/(2 c1 - 1)^3, the closed form quoted for the operator-norm lower
// bound. Requires c1_re > 1/2.
double norm_lower_bound(double c1_re);

// 2/(2 c1 - 1)^2 * zeta(2 c1). Requires c1_re > 1/2.
double norm_upper_bound(double c1_re);

} // namespace dirops
