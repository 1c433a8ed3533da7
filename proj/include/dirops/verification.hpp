#pragma once

#include <cstddef>
#include <iosfwd>

#include "dirops/dirichlet.hpp"
#include "dirops/symbols.hpp"

namespace dirops {

// Tensor quadrature for the area integral over the counting-function
// support disk: Gauss-Legendre in the log-radial variable u (r = |c2| e^{-u},
// which removes the logarithmic singularity at the disk center), uniform
// trapezoid in the angle.
struct QuadratureSpec {
    int radial_nodes = 128;
    int angular_nodes = 256;
    double u_cutoff = 20.0;
};

struct CovReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_err = 0.0;
    std::size_t K = 0;
    int radial_nodes = 0;
    int angular_nodes = 0;
    double tail_budget = 0.0; // lhs row tail + rhs quadrature error estimate
};

// ||D_Phi p||^2 at row truncation K: builds the (K, length(p)) matrix,
// applies it, returns the squared coefficient norm of the image. The
// optional out-parameter receives a bound on the mass in the dropped rows.
double cov_lhs(const AffineSymbol& sym, const DirichletPolynomial& p, std::size_t K,
               double* row_tail_bound = nullptr);

// |p'(c1)|^2 + (2/pi) int over the disk |w - c1| < |c2| of
// |p''(w)|^2 ln(|c2|/r) r dr dtheta; after r = |c2| e^{-u} the integrand is
// the smooth |c2|^2 |p''|^2 u e^{-2u}. The optional out-parameter receives
// |value - value(half nodes)| plus the u-cutoff tail bound.
double cov_rhs(const AffineSymbol& sym, const DirichletPolynomial& p,
               const QuadratureSpec& quad, double* err_estimate = nullptr);

// Relative error |lhs - rhs| / max(lhs, 1e-30); both sides zero gives 0.
CovReport cov_check(const AffineSymbol& sym, const DirichletPolynomial& p, std::size_t K,
                    const QuadratureSpec& quad);

// { "lhs", "rhs", "rel_err", "K", "radial_nodes", "angular_nodes", "tail_budget" }
void write_cov_json(const CovReport& report, std::ostream& out);

} // namespace dirops
