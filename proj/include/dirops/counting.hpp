#pragma once

#include <iosfwd>
#include <vector>

#include "dirops/symbols.hpp"

namespace dirops {

// One target point with the closed-form mean counting value, the
// finite-T oracle from the definition, the Littlewood-type majorant and
// the compactness ratio.
struct CountingSample {
    HalfPlanePoint w;
    double m_closed = 0.0;
    double m_oracle = 0.0;
    double abs_err = 0.0;
    double majorant = 0.0;          // NaN where the majorant preconditions fail
    double compactness_ratio = 0.0; // NaN for Re(w) <= 1/2
};

// M_Phi(w) = max(0, ln(|c2| / |w - c1|)): the preimages of w solve
// 2^{-s} = (w - c1)/c2 = z, all with real part -ln|z| / ln 2 and vertical
// spacing 2 pi / ln 2, so the (pi/T) sum Re(s) limit is Re(s0) ln 2.
// Vanishes outside the closed disk |w - c1| <= |c2|. Rejects w = c1
// (the excluded point Phi(+inf)).
double counting_closed_affine(const AffineSymbol& sym, cplx w);

// Finite truncation of the defining limit: enumerates the preimages with
// |Im(s)| <= T and Re(s) > sigma_cut, sums Re(s0) per solution, scales by
// pi/T. Requires w != c1, T > 0, sigma_cut > 0.
double counting_oracle(const AffineSymbol& sym, cplx w, double T, double sigma_cut = 1e-12);

// ln |(w + conj(v) - 1) / (w - v)|. Requires Re(w) >= 1/2, Re(v) > 1/2,
// w != v. Vanishes on the boundary Re(w) = 1/2.
double counting_majorant(cplx w, cplx v);

// counting_closed_affine(w) / (Re(w) - 1/2)^3; requires Re(w) > 1/2, w != c1.
double compactness_ratio(const AffineSymbol& sym, cplx w);

// I(delta) = int_{-1}^{1} int_{delta}^{epsilon} sigma/(sigma^2+t^2)^2
// dsigma dt by nested adaptive quadrature (relative tolerance 1e-8).
// The integrand is the explicit divergent core of the Mobius-type symbol
// example; I(delta) ~ (pi/2)/delta certifies the blow-up mechanism.
// Requires 0 < delta <= epsilon (delta == epsilon gives 0).
double divergence_demo(double delta, double epsilon);

// Row-major grid scan; points equal to c1 are skipped. Output order is the
// deterministic grid order regardless of worker count.
std::vector<CountingSample> counting_grid_scan(const AffineSymbol& sym, double re0, double re1,
                                               int re_steps, double im0, double im1,
                                               int im_steps, double T, double sigma_cut = 1e-12);

// CSV schema: re_w,im_w,m_closed,m_oracle,abs_err,majorant,ratio
void write_counting_csv(const std::vector<CountingSample>& samples, std::ostream& out);

} // namespace dirops
