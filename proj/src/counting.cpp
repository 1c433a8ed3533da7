#include "dirops/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "dirops/accum.hpp"
#include "dirops/parallel.hpp"
#include "dirops/quadrature.hpp"

namespace dirops {

namespace {
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
} // namespace

double counting_closed_affine(const AffineSymbol& sym, cplx w) {
    const double dist = std::abs(w - sym.c1);
    if (dist == 0.0)
        throw std::invalid_argument("counting_closed_affine: w = Phi(+inf) is excluded");
    const double ac2 = std::abs(sym.c2);
    if (ac2 == 0.0 || dist >= ac2) return 0.0;
    return std::log(ac2 / dist);
}

double counting_oracle(const AffineSymbol& sym, cplx w, double T, double sigma_cut) {
    if (!(T > 0.0)) throw std::invalid_argument("counting_oracle: T must be positive");
    if (!(sigma_cut > 0.0))
        throw std::invalid_argument("counting_oracle: sigma_cut must be positive");
    if (w == sym.c1)
        throw std::invalid_argument("counting_oracle: w = Phi(+inf) is excluded");
    if (sym.c2 == cplx{}) return 0.0;

    const cplx z = (w - sym.c1) / sym.c2;
    const double az = std::abs(z);
    if (az >= 1.0) return 0.0; // all preimages have Re(s) <= 0, outside C_0

    // s_m = -(Log z + 2 pi i m)/ln 2; shared real part, spacing 2 pi / ln 2
    const double re_s0 = -std::log(az) / kLn2;
    if (re_s0 <= sigma_cut) return 0.0;
    const double arg = std::arg(z);
    const double window = T * kLn2; // |arg + 2 pi m| <= T ln 2
    const long m_lo = static_cast<long>(std::ceil((-window - arg) / (2.0 * M_PI)));
    const long m_hi = static_cast<long>(std::floor((window - arg) / (2.0 * M_PI)));

    NeumaierSum acc;
    for (long m = m_lo; m <= m_hi; ++m) acc.add(re_s0);
    return M_PI / T * acc.value();
}

double counting_majorant(cplx w, cplx v) {
    if (!(w.real() >= 0.5))
        throw std::invalid_argument("counting_majorant: requires Re(w) >= 1/2");
    if (!(v.real() > 0.5))
        throw std::invalid_argument("counting_majorant: requires Re(v) > 1/2");
    if (w == v) throw std::invalid_argument("counting_majorant: w must differ from v");
    return std::log(std::abs((w + std::conj(v) - 1.0) / (w - v)));
}

double compactness_ratio(const AffineSymbol& sym, cplx w) {
    if (!(w.real() > 0.5))
        throw std::invalid_argument("compactness_ratio: requires Re(w) > 1/2");
    const double d = w.real() - 0.5;
    return counting_closed_affine(sym, w) / (d * d * d);
}

double divergence_demo(double delta, double epsilon) {
    if (!(delta > 0.0) || !(delta <= epsilon))
        throw std::invalid_argument("divergence_demo: requires 0 < delta <= epsilon");
    if (delta == epsilon) return 0.0;

    // Inner sigma-integral at fixed t, self-refining so its absolute error
    // tracks its own magnitude rather than the 1/delta^3 peak scale.
    const auto inner = [delta, epsilon](double t) {
        const double t2 = t * t;
        const auto g = [t2](double sigma) {
            const double d = sigma * sigma + t2;
            return sigma / (d * d);
        };
        const double coarse = std::abs(g(delta)) * (epsilon - delta) + 1e-300;
        const double rough = adaptive_simpson(g, delta, epsilon, 1e-6 * coarse);
        return adaptive_simpson(g, delta, epsilon, 1e-10 * (std::abs(rough) + 1e-300));
    };

    // Trapezoid scan for an order-of-magnitude estimate, then two adaptive
    // passes; the second runs at 1e-8 relative to the first pass's value.
    double rough = 0.0;
    const int scan = 128;
    for (int i = 0; i <= scan; ++i) {
        const double t = -1.0 + 2.0 * i / scan;
        const double wgt = (i == 0 || i == scan) ? 0.5 : 1.0;
        rough += wgt * inner(t) * (2.0 / scan);
    }
    const double pass1 = adaptive_simpson(inner, -1.0, 1.0, 0.5e-8 * (std::abs(rough) + 1e-300));
    return adaptive_simpson(inner, -1.0, 1.0, 0.5e-8 * (std::abs(pass1) + 1e-300));
}

std::vector<CountingSample> counting_grid_scan(const AffineSymbol& sym, double re0, double re1,
                                               int re_steps, double im0, double im1,
                                               int im_steps, double T, double sigma_cut) {
    if (re_steps < 1 || im_steps < 1)
        throw std::invalid_argument("counting_grid_scan: steps must be >= 1");

    std::vector<cplx> points;
    for (int i = 0; i < re_steps; ++i) {
        const double re = re_steps == 1 ? re0 : re0 + (re1 - re0) * i / (re_steps - 1);
        for (int j = 0; j < im_steps; ++j) {
            const double im = im_steps == 1 ? im0 : im0 + (im1 - im0) * j / (im_steps - 1);
            const cplx w{re, im};
            if (w == sym.c1) continue;
            points.push_back(w);
        }
    }

    const cplx v = sym.c1;
    std::vector<CountingSample> out(points.size());
    parallel_for_index(points.size(), [&](std::size_t idx) {
        const cplx w = points[idx];
        CountingSample s;
        s.w = HalfPlanePoint(w);
        s.m_closed = counting_closed_affine(sym, w);
        s.m_oracle = counting_oracle(sym, w, T, sigma_cut);
        s.abs_err = std::abs(s.m_oracle - s.m_closed);
        s.majorant =
            (w.real() >= 0.5 && v.real() > 0.5 && w != v) ? counting_majorant(w, v) : kNaN;
        const double d = w.real() - 0.5;
        s.compactness_ratio = d > 0.0 ? s.m_closed / (d * d * d) : kNaN;
        out[idx] = s;
    });
    return out;
}

void write_counting_csv(const std::vector<CountingSample>& samples, std::ostream& out) {
    out << "re_w,im_w,m_closed,m_oracle,abs_err,majorant,ratio\n";
    char buf[200];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.w.sigma,
                      s.w.t, s.m_closed, s.m_oracle, s.abs_err, s.majorant,
                      s.compactness_ratio);
        out << buf;
    }
}

} // namespace dirops
