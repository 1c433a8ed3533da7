#include "dirops/svd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>

#include "dirops/accum.hpp"
#include "dirops/errors.hpp"

namespace dirops {

namespace {

double norm2(const std::vector<cplx>& v) {
    NeumaierSum acc;
    for (const cplx& z : v) acc.add(std::norm(z));
    return acc.value();
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

double power_operator_norm(const DenseMatrix& m, const PowerOptions& opts) {
    if (m.rows == 0 || m.cols == 0) return 0.0;

    // Strictly positive start vector; the Gram matrices of the symbol
    // family are diagonal conjugates of entrywise-positive matrices, so a
    // positive start is never orthogonal to the top singular direction.
    std::vector<cplx> v(m.cols);
    std::uint64_t state = 0x106689D45497FDB5ull;
    for (auto& z : v)
        z = 0.5 + static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    {
        const double nv = std::sqrt(norm2(v));
        for (auto& z : v) z /= nv;
    }

    double prev = -1.0;
    for (long iter = 0; iter < opts.max_iters; ++iter) {
        const std::vector<cplx> w = matvec(m, v);
        const double est = norm2(w); // Rayleigh quotient of A^H A at unit v
        if (est == 0.0) return 0.0;
        if (prev >= 0.0 && std::abs(est - prev) <= opts.rel_tol * est)
            return std::sqrt(est);
        prev = est;
        std::vector<cplx> u = adjoint_matvec(m, w);
        const double nu = std::sqrt(norm2(u));
        if (nu == 0.0) return std::sqrt(est);
        for (auto& z : u) z /= nu;
        v = std::move(u);
    }
    throw NonConvergence("power_operator_norm: iteration cap reached");
}

std::vector<double> jacobi_singular_values(const DenseMatrix& m, double gram_tol) {
    const std::size_t rows = m.rows, cols = m.cols;
    std::vector<double> out(std::min(rows, cols), 0.0);
    if (rows == 0 || cols == 0) return out;

    // Column-major working copy.
    std::vector<std::vector<cplx>> col(cols, std::vector<cplx>(rows));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) col[j][i] = m.at(i, j);

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double worst = 0.0;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                NeumaierSum spp, sqq;
                ComplexSum spq;
                for (std::size_t i = 0; i < rows; ++i) {
                    spp.add(std::norm(col[p][i]));
                    sqq.add(std::norm(col[q][i]));
                    spq.add(std::conj(col[p][i]) * col[q][i]);
                }
                const double gpp = spp.value(), gqq = sqq.value();
                const cplx gpq = spq.value();
                const double scale = std::sqrt(gpp * gqq);
                if (scale == 0.0) continue;
                const double mag = std::abs(gpq);
                worst = std::max(worst, mag / scale);
                if (mag <= gram_tol * scale) continue;

                // Rotate (a_p, e^{-i arg(gpq)} a_q) by the classical Jacobi
                // angle that zeroes the real 2x2 Gram cross term.
                const cplx phase = gpq / mag;
                const double zeta = (gqq - gpp) / (2.0 * mag);
                const double tan_phi =
                    (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + tan_phi * tan_phi);
                const double s = c * tan_phi;
                for (std::size_t i = 0; i < rows; ++i) {
                    const cplx ap = col[p][i];
                    const cplx bq = std::conj(phase) * col[q][i];
                    col[p][i] = c * ap - s * bq;
                    col[q][i] = s * ap + c * bq;
                }
            }
        }
        if (worst <= gram_tol) {
            std::vector<double> sigmas(cols);
            for (std::size_t j = 0; j < cols; ++j) sigmas[j] = std::sqrt(norm2(col[j]));
            std::sort(sigmas.begin(), sigmas.end(), std::greater<double>());
            std::copy(sigmas.begin(), sigmas.begin() + static_cast<std::ptrdiff_t>(out.size()),
                      out.begin());
            return out;
        }
    }
    throw NonConvergence("jacobi_singular_values: sweep cap reached");
}

} // namespace dirops
