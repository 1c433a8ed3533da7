#include "dirops/dirichlet.hpp"

#include <cmath>
#include <stdexcept>

#include "dirops/accum.hpp"
#include "dirops/special.hpp"

namespace dirops {

DirichletPolynomial::DirichletPolynomial(std::vector<cplx> coeffs)
    : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        throw std::invalid_argument("DirichletPolynomial: length must be >= 1");
}

DirichletPolynomial DirichletPolynomial::zero(std::size_t length) {
    if (length == 0)
        throw std::invalid_argument("DirichletPolynomial::zero: length must be >= 1");
    return DirichletPolynomial(std::vector<cplx>(length));
}

DirichletPolynomial DirichletPolynomial::basis(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("DirichletPolynomial::basis: index is 1-based");
    std::vector<cplx> c(n);
    c[n - 1] = 1.0;
    return DirichletPolynomial(std::move(c));
}

void DirichletPolynomial::set_coeff(std::size_t n, cplx v) {
    if (n == 0)
        throw std::invalid_argument("DirichletPolynomial::set_coeff: index is 1-based");
    if (n > coeffs_.size()) coeffs_.resize(n);
    coeffs_[n - 1] = v;
}

cplx eval_poly(const DirichletPolynomial& p, HalfPlanePoint s) {
    const cplx ms = -s.value();
    ComplexSum acc;
    for (std::size_t n = 1; n <= p.length(); ++n) {
        const cplx a = p.coeff(n);
        if (a == cplx{}) continue;
        acc.add(a * n_pow(n, ms));
    }
    return acc.value();
}

DirichletPolynomial derivative(const DirichletPolynomial& p) {
    std::vector<cplx> c(p.length());
    for (std::size_t n = 2; n <= p.length(); ++n)
        c[n - 1] = -p.coeff(n) * std::log(static_cast<double>(n));
    return DirichletPolynomial(std::move(c));
}

cplx inner_product(const DirichletPolynomial& p, const DirichletPolynomial& q) {
    const std::size_t n_max = std::min(p.length(), q.length());
    ComplexSum acc;
    for (std::size_t n = 1; n <= n_max; ++n)
        acc.add(p.coeff(n) * std::conj(q.coeff(n)));
    return acc.value();
}

double h2_norm(const DirichletPolynomial& p) {
    NeumaierSum acc;
    for (std::size_t n = 1; n <= p.length(); ++n)
        acc.add(std::norm(p.coeff(n)));
    return std::sqrt(acc.value());
}

DirichletPolynomial kernel_truncated(HalfPlanePoint a, std::size_t n_terms) {
    if (!(a.sigma > 0.5))
        throw std::invalid_argument("kernel_truncated: requires Re(a) > 1/2");
    if (n_terms == 0)
        throw std::invalid_argument("kernel_truncated: n_terms must be >= 1");
    const cplx mabar = -std::conj(a.value());
    std::vector<cplx> c(n_terms);
    for (std::size_t n = 1; n <= n_terms; ++n)
        c[n - 1] = n_pow(n, mabar);
    return DirichletPolynomial(std::move(c));
}

DirichletPolynomial kernel_deriv_truncated(HalfPlanePoint a, std::size_t n_terms) {
    if (!(a.sigma > 0.5))
        throw std::invalid_argument("kernel_deriv_truncated: requires Re(a) > 1/2");
    if (n_terms == 0)
        throw std::invalid_argument("kernel_deriv_truncated: n_terms must be >= 1");
    const cplx mabar = -std::conj(a.value());
    std::vector<cplx> c(n_terms);
    for (std::size_t n = 2; n <= n_terms; ++n)
        c[n - 1] = -n_pow(n, mabar) * std::log(static_cast<double>(n));
    return DirichletPolynomial(std::move(c));
}

std::pair<double, double> kernel_norms(HalfPlanePoint a) {
    if (!(a.sigma > 0.5))
        throw std::invalid_argument("kernel_norms: requires Re(a) > 1/2");
    const double s = 2.0 * a.sigma;
    return {std::sqrt(zeta(s).value), std::sqrt(polylog_sum(2, s).value)};
}

double lp_identity_check(const DirichletPolynomial& p) {
    NeumaierSum lhs;
    lhs.add(std::norm(p.coeff(1)));
    for (std::size_t n = 2; n <= p.length(); ++n) {
        const double an2 = std::norm(p.coeff(n));
        if (an2 == 0.0) continue;
        const double ln = std::log(static_cast<double>(n));
        const double sigma_integral = 1.0 / (4.0 * ln * ln);
        lhs.add(4.0 * an2 * ln * ln * sigma_integral);
    }
    NeumaierSum rhs;
    for (std::size_t n = 1; n <= p.length(); ++n)
        rhs.add(std::norm(p.coeff(n)));
    const double l = lhs.value(), r = rhs.value();
    if (r == 0.0 && l == 0.0) return 0.0;
    return std::abs(l - r) / std::max(r, 1e-300);
}

namespace {
// splitmix64; fixed algorithm keeps generated polynomials identical
// across platforms.
std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double unit_double(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}
} // namespace

DirichletPolynomial random_polynomial(std::size_t length, std::uint64_t seed) {
    if (length == 0)
        throw std::invalid_argument("random_polynomial: length must be >= 1");
    std::uint64_t state = seed ^ 0xA0761D6478BD642Full;
    std::vector<cplx> c(length);
    for (std::size_t i = 0; i < length; ++i) {
        const double re = 2.0 * unit_double(state) - 1.0;
        const double im = 2.0 * unit_double(state) - 1.0;
        c[i] = {re, im};
    }
    return DirichletPolynomial(std::move(c));
}

} // namespace dirops
