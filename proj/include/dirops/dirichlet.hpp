#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace dirops {

using cplx = std::complex<double>;

// n^e for a positive integer n and complex exponent e, via exp(e ln n).
inline cplx n_pow(std::size_t n, cplx e) {
    const double ln = std::log(static_cast<double>(n));
    return std::exp(e * ln);
}

// A point s = sigma + i t. Operations that need membership in the
// half-plane C_theta = { Re(s) > theta } check sigma explicitly.
struct HalfPlanePoint {
    double sigma = 0.0;
    double t = 0.0;

    HalfPlanePoint() = default;
    HalfPlanePoint(double re, double im) : sigma(re), t(im) {}
    explicit HalfPlanePoint(cplx s) : sigma(s.real()), t(s.imag()) {}

    cplx value() const { return {sigma, t}; }
    bool in_half_plane(double theta) const { return sigma > theta; }
};

// Finite Dirichlet polynomial  sum_{n<=N} a_n n^{-s}.
// Coefficients are 1-based: coeff(1) is the constant term. Length N >= 1;
// trailing zeros are allowed and preserved.
class DirichletPolynomial {
public:
    DirichletPolynomial() : coeffs_(1) {}
    explicit DirichletPolynomial(std::vector<cplx> coeffs);

    static DirichletPolynomial zero(std::size_t length);
    static DirichletPolynomial basis(std::size_t n); // e_n(s) = n^{-s}

    std::size_t length() const { return coeffs_.size(); }
    cplx coeff(std::size_t n) const {
        return (n >= 1 && n <= coeffs_.size()) ? coeffs_[n - 1] : cplx{};
    }
    void set_coeff(std::size_t n, cplx v); // grows if n exceeds length
    const std::vector<cplx>& coeffs() const { return coeffs_; }

private:
    std::vector<cplx> coeffs_;
};

// sum_{n<=N} a_n n^{-s}, ascending n, compensated accumulation.
cplx eval_poly(const DirichletPolynomial& p, HalfPlanePoint s);

// Coefficient n of the result is -a_n ln(n); natural log throughout.
DirichletPolynomial derivative(const DirichletPolynomial& p);

// <p, q> = sum a_n conj(b_n); the shorter list is zero-padded.
cplx inner_product(const DirichletPolynomial& p, const DirichletPolynomial& q);

// sqrt(sum |a_n|^2)
double h2_norm(const DirichletPolynomial& p);

// Truncated reproducing kernel of point evaluation: coefficients n^{-conj(a)}
// for n <= n_terms. Requires Re(a) > 1/2 (the kernel norm diverges otherwise).
// For any p with length(p) <= n_terms, <p, kernel_truncated(a, n_terms)>
// equals eval_poly(p, a) exactly.
DirichletPolynomial kernel_truncated(HalfPlanePoint a, std::size_t n_terms);

// Truncated kernel of derivative evaluation: coefficients -n^{-conj(a)} ln n.
// Reproduces eval_poly(derivative(p), a) for length(p) <= n_terms.
DirichletPolynomial kernel_deriv_truncated(HalfPlanePoint a, std::size_t n_terms);

// (||k_a||, ||k_a^(1)||) = (sqrt(zeta(2 Re a)), sqrt(L_2(2 Re a))).
// Requires Re(a) > 1/2 plus the zeta domain floor (2 Re a > 1 + 1e-6).
std::pair<double, double> kernel_norms(HalfPlanePoint a);

// Littlewood-Paley identity, both sides in closed form:
//   |a_1|^2 + 4 sum_{n>=2} |a_n|^2 (ln n)^2 * Int(n)   vs   ||p||^2,
// where Int(n) = int_0^inf sigma n^{-2 sigma} dsigma = 1/(2 ln n)^2 and the
// Besicovitch mean of |p'(sigma+it)|^2 is sum |a_n|^2 (ln n)^2 n^{-2 sigma};
// the long-run (1/T) int_{-T}^{T} window carries twice that mean, hence the
// total factor 4. Returns the relative error between the two sides.
double lp_identity_check(const DirichletPolynomial& p);

// Deterministic pseudo-random polynomial (coefficients uniform in the
// complex square [-1,1]^2), used by property tests and the CLI.
DirichletPolynomial random_polynomial(std::size_t length, std::uint64_t seed);

} // namespace dirops
