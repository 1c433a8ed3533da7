#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dirops/dirichlet.hpp"
#include "dirops/special.hpp"

using namespace dirops;

namespace {
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kLn3 = 1.0986122886681098;
constexpr double kPi = 3.14159265358979323846;

double rel_diff(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-30});
}
} // namespace

TEST_CASE("eval_poly on basis vectors and small sums") {
    CHECK(eval_poly(DirichletPolynomial::basis(1), {3.7, -2.0}) == cplx{1.0, 0.0});
    CHECK(eval_poly(DirichletPolynomial::basis(2), {0.0, 0.0}) == cplx{1.0, 0.0});

    DirichletPolynomial p = DirichletPolynomial::zero(3);
    p.set_coeff(2, 1.0);
    p.set_coeff(3, 1.0);
    const cplx v = eval_poly(p, {2.0, 0.0});
    CHECK(std::abs(v - cplx{1.0 / 4.0 + 1.0 / 9.0, 0.0}) < 1e-15);
}

TEST_CASE("derivative") {
    const DirichletPolynomial d1 = derivative(DirichletPolynomial::basis(1));
    CHECK(h2_norm(d1) == 0.0);

    const DirichletPolynomial d2 = derivative(DirichletPolynomial::basis(2));
    CHECK(d2.coeff(2) == cplx{-kLn2, 0.0});

    const DirichletPolynomial dd3 = derivative(derivative(DirichletPolynomial::basis(3)));
    CHECK(std::abs(dd3.coeff(3) - cplx{kLn3 * kLn3, 0.0}) < 1e-15);
}

TEST_CASE("inner_product orthonormality and conjugation") {
    const auto e2 = DirichletPolynomial::basis(2);
    const auto e3 = DirichletPolynomial::basis(3);
    CHECK(inner_product(e2, e2) == cplx{1.0, 0.0});
    CHECK(inner_product(e2, e3) == cplx{0.0, 0.0});

    DirichletPolynomial p = DirichletPolynomial::zero(2);
    p.set_coeff(2, {0.0, 2.0});
    CHECK(inner_product(p, e2) == cplx{0.0, 2.0});
}

TEST_CASE("h2_norm") {
    CHECK(h2_norm(DirichletPolynomial::basis(5)) == 1.0);
    CHECK(h2_norm(DirichletPolynomial::zero(7)) == 0.0);
    DirichletPolynomial p = DirichletPolynomial::zero(4);
    p.set_coeff(2, 3.0);
    p.set_coeff(4, 4.0);
    CHECK(h2_norm(p) == 5.0);
}

TEST_CASE("kernel_truncated coefficients and reproduction") {
    const DirichletPolynomial k = kernel_truncated({1.0, 0.0}, 2);
    CHECK(k.coeff(1) == cplx{1.0, 0.0});
    CHECK(std::abs(k.coeff(2) - cplx{0.5, 0.0}) < 1e-16);

    const cplx repro = inner_product(DirichletPolynomial::basis(3), kernel_truncated({1.0, 0.0}, 5));
    CHECK(std::abs(repro - cplx{1.0 / 3.0, 0.0}) < 1e-16);

    // conjugation: coefficient n=2 of k_a is 2^{-conj(a)}
    const DirichletPolynomial kc = kernel_truncated({1.0, 1.0}, 2);
    const cplx expected = std::exp(-cplx{1.0, -1.0} * kLn2);
    CHECK(std::abs(kc.coeff(2) - expected) < 1e-16);

    CHECK_THROWS_AS(kernel_truncated({0.5, 0.0}, 4), std::invalid_argument);
    CHECK_THROWS_AS(kernel_truncated({0.2, 1.0}, 4), std::invalid_argument);
}

TEST_CASE("kernel_deriv_truncated coefficients and derivative reproduction") {
    const DirichletPolynomial kd = kernel_deriv_truncated({2.5, -0.5}, 6);
    CHECK(kd.coeff(1) == cplx{0.0, 0.0});

    const DirichletPolynomial kd1 = kernel_deriv_truncated({1.0, 0.0}, 4);
    CHECK(std::abs(kd1.coeff(2) - cplx{-kLn2 / 2.0, 0.0}) < 1e-16);

    // <e_2, k^(1)_a> = e_2'(a) = -ln2 * 2^{-a} at a = 1
    const cplx d = inner_product(DirichletPolynomial::basis(2), kd1);
    CHECK(std::abs(d - cplx{-kLn2 / 2.0, 0.0}) < 1e-16);

    CHECK_THROWS_AS(kernel_deriv_truncated({0.5, 0.0}, 4), std::invalid_argument);
}

TEST_CASE("kernel_norms against the special-function oracles") {
    const auto [nk, nkd] = kernel_norms({1.0, 0.0});
    CHECK(nk == doctest::Approx(std::sqrt(kPi * kPi / 6.0)).epsilon(1e-12));
    CHECK(nkd == doctest::Approx(std::sqrt(1.9892802342989010)).epsilon(1e-10));

    // large Re(a): only the n=1 terms survive
    const auto [nk_far, nkd_far] = kernel_norms({40.0, 3.0});
    CHECK(nk_far == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nkd_far < 1e-10);

    CHECK_THROWS_AS(kernel_norms({0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("lp identity closed form") {
    // algebraic cancellation 4 (ln 2)^2 / (4 (ln 2)^2) up to one rounding
    CHECK(lp_identity_check(DirichletPolynomial::basis(2)) <= 1e-15);
    CHECK(lp_identity_check(DirichletPolynomial::basis(1)) == 0.0);
    CHECK(lp_identity_check(DirichletPolynomial::zero(5)) == 0.0);
    for (int rep = 0; rep < 50; ++rep) {
        const auto p = random_polynomial(16, 1000 + rep);
        CHECK(lp_identity_check(p) <= 1e-12);
    }
}

TEST_CASE("reproduction exactness for random polynomials") {
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t len = 1 + rep % 24;
        const auto p = random_polynomial(len, 77 + rep);
        const double re = 0.6 + 0.05 * (rep % 40);
        const double im = -8.0 + 0.4 * (rep % 37);
        const HalfPlanePoint a{re, im};

        const cplx direct = eval_poly(p, a);
        const cplx via_kernel = inner_product(p, kernel_truncated(a, len + rep % 3));
        CHECK(rel_diff(direct, via_kernel) <= 1e-13);

        const cplx d_direct = eval_poly(derivative(p), a);
        const cplx d_kernel = inner_product(p, kernel_deriv_truncated(a, len + rep % 3));
        CHECK(rel_diff(d_direct, d_kernel) <= 1e-13);
    }
}

TEST_CASE("Parseval over the basis") {
    for (int rep = 0; rep < 20; ++rep) {
        const auto p = random_polynomial(12, 9000 + rep);
        double sum = 0.0;
        for (std::size_t n = 1; n <= p.length(); ++n)
            sum += std::norm(inner_product(p, DirichletPolynomial::basis(n)));
        const double h2 = h2_norm(p);
        CHECK(std::abs(sum - h2 * h2) <= 1e-14 * std::max(1.0, h2 * h2));
    }
}

TEST_CASE("polynomial container invariants") {
    CHECK_THROWS_AS(DirichletPolynomial(std::vector<cplx>{}), std::invalid_argument);
    CHECK_THROWS_AS(DirichletPolynomial::basis(0), std::invalid_argument);
    DirichletPolynomial p = DirichletPolynomial::zero(2);
    p.set_coeff(5, 1.0); // grows
    CHECK(p.length() == 5);
    CHECK(p.coeff(9) == cplx{}); // out of range reads as zero
}
