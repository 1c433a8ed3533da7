#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dirops/symbols.hpp"

using namespace dirops;

TEST_CASE("phi_at_infinity") {
    // Phi(s) = 2 + 3 * 2^{-s}
    CHECK(phi_at_infinity(AffineSymbol{{2.0, 0.0}, {3.0, 0.0}}) == cplx{2.0, 0.0});

    DirichletPolynomial constant = DirichletPolynomial::zero(1);
    constant.set_coeff(1, {1.5, -0.25});
    CHECK(phi_at_infinity(GeneralSymbol{0, constant}) == cplx{1.5, -0.25});

    // Phi(s) = s + 1 has characteristic 1
    DirichletPolynomial one = DirichletPolynomial::zero(1);
    one.set_coeff(1, 1.0);
    CHECK_THROWS_AS(phi_at_infinity(GeneralSymbol{1, one}), std::invalid_argument);
}

TEST_CASE("validate_affine verdicts") {
    CHECK(validate_affine({1.0, 0.0}, {0.25, 0.0}) == AffineVerdict::StrictInterior);
    CHECK(validate_affine({0.75, 0.0}, {0.25, 0.0}) == AffineVerdict::Boundary);
    CHECK(validate_affine({0.6, 0.0}, {0.2, 0.0}) == AffineVerdict::Invalid);
    // |c2| uses the modulus
    CHECK(validate_affine({1.0, 5.0}, {0.0, 0.25}) == AffineVerdict::StrictInterior);
    CHECK(validate_affine({0.75, -1.0}, {0.0, 0.25}) == AffineVerdict::Boundary);
}

TEST_CASE("classify_sampled evidence classes") {
    DirichletPolynomial const2 = DirichletPolynomial::zero(1);
    const2.set_coeff(1, 2.0);
    const auto ev_const = classify_sampled(GeneralSymbol{0, const2}, 128, 42);
    CHECK(ev_const.verdict == SymbolClassVerdict::ZeroCharEvidence);
    CHECK(ev_const.min_re == 2.0);

    // Phi(s) = s: characteristic 1, phi = 0
    const auto ev_id = classify_sampled(GeneralSymbol{1, DirichletPolynomial::zero(1)}, 128, 42);
    CHECK(ev_id.verdict == SymbolClassVerdict::PositiveCharEvidence);

    // phi(s) = 2^{-s} with c0 = 0 attains Re < 1/2 on C_0
    DirichletPolynomial two_pow = DirichletPolynomial::zero(2);
    two_pow.set_coeff(2, 1.0);
    const auto ev_bad = classify_sampled(GeneralSymbol{0, two_pow}, 128, 42);
    CHECK(ev_bad.verdict == SymbolClassVerdict::CounterexampleFound);
    REQUIRE(ev_bad.witness.has_value());
    CHECK(ev_bad.witness_value->real() <= 0.5);
}

TEST_CASE("classify_sampled is deterministic for a fixed seed") {
    DirichletPolynomial two_pow = DirichletPolynomial::zero(2);
    two_pow.set_coeff(2, 1.0);
    const GeneralSymbol sym{0, two_pow};
    const auto a = classify_sampled(sym, 200, 7);
    const auto b = classify_sampled(sym, 200, 7);
    CHECK(a.verdict == b.verdict);
    CHECK(a.min_re == b.min_re);
    REQUIRE(a.witness.has_value());
    REQUIRE(b.witness.has_value());
    CHECK(*a.witness == *b.witness);

    const auto c = classify_sampled(sym, 200, 8);
    CHECK(c.min_re != a.min_re); // different seed, different point set
}

TEST_CASE("strict_halfplane_check exact verdicts for affine symbols") {
    const auto pass = strict_halfplane_check(AffineSymbol{{1.0, 0.0}, {0.25, 0.0}}, 0.2, 64, 3);
    REQUIRE(pass.exact_pass.has_value());
    CHECK(*pass.exact_pass);
    CHECK(*pass.exact_infimum == doctest::Approx(0.75));
    CHECK(pass.sampled_pass);

    const auto fail = strict_halfplane_check(AffineSymbol{{0.75, 0.0}, {0.25, 0.0}}, 0.1, 64, 3);
    CHECK_FALSE(*fail.exact_pass);

    const auto constant = strict_halfplane_check(AffineSymbol{{2.0, 0.0}, {0.0, 0.0}}, 1.4, 64, 3);
    CHECK(*constant.exact_pass);
    CHECK(constant.sampled_pass);

    CHECK_THROWS_AS(strict_halfplane_check(AffineSymbol{{1.0, 0.0}, {0.25, 0.0}}, 0.0, 64, 3),
                    std::invalid_argument);
}

TEST_CASE("sampled minimum respects the affine infimum") {
    for (std::uint64_t seed : {1ull, 9ull, 55ull}) {
        const AffineSymbol sym{{1.2, 0.7}, {0.3, -0.4}};
        const auto check = strict_halfplane_check(sym, 0.05, 512, seed);
        CHECK(check.sampled_min_re >= sym.c1.real() - std::abs(sym.c2) - 1e-12);
    }
}

TEST_CASE("strict-interior implies the halfplane check passes at half the gap") {
    const AffineSymbol sym{{1.1, 0.0}, {0.4, 0.3}};
    REQUIRE(validate_affine(sym) == AffineVerdict::StrictInterior);
    const double gap = sym.c1.real() - std::abs(sym.c2) - 0.5;
    const auto check = strict_halfplane_check(sym, gap / 2.0, 256, 11);
    CHECK(*check.exact_pass);
    CHECK(check.sampled_pass);
}

TEST_CASE("symbol literal parsing") {
    const auto affine = parse_symbol("affine:1,0,0.25,0");
    const auto* a = std::get_if<AffineSymbol>(&affine);
    REQUIRE(a != nullptr);
    CHECK(a->c1 == cplx{1.0, 0.0});
    CHECK(a->c2 == cplx{0.25, 0.0});

    const auto translate = parse_symbol("translate:1.5,-2");
    CHECK(std::get<TranslationSymbol>(translate).c1 == cplx{1.5, -2.0});

    const auto general = parse_symbol("general:0;2,0;0.5,0.25");
    const auto* g = std::get_if<GeneralSymbol>(&general);
    REQUIRE(g != nullptr);
    CHECK(g->c0 == 0);
    CHECK(g->phi.coeff(1) == cplx{2.0, 0.0});
    CHECK(g->phi.coeff(2) == cplx{0.5, 0.25});

    CHECK_THROWS_AS(parse_symbol("affine:1,0,0.25"), std::invalid_argument);
    CHECK_THROWS_AS(parse_symbol("mystery:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_symbol("translate:1,zzz"), std::invalid_argument);
    CHECK_THROWS_AS(parse_symbol("general:-1;1,0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_symbol("no-colon"), std::invalid_argument);

    // format -> parse round trip
    const auto round = parse_symbol(format_symbol(affine));
    CHECK(std::get<AffineSymbol>(round).c1 == a->c1);
    CHECK(std::get<AffineSymbol>(round).c2 == a->c2);
}

TEST_CASE("symbol evaluation") {
    const AffineSymbol sym{{1.0, 0.0}, {0.25, 0.0}};
    CHECK(std::abs(sym.at({0.0, 0.0}) - cplx{1.25, 0.0}) < 1e-15);
    CHECK(std::abs(sym.at({1.0, 0.0}) - cplx{1.125, 0.0}) < 1e-15);

    const TranslationSymbol tr{{0.5, 0.25}};
    CHECK(tr.at({1.0, 1.0}) == cplx{1.5, 1.25});

    const GeneralSymbol g = GeneralSymbol::from_affine(sym);
    CHECK(std::abs(g.at({1.0, 0.0}) - sym.at({1.0, 0.0})) < 1e-15);
}
