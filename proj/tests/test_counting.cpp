#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "dirops/counting.hpp"

using namespace dirops;

namespace {
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kPi = 3.14159265358979323846;

const AffineSymbol kQuarter{{1.0, 0.0}, {0.25, 0.0}};

double exact_divergence_integral(double delta, double epsilon) {
    // int_{-1}^{1} (1/2)(1/(d^2+t^2) - 1/(e^2+t^2)) dt
    return std::atan(1.0 / delta) / delta - std::atan(1.0 / epsilon) / epsilon;
}
} // namespace

TEST_CASE("closed form of the mean counting function") {
    // boundary of the support disk
    CHECK(counting_closed_affine(kQuarter, {1.25, 0.0}) == 0.0);
    // outside
    CHECK(counting_closed_affine(kQuarter, {1.5, 0.3}) == 0.0);
    // interior value ln(|c2| / |w - c1|)
    CHECK(counting_closed_affine(kQuarter, {1.1, 0.0}) ==
          doctest::Approx(std::log(2.5)).epsilon(1e-15));
    CHECK_THROWS_AS(counting_closed_affine(kQuarter, {1.0, 0.0}), std::invalid_argument);
    // constant symbol has empty preimages everywhere
    CHECK(counting_closed_affine(AffineSymbol{{1.0, 0.0}, {}}, {0.9, 0.0}) == 0.0);
}

TEST_CASE("radial symmetry and support characterization") {
    const double r = 0.1;
    const double ref = counting_closed_affine(kQuarter, kQuarter.c1 + cplx{r, 0.0});
    for (int i = 1; i < 8; ++i) {
        const double th = 2.0 * kPi * i / 8.0;
        const cplx w = kQuarter.c1 + r * cplx{std::cos(th), std::sin(th)};
        CHECK(counting_closed_affine(kQuarter, w) == doctest::Approx(ref).epsilon(1e-13));
    }
    for (double rr : {0.25, 0.3, 1.0})
        CHECK(counting_closed_affine(kQuarter, kQuarter.c1 + cplx{rr, 0.0}) == 0.0);
    for (double rr : {0.01, 0.1, 0.249})
        CHECK(counting_closed_affine(kQuarter, kQuarter.c1 + cplx{rr, 0.0}) > 0.0);
}

TEST_CASE("counting oracle agrees with the closed form at O(1/T)") {
    // no preimages outside the disk, for every window
    for (double T : {10.0, 1e4})
        CHECK(counting_oracle(kQuarter, {1.5, 0.0}, T) == 0.0);

    for (const cplx w : {cplx{1.1, 0.0}, cplx{0.97, 0.05}, cplx{1.0, -0.2}}) {
        const double closed = counting_closed_affine(kQuarter, w);
        REQUIRE(closed > 0.0);
        const double re_s0 = closed / kLn2;
        for (double T : {1e4, 1e5}) {
            const double err = std::abs(counting_oracle(kQuarter, w, T) - closed);
            CHECK(err <= 3.0 * kPi * re_s0 / T);
        }
    }
}

TEST_CASE("oracle error shrinks roughly tenfold from T=1e4 to T=1e5") {
    for (const cplx w : {kQuarter.c1 + cplx{0.03, 0.0},
                         kQuarter.c1 + 0.08 * cplx{std::cos(1.9), std::sin(1.9)}}) {
        const double closed = counting_closed_affine(kQuarter, w);
        const double e4 = std::abs(counting_oracle(kQuarter, w, 1e4) - closed);
        const double e5 = std::abs(counting_oracle(kQuarter, w, 1e5) - closed);
        REQUIRE(e5 > 0.0);
        CHECK(e4 / e5 >= 5.0);
        CHECK(e4 / e5 <= 20.0);
    }
}

TEST_CASE("counting oracle preconditions") {
    CHECK_THROWS_AS(counting_oracle(kQuarter, {1.1, 0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(counting_oracle(kQuarter, {1.1, 0.0}, 1e4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(counting_oracle(kQuarter, kQuarter.c1, 1e4), std::invalid_argument);
    // sigma_cut above the preimage real part filters everything
    const double re_s0 = std::log(2.5) / kLn2;
    CHECK(counting_oracle(kQuarter, {1.1, 0.0}, 1e4, re_s0 + 0.1) == 0.0);
}

TEST_CASE("majorant") {
    // boundary Re(w) = 1/2: reflection makes both moduli equal
    for (double t : {-3.0, 0.25, 7.0})
        CHECK(std::abs(counting_majorant({0.5, t}, {1.0, 0.0})) <= 1e-12);
    // real ordering w > v > 1/2
    CHECK(counting_majorant({2.0, 0.0}, {1.0, 0.0}) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(counting_majorant({2.0, 0.0}, {1.0, 0.0}) > 0.0);

    CHECK_THROWS_AS(counting_majorant({1.0, 0.0}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(counting_majorant({0.4, 0.0}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(counting_majorant({1.0, 0.0}, {0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("domination of the closed form by the majorant on interior grids") {
    for (const AffineSymbol& sym :
         {kQuarter, AffineSymbol{{1.5, 0.0}, {0.5, 0.0}}, AffineSymbol{{2.0, 0.0}, {1.0, 0.0}}}) {
        const double ac2 = std::abs(sym.c2);
        const double gap_floor = std::log((2.0 * sym.c1.real() - 1.0 - ac2) / ac2);
        for (int i = 0; i < 1000; ++i) {
            const double r = ac2 * (0.001 + 0.998 * (i % 37) / 37.0);
            const double th = 2.0 * kPi * i / 1000.0;
            const cplx w = sym.c1 + r * cplx{std::cos(th), std::sin(th)};
            if (!(w.real() > 0.5)) continue;
            const double m = counting_closed_affine(sym, w);
            const double maj = counting_majorant(w, sym.c1);
            CHECK(m <= maj + 1e-12);
            CHECK(maj - m >= gap_floor - 1e-12);
        }
    }
}

TEST_CASE("compactness ratio") {
    // support separation: identically zero for Re(w) below the disk
    for (double re : {0.51, 0.55, 0.6, 0.7})
        CHECK(compactness_ratio(kQuarter, {re, 0.0}) == 0.0);
    CHECK(compactness_ratio(kQuarter, {1.1, 0.0}) > 0.0);
    CHECK(std::isfinite(compactness_ratio(kQuarter, {1.1, 0.0})));
    CHECK_THROWS_AS(compactness_ratio(kQuarter, {0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(compactness_ratio(kQuarter, kQuarter.c1), std::invalid_argument);
}

TEST_CASE("divergence demonstration against the closed form") {
    CHECK(divergence_demo(0.1, 0.1) == 0.0);
    for (double delta : {1e-2, 1e-3}) {
        const double numeric = divergence_demo(delta, 0.1);
        const double exact = exact_divergence_integral(delta, 0.1);
        CHECK(std::abs(numeric - exact) <= 1e-7 * exact);
    }
    const double ratio = divergence_demo(5e-4, 0.1) / divergence_demo(1e-3, 0.1);
    CHECK(ratio >= 1.7);
    CHECK(ratio <= 2.1);
    CHECK(divergence_demo(1e-4, 0.1) / divergence_demo(1e-2, 0.1) >= 50.0);

    CHECK_THROWS_AS(divergence_demo(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(divergence_demo(0.2, 0.1), std::invalid_argument);
}

TEST_CASE("grid scan output is independent of the worker count") {
    const auto run = [] {
        std::ostringstream os;
        write_counting_csv(
            counting_grid_scan(kQuarter, 0.8, 1.3, 6, -0.2, 0.2, 5, 1e4), os);
        return os.str();
    };
    setenv("DIROPS_THREADS", "1", 1);
    const std::string serial = run();
    setenv("DIROPS_THREADS", "8", 1);
    const std::string parallel = run();
    unsetenv("DIROPS_THREADS");
    CHECK(serial == parallel);
    CHECK(serial.rfind("re_w,im_w,m_closed,m_oracle,abs_err,majorant,ratio\n", 0) == 0);
}
