#include "dirops/verification.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "dirops/accum.hpp"
#include "dirops/operator_matrix.hpp"
#include "dirops/quadrature.hpp"

namespace dirops {

namespace {

void check_spec(const QuadratureSpec& quad) {
    if (quad.radial_nodes < 8 || quad.angular_nodes < 8)
        throw std::invalid_argument("QuadratureSpec: radial and angular nodes must be >= 8");
    if (!(quad.u_cutoff >= 20.0))
        throw std::invalid_argument("QuadratureSpec: u_cutoff must be >= 20");
}

// p''(w) = sum a_n (ln n)^2 n^{-w}
cplx second_derivative_at(const DirichletPolynomial& p, cplx w) {
    ComplexSum acc;
    for (std::size_t n = 2; n <= p.length(); ++n) {
        const cplx a = p.coeff(n);
        if (a == cplx{}) continue;
        const double ln = std::log(static_cast<double>(n));
        acc.add(a * (ln * ln) * std::exp(-w * ln));
    }
    return acc.value();
}

cplx first_derivative_at(const DirichletPolynomial& p, cplx w) {
    ComplexSum acc;
    for (std::size_t n = 2; n <= p.length(); ++n) {
        const cplx a = p.coeff(n);
        if (a == cplx{}) continue;
        const double ln = std::log(static_cast<double>(n));
        acc.add(-a * ln * std::exp(-w * ln));
    }
    return acc.value();
}

double disk_integral(const AffineSymbol& sym, const DirichletPolynomial& p, int radial,
                     int angular, double u_cutoff) {
    const double ac2 = std::abs(sym.c2);
    if (ac2 == 0.0) return 0.0;
    const GaussLegendre gl = gauss_legendre(radial);
    NeumaierSum acc;
    for (int i = 0; i < radial; ++i) {
        const double u = 0.5 * u_cutoff * (gl.nodes[i] + 1.0);
        const double wu = 0.5 * u_cutoff * gl.weights[i];
        const double r = ac2 * std::exp(-u);
        NeumaierSum ring;
        for (int j = 0; j < angular; ++j) {
            const double theta = 2.0 * M_PI * j / angular;
            const cplx w = sym.c1 + r * cplx{std::cos(theta), std::sin(theta)};
            ring.add(std::norm(second_derivative_at(p, w)));
        }
        const double dtheta = 2.0 * M_PI / angular;
        acc.add(wu * ring.value() * dtheta * u * std::exp(-2.0 * u));
    }
    return 2.0 / M_PI * ac2 * ac2 * acc.value();
}

// u e^{-2u} tail past the cutoff, with |p''|^2 bounded on the disk
double cutoff_tail_bound(const AffineSymbol& sym, const DirichletPolynomial& p,
                         double u_cutoff) {
    const double ac2 = std::abs(sym.c2);
    if (ac2 == 0.0) return 0.0;
    NeumaierSum mag;
    const double sigma_min = sym.c1.real() - ac2;
    for (std::size_t n = 2; n <= p.length(); ++n) {
        const double ln = std::log(static_cast<double>(n));
        mag.add(std::abs(p.coeff(n)) * ln * ln * std::pow(static_cast<double>(n), -sigma_min));
    }
    const double bound_sq = mag.value() * mag.value();
    const double tail_u = std::exp(-2.0 * u_cutoff) * (2.0 * u_cutoff + 1.0) / 4.0;
    return 2.0 / M_PI * ac2 * ac2 * bound_sq * 2.0 * M_PI * tail_u;
}

} // namespace

double cov_lhs(const AffineSymbol& sym, const DirichletPolynomial& p, std::size_t K,
               double* row_tail_bound) {
    if (validate_affine(sym) != AffineVerdict::StrictInterior)
        throw std::invalid_argument("cov_lhs: strict-interior symbol required");
    const std::size_t N = std::max<std::size_t>(p.length(), 2);
    const OperatorMatrix m = build_affine_matrix(sym, K, N);
    std::vector<cplx> x(N);
    for (std::size_t n = 1; n <= p.length(); ++n) x[n - 1] = p.coeff(n);
    const std::vector<cplx> b = matvec(m.entries, x);
    NeumaierSum acc;
    for (const cplx& v : b) acc.add(std::norm(v));

    if (row_tail_bound) {
        // |b_k| <= (|c2|^k / k!) sum_n |a_n| n^{-Re c1} (ln n)^{k+1}; bound the
        // dropped rows by the (ln N)^{k+1} majorant of the inner sum.
        NeumaierSum base;
        for (std::size_t n = 2; n <= p.length(); ++n)
            base.add(std::abs(p.coeff(n)) *
                     std::pow(static_cast<double>(n), -sym.c1.real()));
        const double c = base.value();
        const double lnN = std::log(static_cast<double>(std::max<std::size_t>(p.length(), 2)));
        NeumaierSum tail;
        double log_term = 0.0;
        for (std::size_t k = K; k < K + 200; ++k) {
            log_term = static_cast<double>(k) * std::log(std::abs(sym.c2) + 1e-300) -
                       std::lgamma(static_cast<double>(k) + 1.0) +
                       (static_cast<double>(k) + 1.0) * std::log(lnN);
            if (log_term < -400.0) break;
            const double bk = c * std::exp(log_term);
            tail.add(bk * bk);
        }
        *row_tail_bound = tail.value();
    }
    return acc.value();
}

double cov_rhs(const AffineSymbol& sym, const DirichletPolynomial& p,
               const QuadratureSpec& quad, double* err_estimate) {
    if (validate_affine(sym) != AffineVerdict::StrictInterior)
        throw std::invalid_argument("cov_rhs: strict-interior symbol required");
    check_spec(quad);

    const double point_term = std::norm(first_derivative_at(p, sym.c1));
    const double full = disk_integral(sym, p, quad.radial_nodes, quad.angular_nodes,
                                      quad.u_cutoff);
    if (err_estimate) {
        const int half_r = std::max(4, quad.radial_nodes / 2);
        const int half_a = std::max(4, quad.angular_nodes / 2);
        const double half = disk_integral(sym, p, half_r, half_a, quad.u_cutoff);
        *err_estimate = std::abs(full - half) + cutoff_tail_bound(sym, p, quad.u_cutoff) +
                        1e-14 * (point_term + full);
    }
    return point_term + full;
}

CovReport cov_check(const AffineSymbol& sym, const DirichletPolynomial& p, std::size_t K,
                    const QuadratureSpec& quad) {
    CovReport report;
    report.K = K;
    report.radial_nodes = quad.radial_nodes;
    report.angular_nodes = quad.angular_nodes;

    double lhs_tail = 0.0, rhs_err = 0.0;
    report.lhs = cov_lhs(sym, p, K, &lhs_tail);
    report.rhs = cov_rhs(sym, p, quad, &rhs_err);
    report.tail_budget = lhs_tail + rhs_err;

    if (report.lhs < 1e-30 && report.rhs < 1e-30)
        report.rel_err = 0.0;
    else
        report.rel_err = std::abs(report.lhs - report.rhs) / std::max(report.lhs, 1e-30);
    return report;
}

void write_cov_json(const CovReport& report, std::ostream& out) {
    nlohmann::ordered_json j;
    j["lhs"] = report.lhs;
    j["rhs"] = report.rhs;
    j["rel_err"] = report.rel_err;
    j["K"] = report.K;
    j["radial_nodes"] = report.radial_nodes;
    j["angular_nodes"] = report.angular_nodes;
    j["tail_budget"] = report.tail_budget;
    out << j.dump(2) << "\n";
}

} // namespace dirops
