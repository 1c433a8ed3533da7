#include "dirops/operator_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "dirops/accum.hpp"
#include "dirops/parallel.hpp"

namespace dirops {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// -((-c2)^k / k!) n^{-c1} (ln n)^{k+1} for n >= 2, assembled in log space
// so K ~ 100 stays clear of overflow/underflow in the factors.
// log_kfact = lgamma(k + 1), precomputed by the caller.
cplx affine_entry(const cplx& c1, const cplx& c2, std::size_t k, std::size_t n,
                  double log_kfact) {
    if (n < 2) return {};
    const double ln = std::log(static_cast<double>(n));
    const double lnln = std::log(ln);
    if (c2 == cplx{}) {
        if (k > 0) return {};
        return -std::exp(-c1 * ln) * ln;
    }
    const double log_mag = static_cast<double>(k) * std::log(std::abs(c2)) - log_kfact +
                           (static_cast<double>(k) + 1.0) * lnln - c1.real() * ln;
    if (log_mag < -745.0) return {};
    const double mag = std::exp(log_mag);
    if (c1.imag() == 0.0 && c2.imag() == 0.0) {
        // real parameters: track the sign of -(-c2)^k exactly
        double sign = (k % 2 == 0) ? -1.0 : 1.0;
        if (c2.real() < 0.0 && k % 2 == 1) sign = -sign;
        return {sign * mag, 0.0};
    }
    const double phase = static_cast<double>(k) * std::arg(-c2) - c1.imag() * ln;
    return -mag * cplx{std::cos(phase), std::sin(phase)};
}

} // namespace

bool OperatorMatrix::square_embedding_available() const {
    if (grid == RowGrid::Integers) return true;
    if (row_count == 0) return false;
    const double top = std::ldexp(1.0, static_cast<int>(row_count - 1));
    return top <= static_cast<double>(col_count);
}

DenseMatrix OperatorMatrix::square_embedding() const {
    if (grid == RowGrid::Integers) return entries;
    if (!square_embedding_available())
        throw std::invalid_argument("square_embedding: needs N >= 2^(K-1)");
    DenseMatrix s(col_count, col_count);
    for (std::size_t k = 0; k < row_count; ++k) {
        const std::size_t row = (std::size_t{1} << k) - 1;
        for (std::size_t j = 0; j < col_count; ++j) s.at(row, j) = entries.at(k, j);
    }
    return s;
}

OperatorMatrix build_affine_matrix(const AffineSymbol& sym, std::size_t K, std::size_t N) {
    if (validate_affine(sym) != AffineVerdict::StrictInterior)
        throw std::invalid_argument(
            "build_affine_matrix: symbol must satisfy Re(c1) > 1/2 + |c2|");
    if (K < 1 || N < 2)
        throw std::invalid_argument("build_affine_matrix: requires K >= 1, N >= 2");

    OperatorMatrix m;
    m.row_count = K;
    m.col_count = N;
    m.grid = RowGrid::PowersOfTwo;
    m.symbol = sym;
    m.entries = DenseMatrix(K, N);
    std::vector<double> log_fact(K);
    for (std::size_t k = 0; k < K; ++k)
        log_fact[k] = std::lgamma(static_cast<double>(k) + 1.0);
    parallel_for_index(N, [&](std::size_t j) {
        const std::size_t n = j + 1;
        for (std::size_t k = 0; k < K; ++k)
            m.entries.at(k, j) = affine_entry(sym.c1, sym.c2, k, n, log_fact[k]);
    });
    return m;
}

OperatorMatrix build_translation_matrix(const TranslationSymbol& sym, std::size_t N) {
    if (N < 1)
        throw std::invalid_argument("build_translation_matrix: requires N >= 1");
    OperatorMatrix m;
    m.row_count = N;
    m.col_count = N;
    m.grid = RowGrid::Integers;
    m.symbol = sym;
    m.entries = DenseMatrix(N, N);
    for (std::size_t n = 2; n <= N; ++n) {
        const double ln = std::log(static_cast<double>(n));
        m.entries.at(n - 1, n - 1) = -std::exp(-sym.c1 * ln) * ln;
    }
    return m;
}

DirichletPolynomial apply(const OperatorMatrix& m, const DirichletPolynomial& p) {
    if (p.length() > m.col_count)
        throw std::invalid_argument("apply: polynomial longer than matrix columns");
    std::vector<cplx> x(m.col_count);
    for (std::size_t n = 1; n <= p.length(); ++n) x[n - 1] = p.coeff(n);
    const std::vector<cplx> b = matvec(m.entries, x);

    if (m.grid == RowGrid::Integers) return DirichletPolynomial(b);

    if (m.row_count > 21)
        throw std::invalid_argument("apply: K > 21 cannot be re-expressed on the integer grid");
    DirichletPolynomial out = DirichletPolynomial::zero(std::size_t{1} << (m.row_count - 1));
    for (std::size_t k = 0; k < m.row_count; ++k)
        out.set_coeff(std::size_t{1} << k, b[k]);
    return out;
}

double operator_norm_est(const OperatorMatrix& m, const PowerOptions& opts) {
    return power_operator_norm(m.entries, opts);
}

double approx_bound(double c1, double c2, int n) {
    if (n < 0) throw std::invalid_argument("approx_bound: n must be >= 0");
    if (c2 < 0.0)
        throw std::invalid_argument("approx_bound: requires c2 >= 0");
    if (!(2.0 * c1 - 2.0 * c2 - 1.0 > 0.0))
        throw std::invalid_argument("approx_bound: requires 2 c1 - 2 c2 - 1 > 0");
    const double d = 2.0 * c1 - 1.0;
    const double x = 2.0 * c2 / d;
    const double denom = d * d - 4.0 * c2 * c2;
    const double xpow = (n == 0) ? 1.0 : std::pow(x, 2 * n);
    return std::sqrt(2.0 * c1 / (denom * denom * denom) * (16.0 * x * x + 4.0 * xpow));
}

SingularValueReport singular_values(const OperatorMatrix& m, double gram_tol) {
    SingularValueReport report;
    report.sigmas = jacobi_singular_values(m.entries, gram_tol);
    report.c1 = report.c2 = report.x = std::numeric_limits<double>::quiet_NaN();
    if (const auto* a = std::get_if<AffineSymbol>(&m.symbol)) {
        const bool real_params = a->c1.imag() == 0.0 && a->c2.imag() == 0.0 &&
                                 a->c2.real() >= 0.0;
        if (real_params && 2.0 * a->c1.real() - 2.0 * a->c2.real() - 1.0 > 0.0) {
            report.c1 = a->c1.real();
            report.c2 = a->c2.real();
            report.x = 2.0 * report.c2 / (2.0 * report.c1 - 1.0);
            report.analytic_bounds.resize(report.sigmas.size());
            for (std::size_t n = 0; n < report.analytic_bounds.size(); ++n)
                report.analytic_bounds[n] =
                    approx_bound(report.c1, report.c2, static_cast<int>(n));
        }
    }
    return report;
}

double remainder_norm(const OperatorMatrix& m, std::size_t n, const PowerOptions& opts) {
    if (n > m.row_count)
        throw std::invalid_argument("remainder_norm: n exceeds row count");
    if (n == m.row_count) return 0.0;
    return power_operator_norm(row_block(m.entries, n), opts);
}

double hs_norm(const OperatorMatrix& m) { return frobenius_norm(m.entries); }

TailBoundedSum hs_closed_form(const AffineSymbol& sym, std::size_t N) {
    if (validate_affine(sym) != AffineVerdict::StrictInterior)
        throw std::invalid_argument("hs_closed_form: strict-interior symbol required");
    const double re_c1 = sym.c1.real();
    const double ac2 = std::abs(sym.c2);
    NeumaierSum total, tail;
    for (std::size_t n = 2; n <= N; ++n) {
        const double ln = std::log(static_cast<double>(n));
        const double weight = ln * ln * std::pow(static_cast<double>(n), -2.0 * re_c1);
        const double z2 = ac2 * ln * ac2 * ln; // (|c2| ln n)^2
        NeumaierSum inner;
        double term = 1.0; // k = 0
        inner.add(term);
        for (int k = 1; k <= 512; ++k) {
            term *= z2 / (static_cast<double>(k) * static_cast<double>(k));
            inner.add(term);
            const double next_ratio = z2 / ((static_cast<double>(k) + 1.0) * (k + 1.0));
            if (term == 0.0 ||
                (next_ratio < 0.5 && term * next_ratio < 1e-18 * inner.value())) {
                // geometric tail, ratio < 1/2 from here on
                tail.add(weight * 2.0 * term * next_ratio);
                break;
            }
        }
        total.add(weight * inner.value());
    }
    const double sq = total.value();
    const double value = std::sqrt(sq);
    const double bound = value > 0.0 ? tail.value() / (2.0 * value) : std::sqrt(tail.value());
    return {value, bound, static_cast<long>(N)};
}

double hs_row_tail_budget(const AffineSymbol& sym, std::size_t K, std::size_t N) {
    const double re_c1 = sym.c1.real();
    const double ac2 = std::abs(sym.c2);
    NeumaierSum budget;
    NeumaierSum kept;
    for (std::size_t n = 2; n <= N; ++n) {
        const double ln = std::log(static_cast<double>(n));
        const double weight = ln * ln * std::pow(static_cast<double>(n), -2.0 * re_c1);
        kept.add(weight);
        if (ac2 == 0.0) continue;
        // first dropped inner term (|c2| ln n)^{2K} / (K!)^2, doubled
        const double log_term = 2.0 * static_cast<double>(K) * std::log(ac2 * ln) -
                                2.0 * std::lgamma(static_cast<double>(K) + 1.0);
        if (log_term > -745.0) budget.add(weight * 2.0 * std::exp(log_term));
    }
    // roundoff allowance: the analytic tail underflows long before double
    // arithmetic agreement does
    return budget.value() + 1e-12 * std::max(kept.value(), 1.0);
}

double adjoint_kernel_check(const AffineSymbol& sym, HalfPlanePoint a, std::size_t K,
                            std::size_t N) {
    if (!(a.sigma > 0.5))
        throw std::invalid_argument("adjoint_kernel_check: requires Re(a) > 1/2");
    const OperatorMatrix m = build_affine_matrix(sym, K, N);

    // k_a restricted to the 2-power row grid: y_k = (2^k)^{-conj(a)}
    std::vector<cplx> y(K);
    const cplx mabar = -std::conj(a.value());
    for (std::size_t k = 0; k < K; ++k) y[k] = std::exp(mabar * (static_cast<double>(k) * kLn2));

    const std::vector<cplx> z = adjoint_matvec(m.entries, y);
    const cplx phi_a = sym.at(a.value());
    const DirichletPolynomial target = kernel_deriv_truncated(HalfPlanePoint(phi_a), N);

    double worst = 0.0;
    for (std::size_t n = 1; n <= N; ++n)
        worst = std::max(worst, std::abs(z[n - 1] - target.coeff(n)));
    return worst;
}

double hermitian_residual(const OperatorMatrix& m) {
    const DenseMatrix s = m.square_embedding();
    NeumaierSum acc;
    for (std::size_t i = 0; i < s.rows; ++i)
        for (std::size_t j = 0; j < s.cols; ++j)
            acc.add(std::norm(s.at(i, j) - std::conj(s.at(j, i))));
    return std::sqrt(acc.value());
}

std::vector<std::pair<std::size_t, double>> spectral_radius_est(const OperatorMatrix& m,
                                                               std::size_t m_max) {
    if (m_max == 0 || (m_max & (m_max - 1)) != 0)
        throw std::invalid_argument("spectral_radius_est: m_max must be a power of 2");
    DenseMatrix cur = m.square_embedding();

    std::vector<std::pair<std::size_t, double>> out;
    double log_scale = 0.0; // cur ~ A^{2^j} / exp(log_scale)
    bool dead = false;
    for (std::size_t mm = 1; mm <= m_max; mm *= 2) {
        if (dead) {
            out.emplace_back(mm, 0.0);
            continue;
        }
        const double nrm = power_operator_norm(cur);
        if (nrm == 0.0) {
            out.emplace_back(mm, 0.0);
            dead = true;
            continue;
        }
        const double log_norm = std::log(nrm) + log_scale;
        out.emplace_back(mm, std::exp(log_norm / static_cast<double>(mm)));
        if (mm * 2 <= m_max) {
            DenseMatrix sq = matmul(cur, cur);
            const double f = frobenius_norm(sq);
            if (f == 0.0) {
                cur = std::move(sq);
                log_scale = 0.0;
                dead = true;
            } else {
                for (auto& v : sq.a) v /= f;
                cur = std::move(sq);
                log_scale = 2.0 * log_scale + std::log(f);
            }
        }
    }
    return out;
}

void write_matrix_csv(const OperatorMatrix& m, std::ostream& out) {
    out << "k,n,re,im\n";
    char buf[96];
    for (std::size_t k = 0; k < m.row_count; ++k) {
        for (std::size_t j = 0; j < m.col_count; ++j) {
            const std::size_t row_id = m.grid == RowGrid::PowersOfTwo ? k : k + 1;
            const cplx v = m.entries.at(k, j);
            std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", row_id, j + 1, v.real(),
                          v.imag());
            out << buf;
        }
    }
}

void write_singular_csv(const SingularValueReport& report, std::ostream& out) {
    out << "index,sigma,analytic_bound\n";
    char buf[96];
    for (std::size_t i = 0; i < report.sigmas.size(); ++i) {
        const double bound = i < report.analytic_bounds.size()
                                 ? report.analytic_bounds[i]
                                 : std::numeric_limits<double>::quiet_NaN();
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i + 1, report.sigmas[i], bound);
        out << buf;
    }
}

} // namespace dirops
