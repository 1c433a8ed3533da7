#pragma once

#include <iosfwd>
#include <utility>
#include <variant>
#include <vector>

#include "dirops/dense.hpp"
#include "dirops/special.hpp"
#include "dirops/svd.hpp"
#include "dirops/symbols.hpp"

namespace dirops {

enum class RowGrid {
    PowersOfTwo, // row k carries the basis element 2^{-ks}
    Integers,    // row n carries n^{-s} (translation symbols, diagonal)
};

// Truncated matrix of the composition-differentiation operator in the
// basis {n^{-s}}. For an affine symbol the range lies in span{2^{-ks}}, so
// the rectangular K x N matrix on the 2-power row grid is primary:
//   A[k][n] = -((-c2)^k / k!) n^{-c1} (ln n)^{k+1},  column n = 1 zero.
// For a translation symbol the matrix is diagonal, D[n][n] = -n^{-c1} ln n.
struct OperatorMatrix {
    std::size_t row_count = 0; // K (affine) or N (translation)
    std::size_t col_count = 0; // N
    RowGrid grid = RowGrid::PowersOfTwo;
    std::variant<AffineSymbol, TranslationSymbol> symbol;
    DenseMatrix entries;

    // An N x N view with row m nonzero only when m = 2^k <= N; requires
    // N >= 2^{K-1} on the 2-power grid. Translation matrices are already
    // square on the integer grid.
    bool square_embedding_available() const;
    DenseMatrix square_embedding() const;
};

// Requires a strict-interior symbol (validate_affine), K >= 1, N >= 2.
OperatorMatrix build_affine_matrix(const AffineSymbol& sym, std::size_t K, std::size_t N);

OperatorMatrix build_translation_matrix(const TranslationSymbol& sym, std::size_t N);

// Image of a polynomial, re-expressed on the integer index grid
// (coefficient of n = 2^k is (M a)_k). Requires length(p) <= N, and
// K <= 21 on the 2-power grid so the materialized length 2^{K-1} stays
// sane; norm-level consumers use matvec on the entries directly.
DirichletPolynomial apply(const OperatorMatrix& m, const DirichletPolynomial& p);

double operator_norm_est(const OperatorMatrix& m, const PowerOptions& opts = {});

struct SingularValueReport {
    std::vector<double> sigmas; // descending, min(K, N) entries
    // bound parameters; filled when the symbol is affine with real
    // nonnegative c1, c2 in bounded mode, NaN/empty otherwise
    double c1 = 0.0, c2 = 0.0, x = 0.0;
    std::vector<double> analytic_bounds; // analytic_bounds[n] = approx_bound(c1, c2, n)
};

SingularValueReport singular_values(const OperatorMatrix& m, double gram_tol = 1e-13);

// Operator norm of the rows k >= n (the tail left after the rank-<=n
// truncation that keeps rows k < n). 0 <= n <= K.
double remainder_norm(const OperatorMatrix& m, std::size_t n, const PowerOptions& opts = {});

// sqrt( 2 c1 / ((2 c1 - 1)^2 - (2 c2)^2)^3 * (16 x^2 + 4 x^{2n}) ),
// x = 2 c2 / (2 c1 - 1). Requires real c1, c2 with c2 >= 0 and
// 2 c1 - 2 c2 - 1 > 0. approx_bound(c1, 0, n) = 0 exactly for n >= 1.
double approx_bound(double c1, double c2, int n);

// Frobenius norm of the truncated matrix.
double hs_norm(const OperatorMatrix& m);

// Closed-form Hilbert-Schmidt norm at column truncation N, all rows:
//   sqrt( sum_{n<=N} (ln n)^2 n^{-2 Re c1} sum_k (|c2| ln n)^{2k} / (k!)^2 ).
// tail_bound covers the inner k-sum truncation.
TailBoundedSum hs_closed_form(const AffineSymbol& sym, std::size_t N);

// Analytic bound on the Frobenius mass in rows k >= K (first dropped
// term, doubled), plus a 1e-12 relative roundoff allowance so that two
// correctly-equal double computations compare cleanly.
double hs_row_tail_budget(const AffineSymbol& sym, std::size_t K, std::size_t N);

// Residual of D_Phi^*(k_a) = k^{(1)}_{Phi(a)} at truncation (K, N):
// max_n | (M^H y)_n - coeff_n(kernel_deriv_truncated(Phi(a), N)) |
// with y_k = 2^{-k conj(a)}. Requires Re(a) > 1/2, strict-interior symbol.
double adjoint_kernel_check(const AffineSymbol& sym, HalfPlanePoint a, std::size_t K,
                            std::size_t N);

// Frobenius norm of S - S^H on the square embedding.
double hermitian_residual(const OperatorMatrix& m);

// ( m, ||A^m||^{1/m} ) for m = 1, 2, 4, ..., m_max on the square
// embedding, by repeated squaring with internal rescaling. m_max must be
// a power of two.
std::vector<std::pair<std::size_t, double>> spectral_radius_est(const OperatorMatrix& m,
                                                                std::size_t m_max);

// CSV dumps. Matrix: header "k,n,re,im"; singular values: header
// "index,sigma,analytic_bound" (bound column is nan when unavailable).
void write_matrix_csv(const OperatorMatrix& m, std::ostream& out);
void write_singular_csv(const SingularValueReport& report, std::ostream& out);

} // namespace dirops
