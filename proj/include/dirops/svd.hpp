#pragma once

#include <vector>

#include "dirops/dense.hpp"

namespace dirops {

struct PowerOptions {
    double rel_tol = 1e-12; // relative change of the sigma^2 estimate between iterates
    long max_iters = 100000;
};

// Largest singular value via power iteration on A^H A, deterministic start
// vector. Throws NonConvergence when the iteration cap is reached.
double power_operator_norm(const DenseMatrix& m, const PowerOptions& opts = {});

// Full descending singular spectrum (min(rows, cols) values) via one-sided
// Jacobi orthogonalization of the columns. Sweeps until every off-diagonal
// Gram entry satisfies |G_pq| <= gram_tol * sqrt(G_pp G_qq).
std::vector<double> jacobi_singular_values(const DenseMatrix& m, double gram_tol = 1e-13);

} // namespace dirops
