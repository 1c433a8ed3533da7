#pragma once

#include <cstddef>
#include <vector>

#include "dirops/dirichlet.hpp"

namespace dirops {

// Dense complex matrix, row-major.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> a;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    cplx& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    cplx at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

std::vector<cplx> matvec(const DenseMatrix& m, const std::vector<cplx>& x);
std::vector<cplx> adjoint_matvec(const DenseMatrix& m, const std::vector<cplx>& y);
DenseMatrix matmul(const DenseMatrix& lhs, const DenseMatrix& rhs);
DenseMatrix adjoint(const DenseMatrix& m);
double frobenius_norm(const DenseMatrix& m);

// Submatrix of rows i >= row_begin.
DenseMatrix row_block(const DenseMatrix& m, std::size_t row_begin);

} // namespace dirops
