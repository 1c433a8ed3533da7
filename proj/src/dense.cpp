#include "dirops/dense.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dirops/accum.hpp"

namespace dirops {

std::vector<cplx> matvec(const DenseMatrix& m, const std::vector<cplx>& x) {
    if (x.size() != m.cols)
        throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<cplx> y(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        cplx acc{};
        const cplx* row = m.a.data() + i * m.cols;
        for (std::size_t j = 0; j < m.cols; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

std::vector<cplx> adjoint_matvec(const DenseMatrix& m, const std::vector<cplx>& y) {
    if (y.size() != m.rows)
        throw std::invalid_argument("adjoint_matvec: dimension mismatch");
    std::vector<cplx> x(m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
        const cplx* row = m.a.data() + i * m.cols;
        const cplx yi = y[i];
        for (std::size_t j = 0; j < m.cols; ++j) x[j] += std::conj(row[j]) * yi;
    }
    return x;
}

DenseMatrix matmul(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    if (lhs.cols != rhs.rows)
        throw std::invalid_argument("matmul: dimension mismatch");
    DenseMatrix out(lhs.rows, rhs.cols);
    for (std::size_t i = 0; i < lhs.rows; ++i) {
        for (std::size_t k = 0; k < lhs.cols; ++k) {
            const cplx l = lhs.at(i, k);
            if (l == cplx{}) continue;
            const cplx* rrow = rhs.a.data() + k * rhs.cols;
            cplx* orow = out.a.data() + i * out.cols;
            for (std::size_t j = 0; j < rhs.cols; ++j) orow[j] += l * rrow[j];
        }
    }
    return out;
}

DenseMatrix adjoint(const DenseMatrix& m) {
    DenseMatrix out(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            out.at(j, i) = std::conj(m.at(i, j));
    return out;
}

double frobenius_norm(const DenseMatrix& m) {
    NeumaierSum acc;
    for (const cplx& v : m.a) acc.add(std::norm(v));
    return std::sqrt(acc.value());
}

DenseMatrix row_block(const DenseMatrix& m, std::size_t row_begin) {
    if (row_begin > m.rows)
        throw std::invalid_argument("row_block: row_begin out of range");
    DenseMatrix out(m.rows - row_begin, m.cols);
    std::copy(m.a.begin() + static_cast<std::ptrdiff_t>(row_begin * m.cols), m.a.end(),
              out.a.begin());
    return out;
}

} // namespace dirops
