#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace dirops {

// Gauss-Legendre nodes and weights on [-1, 1], Newton iteration from the
// Chebyshev initial guess.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

// Recursive adaptive Simpson on [a, b] with absolute tolerance eps_abs.
// Throws NonConvergence past depth 64.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double eps_abs);

} // namespace dirops
