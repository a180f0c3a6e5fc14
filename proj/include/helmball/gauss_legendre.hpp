#pragma once

#include <vector>

namespace helmball {

/// n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

/// The same rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

}  // namespace helmball
