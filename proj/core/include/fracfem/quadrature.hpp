#pragma once
#include <array>
#include <vector>

#include "fracfem/mesh.hpp"

namespace fracfem {

// Symmetric Gaussian rule on the reference triangle, barycentric points and
// weights summing to 1. Physical weight on cell K is w_i * area(K).
struct TriangleRule {
    int degree = 0;
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;
};

// Rules exact to the requested polynomial degree, all weights positive.
// Supported degrees: 1..5. Throws std::invalid_argument otherwise.
const TriangleRule& triangle_rule(int degree);

// Default degree for the fractional pairings.
inline constexpr int kDefaultQuadratureDegree = 4;

struct QuadPoint {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
};

std::vector<QuadPoint> map_rule_to_cell(const TriangleRule& rule, const Triangulation& mesh,
                                        int cell);

}  // namespace fracfem
