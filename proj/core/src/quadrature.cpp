#include "fracfem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fracfem {

namespace {

TriangleRule make_rule(int degree) {
    TriangleRule r;
    r.degree = degree;
    auto orbit1 = [&](double w) {
        r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
        r.weights.push_back(w);
    };
    auto orbit3 = [&](double w, double a) {
        double b = 1.0 - 2.0 * a;
        r.points.push_back({a, a, b});
        r.points.push_back({a, b, a});
        r.points.push_back({b, a, a});
        r.weights.insert(r.weights.end(), 3, w);
    };
    switch (degree) {
        case 1:
            orbit1(1.0);
            break;
        case 2:
            orbit3(1.0 / 3.0, 1.0 / 6.0);
            break;
        case 3:  // the classic degree-3 rules carry a negative weight; use the
        case 4:  // positive 6-point degree-4 rule for both
            orbit3(0.223381589678011, 0.445948490915965);
            orbit3(0.109951743655322, 0.091576213509771);
            r.degree = 4;
            break;
        case 5:
            orbit1(9.0 / 40.0);
            orbit3((155.0 + std::sqrt(15.0)) / 1200.0, 0.4701420641051151);
            orbit3((155.0 - std::sqrt(15.0)) / 1200.0, 0.1012865073234563);
            break;
        default:
            throw std::invalid_argument("triangle_rule: unsupported degree " +
                                        std::to_string(degree));
    }
    return r;
}

}  // namespace

const TriangleRule& triangle_rule(int degree) {
    if (degree < 1 || degree > 5)
        throw std::invalid_argument("triangle_rule: unsupported degree " + std::to_string(degree));
    static const TriangleRule rules[5] = {make_rule(1), make_rule(2), make_rule(3), make_rule(4),
                                          make_rule(5)};
    return rules[degree - 1];
}

std::vector<QuadPoint> map_rule_to_cell(const TriangleRule& rule, const Triangulation& mesh,
                                        int cell) {
    const Triangle& t = mesh.cells().at(cell);
    const Vertex& p0 = mesh.vertices()[t.v[0]];
    const Vertex& p1 = mesh.vertices()[t.v[1]];
    const Vertex& p2 = mesh.vertices()[t.v[2]];
    std::vector<QuadPoint> out;
    out.reserve(rule.points.size());
    for (size_t i = 0; i < rule.points.size(); ++i) {
        const auto& l = rule.points[i];
        out.push_back({l[0] * p0.x + l[1] * p1.x + l[2] * p2.x,
                       l[0] * p0.y + l[1] * p1.y + l[2] * p2.y, rule.weights[i] * t.area});
    }
    return out;
}

}  // namespace fracfem
