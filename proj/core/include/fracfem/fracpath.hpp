#pragma once
#include <vector>

#include "fracfem/mesh.hpp"

namespace fracfem {

enum class Axis { x, y };

// One of the four directional derivative operators. `from_upper == false`
// integrates from the lower boundary function (a(y) resp. c(x)) toward the
// point; `from_upper == true` from the upper one (b(y) resp. d(x)).
struct Direction {
    Axis axis = Axis::x;
    bool from_upper = false;
};

inline constexpr Direction kXLeft{Axis::x, false};
inline constexpr Direction kXRight{Axis::x, true};
inline constexpr Direction kYDown{Axis::y, false};
inline constexpr Direction kYUp{Axis::y, true};

// Path coordinate: s increases along the integration direction, r is the
// transverse coordinate. Upper directions are handled by reflection so a
// single left/down kernel serves all four cases.
inline double path_s(Direction d, double x, double y) {
    double c = (d.axis == Axis::x) ? x : y;
    return d.from_upper ? -c : c;
}
inline double path_r(Direction d, double x, double y) {
    return (d.axis == Axis::x) ? y : x;
}

// Ascending cell ids covering the axis-aligned influence strip of `cell`.
// Superset of the cells any path from a point of `cell` can cross.
using InfluenceSet = std::vector<int>;
InfluenceSet influence_elements(const Triangulation& mesh, int cell, Direction dir);

struct IntegralPath {
    Direction dir;
    double x0 = 0.0, y0 = 0.0;  // evaluation point
    double s_eval = 0.0;        // path coordinate of the evaluation point
    double r = 0.0;             // transverse coordinate of the ray
    std::vector<double> breakpoints;  // ascending in s; front on the boundary, back == s_eval
    std::vector<int> interval_cells;  // owning cell per open interval

    // Physical point at path coordinate s.
    void physical(double s, double* x, double* y) const {
        double c = dir.from_upper ? -s : s;
        if (dir.axis == Axis::x) {
            *x = c;
            *y = r;
        } else {
            *x = r;
            *y = c;
        }
    }
};

// Ordered intersection points of the ray through (px, py) against element
// edges, truncated at the point; duplicate breakpoints within
// 1e-12 * domain diameter are merged. The point must lie strictly inside a
// mesh cell. Throws DegeneratePath if fewer than 2 breakpoints survive.
IntegralPath integral_path(const Triangulation& mesh, const InfluenceSet& influence, double px,
                           double py, Direction dir);

}  // namespace fracfem
