#include "fracfem/fracpath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracfem/errors.hpp"

namespace fracfem {

namespace {

// Cell bbox in path coordinates.
struct SRBox {
    double smin, smax, rmin, rmax;
};

SRBox srbox(const BoundingBox& bb, Direction d) {
    double s0, s1;
    if (d.axis == Axis::x) {
        s0 = bb.xmin;
        s1 = bb.xmax;
    } else {
        s0 = bb.ymin;
        s1 = bb.ymax;
    }
    if (d.from_upper) {
        double t = s0;
        s0 = -s1;
        s1 = -t;
    }
    double r0 = (d.axis == Axis::x) ? bb.ymin : bb.xmin;
    double r1 = (d.axis == Axis::x) ? bb.ymax : bb.xmax;
    return {s0, s1, r0, r1};
}

}  // namespace

InfluenceSet influence_elements(const Triangulation& mesh, int cell, Direction dir) {
    const double tol = 1e-12 * mesh.diameter();
    SRBox home = srbox(mesh.cell_bbox(cell), dir);
    InfluenceSet out;
    for (int c = 0; c < mesh.num_cells(); ++c) {
        SRBox bb = srbox(mesh.cell_bbox(c), dir);
        if (bb.rmax < home.rmin - tol || bb.rmin > home.rmax + tol) continue;
        if (bb.smin > home.smax + tol) continue;
        out.push_back(c);
    }
    return out;
}

IntegralPath integral_path(const Triangulation& mesh, const InfluenceSet& influence, double px,
                           double py, Direction dir) {
    const double tol = 1e-12 * mesh.diameter();
    IntegralPath path;
    path.dir = dir;
    path.x0 = px;
    path.y0 = py;
    path.s_eval = path_s(dir, px, py);
    path.r = path_r(dir, px, py);

    // Crossings of candidate cells with the ray r == path.r, plus each cell's
    // own coverage segment [smin, smax] used for interval ownership.
    struct Segment {
        double smin, smax;
        int cell;
    };
    std::vector<double> cuts;
    std::vector<Segment> segments;
    cuts.reserve(4 * influence.size());
    for (int c : influence) {
        const Triangle& t = mesh.cells()[c];
        double smin = std::numeric_limits<double>::infinity();
        double smax = -smin;
        bool touched = false;
        for (int e = 0; e < 3; ++e) {
            const Vertex& a = mesh.vertices()[t.v[e]];
            const Vertex& b = mesh.vertices()[t.v[(e + 1) % 3]];
            double ra = path_r(dir, a.x, a.y) - path.r;
            double rb = path_r(dir, b.x, b.y) - path.r;
            double sa = path_s(dir, a.x, a.y);
            double sb = path_s(dir, b.x, b.y);
            // Vertex on the ray contributes its endpoint; a collinear edge
            // contributes both endpoints and nothing in between.
            if (ra == 0.0) {
                smin = std::min(smin, sa);
                smax = std::max(smax, sa);
                touched = true;
            }
            if (rb == 0.0) {
                smin = std::min(smin, sb);
                smax = std::max(smax, sb);
                touched = true;
            }
            if ((ra < 0.0 && rb > 0.0) || (ra > 0.0 && rb < 0.0)) {
                double s = sa + (sb - sa) * (-ra) / (rb - ra);
                smin = std::min(smin, s);
                smax = std::max(smax, s);
                touched = true;
            }
        }
        if (!touched || smin > path.s_eval + tol) continue;
        segments.push_back({smin, smax, c});
        if (smin <= path.s_eval + tol) cuts.push_back(smin);
        if (smax <= path.s_eval + tol) cuts.push_back(smax);
    }

    std::sort(cuts.begin(), cuts.end());
    std::vector<double>& bp = path.breakpoints;
    for (double s : cuts) {
        if (s > path.s_eval - tol) break;
        if (bp.empty() || s - bp.back() > tol) bp.push_back(s);
    }
    bp.push_back(path.s_eval);
    if (bp.size() < 2)
        throw DegeneratePath("integral path collapsed to fewer than 2 breakpoints");

    // Ownership by coverage of the interval midpoint; ties broken by the best
    // barycentric margin of the physical midpoint.
    std::sort(segments.begin(), segments.end(),
              [](const Segment& a, const Segment& b) { return a.smin < b.smin; });
    path.interval_cells.resize(bp.size() - 1);
    size_t lo = 0;
    std::vector<size_t> active;
    for (size_t j = 0; j + 1 < bp.size(); ++j) {
        double mid = 0.5 * (bp[j] + bp[j + 1]);
        while (lo < segments.size() && segments[lo].smin <= mid + tol) {
            active.push_back(lo);
            ++lo;
        }
        active.erase(std::remove_if(active.begin(), active.end(),
                                    [&](size_t k) { return segments[k].smax < mid - tol; }),
                     active.end());
        int owner = -1;
        double best = -std::numeric_limits<double>::infinity();
        double mx, my;
        path.physical(mid, &mx, &my);
        for (size_t k : active) {
            auto l = mesh.barycentric(segments[k].cell, mx, my);
            double margin = std::min({l[0], l[1], l[2]});
            if (margin > best) {
                best = margin;
                owner = segments[k].cell;
            }
        }
        if (owner < 0 || best < -1e-9)
            throw DegeneratePath("no owning cell for a path interval");
        path.interval_cells[j] = owner;
    }
    return path;
}

}  // namespace fracfem
