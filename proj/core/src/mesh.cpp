#include "fracfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fracfem/errors.hpp"

namespace fracfem {

namespace {

double signed_area(const Vertex& a, const Vertex& b, const Vertex& c) {
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

}  // namespace

Triangulation::Triangulation(std::vector<Vertex> vertices, std::vector<std::array<int, 3>> cells)
    : vertices_(std::move(vertices)) {
    const int nv = static_cast<int>(vertices_.size());
    if (nv < 3 || cells.empty()) throw NonconformingMesh("mesh needs at least 3 vertices and 1 cell");
    for (const Vertex& v : vertices_) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
            throw NonconformingMesh("non-finite vertex coordinate");
    }

    cells_.reserve(cells.size());
    for (auto ids : cells) {
        for (int i : ids) {
            if (i < 0 || i >= nv) throw NonconformingMesh("cell vertex index out of range");
        }
        if (ids[0] == ids[1] || ids[1] == ids[2] || ids[0] == ids[2])
            throw NonconformingMesh("cell with repeated vertex");
        double area = signed_area(vertices_[ids[0]], vertices_[ids[1]], vertices_[ids[2]]);
        if (area < 0.0) {
            std::swap(ids[1], ids[2]);
            area = -area;
        }
        if (!(area > 0.0)) throw NonconformingMesh("degenerate (zero-area) cell");
        cells_.push_back(Triangle{ids, area});
    }

    // Conformity: every edge in at most 2 cells.
    std::map<std::pair<int, int>, int> edge_count;
    for (const Triangle& t : cells_) {
        for (int e = 0; e < 3; ++e) {
            int a = t.v[e], b = t.v[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            int c = ++edge_count[{a, b}];
            if (c > 2) throw NonconformingMesh("edge shared by more than 2 cells");
        }
    }

    vertex_to_cells_.assign(nv, {});
    cell_bboxes_.resize(cells_.size());
    h_ = 0.0;
    total_area_ = 0.0;
    domain_bbox_ = {vertices_[0].x, vertices_[0].y, vertices_[0].x, vertices_[0].y};
    for (size_t c = 0; c < cells_.size(); ++c) {
        const Triangle& t = cells_[c];
        BoundingBox bb{vertices_[t.v[0]].x, vertices_[t.v[0]].y, vertices_[t.v[0]].x,
                       vertices_[t.v[0]].y};
        for (int e = 0; e < 3; ++e) {
            const Vertex& p = vertices_[t.v[e]];
            const Vertex& q = vertices_[t.v[(e + 1) % 3]];
            h_ = std::max(h_, std::hypot(q.x - p.x, q.y - p.y));
            bb.xmin = std::min(bb.xmin, p.x);
            bb.ymin = std::min(bb.ymin, p.y);
            bb.xmax = std::max(bb.xmax, p.x);
            bb.ymax = std::max(bb.ymax, p.y);
            vertex_to_cells_[t.v[e]].push_back(static_cast<int>(c));
        }
        cell_bboxes_[c] = bb;
        total_area_ += t.area;
        domain_bbox_.xmin = std::min(domain_bbox_.xmin, bb.xmin);
        domain_bbox_.ymin = std::min(domain_bbox_.ymin, bb.ymin);
        domain_bbox_.xmax = std::max(domain_bbox_.xmax, bb.xmax);
        domain_bbox_.ymax = std::max(domain_bbox_.ymax, bb.ymax);
    }
    for (auto& list : vertex_to_cells_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
}

double Triangulation::diameter() const {
    return std::hypot(domain_bbox_.xmax - domain_bbox_.xmin, domain_bbox_.ymax - domain_bbox_.ymin);
}

std::array<double, 3> Triangulation::barycentric(int c, double x, double y) const {
    const Triangle& t = cells_[c];
    const Vertex& p0 = vertices_[t.v[0]];
    const Vertex& p1 = vertices_[t.v[1]];
    const Vertex& p2 = vertices_[t.v[2]];
    double inv2a = 1.0 / (2.0 * t.area);
    double l0 = ((p1.x - x) * (p2.y - y) - (p1.y - y) * (p2.x - x)) * inv2a;
    double l1 = ((p2.x - x) * (p0.y - y) - (p2.y - y) * (p0.x - x)) * inv2a;
    return {l0, l1, 1.0 - l0 - l1};
}

int Triangulation::locate(double x, double y, double tol) const {
    int best = -1;
    double best_margin = -tol;
    for (int c = 0; c < num_cells(); ++c) {
        const BoundingBox& bb = cell_bboxes_[c];
        if (x < bb.xmin - tol || x > bb.xmax + tol || y < bb.ymin - tol || y > bb.ymax + tol)
            continue;
        auto l = barycentric(c, x, y);
        double margin = std::min({l[0], l[1], l[2]});
        if (margin > best_margin) {
            best_margin = margin;
            best = c;
        }
    }
    return best;
}

int Triangulation::num_interior_vertices() const {
    int n = 0;
    for (const Vertex& v : vertices_)
        if (!v.on_boundary) ++n;
    return n;
}

Triangulation generate_square_mesh(int n) {
    if (n < 2) throw std::invalid_argument("generate_square_mesh: n must be >= 2");
    std::vector<Vertex> verts;
    verts.reserve((n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            bool bdry = (i == 0 || j == 0 || i == n || j == n);
            verts.push_back({double(i) / n, double(j) / n, bdry});
        }
    }
    auto vid = [n](int i, int j) { return j * (n + 1) + i; };
    std::vector<std::array<int, 3>> cells;
    cells.reserve(2 * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            // Split along the anti-diagonal, same convention as the pentagon cut.
            cells.push_back({vid(i, j), vid(i + 1, j), vid(i, j + 1)});
            cells.push_back({vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
        }
    }
    return Triangulation(std::move(verts), std::move(cells));
}

Triangulation generate_pentagon_mesh(int n) {
    if (n < 2) throw std::invalid_argument("generate_pentagon_mesh: n must be >= 2");
    // Vertices live on the half-step lattice k/(2n) so the cut x+y = 1.5
    // (ix+iy == 3n in lattice units) is exact for every n.
    std::map<std::pair<int, int>, int> lattice;
    std::vector<Vertex> verts;
    auto vid = [&](int ix, int iy) {
        auto it = lattice.find({ix, iy});
        if (it != lattice.end()) return it->second;
        bool bdry = (ix == 0 || iy == 0 || ix == 2 * n || iy == 2 * n || ix + iy == 3 * n);
        int id = static_cast<int>(verts.size());
        verts.push_back({double(ix) / (2 * n), double(iy) / (2 * n), bdry});
        lattice[{ix, iy}] = id;
        return id;
    };
    std::vector<std::array<int, 3>> cells;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            int lo = 2 * (i + j);          // corner sum in lattice units / 1
            if (lo + 4 <= 3 * n) {
                // Fully inside: split along the anti-diagonal.
                int c00 = vid(2 * i, 2 * j), c10 = vid(2 * i + 2, 2 * j);
                int c01 = vid(2 * i, 2 * j + 2), c11 = vid(2 * i + 2, 2 * j + 2);
                cells.push_back({c00, c10, c01});
                cells.push_back({c10, c11, c01});
            } else if (lo >= 3 * n) {
                continue;  // fully outside
            } else {
                int m = 3 * n - lo;  // cut offset in half-steps, 1..3
                int c00 = vid(2 * i, 2 * j);
                if (m == 2) {
                    // Cut coincides with the anti-diagonal: keep the lower triangle.
                    cells.push_back({c00, vid(2 * i + 2, 2 * j), vid(2 * i, 2 * j + 2)});
                } else if (m == 1) {
                    // Keep the half-step corner triangle at the lower-left.
                    cells.push_back({c00, vid(2 * i + 1, 2 * j), vid(2 * i, 2 * j + 1)});
                } else {  // m == 3: pentagon, fan from the lower-left corner
                    int c10 = vid(2 * i + 2, 2 * j);
                    int p1 = vid(2 * i + 2, 2 * j + 1);
                    int p2 = vid(2 * i + 1, 2 * j + 2);
                    int c01 = vid(2 * i, 2 * j + 2);
                    cells.push_back({c00, c10, p1});
                    cells.push_back({c00, p1, p2});
                    cells.push_back({c00, p2, c01});
                }
            }
        }
    }
    return Triangulation(std::move(verts), std::move(cells));
}

namespace {

Triangulation radial_mesh(double cx, double cy, double a, double b, int n) {
    // 8 sectors, ring k carries 8k vertices; keeps the mesh symmetric under
    // the axis swaps and reflections of the ellipse.
    std::vector<Vertex> verts;
    std::vector<int> ring_start(n + 1, 0);
    verts.push_back({cx, cy, false});
    for (int k = 1; k <= n; ++k) {
        ring_start[k] = static_cast<int>(verts.size());
        double rho = double(k) / n;
        int m = 8 * k;
        for (int j = 0; j < m; ++j) {
            double theta = 2.0 * M_PI * j / m;
            verts.push_back({cx + a * rho * std::cos(theta), cy + b * rho * std::sin(theta),
                             k == n});
        }
    }
    auto ring_vertex = [&](int k, int j) {
        if (k == 0) return 0;
        int m = 8 * k;
        return ring_start[k] + ((j % m) + m) % m;
    };
    std::vector<std::array<int, 3>> cells;
    cells.reserve(8 * n * n);
    for (int k = 0; k < n; ++k) {
        for (int s = 0; s < 8; ++s) {
            for (int i = 0; i <= k; ++i) {
                cells.push_back({ring_vertex(k + 1, s * (k + 1) + i),
                                 ring_vertex(k + 1, s * (k + 1) + i + 1),
                                 ring_vertex(k, s * k + i)});
                if (i < k) {
                    cells.push_back({ring_vertex(k, s * k + i),
                                     ring_vertex(k + 1, s * (k + 1) + i + 1),
                                     ring_vertex(k, s * k + i + 1)});
                }
            }
        }
    }
    return Triangulation(std::move(verts), std::move(cells));
}

}  // namespace

Triangulation generate_ellipse_mesh(double a, double b, int n) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("generate_ellipse_mesh: semi-axes must be positive");
    if (n < 2) throw std::invalid_argument("generate_ellipse_mesh: n must be >= 2");
    return radial_mesh(0.0, 0.0, a, b, n);
}

Triangulation generate_disk_mesh(double cx, double cy, double r, int n) {
    if (!(r > 0.0)) throw std::invalid_argument("generate_disk_mesh: radius must be positive");
    if (n < 2) throw std::invalid_argument("generate_disk_mesh: n must be >= 2");
    return radial_mesh(cx, cy, r, r, n);
}

Triangulation load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open mesh file: " + path);

    int line_no = 0;
    auto next_tokens = [&](int expected) -> std::vector<std::string> {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ss(line);
            std::vector<std::string> toks;
            std::string t;
            while (ss >> t) toks.push_back(t);
            if (toks.empty()) continue;
            if (static_cast<int>(toks.size()) != expected)
                throw ParseError("expected " + std::to_string(expected) + " fields, got " +
                                     std::to_string(toks.size()),
                                 line_no);
            return toks;
        }
        throw ParseError("unexpected end of file", line_no == 0 ? 1 : line_no);
    };
    auto to_int = [&](const std::string& s) {
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(s, &pos);
        } catch (const std::exception&) {
            throw ParseError("not an integer: " + s, line_no);
        }
        if (pos != s.size()) throw ParseError("not an integer: " + s, line_no);
        return v;
    };
    auto to_double = [&](const std::string& s) {
        size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw ParseError("not a number: " + s, line_no);
        }
        if (pos != s.size()) throw ParseError("not a number: " + s, line_no);
        return v;
    };

    auto header = next_tokens(2);
    int nv = to_int(header[0]);
    int nc = to_int(header[1]);
    if (nv < 3 || nc < 1) throw ParseError("invalid vertex/cell counts", line_no);

    std::vector<Vertex> verts;
    verts.reserve(nv);
    for (int i = 0; i < nv; ++i) {
        auto t = next_tokens(3);
        verts.push_back({to_double(t[0]), to_double(t[1]), to_int(t[2]) != 0});
    }
    std::vector<std::array<int, 3>> cells;
    cells.reserve(nc);
    for (int i = 0; i < nc; ++i) {
        auto t = next_tokens(3);
        cells.push_back({to_int(t[0]), to_int(t[1]), to_int(t[2])});
    }
    return Triangulation(std::move(verts), std::move(cells));
}

void save_mesh(const Triangulation& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    char buf[96];
    out << mesh.num_vertices() << ' ' << mesh.num_cells() << '\n';
    for (const Vertex& v : mesh.vertices()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %d\n", v.x, v.y, v.on_boundary ? 1 : 0);
        out << buf;
    }
    for (const Triangle& t : mesh.cells()) {
        out << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace fracfem
