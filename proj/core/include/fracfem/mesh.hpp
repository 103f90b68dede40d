#pragma once
#include <array>
#include <string>
#include <vector>

namespace fracfem {

struct Vertex {
    double x = 0.0;
    double y = 0.0;
    bool on_boundary = false;
};

struct Triangle {
    std::array<int, 3> v{};  // vertex indices, CCW
    double area = 0.0;
};

struct BoundingBox {
    double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;
};

// Conforming triangulation of a convex polygonal domain.
// Immutable after construction; safe for shared concurrent reads.
class Triangulation {
public:
    // Takes ownership of vertices/cells, fixes orientation, computes areas,
    // h, bounding boxes and adjacency, and verifies conformity (every edge
    // shared by at most 2 cells). Throws NonconformingMesh on violations.
    Triangulation(std::vector<Vertex> vertices, std::vector<std::array<int, 3>> cells);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Triangle>& cells() const { return cells_; }
    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_cells() const { return static_cast<int>(cells_.size()); }

    // Max element diameter (longest edge over all cells).
    double h() const { return h_; }
    double total_area() const { return total_area_; }

    const std::vector<int>& cells_of_vertex(int v) const { return vertex_to_cells_[v]; }
    const BoundingBox& cell_bbox(int c) const { return cell_bboxes_[c]; }
    const BoundingBox& domain_bbox() const { return domain_bbox_; }
    double diameter() const;  // of the domain bounding box

    // Barycentric coordinates of (x, y) w.r.t. cell c (order matches cell vertices).
    std::array<double, 3> barycentric(int c, double x, double y) const;

    // Brute-force point location; returns -1 if outside all cells.
    int locate(double x, double y, double tol = 1e-12) const;

    int num_interior_vertices() const;

private:
    std::vector<Vertex> vertices_;
    std::vector<Triangle> cells_;
    std::vector<std::vector<int>> vertex_to_cells_;
    std::vector<BoundingBox> cell_bboxes_;
    BoundingBox domain_bbox_;
    double h_ = 0.0;
    double total_area_ = 0.0;
};

// Structured triangulation of (0,1)^2 with 2*n^2 cells. Requires n >= 2.
Triangulation generate_square_mesh(int n);

// Triangulation of {(x,y) in (0,1)^2 : x+y < 1.5}; the cut x+y = 1.5 is
// represented exactly by element edges for any n >= 2.
Triangulation generate_pentagon_mesh(int n);

// Radial-angular triangulation of the ellipse x^2/a^2 + y^2/b^2 < 1 with n
// rings; boundary vertices lie exactly on the ellipse.
Triangulation generate_ellipse_mesh(double a, double b, int n);

// Same construction for the disk of radius r centered at (cx, cy).
Triangulation generate_disk_mesh(double cx, double cy, double r, int n);

// Plain-text format: header `nv nc`, nv lines `x y boundary_flag`, nc lines
// `i j k` (0-based). Whitespace-separated, `#` starts a comment.
Triangulation load_mesh(const std::string& path);
void save_mesh(const Triangulation& mesh, const std::string& path);

}  // namespace fracfem
