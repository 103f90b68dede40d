#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "fracfem/errors.hpp"
#include "fracfem/mesh.hpp"

using namespace fracfem;

namespace {

// Interior edges in exactly 2 cells, boundary edges in exactly 1.
void check_conforming(const Triangulation& mesh) {
    std::map<std::pair<int, int>, int> edges;
    for (const Triangle& t : mesh.cells()) {
        for (int e = 0; e < 3; ++e) {
            int a = t.v[e], b = t.v[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            edges[{a, b}]++;
        }
    }
    for (const auto& [edge, count] : edges) {
        REQUIRE(count >= 1);
        REQUIRE(count <= 2);
        if (count == 1) {
            CHECK(mesh.vertices()[edge.first].on_boundary);
            CHECK(mesh.vertices()[edge.second].on_boundary);
        }
    }
}

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("square mesh basics") {
    Triangulation m = generate_square_mesh(2);
    CHECK(m.num_vertices() == 9);
    CHECK(m.num_cells() == 8);
    CHECK(m.total_area() == doctest::Approx(1.0).epsilon(1e-13));
    check_conforming(m);

    for (int n : {3, 5, 10}) {
        Triangulation mesh = generate_square_mesh(n);
        CHECK(std::abs(mesh.total_area() - 1.0) < 1e-12);
        CHECK(mesh.h() == doctest::Approx(std::sqrt(2.0) / n));
        check_conforming(mesh);
        for (const Vertex& v : mesh.vertices()) {
            bool on_edge = v.x == 0.0 || v.x == 1.0 || v.y == 0.0 || v.y == 1.0;
            CHECK(v.on_boundary == on_edge);
        }
    }
    CHECK_THROWS_AS(generate_square_mesh(1), std::invalid_argument);
}

TEST_CASE("square mesh orientation and adjacency") {
    Triangulation m = generate_square_mesh(4);
    for (const Triangle& t : m.cells()) CHECK(t.area > 0.0);
    // vertex_to_cells is the exact inverse of the cell->vertex incidence
    for (int v = 0; v < m.num_vertices(); ++v) {
        for (int c : m.cells_of_vertex(v)) {
            const auto& ids = m.cells()[c].v;
            CHECK((ids[0] == v || ids[1] == v || ids[2] == v));
        }
    }
    int incidences = 0;
    for (int v = 0; v < m.num_vertices(); ++v) incidences += (int)m.cells_of_vertex(v).size();
    CHECK(incidences == 3 * m.num_cells());
}

TEST_CASE("pentagon mesh area and boundary") {
    for (int n : {2, 3, 5, 8, 30}) {
        Triangulation m = generate_pentagon_mesh(n);
        CHECK(std::abs(m.total_area() - 7.0 / 8.0) < 1e-12);
        check_conforming(m);
        for (const Vertex& v : m.vertices()) {
            if (!v.on_boundary) continue;
            bool ok = v.x == 0.0 || v.x == 1.0 || v.y == 0.0 || v.y == 1.0 ||
                      std::abs(v.x + v.y - 1.5) <= 1e-12;
            CHECK(ok);
        }
        // interior of the cut stays inside the closed half-plane
        for (const Vertex& v : m.vertices()) CHECK(v.x + v.y <= 1.5 + 1e-12);
    }
    CHECK_THROWS_AS(generate_pentagon_mesh(1), std::invalid_argument);
}

TEST_CASE("ellipse mesh converges to exact area") {
    double a = 0.5, b = 0.75;
    double exact = M_PI * a * b;
    for (int n : {8, 16, 40}) {
        Triangulation m = generate_ellipse_mesh(a, b, n);
        check_conforming(m);
        double rel = std::abs(m.total_area() - exact) / exact;
        CHECK(rel < m.h());  // polygon deficit is O(h^2), h bound is generous
        for (const Vertex& v : m.vertices()) {
            if (v.on_boundary) {
                double r = v.x * v.x / (a * a) + v.y * v.y / (b * b);
                CHECK(std::abs(r - 1.0) < 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(generate_ellipse_mesh(-1.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(generate_ellipse_mesh(1.0, 0.0, 4), std::invalid_argument);
}

TEST_CASE("disk mesh boundary radius") {
    Triangulation m = generate_disk_mesh(1.25, 1.25, 1.25, 6);
    check_conforming(m);
    for (const Vertex& v : m.vertices()) {
        if (v.on_boundary) {
            CHECK(std::hypot(v.x - 1.25, v.y - 1.25) == doctest::Approx(1.25).epsilon(1e-12));
        }
    }
}

TEST_CASE("unit disk is symmetric under x<->y swap") {
    Triangulation m = generate_ellipse_mesh(1.0, 1.0, 5);
    std::map<std::pair<long long, long long>, int> index;
    auto key = [](double x, double y) {
        return std::make_pair(static_cast<long long>(std::llround(x * 1e12)),
                              static_cast<long long>(std::llround(y * 1e12)));
    };
    for (int v = 0; v < m.num_vertices(); ++v)
        index[key(m.vertices()[v].x, m.vertices()[v].y)] = v;
    // the vertex set maps onto itself
    std::vector<int> perm(m.num_vertices(), -1);
    for (int v = 0; v < m.num_vertices(); ++v) {
        auto it = index.find(key(m.vertices()[v].y, m.vertices()[v].x));
        REQUIRE(it != index.end());
        perm[v] = it->second;
    }
    // and cells map onto cells
    std::set<std::array<int, 3>> cells;
    for (const Triangle& t : m.cells()) {
        std::array<int, 3> ids = t.v;
        std::sort(ids.begin(), ids.end());
        cells.insert(ids);
    }
    for (const Triangle& t : m.cells()) {
        std::array<int, 3> ids = {perm[t.v[0]], perm[t.v[1]], perm[t.v[2]]};
        std::sort(ids.begin(), ids.end());
        CHECK(cells.count(ids) == 1);
    }
}

TEST_CASE("mesh save/load round trip") {
    Triangulation m = generate_square_mesh(4);
    auto path = temp_file("fracfem_roundtrip.mesh");
    save_mesh(m, path.string());
    Triangulation r = load_mesh(path.string());
    REQUIRE(r.num_vertices() == m.num_vertices());
    REQUIRE(r.num_cells() == m.num_cells());
    for (int v = 0; v < m.num_vertices(); ++v) {
        CHECK(r.vertices()[v].x == m.vertices()[v].x);
        CHECK(r.vertices()[v].y == m.vertices()[v].y);
        CHECK(r.vertices()[v].on_boundary == m.vertices()[v].on_boundary);
    }
    for (int c = 0; c < m.num_cells(); ++c) CHECK(r.cells()[c].v == m.cells()[c].v);
    std::filesystem::remove(path);
}

TEST_CASE("mesh load error paths") {
    auto path = temp_file("fracfem_bad.mesh");
    {
        std::ofstream out(path);
    }
    CHECK_THROWS_AS(load_mesh(path.string()), ParseError);

    {
        std::ofstream out(path);
        out << "# duplicate cell\n4 3\n0 0 1\n1 0 1\n0 1 1\n1 1 1\n0 1 2\n0 1 2\n1 3 2\n";
    }
    CHECK_THROWS_AS(load_mesh(path.string()), NonconformingMesh);

    {
        std::ofstream out(path);
        out << "3 1\n0 0 1\nnot_a_number 0 1\n0 1 1\n0 1 2\n";
    }
    try {
        load_mesh(path.string());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(load_mesh("/nonexistent/path.mesh"), IoError);
    std::filesystem::remove(path);
}

TEST_CASE("loader fixes orientation") {
    auto path = temp_file("fracfem_cw.mesh");
    {
        std::ofstream out(path);
        out << "3 1\n0 0 1\n1 0 1\n0 1 1\n0 2 1\n";  // clockwise cell
    }
    Triangulation m = load_mesh(path.string());
    CHECK(m.cells()[0].area > 0.0);
    std::filesystem::remove(path);
}

TEST_CASE("barycentric and locate") {
    Triangulation m = generate_square_mesh(3);
    int c = m.locate(0.1, 0.05);
    REQUIRE(c >= 0);
    auto l = m.barycentric(c, 0.1, 0.05);
    CHECK(l[0] + l[1] + l[2] == doctest::Approx(1.0));
    CHECK(std::min({l[0], l[1], l[2]}) >= -1e-12);
    CHECK(m.locate(2.0, 2.0) == -1);
}
