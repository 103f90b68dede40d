#include "fracfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracfem/fracderiv.hpp"
#include "fracfem/parallel.hpp"
#include "fracfem/problems.hpp"

namespace fracfem {

DirichletMap DirichletMap::build(const Triangulation& mesh) {
    DirichletMap m;
    m.full_to_free.assign(mesh.num_vertices(), -1);
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        if (!mesh.vertices()[v].on_boundary) {
            m.full_to_free[v] = static_cast<int>(m.free_to_full.size());
            m.free_to_full.push_back(v);
        }
    }
    m.num_free = static_cast<int>(m.free_to_full.size());
    return m;
}

DenseVector DirichletMap::restrict_to_free(const DenseVector& full) const {
    DenseVector v(num_free);
    for (int i = 0; i < num_free; ++i) v[i] = full[free_to_full[i]];
    return v;
}

DenseVector DirichletMap::embed(const DenseVector& free) const {
    DenseVector v(full_to_free.size(), 0.0);
    for (int i = 0; i < num_free; ++i) v[free_to_full[i]] = free[i];
    return v;
}

SparseMatrix assemble_mass(const Triangulation& mesh) {
    std::vector<Triplet> trip;
    trip.reserve(9 * mesh.num_cells());
    for (const Triangle& t : mesh.cells()) {
        double off = t.area / 12.0;
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                trip.push_back({t.v[a], t.v[b], a == b ? 2.0 * off : off});
            }
        }
    }
    return SparseMatrix::from_triplets(mesh.num_vertices(), mesh.num_vertices(), std::move(trip));
}

namespace {

bool classical_order(double mu) { return mu == 1.0; }

void check_order(double mu, const char* which) {
    if (!(mu > 0.5 && mu < 1.0) && !classical_order(mu))
        throw std::invalid_argument(std::string("assemble_stiffness: invalid order ") + which);
}

// P1 gradients (constant per cell).
void cell_gradients(const Triangulation& mesh, int c, double gx[3], double gy[3]) {
    const Triangle& t = mesh.cells()[c];
    const Vertex& p0 = mesh.vertices()[t.v[0]];
    const Vertex& p1 = mesh.vertices()[t.v[1]];
    const Vertex& p2 = mesh.vertices()[t.v[2]];
    double inv2a = 1.0 / (2.0 * t.area);
    gx[0] = (p1.y - p2.y) * inv2a;
    gy[0] = (p2.x - p1.x) * inv2a;
    gx[1] = (p2.y - p0.y) * inv2a;
    gy[1] = (p0.x - p2.x) * inv2a;
    gx[2] = (p0.y - p1.y) * inv2a;
    gy[2] = (p1.x - p0.x) * inv2a;
}

// A[k][l] += w * (lo_l * hi_k + hi_l * lo_k) over the two maps' supports.
void rank1_symmetric(std::vector<double>& dense, int n, double w, const NodalDerivMap& lo,
                     const NodalDerivMap& hi) {
    for (size_t i = 0; i < hi.nodes.size(); ++i) {
        double* row = dense.data() + static_cast<size_t>(hi.nodes[i]) * n;
        double wi = w * hi.values[i];
        for (size_t j = 0; j < lo.nodes.size(); ++j) row[lo.nodes[j]] += wi * lo.values[j];
    }
    for (size_t i = 0; i < lo.nodes.size(); ++i) {
        double* row = dense.data() + static_cast<size_t>(lo.nodes[i]) * n;
        double wi = w * lo.values[i];
        for (size_t j = 0; j < hi.nodes.size(); ++j) row[hi.nodes[j]] += wi * hi.values[j];
    }
}

}  // namespace

SparseMatrix assemble_stiffness(const Triangulation& mesh, double alpha, double beta, double kx,
                                double ky, const TriangleRule& rule,
                                const AssemblyOptions& opts) {
    check_order(alpha, "alpha");
    check_order(beta, "beta");
    if (!(kx > 0.0) || !(ky > 0.0))
        throw std::invalid_argument("assemble_stiffness: diffusivities must be positive");

    const int n = mesh.num_vertices();
    const bool frac_x = !classical_order(alpha);
    const bool frac_y = !classical_order(beta);
    const double cx = frac_x ? kx * riesz_coefficient(alpha) : 0.0;
    const double cy = frac_y ? ky * riesz_coefficient(beta) : 0.0;

    // Per-thread dense accumulators, merged in block order. Thread count is
    // capped so the buffers stay within a fixed memory budget.
    int threads = std::max(1, opts.threads);
    const size_t bytes_per_buffer = static_cast<size_t>(n) * n * sizeof(double);
    const size_t budget = size_t(2) << 30;
    threads = std::min<size_t>(threads, std::max<size_t>(1, budget / std::max<size_t>(1, bytes_per_buffer)));
    threads = std::min(threads, mesh.num_cells());

    std::vector<std::vector<double>> buffers(threads);
    parallel_blocks(mesh.num_cells(), threads, [&](int ti, int begin, int end) {
        std::vector<double>& dense = buffers[ti];
        dense.assign(static_cast<size_t>(n) * n, 0.0);
        for (int c = begin; c < end; ++c) {
            InfluenceSet inf_left, inf_right, inf_down, inf_up;
            if (frac_x) {
                inf_left = influence_elements(mesh, c, kXLeft);
                inf_right = influence_elements(mesh, c, kXRight);
            }
            if (frac_y) {
                inf_down = influence_elements(mesh, c, kYDown);
                inf_up = influence_elements(mesh, c, kYUp);
            }
            if (!frac_x || !frac_y) {
                double gx[3], gy[3];
                cell_gradients(mesh, c, gx, gy);
                const Triangle& t = mesh.cells()[c];
                for (int a = 0; a < 3; ++a) {
                    double* row = dense.data() + static_cast<size_t>(t.v[a]) * n;
                    for (int b = 0; b < 3; ++b) {
                        double val = 0.0;
                        if (!frac_x) val += kx * gx[a] * gx[b];
                        if (!frac_y) val += ky * gy[a] * gy[b];
                        row[t.v[b]] += val * t.area;
                    }
                }
            }
            for (const QuadPoint& qp : map_rule_to_cell(rule, mesh, c)) {
                if (frac_x) {
                    auto left = basis_derivs_along_path(
                        mesh, integral_path(mesh, inf_left, qp.x, qp.y, kXLeft), alpha);
                    auto right = basis_derivs_along_path(
                        mesh, integral_path(mesh, inf_right, qp.x, qp.y, kXRight), alpha);
                    rank1_symmetric(dense, n, cx * qp.w, left, right);
                }
                if (frac_y) {
                    auto down = basis_derivs_along_path(
                        mesh, integral_path(mesh, inf_down, qp.x, qp.y, kYDown), beta);
                    auto up = basis_derivs_along_path(
                        mesh, integral_path(mesh, inf_up, qp.x, qp.y, kYUp), beta);
                    rank1_symmetric(dense, n, cy * qp.w, down, up);
                }
            }
        }
    });
    for (int ti = 1; ti < threads; ++ti) {
        for (size_t i = 0; i < buffers[0].size(); ++i) buffers[0][i] += buffers[ti][i];
        buffers[ti].clear();
        buffers[ti].shrink_to_fit();
    }

    const std::vector<double>& dense = buffers[0];
    SparseMatrix A;
    A.rows = A.cols = n;
    A.row_ptr.assign(n + 1, 0);
    for (int r = 0; r < n; ++r) {
        const double* row = dense.data() + static_cast<size_t>(r) * n;
        for (int c = 0; c < n; ++c) {
            if (row[c] != 0.0) {
                A.col_idx.push_back(c);
                A.values.push_back(row[c]);
            }
        }
        A.row_ptr[r + 1] = static_cast<int>(A.col_idx.size());
    }
    return A;
}

namespace {

// Quadrature assembly of (w(u_prev) phi_l, phi_k) with pointwise weight.
SparseMatrix weighted_mass(const Triangulation& mesh, const DenseVector& u_prev_full,
                           const std::function<double(double)>& weight,
                           const TriangleRule& rule) {
    std::vector<Triplet> trip;
    trip.reserve(9 * mesh.num_cells());
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const Triangle& t = mesh.cells()[c];
        double local[3][3] = {};
        for (size_t q = 0; q < rule.points.size(); ++q) {
            const auto& l = rule.points[q];
            double u = l[0] * u_prev_full[t.v[0]] + l[1] * u_prev_full[t.v[1]] +
                       l[2] * u_prev_full[t.v[2]];
            double w = rule.weights[q] * t.area * weight(u);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) local[a][b] += w * l[a] * l[b];
        }
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) trip.push_back({t.v[a], t.v[b], local[a][b]});
    }
    return SparseMatrix::from_triplets(mesh.num_vertices(), mesh.num_vertices(), std::move(trip));
}

}  // namespace

SparseMatrix assemble_reaction(const Triangulation& mesh, const DenseVector& u_prev_full,
                               const std::function<double(double)>& dF,
                               const TriangleRule& rule) {
    return weighted_mass(mesh, u_prev_full, dF, rule);
}

DenseVector assemble_load_F(const Triangulation& mesh, const DenseVector& u_prev_full,
                            const std::function<double(double)>& F, const TriangleRule& rule) {
    DenseVector b(mesh.num_vertices(), 0.0);
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const Triangle& t = mesh.cells()[c];
        for (size_t q = 0; q < rule.points.size(); ++q) {
            const auto& l = rule.points[q];
            double u = l[0] * u_prev_full[t.v[0]] + l[1] * u_prev_full[t.v[1]] +
                       l[2] * u_prev_full[t.v[2]];
            double w = rule.weights[q] * t.area * F(u);
            for (int a = 0; a < 3; ++a) b[t.v[a]] += w * l[a];
        }
    }
    return b;
}

DenseVector assemble_load_f(const Triangulation& mesh,
                            const std::function<double(double, double, double)>& f, double t,
                            const TriangleRule& rule) {
    DenseVector b(mesh.num_vertices(), 0.0);
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const Triangle& tri = mesh.cells()[c];
        auto qps = map_rule_to_cell(rule, mesh, c);
        for (size_t q = 0; q < qps.size(); ++q) {
            const auto& l = rule.points[q];
            double w = qps[q].w * f(qps[q].x, qps[q].y, t);
            for (int a = 0; a < 3; ++a) b[tri.v[a]] += w * l[a];
        }
    }
    return b;
}

SparseMatrix apply_dirichlet(const SparseMatrix& m, const DirichletMap& dofs) {
    SparseMatrix out;
    out.rows = out.cols = dofs.num_free;
    out.row_ptr.assign(dofs.num_free + 1, 0);
    for (int r = 0; r < dofs.num_free; ++r) {
        int full_r = dofs.free_to_full[r];
        for (int k = m.row_ptr[full_r]; k < m.row_ptr[full_r + 1]; ++k) {
            int c = dofs.full_to_free[m.col_idx[k]];
            if (c >= 0) {
                out.col_idx.push_back(c);
                out.values.push_back(m.values[k]);
            }
        }
        out.row_ptr[r + 1] = static_cast<int>(out.col_idx.size());
    }
    return out;
}

DenseVector apply_dirichlet(const DenseVector& v, const DirichletMap& dofs) {
    return dofs.restrict_to_free(v);
}

}  // namespace fracfem
