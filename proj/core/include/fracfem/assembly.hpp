#pragma once
#include <functional>

#include "fracfem/fracpath.hpp"
#include "fracfem/mesh.hpp"
#include "fracfem/quadrature.hpp"
#include "fracfem/sparse.hpp"

namespace fracfem {

// Stable renumbering of the free (non-Dirichlet) nodes, ascending in node id.
struct DirichletMap {
    std::vector<int> free_to_full;
    std::vector<int> full_to_free;  // -1 for boundary nodes
    int num_free = 0;

    static DirichletMap build(const Triangulation& mesh);

    DenseVector restrict_to_free(const DenseVector& full) const;
    DenseVector embed(const DenseVector& free) const;  // boundary entries zero
};

struct AssemblyOptions {
    int threads = 1;
};

// Mass matrix on all nodes via the exact P1 element block (area/12 * [2 1 1; 1 2 1; 1 1 2]).
SparseMatrix assemble_mass(const Triangulation& mesh);

// Fractional stiffness a_kl = a(phi_l, phi_k) on all nodes. Each order must
// lie in (1/2, 1) or be exactly 1, in which case that axis contributes the
// classical K * (d phi_l, d phi_k) term.
SparseMatrix assemble_stiffness(const Triangulation& mesh, double alpha, double beta, double kx,
                                double ky, const TriangleRule& rule,
                                const AssemblyOptions& opts = {});

// d_kl = (dF(u_prev) phi_l, phi_k), quadrature weight evaluated pointwise.
SparseMatrix assemble_reaction(const Triangulation& mesh, const DenseVector& u_prev_full,
                               const std::function<double(double)>& dF, const TriangleRule& rule);

// b_k = (F(u_prev), phi_k).
DenseVector assemble_load_F(const Triangulation& mesh, const DenseVector& u_prev_full,
                            const std::function<double(double)>& F, const TriangleRule& rule);

// b_k = (f(., ., t), phi_k).
DenseVector assemble_load_f(const Triangulation& mesh,
                            const std::function<double(double, double, double)>& f, double t,
                            const TriangleRule& rule);

// Homogeneous Dirichlet elimination: drop boundary rows/columns.
SparseMatrix apply_dirichlet(const SparseMatrix& m, const DirichletMap& dofs);
DenseVector apply_dirichlet(const DenseVector& v, const DirichletMap& dofs);

}  // namespace fracfem
