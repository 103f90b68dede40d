#pragma once
#include <utility>

#include "fracfem/sparse.hpp"

namespace fracfem {

struct SolveReport {
    int iterations = 0;          // 0 for direct solves
    double relative_residual = 0.0;  // ||b - Ax|| / ||b||, recomputed after the solve
    double wall_seconds = 0.0;
};

// Solves A x = b with relative residual <= 1e-10. Direct factorization for
// small systems, Krylov with diagonal preconditioning for large ones.
// Throws SingularMatrix / NoConvergence.
std::pair<DenseVector, SolveReport> solve(const SparseMatrix& A, const DenseVector& b);

}  // namespace fracfem
