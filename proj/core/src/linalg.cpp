#include "fracfem/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "fracfem/errors.hpp"

namespace fracfem {

namespace {

constexpr int kDenseDirectLimit = 4096;
constexpr int kSparseDirectLimit = 20000;
constexpr double kResidualTol = 1e-10;

Eigen::SparseMatrix<double> to_eigen(const SparseMatrix& A) {
    Eigen::SparseMatrix<double> m(A.rows, A.cols);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(A.nnz());
    for (int r = 0; r < A.rows; ++r)
        for (int k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k)
            trip.emplace_back(r, A.col_idx[k], A.values[k]);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

double rel_residual(const SparseMatrix& A, const DenseVector& x, const DenseVector& b) {
    DenseVector ax = A.multiply(x);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < b.size(); ++i) {
        double r = b[i] - ax[i];
        num += r * r;
        den += b[i] * b[i];
    }
    if (den == 0.0) return std::sqrt(num);
    return std::sqrt(num / den);
}

}  // namespace

std::pair<DenseVector, SolveReport> solve(const SparseMatrix& A, const DenseVector& b) {
    if (A.rows != A.cols) throw std::invalid_argument("solve: matrix not square");
    if (static_cast<int>(b.size()) != A.rows)
        throw std::invalid_argument("solve: right-hand side size mismatch");

    auto t0 = std::chrono::steady_clock::now();
    const int n = A.rows;
    DenseVector x(n, 0.0);
    int iterations = 0;

    Eigen::Map<const Eigen::VectorXd> bv(b.data(), n);
    if (n <= kDenseDirectLimit) {
        Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
        for (int r = 0; r < n; ++r)
            for (int k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k)
                dense(r, A.col_idx[k]) = A.values[k];
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(dense);
        Eigen::VectorXd xv = lu.solve(bv);
        Eigen::Map<Eigen::VectorXd>(x.data(), n) = xv;
        if (rel_residual(A, x, b) > kResidualTol) {
            Eigen::FullPivLU<Eigen::MatrixXd> flu(dense);
            if (!flu.isInvertible()) throw SingularMatrix("solve: matrix is singular");
            xv = flu.solve(bv);
            Eigen::Map<Eigen::VectorXd>(x.data(), n) = xv;
        }
    } else if (n <= kSparseDirectLimit) {
        Eigen::SparseMatrix<double> sm = to_eigen(A);
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.analyzePattern(sm);
        lu.factorize(sm);
        if (lu.info() != Eigen::Success) throw SingularMatrix("solve: sparse factorization failed");
        Eigen::VectorXd xv = lu.solve(bv);
        Eigen::Map<Eigen::VectorXd>(x.data(), n) = xv;
    } else {
        Eigen::SparseMatrix<double> sm = to_eigen(A);
        Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::DiagonalPreconditioner<double>> krylov;
        krylov.setTolerance(1e-12);
        krylov.setMaxIterations(20LL * n);
        krylov.compute(sm);
        Eigen::VectorXd xv = krylov.solve(bv);
        if (krylov.info() != Eigen::Success)
            throw NoConvergence("solve: Krylov iteration budget exhausted");
        iterations = static_cast<int>(krylov.iterations());
        Eigen::Map<Eigen::VectorXd>(x.data(), n) = xv;
    }

    SolveReport report;
    report.iterations = iterations;
    report.relative_residual = rel_residual(A, x, b);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!std::isfinite(report.relative_residual) || report.relative_residual > kResidualTol)
        throw SingularMatrix("solve: residual contract violated (matrix singular or ill-posed)");
    return {std::move(x), report};
}

}  // namespace fracfem
