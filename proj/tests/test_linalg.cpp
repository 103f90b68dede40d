#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "fracfem/assembly.hpp"
#include "fracfem/errors.hpp"
#include "fracfem/linalg.hpp"

using namespace fracfem;

namespace {

// Reference Cholesky solve, independent of the production path.
DenseVector cholesky_solve(std::vector<std::vector<double>> a, DenseVector b) {
    const int n = static_cast<int>(b.size());
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) a[j][j] -= a[j][k] * a[j][k];
        a[j][j] = std::sqrt(a[j][j]);
        for (int i = j + 1; i < n; ++i) {
            for (int k = 0; k < j; ++k) a[i][j] -= a[i][k] * a[j][k];
            a[i][j] /= a[j][j];
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < i; ++k) b[i] -= a[i][k] * b[k];
        b[i] /= a[i][i];
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int k = i + 1; k < n; ++k) b[i] -= a[k][i] * b[k];
        b[i] /= a[i][i];
    }
    return b;
}

}  // namespace

TEST_CASE("identity system") {
    SparseMatrix I = SparseMatrix::from_triplets(3, 3, {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}});
    DenseVector b = {1.0, -2.0, 0.5};
    auto [x, report] = solve(I, b);
    CHECK(x == b);
    CHECK(report.relative_residual <= 1e-15);
    CHECK(report.iterations == 0);
}

TEST_CASE("reduced mass system with constructed solution") {
    Triangulation mesh = generate_square_mesh(5);
    DirichletMap dofs = DirichletMap::build(mesh);
    SparseMatrix M = apply_dirichlet(assemble_mass(mesh), dofs);
    DenseVector ones(M.rows, 1.0);
    DenseVector b = M.multiply(ones);
    auto [x, report] = solve(M, b);
    for (double v : x) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(report.relative_residual <= 1e-10);
}

TEST_CASE("random SPD system vs dense Cholesky oracle") {
    std::mt19937 rng(123);
    std::normal_distribution<double> dist;
    const int n = 50;
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    std::vector<Triplet> trip;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double v = dist(rng) / (1.0 + std::abs(i - j));
            dense[i][j] += v;
            dense[j][i] += v;
        }
        dense[i][i] += n;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) trip.push_back({i, j, dense[i][j]});
    SparseMatrix A = SparseMatrix::from_triplets(n, n, std::move(trip));
    DenseVector b(n);
    for (double& v : b) v = dist(rng);

    auto [x, report] = solve(A, b);
    DenseVector want = cholesky_solve(dense, b);
    for (int i = 0; i < n; ++i) CHECK(std::abs(x[i] - want[i]) <= 1e-9);
    CHECK(report.relative_residual <= 1e-10);
}

TEST_CASE("mid-size systems take the sparse direct path") {
    // tridiagonal SPD system just past the dense-direct limit
    const int n = 5000;
    std::vector<Triplet> trip;
    for (int i = 0; i < n; ++i) {
        trip.push_back({i, i, 4.0});
        if (i + 1 < n) {
            trip.push_back({i, i + 1, -1.0});
            trip.push_back({i + 1, i, -1.0});
        }
    }
    SparseMatrix A = SparseMatrix::from_triplets(n, n, std::move(trip));
    DenseVector want(n);
    for (int i = 0; i < n; ++i) want[i] = std::sin(0.01 * i);
    DenseVector b = A.multiply(want);
    auto [x, report] = solve(A, b);
    double max_diff = 0.0;
    for (int i = 0; i < n; ++i) max_diff = std::max(max_diff, std::abs(x[i] - want[i]));
    CHECK(max_diff <= 1e-9);
    CHECK(report.relative_residual <= 1e-10);
    CHECK(report.iterations == 0);
}

TEST_CASE("large systems take the preconditioned Krylov path") {
    const int n = 25000;
    std::vector<Triplet> trip;
    for (int i = 0; i < n; ++i) {
        trip.push_back({i, i, 4.0});
        if (i + 1 < n) {
            trip.push_back({i, i + 1, -1.0});
            trip.push_back({i + 1, i, -1.0});
        }
    }
    SparseMatrix A = SparseMatrix::from_triplets(n, n, std::move(trip));
    DenseVector want(n, 1.0);
    DenseVector b = A.multiply(want);
    auto [x, report] = solve(A, b);
    double max_diff = 0.0;
    for (int i = 0; i < n; ++i) max_diff = std::max(max_diff, std::abs(x[i] - 1.0));
    CHECK(max_diff <= 1e-8);
    CHECK(report.relative_residual <= 1e-10);
    CHECK(report.iterations > 0);
}

TEST_CASE("singular matrix is rejected") {
    SparseMatrix S = SparseMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 1.0}});
    DenseVector b = {1.0, 0.0};  // inconsistent
    CHECK_THROWS_AS(solve(S, b), SingularMatrix);
}

TEST_CASE("shape mismatches are rejected") {
    SparseMatrix A = SparseMatrix::from_triplets(2, 3, {{0, 0, 1.0}});
    CHECK_THROWS_AS(solve(A, {1.0, 2.0}), std::invalid_argument);
    SparseMatrix B = SparseMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, 1.0}});
    CHECK_THROWS_AS(solve(B, {1.0}), std::invalid_argument);
}
