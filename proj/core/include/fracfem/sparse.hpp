#pragma once
#include <string>
#include <vector>

namespace fracfem {

using DenseVector = std::vector<double>;

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

// CSR matrix with ascending column indices per row.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> row_ptr;    // size rows + 1
    std::vector<int> col_idx;    // size nnz
    std::vector<double> values;  // size nnz

    int nnz() const { return static_cast<int>(col_idx.size()); }

    // Duplicate (row, col) entries are summed.
    static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);

    DenseVector multiply(const DenseVector& x) const;
    double quadratic_form(const DenseVector& u) const;  // u' * A * u
    double max_abs() const;
    double max_asymmetry() const;       // max |a_kl - a_lk|; requires square
    double entry(int r, int c) const;   // 0 if not stored
    double sum_entries() const;

    // Debug dump, one `row col value` line per entry.
    void write_coordinate(const std::string& path) const;
};

// alpha*A + beta*B with merged sparsity pattern.
SparseMatrix sparse_add(double alpha, const SparseMatrix& A, double beta, const SparseMatrix& B);

}  // namespace fracfem
