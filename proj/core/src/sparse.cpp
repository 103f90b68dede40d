#include "fracfem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "fracfem/errors.hpp"

namespace fracfem {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.row_ptr.assign(rows + 1, 0);
    int last_row = -1, last_col = -1;
    for (const Triplet& t : triplets) {
        if (t.row == last_row && t.col == last_col) {
            m.values.back() += t.value;
        } else {
            m.col_idx.push_back(t.col);
            m.values.push_back(t.value);
            ++m.row_ptr[t.row + 1];
            last_row = t.row;
            last_col = t.col;
        }
    }
    for (int r = 0; r < rows; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
    return m;
}

DenseVector SparseMatrix::multiply(const DenseVector& x) const {
    if (static_cast<int>(x.size()) != cols)
        throw std::invalid_argument("SparseMatrix::multiply: size mismatch");
    DenseVector y(rows, 0.0);
    for (int r = 0; r < rows; ++r) {
        double s = 0.0;
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += values[k] * x[col_idx[k]];
        y[r] = s;
    }
    return y;
}

double SparseMatrix::quadratic_form(const DenseVector& u) const {
    DenseVector au = multiply(u);
    double s = 0.0;
    for (int i = 0; i < rows; ++i) s += u[i] * au[i];
    return s;
}

double SparseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double SparseMatrix::entry(int r, int c) const {
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
        if (col_idx[k] == c) return values[k];
    return 0.0;
}

double SparseMatrix::max_asymmetry() const {
    if (rows != cols) throw std::invalid_argument("max_asymmetry: matrix not square");
    double m = 0.0;
    for (int r = 0; r < rows; ++r) {
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
            m = std::max(m, std::abs(values[k] - entry(col_idx[k], r)));
        }
    }
    return m;
}

double SparseMatrix::sum_entries() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

void SparseMatrix::write_coordinate(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    char buf[96];
    for (int r = 0; r < rows; ++r) {
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
            std::snprintf(buf, sizeof buf, "%d %d %.17g\n", r, col_idx[k], values[k]);
            out << buf;
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

SparseMatrix sparse_add(double alpha, const SparseMatrix& A, double beta, const SparseMatrix& B) {
    if (A.rows != B.rows || A.cols != B.cols)
        throw std::invalid_argument("sparse_add: shape mismatch");
    SparseMatrix c;
    c.rows = A.rows;
    c.cols = A.cols;
    c.row_ptr.assign(A.rows + 1, 0);
    c.col_idx.reserve(std::max(A.nnz(), B.nnz()));
    c.values.reserve(std::max(A.nnz(), B.nnz()));
    for (int r = 0; r < A.rows; ++r) {
        int ia = A.row_ptr[r], ea = A.row_ptr[r + 1];
        int ib = B.row_ptr[r], eb = B.row_ptr[r + 1];
        while (ia < ea || ib < eb) {
            int ca = ia < ea ? A.col_idx[ia] : A.cols;
            int cb = ib < eb ? B.col_idx[ib] : A.cols;
            if (ca < cb) {
                c.col_idx.push_back(ca);
                c.values.push_back(alpha * A.values[ia++]);
            } else if (cb < ca) {
                c.col_idx.push_back(cb);
                c.values.push_back(beta * B.values[ib++]);
            } else {
                c.col_idx.push_back(ca);
                c.values.push_back(alpha * A.values[ia++] + beta * B.values[ib++]);
            }
        }
        c.row_ptr[r + 1] = static_cast<int>(c.col_idx.size());
    }
    return c;
}

}  // namespace fracfem
