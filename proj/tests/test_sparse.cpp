#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fracfem/sparse.hpp"

using namespace fracfem;

TEST_CASE("from_triplets merges duplicates and sorts") {
    SparseMatrix m = SparseMatrix::from_triplets(
        2, 2, {{1, 1, 3.0}, {0, 0, 1.0}, {1, 1, 2.0}, {0, 1, -1.0}});
    CHECK(m.nnz() == 3);
    CHECK(m.entry(0, 0) == 1.0);
    CHECK(m.entry(0, 1) == -1.0);
    CHECK(m.entry(1, 1) == 5.0);
    CHECK(m.entry(1, 0) == 0.0);
}

TEST_CASE("multiply and quadratic form") {
    SparseMatrix m = SparseMatrix::from_triplets(2, 2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 2.0}});
    DenseVector x = {1.0, -1.0};
    DenseVector y = m.multiply(x);
    CHECK(y[0] == 1.0);
    CHECK(y[1] == -1.0);
    CHECK(m.quadratic_form(x) == 2.0);
    CHECK(m.max_asymmetry() == 0.0);
}

TEST_CASE("sparse_add merges patterns") {
    SparseMatrix a = SparseMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, 1.0}});
    SparseMatrix b = SparseMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {1, 1, 2.0}});
    SparseMatrix c = sparse_add(2.0, a, -1.0, b);
    CHECK(c.entry(0, 0) == 2.0);
    CHECK(c.entry(0, 1) == -1.0);
    CHECK(c.entry(1, 1) == 0.0);  // 2*1 - 1*2; stays stored
    CHECK(c.nnz() == 3);
}

TEST_CASE("coordinate dump") {
    SparseMatrix m = SparseMatrix::from_triplets(2, 2, {{0, 1, 0.5}, {1, 0, -2.0}});
    auto path = std::filesystem::temp_directory_path() / "fracfem_coord.txt";
    m.write_coordinate(path.string());
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "0 1 0.5");
    std::getline(in, line);
    CHECK(line == "1 0 -2");
    std::filesystem::remove(path);
}
