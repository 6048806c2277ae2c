#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <vector>

#include "fnops/errors.hpp"

namespace fnops {

using Int = boost::multiprecision::cpp_int;

/* Dense integer matrix with arbitrary-precision entries. */
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
    const Int& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

/* Sparse integer matrix in doubly-indexed form, used for the chain
   boundary matrices. */
class SparseIntMatrix {
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols), col_(cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    void add(int r, int c, long long v);
    const std::map<int, long long>& column(int c) const { return col_[c]; }
    long long nonzeros() const;

    IntegerMatrix to_dense() const;
    /* Matrix-market style text serialization. */
    std::string to_matrix_market() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::map<int, long long>> col_;
};

struct SmithForm {
    std::vector<Int> divisors;    // d_1 | d_2 | ..., all positive
    int rank() const { return static_cast<int>(divisors.size()); }
    /* divisors > 1 */
    std::vector<Int> torsion() const;
};

/* Exact Smith normal form; deterministic smallest-pivot strategy with
   gcd reduction.  The sparse entry point eliminates unit pivots on the
   sparse structure first and finishes densely on the remainder. */
SmithForm smith_normal_form(IntegerMatrix m);
SmithForm smith_normal_form(const SparseIntMatrix& m);

} // namespace fnops
