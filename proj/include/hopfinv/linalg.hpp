#pragma once

#include <vector>

#include "hopfinv/exactfield.hpp"

namespace hopfinv {

// Elements are coefficient vectors; a linear map is stored by rows, row i
// being the image of basis vector i. Composition "f then g" is matmul(f, g).
using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;

Vec zero_vec(int n, int order);
Vec basis_vec(int n, int i, int order);
Mat identity_mat(int n, int order);
Mat zero_mat(int r, int c, int order);
Mat matmul(const Mat& a, const Mat& b);
Vec apply_map(const Vec& x, const Mat& m);  // x * m
Mat mat_pow(const Mat& m, int e, const Mat* inverse = nullptr);
Mat transpose(const Mat& m);
Scalar dot(const Vec& a, const Vec& b);
bool is_zero(const Vec& v);
bool equal(const Mat& a, const Mat& b);
Vec scaled(const Vec& v, const Scalar& s);
Vec add(const Vec& a, const Vec& b);

// Basis of {x : rows * x = 0}. Rows may be many and sparse; the returned
// vectors are in reduced form with a unit at their pivot-free coordinate.
std::vector<Vec> nullspace(const std::vector<Vec>& rows, int ncols, int order);
int rank(const Mat& m, int order);
// Throws DivisionByZero if singular.
Mat inverse(const Mat& m, int order);

// Accumulates rows into an echelon basis as they arrive, so tall systems
// never materialize.
class RowReducer {
public:
    RowReducer(int ncols, int order);
    void add_row(Vec row);
    std::vector<Vec> kernel() const;
    int rank() const { return static_cast<int>(pivots_.size()); }

private:
    int n_, order_;
    std::vector<Vec> rows_;    // normalized, pivot coefficient 1
    std::vector<int> pivots_;  // pivot column of each stored row
};

}  // namespace hopfinv
