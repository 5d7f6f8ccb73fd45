#include "hopfinv/linalg.hpp"

#include <algorithm>

namespace hopfinv {

Vec zero_vec(int n, int order) { return Vec(n, Scalar(order)); }

Vec basis_vec(int n, int i, int order) {
    Vec v = zero_vec(n, order);
    v[i] = Scalar::one(order);
    return v;
}

Mat identity_mat(int n, int order) {
    Mat m;
    for (int i = 0; i < n; ++i) m.push_back(basis_vec(n, i, order));
    return m;
}

Mat zero_mat(int r, int c, int order) { return Mat(r, zero_vec(c, order)); }

Mat matmul(const Mat& a, const Mat& b) {
    if (a.empty()) return {};
    int order = a[0].empty() ? 1 : a[0][0].order();
    int cols = b.empty() ? 0 : static_cast<int>(b[0].size());
    Mat r = zero_mat(static_cast<int>(a.size()), cols, order);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k].is_zero()) continue;
            for (int j = 0; j < cols; ++j)
                if (!b[k][j].is_zero()) r[i][j].add_mul(a[i][k], b[k][j]);
        }
    return r;
}

Vec apply_map(const Vec& x, const Mat& m) {
    int order = x.empty() ? 1 : x[0].order();
    Vec r = zero_vec(m.empty() ? 0 : static_cast<int>(m[0].size()), order);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < r.size(); ++j)
            if (!m[i][j].is_zero()) r[j].add_mul(x[i], m[i][j]);
    }
    return r;
}

Mat mat_pow(const Mat& m, int e, const Mat* inv) {
    int n = static_cast<int>(m.size());
    int order = n ? m[0][0].order() : 1;
    Mat base = m;
    if (e < 0) {
        base = inv ? *inv : inverse(m, order);
        e = -e;
    }
    Mat r = identity_mat(n, order);
    while (e) {
        if (e & 1) r = matmul(r, base);
        e >>= 1;
        if (e) base = matmul(base, base);
    }
    return r;
}

Mat transpose(const Mat& m) {
    if (m.empty()) return {};
    int order = m[0].empty() ? 1 : m[0][0].order();
    Mat r = zero_mat(static_cast<int>(m[0].size()), static_cast<int>(m.size()), order);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) r[j][i] = m[i][j];
    return r;
}

Scalar dot(const Vec& a, const Vec& b) {
    Scalar s(a.empty() ? 1 : a[0].order());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s.add_mul(a[i], b[i]);
    return s;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool equal(const Mat& a, const Mat& b) { return a == b; }

Vec scaled(const Vec& v, const Scalar& s) {
    Vec r = v;
    for (auto& x : r) x *= s;
    return r;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

RowReducer::RowReducer(int ncols, int order) : n_(ncols), order_(order) {}

void RowReducer::add_row(Vec row) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Scalar& c = row[pivots_[r]];
        if (c.is_zero()) continue;
        Scalar f = -c;
        for (int j = 0; j < n_; ++j)
            if (!rows_[r][j].is_zero()) row[j].add_mul(f, rows_[r][j]);
    }
    int p = -1;
    for (int j = 0; j < n_; ++j)
        if (!row[j].is_zero()) {
            p = j;
            break;
        }
    if (p < 0) return;
    Scalar inv = row[p].inverse();
    for (auto& x : row) x *= inv;
    // keep the stored rows fully reduced against the new pivot
    for (auto& other : rows_) {
        if (other[p].is_zero()) continue;
        Scalar f = -other[p];
        for (int j = 0; j < n_; ++j)
            if (!row[j].is_zero()) other[j].add_mul(f, row[j]);
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(p);
}

std::vector<Vec> RowReducer::kernel() const {
    std::vector<char> is_pivot(n_, 0);
    for (int p : pivots_) is_pivot[p] = 1;
    std::vector<Vec> out;
    for (int f = 0; f < n_; ++f) {
        if (is_pivot[f]) continue;
        Vec v = zero_vec(n_, order_);
        v[f] = Scalar::one(order_);
        for (std::size_t r = 0; r < rows_.size(); ++r) v[pivots_[r]] = -rows_[r][f];
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Vec> nullspace(const std::vector<Vec>& rows, int ncols, int order) {
    RowReducer red(ncols, order);
    for (auto& r : rows)
        if (!is_zero(r)) red.add_row(r);
    return red.kernel();
}

int rank(const Mat& m, int order) {
    if (m.empty()) return 0;
    RowReducer red(static_cast<int>(m[0].size()), order);
    for (auto& r : m)
        if (!is_zero(r)) red.add_row(r);
    return red.rank();
}

Mat inverse(const Mat& m, int order) {
    int n = static_cast<int>(m.size());
    Mat a = m, r = identity_mat(n, order);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (!a[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) throw Error("DivisionByZero", "singular matrix");
        std::swap(a[p], a[c]);
        std::swap(r[p], r[c]);
        Scalar inv = a[c][c].inverse();
        for (auto& x : a[c]) x *= inv;
        for (auto& x : r[c]) x *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero()) continue;
            Scalar f = -a[i][c];
            for (int j = 0; j < n; ++j) {
                if (!a[c][j].is_zero()) a[i][j].add_mul(f, a[c][j]);
                if (!r[c][j].is_zero()) r[i][j].add_mul(f, r[c][j]);
            }
        }
    }
    return r;
}

}  // namespace hopfinv
