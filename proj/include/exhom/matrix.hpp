// Dense matrices over an exact field, with deterministic Gaussian
// elimination (pivot = leftmost nonzero column, topmost row).  Every basis
// this file produces is reproducible bit-for-bit from its input.
#pragma once

#include <exhom/field.hpp>

#include <optional>
#include <vector>

namespace exhom {

template <class F>
struct Mat {
    using Elt = typename F::Elt;
    int rows = 0, cols = 0;
    std::vector<Elt> a;  // row-major, rows*cols entries; Elt() is zero

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {
        check(r >= 0 && c >= 0, "negative matrix shape");
    }

    Elt& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Elt& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }
};

template <class F>
Mat<F> zeros(int r, int c) {
    return Mat<F>(r, c);
}

template <class F>
Mat<F> eye(int n) {
    Mat<F> m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = typename F::Elt(1);
    return m;
}

template <class F>
bool is_zero_mat(const F& k, const Mat<F>& m) {
    for (const auto& e : m.a)
        if (!k.is_zero(e)) return false;
    return true;
}

template <class F>
Mat<F> add(const F& k, const Mat<F>& x, const Mat<F>& y) {
    check(x.rows == y.rows && x.cols == y.cols, "matrix add: shape mismatch");
    Mat<F> r(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = k.add(x.a[i], y.a[i]);
    return r;
}

template <class F>
Mat<F> sub(const F& k, const Mat<F>& x, const Mat<F>& y) {
    check(x.rows == y.rows && x.cols == y.cols, "matrix sub: shape mismatch");
    Mat<F> r(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = k.sub(x.a[i], y.a[i]);
    return r;
}

template <class F>
Mat<F> neg(const F& k, const Mat<F>& x) {
    Mat<F> r(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = k.neg(x.a[i]);
    return r;
}

template <class F>
Mat<F> scale(const F& k, const typename F::Elt& c, const Mat<F>& x) {
    Mat<F> r(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = k.mul(c, x.a[i]);
    return r;
}

template <class F>
Mat<F> mul(const F& k, const Mat<F>& x, const Mat<F>& y) {
    check(x.cols == y.rows, "matrix mul: inner dimension mismatch");
    Mat<F> r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int l = 0; l < x.cols; ++l) {
            const auto& xe = x.at(i, l);
            if (k.is_zero(xe)) continue;
            for (int j = 0; j < y.cols; ++j)
                r.at(i, j) = k.add(r.at(i, j), k.mul(xe, y.at(l, j)));
        }
    return r;
}

template <class F>
Mat<F> hcat(const Mat<F>& x, const Mat<F>& y) {
    check(x.rows == y.rows, "hcat: row mismatch");
    Mat<F> r(x.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
        for (int j = 0; j < y.cols; ++j) r.at(i, x.cols + j) = y.at(i, j);
    }
    return r;
}

template <class F>
Mat<F> vcat(const Mat<F>& x, const Mat<F>& y) {
    check(x.cols == y.cols, "vcat: column mismatch");
    Mat<F> r(x.rows + y.rows, x.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(x.rows + i, j) = y.at(i, j);
    return r;
}

template <class F>
Mat<F> transpose(const Mat<F>& m) {
    Mat<F> r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

// Assemble from a grid of blocks; row heights / column widths must agree.
template <class F>
Mat<F> from_blocks(const std::vector<std::vector<Mat<F>>>& g) {
    check(!g.empty() && !g[0].empty(), "from_blocks: empty grid");
    const size_t bc = g[0].size();
    int rows = 0, cols = 0;
    for (size_t j = 0; j < bc; ++j) cols += g[0][j].cols;
    std::vector<int> roff(g.size()), coff(bc);
    for (size_t i = 0; i < g.size(); ++i) {
        check(g[i].size() == bc, "from_blocks: ragged grid");
        roff[i] = rows;
        rows += g[i][0].rows;
    }
    int c = 0;
    for (size_t j = 0; j < bc; ++j) { coff[j] = c; c += g[0][j].cols; }
    Mat<F> r(rows, cols);
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < bc; ++j) {
            const Mat<F>& b = g[i][j];
            check(b.rows == g[i][0].rows && b.cols == g[0][j].cols,
                  "from_blocks: block shape mismatch");
            for (int bi = 0; bi < b.rows; ++bi)
                for (int bj = 0; bj < b.cols; ++bj)
                    r.at(roff[i] + bi, coff[j] + bj) = b.at(bi, bj);
        }
    return r;
}

template <class F>
Mat<F> submatrix(const Mat<F>& m, const std::vector<int>& row_idx,
                 const std::vector<int>& col_idx) {
    Mat<F> r(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
    for (size_t i = 0; i < row_idx.size(); ++i)
        for (size_t j = 0; j < col_idx.size(); ++j)
            r.at(static_cast<int>(i), static_cast<int>(j)) = m.at(row_idx[i], col_idx[j]);
    return r;
}

template <class F>
std::vector<int> all_indices(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

template <class F>
struct Rref {
    Mat<F> r;
    std::vector<int> pivots;  // pivot column of row i, strictly increasing
};

template <class F>
Rref<F> rref(const F& k, Mat<F> m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int pr = -1;
        for (int i = row; i < m.rows; ++i)
            if (!k.is_zero(m.at(i, col))) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != row)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(row, j));
        const auto piv_inv = k.inv(m.at(row, col));
        for (int j = col; j < m.cols; ++j) m.at(row, j) = k.mul(piv_inv, m.at(row, j));
        for (int i = 0; i < m.rows; ++i) {
            if (i == row || k.is_zero(m.at(i, col))) continue;
            const auto f = m.at(i, col);
            for (int j = col; j < m.cols; ++j)
                m.at(i, j) = k.sub(m.at(i, j), k.mul(f, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

template <class F>
int rank(const F& k, const Mat<F>& m) {
    return static_cast<int>(rref(k, m).pivots.size());
}

// Columns form a kernel basis; column j has a 1 in the j-th free variable.
template <class F>
Mat<F> kernel_basis(const F& k, const Mat<F>& m) {
    Rref<F> e = rref(k, m);
    std::vector<int> free_cols;
    {
        size_t pi = 0;
        for (int c = 0; c < m.cols; ++c) {
            if (pi < e.pivots.size() && e.pivots[pi] == c) { ++pi; continue; }
            free_cols.push_back(c);
        }
    }
    Mat<F> kmat(m.cols, static_cast<int>(free_cols.size()));
    for (size_t j = 0; j < free_cols.size(); ++j) {
        kmat.at(free_cols[j], static_cast<int>(j)) = typename F::Elt(1);
        for (size_t i = 0; i < e.pivots.size(); ++i)
            kmat.at(e.pivots[i], static_cast<int>(j)) = k.neg(e.r.at(static_cast<int>(i), free_cols[j]));
    }
    return kmat;
}

// Solve m x = b columnwise; free variables are set to 0.  Empty optional
// when some column of b is outside the column span of m.
template <class F>
std::optional<Mat<F>> solve(const F& k, const Mat<F>& m, const Mat<F>& b) {
    check(m.rows == b.rows, "solve: row mismatch");
    Rref<F> e = rref(k, hcat(m, b));
    for (int c : e.pivots)
        if (c >= m.cols) return std::nullopt;
    Mat<F> x(m.cols, b.cols);
    for (size_t i = 0; i < e.pivots.size(); ++i)
        for (int j = 0; j < b.cols; ++j)
            x.at(e.pivots[i], j) = e.r.at(static_cast<int>(i), m.cols + j);
    return x;
}

template <class F>
Mat<F> inverse(const F& k, const Mat<F>& m) {
    check(m.rows == m.cols, "inverse: matrix not square");
    auto x = solve(k, m, eye<F>(m.rows));
    check(x.has_value() && rank(k, m) == m.rows, "inverse: singular matrix");
    return *x;
}

template <class F>
bool is_invertible(const F& k, const Mat<F>& m) {
    return m.rows == m.cols && rank(k, m) == m.rows;
}

// Pivot columns of m itself: a deterministic basis of the column space.
template <class F>
Mat<F> image_basis(const F& k, const Mat<F>& m) {
    Rref<F> e = rref(k, m);
    return submatrix(m, all_indices<F>(m.rows), e.pivots);
}

// Extend the independent columns of sub to a basis of F^ambient_dim by the
// lowest-index standard vectors; returns the added columns.
template <class F>
Mat<F> complement(const F& k, const Mat<F>& sub, int ambient_dim) {
    check(sub.rows == ambient_dim, "complement: ambient dimension mismatch");
    Rref<F> e = rref(k, hcat(sub, eye<F>(ambient_dim)));
    for (int j = 0; j < sub.cols; ++j)
        check(j < static_cast<int>(e.pivots.size()) && e.pivots[j] == j,
              "complement: dependent columns in sub");
    Mat<F> out(ambient_dim, ambient_dim - sub.cols);
    int col = 0;
    for (size_t i = sub.cols; i < e.pivots.size(); ++i)
        out.at(e.pivots[i] - sub.cols, col++) = typename F::Elt(1);
    check(col == ambient_dim - sub.cols, "complement: rank deficit");
    return out;
}

}  // namespace exhom
