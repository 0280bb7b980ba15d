#pragma once

// Dense exact linear algebra over a Field: row reduction, kernels, linear
// solves with a deterministic particular solution, determinants, inverses,
// and a division-free characteristic polynomial.

#include <algorithm>
#include <optional>
#include <vector>

#include "conserv/field.hpp"

namespace conserv {

template <Field F>
using Vec = std::vector<typename F::Elem>;

template <Field F>
Vec<F> zero_vec(const F& f, int n) {
    return Vec<F>(n, f.zero());
}

template <Field F>
Vec<F> unit_vec(const F& f, int n, int i) {
    Vec<F> v(n, f.zero());
    v[i] = f.one();
    return v;
}

template <Field F>
bool vec_is_zero(const F& f, const Vec<F>& v) {
    return std::all_of(v.begin(), v.end(), [&](const auto& x) { return f.is_zero(x); });
}

template <Field F>
Vec<F> vec_add(const F& f, const Vec<F>& a, const Vec<F>& b) {
    Vec<F> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
    return r;
}

template <Field F>
Vec<F> vec_sub(const F& f, const Vec<F>& a, const Vec<F>& b) {
    Vec<F> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
    return r;
}

template <Field F>
Vec<F> vec_scale(const F& f, const typename F::Elem& c, const Vec<F>& a) {
    Vec<F> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = f.mul(c, a[i]);
    return r;
}

template <Field F>
bool vec_eq(const F& f, const Vec<F>& a, const Vec<F>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!f.eq(a[i], b[i])) return false;
    return true;
}

// Row-major dense matrix. All operators act on column vectors: column j of a
// LinearOp is the image of the j-th basis vector.
template <Field F>
struct Matrix {
    using Elem = typename F::Elem;
    int rows = 0, cols = 0;
    std::vector<Elem> a;

    Matrix() = default;
    Matrix(const F& f, int r, int c) : rows(r), cols(c), a(size_t(r) * c, f.zero()) {}

    Elem& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const Elem& at(int r, int c) const { return a[size_t(r) * cols + c]; }

    static Matrix identity(const F& f, int n) {
        Matrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    Matrix transpose(const F& f) const {
        Matrix m(f, cols, rows);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m.at(c, r) = at(r, c);
        return m;
    }

    Vec<F> col(int c) const {
        Vec<F> v(rows);
        for (int r = 0; r < rows; ++r) v[r] = at(r, c);
        return v;
    }
    void set_col(int c, const Vec<F>& v) {
        for (int r = 0; r < rows; ++r) at(r, c) = v[r];
    }
};

template <Field F>
bool mat_eq(const F& f, const Matrix<F>& A, const Matrix<F>& B) {
    if (A.rows != B.rows || A.cols != B.cols) return false;
    for (size_t i = 0; i < A.a.size(); ++i)
        if (!f.eq(A.a[i], B.a[i])) return false;
    return true;
}

template <Field F>
bool mat_is_zero(const F& f, const Matrix<F>& A) {
    for (const auto& x : A.a)
        if (!f.is_zero(x)) return false;
    return true;
}

template <Field F>
Matrix<F> mat_add(const F& f, const Matrix<F>& A, const Matrix<F>& B) {
    Matrix<F> R(f, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) R.a[i] = f.add(A.a[i], B.a[i]);
    return R;
}

template <Field F>
Matrix<F> mat_sub(const F& f, const Matrix<F>& A, const Matrix<F>& B) {
    Matrix<F> R(f, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) R.a[i] = f.sub(A.a[i], B.a[i]);
    return R;
}

template <Field F>
Matrix<F> mat_scale(const F& f, const typename F::Elem& c, const Matrix<F>& A) {
    Matrix<F> R(f, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) R.a[i] = f.mul(c, A.a[i]);
    return R;
}

template <Field F>
Matrix<F> mat_mul(const F& f, const Matrix<F>& A, const Matrix<F>& B) {
    if (A.cols != B.rows) throw error("mat_mul: dimension mismatch");
    Matrix<F> R(f, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const auto& aik = A.at(i, k);
            if (f.is_zero(aik)) continue;
            for (int j = 0; j < B.cols; ++j)
                R.at(i, j) = f.add(R.at(i, j), f.mul(aik, B.at(k, j)));
        }
    return R;
}

template <Field F>
Vec<F> mat_apply(const F& f, const Matrix<F>& A, const Vec<F>& x) {
    if (int(x.size()) != A.cols) throw error("mat_apply: dimension mismatch");
    Vec<F> y(A.rows, f.zero());
    for (int j = 0; j < A.cols; ++j) {
        if (f.is_zero(x[j])) continue;
        for (int i = 0; i < A.rows; ++i)
            y[i] = f.add(y[i], f.mul(A.at(i, j), x[j]));
    }
    return y;
}

template <Field F>
typename F::Elem mat_trace(const F& f, const Matrix<F>& A) {
    auto t = f.zero();
    for (int i = 0; i < A.rows; ++i) t = f.add(t, A.at(i, i));
    return t;
}

// In-place reduced row echelon form with leftmost pivots and first-nonzero
// pivot rows; pivot columns reported in order. Returns the rank.
template <Field F>
int rref(const F& f, Matrix<F>& M, std::vector<int>* pivot_cols = nullptr) {
    int rank = 0;
    if (pivot_cols) pivot_cols->clear();
    for (int c = 0; c < M.cols && rank < M.rows; ++c) {
        int pr = -1;
        for (int r = rank; r < M.rows; ++r)
            if (!f.is_zero(M.at(r, c))) { pr = r; break; }
        if (pr < 0) continue;
        for (int j = 0; j < M.cols; ++j) std::swap(M.at(pr, j), M.at(rank, j));
        auto inv = f.inv(M.at(rank, c));
        for (int j = c; j < M.cols; ++j) M.at(rank, j) = f.mul(inv, M.at(rank, j));
        for (int r = 0; r < M.rows; ++r) {
            if (r == rank || f.is_zero(M.at(r, c))) continue;
            auto factor = M.at(r, c);
            for (int j = c; j < M.cols; ++j)
                M.at(r, j) = f.sub(M.at(r, j), f.mul(factor, M.at(rank, j)));
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++rank;
    }
    return rank;
}

// Basis of the right kernel {x : Ax = 0}, one vector per free column, in
// column order, each normalized with a 1 in its free coordinate.
template <Field F>
std::vector<Vec<F>> nullspace(const F& f, Matrix<F> A) {
    std::vector<int> piv;
    int rank = rref(f, A, &piv);
    std::vector<bool> is_piv(A.cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<Vec<F>> basis;
    for (int c = 0; c < A.cols; ++c) {
        if (is_piv[c]) continue;
        Vec<F> v(A.cols, f.zero());
        v[c] = f.one();
        for (int r = 0; r < rank; ++r)
            v[piv[r]] = f.neg(A.at(r, c));
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves Ax = b. Returns the particular solution with all free variables set
// to zero under the natural column order, or nullopt when inconsistent.
template <Field F>
std::optional<Vec<F>> solve(const F& f, const Matrix<F>& A, const Vec<F>& b) {
    Matrix<F> aug(f, A.rows, A.cols + 1);
    for (int r = 0; r < A.rows; ++r) {
        for (int c = 0; c < A.cols; ++c) aug.at(r, c) = A.at(r, c);
        aug.at(r, A.cols) = b[r];
    }
    std::vector<int> piv;
    int rank = rref(f, aug, &piv);
    if (!piv.empty() && piv.back() == A.cols) return std::nullopt;
    Vec<F> x(A.cols, f.zero());
    for (int r = 0; r < rank; ++r) x[piv[r]] = aug.at(r, A.cols);
    return x;
}

template <Field F>
typename F::Elem mat_det(const F& f, Matrix<F> M) {
    if (M.rows != M.cols) throw error("det: square matrix required");
    auto det = f.one();
    int n = M.rows;
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int r = c; r < n; ++r)
            if (!f.is_zero(M.at(r, c))) { pr = r; break; }
        if (pr < 0) return f.zero();
        if (pr != c) {
            for (int j = 0; j < n; ++j) std::swap(M.at(pr, j), M.at(c, j));
            det = f.neg(det);
        }
        det = f.mul(det, M.at(c, c));
        auto inv = f.inv(M.at(c, c));
        for (int r = c + 1; r < n; ++r) {
            if (f.is_zero(M.at(r, c))) continue;
            auto factor = f.mul(inv, M.at(r, c));
            for (int j = c; j < n; ++j)
                M.at(r, j) = f.sub(M.at(r, j), f.mul(factor, M.at(c, j)));
        }
    }
    return det;
}

template <Field F>
std::optional<Matrix<F>> mat_inverse(const F& f, const Matrix<F>& M) {
    if (M.rows != M.cols) throw error("inverse: square matrix required");
    int n = M.rows;
    Matrix<F> aug(f, n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) aug.at(r, c) = M.at(r, c);
        aug.at(r, n + r) = f.one();
    }
    if (rref(f, aug) < n) return std::nullopt;
    for (int r = 0; r < n; ++r)
        if (!f.eq(aug.at(r, r), f.one())) return std::nullopt;
    Matrix<F> inv(f, n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
    return inv;
}

// Characteristic polynomial det(tI - A) by the Samuelson-Berkowitz scheme
// (division-free, valid over any field). Coefficients lowest degree first;
// the leading coefficient is 1.
template <Field F>
std::vector<typename F::Elem> charpoly(const F& f, const Matrix<F>& A) {
    if (A.rows != A.cols) throw error("charpoly: square matrix required");
    int n = A.rows;
    std::vector<typename F::Elem> p{f.one()}; // highest degree first while building
    for (int k = 1; k <= n; ++k) {
        // Toeplitz column for the k-th leading principal block:
        // t0 = 1, t1 = -a_kk, t_i = -(R M^{i-2} C) for the (k-1)-block M.
        std::vector<typename F::Elem> t(k + 1, f.zero());
        t[0] = f.one();
        t[1] = f.neg(A.at(k - 1, k - 1));
        if (k >= 2) {
            Vec<F> w(k - 1);
            for (int i = 0; i < k - 1; ++i) w[i] = A.at(i, k - 1); // column C
            for (int i = 2; i <= k; ++i) {
                auto dot = f.zero();
                for (int j = 0; j < k - 1; ++j)
                    dot = f.add(dot, f.mul(A.at(k - 1, j), w[j])); // row R
                t[i] = f.neg(dot);
                if (i < k) {
                    Vec<F> nw(k - 1, f.zero());
                    for (int r = 0; r < k - 1; ++r)
                        for (int c = 0; c < k - 1; ++c)
                            nw[r] = f.add(nw[r], f.mul(A.at(r, c), w[c]));
                    w = std::move(nw);
                }
            }
        }
        std::vector<typename F::Elem> np(k + 1, f.zero());
        for (int i = 0; i <= k; ++i)
            for (size_t j = 0; j < p.size(); ++j) {
                if (i < int(j)) continue;
                size_t ti = i - j;
                if (ti >= t.size()) continue;
                np[i] = f.add(np[i], f.mul(t[ti], p[j]));
            }
        p = std::move(np);
    }
    std::reverse(p.begin(), p.end());
    return p;
}

// Echelonized subspace of F^n: rows kept in reduced row echelon form, so
// span equality is plain row-by-row equality and membership is reduction.
// Holds its field by value; field contexts are cheap.
template <Field F>
struct RowSpace {
    F field;
    int ambient = 0;
    std::vector<Vec<F>> rows;   // RREF, in pivot order
    std::vector<int> pivots;

    RowSpace(const F& f, int n) : field(f), ambient(n) {}

    int dim() const { return int(rows.size()); }

    // Reduces v against the basis; the remainder is zero iff v is in the span.
    Vec<F> reduce(Vec<F> v) const {
        for (size_t r = 0; r < rows.size(); ++r) {
            auto factor = v[pivots[r]];
            if (field.is_zero(factor)) continue;
            for (int j = 0; j < ambient; ++j)
                v[j] = field.sub(v[j], field.mul(factor, rows[r][j]));
        }
        return v;
    }

    bool contains(const Vec<F>& v) const { return vec_is_zero(field, reduce(v)); }

    // Inserts v if independent; returns true when the dimension grew.
    bool insert(Vec<F> v) {
        v = reduce(std::move(v));
        int p = -1;
        for (int j = 0; j < ambient; ++j)
            if (!field.is_zero(v[j])) { p = j; break; }
        if (p < 0) return false;
        auto inv = field.inv(v[p]);
        for (int j = 0; j < ambient; ++j) v[j] = field.mul(inv, v[j]);
        // clear column p above, keep rows sorted by pivot
        for (size_t r = 0; r < rows.size(); ++r) {
            auto c = rows[r][p];
            if (field.is_zero(c)) continue;
            for (int j = 0; j < ambient; ++j)
                rows[r][j] = field.sub(rows[r][j], field.mul(c, v[j]));
        }
        size_t pos = 0;
        while (pos < pivots.size() && pivots[pos] < p) ++pos;
        rows.insert(rows.begin() + pos, std::move(v));
        pivots.insert(pivots.begin() + pos, p);
        return true;
    }

    bool equals(const RowSpace& other) const {
        if (ambient != other.ambient || dim() != other.dim()) return false;
        for (int r = 0; r < dim(); ++r)
            if (!vec_eq(field, rows[r], other.rows[r])) return false;
        return true;
    }
};

template <Field F>
RowSpace<F> span_of(const F& f, int ambient, const std::vector<Vec<F>>& vecs) {
    RowSpace<F> s(f, ambient);
    for (const auto& v : vecs) s.insert(v);
    return s;
}

} // namespace conserv
