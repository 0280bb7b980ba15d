#pragma once

// The multiplication algebra M(A): the associative operator algebra generated
// by all left and right multiplications, kept as an echelonized subspace of
// End(A) with closure, membership, trace-form radicals, nilpotency chains,
// matrix-unit certification and the M = End simplicity criterion.
//
// Operator products here are written left to right: (fg)(x) = g(f(x)). This
// is the order under which the operators E_{ij} : e_i -> e_j multiply as
// matrix units, E_{ij} E_{kl} = delta_{jk} E_{il}.

#include <map>

#include "conserv/algebra.hpp"

namespace conserv {

// The operator taking e_a to e_b and every other basis vector to zero.
template <Field F>
Matrix<F> basis_unit(const F& f, int n, int a, int b) {
    Matrix<F> m(f, n, n);
    m.at(b, a) = f.one();
    return m;
}

template <Field F>
Vec<F> flatten_op(const Matrix<F>& m) {
    return m.a;
}

template <Field F>
Matrix<F> unflatten_op(const F& f, int n, const Vec<F>& v) {
    Matrix<F> m(f, n, n);
    m.a = v;
    return m;
}

// left-to-right operator product: apply a, then b
template <Field F>
Matrix<F> op_compose(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
    return mat_mul(f, b, a);
}

// Echelonized subspace of End(A), flattened row-major over n^2 coordinates.
template <Field F>
struct OperatorSubspace {
    int n = 0; // ambient operators are n x n
    RowSpace<F> space;

    OperatorSubspace(const F& f, int n_) : n(n_), space(f, n_ * n_) {}

    int dim() const { return space.dim(); }
    bool contains(const Matrix<F>& T) const { return space.contains(flatten_op(T)); }
    bool insert(const Matrix<F>& T) { return space.insert(flatten_op(T)); }

    Matrix<F> op(int i) const { return unflatten_op(space.field, n, space.rows[i]); }
    std::vector<Matrix<F>> ops() const {
        std::vector<Matrix<F>> out;
        out.reserve(space.rows.size());
        for (int i = 0; i < dim(); ++i) out.push_back(op(i));
        return out;
    }
};

// Closure of span{L_{e_i}, R_{e_i}} (plus the identity when asked) under
// composition: a worklist of newly adjoined operators is multiplied against
// the whole current basis on both sides until the dimension stabilizes.
template <Field F>
OperatorSubspace<F> generate_mult_algebra(const StructureAlgebra<F>& A,
                                          bool include_identity = false) {
    const F& f = A.field;
    int n = A.dim;
    OperatorSubspace<F> M(f, n);
    std::vector<Matrix<F>> work;
    auto adjoin = [&](const Matrix<F>& T) {
        if (M.insert(T)) work.push_back(T);
    };
    if (include_identity) adjoin(Matrix<F>::identity(f, n));
    for (int i = 0; i < n; ++i) {
        adjoin(left_mult(A, unit_vec(f, n, i)));
        adjoin(right_mult(A, unit_vec(f, n, i)));
    }
    size_t next = 0;
    while (next < work.size()) {
        auto T = work[next++]; // copy: work may reallocate
        // snapshot the basis; products against operators adjoined later are
        // covered when those operators are popped themselves
        auto basis = M.ops();
        for (const auto& B : basis) {
            adjoin(mat_mul(f, T, B));
            adjoin(mat_mul(f, B, T));
        }
        if (M.dim() == n * n && !include_identity) break; // cannot grow further
        if (include_identity && M.dim() == n * n) break;
    }
    return M;
}

template <Field F>
struct IdealSpan {
    std::vector<Vec<F>> ideal;     // span(S) + M S
    std::vector<Vec<F>> m_image;   // span(M S) alone
    bool coincide = false;         // whether the two agree
};

// The ideal generated by S. The paper identifies it with M S; for a
// non-unital algebra the safe object is span(S) + M S, so both are computed
// and compared.
template <Field F>
IdealSpan<F> ideal_generated(const StructureAlgebra<F>& A, const std::vector<Vec<F>>& S) {
    const F& f = A.field;
    auto M = generate_mult_algebra(A, false);
    RowSpace<F> ms(f, A.dim), full(f, A.dim);
    for (const auto& x : S) {
        full.insert(x);
        for (int i = 0; i < M.dim(); ++i) {
            auto img = mat_apply(f, M.op(i), x);
            ms.insert(img);
            full.insert(img);
        }
    }
    IdealSpan<F> out;
    out.ideal = full.rows;
    out.m_image = ms.rows;
    out.coincide = full.equals(ms);
    return out;
}

// Radical of the symmetric form <f, g> = trace(fg) on M, returned as
// echelonized operators. An ideal of M by associativity of the trace form.
template <Field F>
std::vector<Matrix<F>> trace_form_radical(const OperatorSubspace<F>& M) {
    const F& f = M.space.field;
    int m = M.dim();
    auto ops = M.ops();
    Matrix<F> gram(f, m, m);
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            auto t = mat_trace(f, mat_mul(f, ops[a], ops[b]));
            gram.at(a, b) = t;
            gram.at(b, a) = t;
        }
    RowSpace<F> rad(f, M.n * M.n);
    for (const auto& coeffs : nullspace(f, gram)) {
        Matrix<F> T(f, M.n, M.n);
        for (int a = 0; a < m; ++a)
            if (!f.is_zero(coeffs[a])) T = mat_add(f, T, mat_scale(f, coeffs[a], ops[a]));
        rad.insert(flatten_op(T));
    }
    std::vector<Matrix<F>> out;
    for (const auto& row : rad.rows) out.push_back(unflatten_op(f, M.n, row));
    return out;
}

template <Field F>
struct NilpotencyReport {
    bool nilpotent = false;
    int index = 0;               // smallest k with I^k = 0 when nilpotent
    std::vector<int> chain_dims; // dim I, dim I^2, ...
};

// Power chain I, I^2 = span(I I), I^3 = span(I^2 I), ... until zero or
// stabilization (I^{k+1} = I^k as spans, which persists by associativity).
// I must lie inside M.
template <Field F>
NilpotencyReport<F> subspace_is_nilpotent(const OperatorSubspace<F>& M,
                                          const std::vector<Matrix<F>>& I) {
    const F& f = M.space.field;
    for (const auto& T : I)
        if (!M.contains(T)) throw error("nilpotency: subspace not inside M");
    NilpotencyReport<F> rep;
    std::vector<Vec<F>> flat;
    for (const auto& T : I) flat.push_back(flatten_op(T));
    RowSpace<F> power = span_of(f, M.n * M.n, flat);
    rep.chain_dims.push_back(power.dim());
    for (int k = 2; k <= 2 * (M.n * M.n + 2); ++k) {
        RowSpace<F> next(f, M.n * M.n);
        for (const auto& arow : power.rows) {
            auto a = unflatten_op(f, M.n, arow);
            for (const auto& b : I) next.insert(flatten_op(op_compose(f, a, b)));
        }
        rep.chain_dims.push_back(next.dim());
        if (next.dim() == 0) {
            rep.nilpotent = true;
            rep.index = k;
            return rep;
        }
        if (next.equals(power)) break; // stabilized, never reaches zero
        power = std::move(next);
    }
    rep.nilpotent = false;
    return rep;
}

template <Field F>
struct MatrixUnitReport {
    bool all_inside = true;
    bool relations_ok = true;
    bool cross_ok = true;
    std::string first_violation;
};

// Checks e_{ij} e_{kl} = delta_{jk} e_{il} inside each labeled family and
// mutual annihilation across families, with the left-to-right product.
// candidates: one or two families, each a row-major k x k grid of operators.
template <Field F>
MatrixUnitReport<F> verify_matrix_units(const OperatorSubspace<F>& M,
                                        const std::vector<std::vector<Matrix<F>>>& families,
                                        int grid) {
    const F& f = M.space.field;
    MatrixUnitReport<F> rep;
    auto unit = [&](const std::vector<Matrix<F>>& fam, int i, int j) -> const Matrix<F>& {
        return fam[i * grid + j];
    };
    for (const auto& fam : families)
        for (const auto& T : fam)
            if (!M.contains(T)) rep.all_inside = false;
    for (const auto& fam : families)
        for (int i = 0; i < grid && rep.relations_ok; ++i)
            for (int j = 0; j < grid && rep.relations_ok; ++j)
                for (int k = 0; k < grid && rep.relations_ok; ++k)
                    for (int l = 0; l < grid; ++l) {
                        auto prod = op_compose(f, unit(fam, i, j), unit(fam, k, l));
                        Matrix<F> expect =
                            (j == k) ? unit(fam, i, l) : Matrix<F>(f, M.n, M.n);
                        if (!mat_eq(f, prod, expect)) {
                            rep.relations_ok = false;
                            rep.first_violation = "e" + std::to_string(i + 1) +
                                                  std::to_string(j + 1) + " e" +
                                                  std::to_string(k + 1) + std::to_string(l + 1);
                            break;
                        }
                    }
    if (families.size() == 2)
        for (const auto& a : families[0])
            for (const auto& b : families[1]) {
                if (!mat_is_zero(f, op_compose(f, a, b)) ||
                    !mat_is_zero(f, op_compose(f, b, a))) {
                    rep.cross_ok = false;
                    break;
                }
            }
    return rep;
}

// span{T(x)} over an ideal R of M; verified to be a two-sided ideal of A.
template <Field F>
std::vector<Vec<F>> radical_action_ideal(const StructureAlgebra<F>& A,
                                         const OperatorSubspace<F>& M,
                                         const std::vector<Matrix<F>>& R) {
    const F& f = A.field;
    for (const auto& T : R)
        if (!M.contains(T)) throw error("radical_action_ideal: R not inside M");
    // two-sided ideal of M: products with the M basis stay in span(R)
    RowSpace<F> rspan(f, A.dim * A.dim);
    for (const auto& T : R) rspan.insert(flatten_op(T));
    for (const auto& T : R)
        for (int i = 0; i < M.dim(); ++i) {
            auto B = M.op(i);
            if (!rspan.contains(flatten_op(mat_mul(f, T, B))) ||
                !rspan.contains(flatten_op(mat_mul(f, B, T))))
                throw error("radical_action_ideal: R is not an ideal of M");
        }
    RowSpace<F> img(f, A.dim);
    for (const auto& T : R)
        for (int j = 0; j < A.dim; ++j) img.insert(T.col(j));
    if (!is_ideal(A, img)) throw error("radical_action_ideal: R.A is not an ideal of A");
    return img.rows;
}

// Lemma-style criterion: A simple iff M(A) = End(A), decided by dimension.
// Requires A^2 != 0.
template <Field F>
bool simplicity_by_dimension(const StructureAlgebra<F>& A) {
    if (A.has_zero_product()) throw error("simplicity: zero-multiplication algebra");
    auto M = generate_mult_algebra(A, false);
    return M.dim() == A.dim * A.dim;
}

} // namespace conserv
