#pragma once

// The algebra W(n) of all bilinear products on an n-dimensional space,
// built from first principles: the bracket [T, B] of a linear and a bilinear
// map, the product A*B = [L_e^A, B] with a fixed vector e, the change to the
// 8-element working basis for n = 2, and the identities that make these
// algebras conservative/terminal, together with the characteristic-polynomial
// invariants of left multiplications.

#include <variant>

#include "conserv/catalog.hpp"

namespace conserv {

// b(v_t, v_l) = sum_c tensor[(t*n + l)*n + c] v_c
template <Field F>
struct BilinearMap {
    using Elem = typename F::Elem;
    int n = 0;
    std::vector<Elem> t;

    BilinearMap() = default;
    BilinearMap(const F& f, int n_) : n(n_), t(size_t(n_) * n_ * n_, f.zero()) {}

    Elem& at(int a, int b, int c) { return t[(size_t(a) * n + b) * n + c]; }
    const Elem& at(int a, int b, int c) const { return t[(size_t(a) * n + b) * n + c]; }

    Vec<F> eval(const F& f, const Vec<F>& x, const Vec<F>& y) const {
        Vec<F> out(n, f.zero());
        for (int a = 0; a < n; ++a) {
            if (f.is_zero(x[a])) continue;
            for (int b = 0; b < n; ++b) {
                if (f.is_zero(y[b])) continue;
                auto xy = f.mul(x[a], y[b]);
                for (int c = 0; c < n; ++c)
                    out[c] = f.add(out[c], f.mul(xy, at(a, b, c)));
            }
        }
        return out;
    }
};

// [T, B](x, y) = T(B(x,y)) - B(Tx, y) - B(x, Ty)
template <Field F>
BilinearMap<F> map_bracket(const F& f, const Matrix<F>& T, const BilinearMap<F>& B) {
    if (T.rows != B.n || T.cols != B.n) throw error("map_bracket: dimension mismatch");
    int n = B.n;
    BilinearMap<F> out(f, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    out.at(a, b, d) = f.add(out.at(a, b, d), f.mul(T.at(d, c), B.at(a, b, c)));
            for (int s = 0; s < n; ++s) {
                const auto& ta = T.at(s, a);
                if (!f.is_zero(ta))
                    for (int c = 0; c < n; ++c)
                        out.at(a, b, c) = f.sub(out.at(a, b, c), f.mul(ta, B.at(s, b, c)));
                const auto& tb = T.at(s, b);
                if (!f.is_zero(tb))
                    for (int c = 0; c < n; ++c)
                        out.at(a, b, c) = f.sub(out.at(a, b, c), f.mul(tb, B.at(a, s, c)));
            }
        }
    return out;
}

// L_e^B as a matrix: x -> B(e, x)
template <Field F>
Matrix<F> left_section(const F& f, const BilinearMap<F>& B, const Vec<F>& e) {
    Matrix<F> L(f, B.n, B.n);
    for (int x = 0; x < B.n; ++x) {
        Vec<F> ex = unit_vec(f, B.n, x);
        auto img = B.eval(f, e, ex);
        for (int c = 0; c < B.n; ++c) L.at(c, x) = img[c];
    }
    return L;
}

template <Field F>
struct KantorAlgebra {
    StructureAlgebra<F> alg; // on the alpha basis, dimension n^3
    int vdim = 0;            // n
    int e_index = 0;         // the distinguished vector is v_{e_index+1}

    // alpha basis order: (i,j,k) lexicographic over {1..n}^3
    static int alpha_index(int n, int i, int j, int k) { return (i * n + j) * n + k; }
};

// The algebra of all multiplications on V_n with A*B = [L_{v1}^A, B].
template <Field F>
KantorAlgebra<F> build_W(const F& f, int n) {
    int N = n * n * n;
    KantorAlgebra<F> K{StructureAlgebra<F>(f, N, "W(" + std::to_string(n) + ")alpha"), n, 0};
    Vec<F> e = unit_vec(f, n, 0);
    for (int a = 0; a < N; ++a) {
        BilinearMap<F> A(f, n);
        A.t[a] = f.one();
        auto L = left_section(f, A, e);
        for (int b = 0; b < N; ++b) {
            BilinearMap<F> B(f, n);
            B.t[b] = f.one();
            auto P = map_bracket(f, L, B);
            // tensor coefficients are exactly the alpha coordinates
            for (int k = 0; k < N; ++k) K.alg.c(a, b, k) = P.t[k];
        }
    }
    return K;
}

template <Field F>
KantorAlgebra<F> build_W2(const F& f) {
    return build_W(f, 2);
}

// Columns are e_1..e_8 in alpha coordinates (alpha basis ordered
// lexicographically by (i,j,k)).
template <Field F>
Matrix<F> e_basis_change(const F& f) {
    auto ai = [](int i, int j, int k) { return KantorAlgebra<F>::alpha_index(2, i - 1, j - 1, k - 1); };
    Matrix<F> P(f, 8, 8);
    auto set = [&](int col, int a, long long v) { P.at(a, col) = f.from_int(v); };
    set(0, ai(1, 1, 1), 1); set(0, ai(1, 2, 2), -1); set(0, ai(2, 1, 2), -1);
    set(1, ai(1, 1, 2), 1);
    set(2, ai(2, 2, 2), 1); set(2, ai(1, 2, 1), -1); set(2, ai(2, 1, 1), -1);
    set(3, ai(2, 2, 1), 1);
    set(4, ai(1, 1, 1), 2); set(4, ai(1, 2, 2), 1); set(4, ai(2, 1, 2), 1);
    set(5, ai(2, 2, 2), 2); set(5, ai(1, 2, 1), 1); set(5, ai(2, 1, 1), 1);
    set(6, ai(1, 2, 1), 1); set(6, ai(2, 1, 1), -1);
    set(7, ai(1, 2, 2), 1); set(7, ai(2, 1, 2), -1);
    return P;
}

// Conjugates the alpha-basis structure constants into the e-basis. Errors
// when the change matrix is singular over the field (it is over F_2 and F_3:
// the integer determinant is 36), reporting the determinant.
template <Field F>
StructureAlgebra<F> change_to_e_basis(const KantorAlgebra<F>& K) {
    const F& f = K.alg.field;
    if (K.vdim != 2) throw error("change_to_e_basis: only W(2) has the printed e-basis");
    auto P = e_basis_change(f);
    auto det = mat_det(f, P);
    if (f.is_zero(det))
        throw error("change_to_e_basis: singular basis change over " + f.spec().name() +
                    " (det = " + f.to_string(det) + ")");
    auto Pinv = *mat_inverse(f, P);
    StructureAlgebra<F> out(f, 8, "W2x2");
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            auto prod = multiply(K.alg, P.col(a), P.col(b));
            auto z = mat_apply(f, Pinv, prod);
            for (int k = 0; k < 8; ++k) out.c(a, b, k) = z[k];
        }
    return out;
}

// ----- conservativity -----

template <Field F>
BilinearMap<F> own_product(const StructureAlgebra<F>& A) {
    BilinearMap<F> P(A.field, A.dim);
    P.t = A.table;
    return P;
}

template <Field F>
struct ConservativityWitness {
    bool feasible = false;
    BilinearMap<F> associated; // F(a,b) as a tensor, when feasible
    int bad_a = -1, bad_b = -1;
};

// For each basis pair (a, b) solves [L_c, P] = -[L_b, [L_a, P]] for c, where
// P is the algebra's own product. The per-pair solution is the solver's
// deterministic one (free variables zero); infeasibility of some pair is a
// result, not an error.
template <Field F>
ConservativityWitness<F> conservativity_witness(const StructureAlgebra<F>& A) {
    const F& f = A.field;
    int n = A.dim;
    auto P = own_product(A);
    // column i: flatten([L_{e_i}, P])
    Matrix<F> sys(f, n * n * n, n);
    for (int i = 0; i < n; ++i) {
        auto Li = left_mult(A, unit_vec(f, n, i));
        auto br = map_bracket(f, Li, P);
        for (int r = 0; r < n * n * n; ++r) sys.at(r, i) = br.t[r];
    }
    ConservativityWitness<F> out;
    out.associated = BilinearMap<F>(f, n);
    for (int a = 0; a < n; ++a) {
        auto La = left_mult(A, unit_vec(f, n, a));
        auto inner = map_bracket(f, La, P);
        for (int b = 0; b < n; ++b) {
            auto Lb = left_mult(A, unit_vec(f, n, b));
            auto rhs_map = map_bracket(f, Lb, inner);
            Vec<F> rhs(n * n * n);
            for (int r = 0; r < n * n * n; ++r) rhs[r] = f.neg(rhs_map.t[r]);
            auto c = solve(f, sys, rhs);
            if (!c) {
                out.feasible = false;
                out.bad_a = a;
                out.bad_b = b;
                return out;
            }
            for (int k = 0; k < n; ++k) out.associated.at(a, b, k) = (*c)[k];
        }
    }
    out.feasible = true;
    return out;
}

// Substitutes a candidate associated product into the conservativity
// identity and checks every basis quadruple; the whole check is exact, so no
// sampling is involved.
template <Field F>
bool verify_associated_product(const StructureAlgebra<F>& A, const BilinearMap<F>& Fab,
                               int* bad_quad = nullptr) {
    const F& f = A.field;
    int n = A.dim;
    auto P = own_product(A);
    for (int a = 0; a < n; ++a) {
        auto La = left_mult(A, unit_vec(f, n, a));
        auto inner = map_bracket(f, La, P);
        for (int b = 0; b < n; ++b) {
            auto Lb = left_mult(A, unit_vec(f, n, b));
            auto lhs = map_bracket(f, Lb, inner);
            Vec<F> c(n);
            for (int k = 0; k < n; ++k) c[k] = Fab.at(a, b, k);
            auto Lc = left_mult(A, c);
            auto rhs = map_bracket(f, Lc, P);
            for (int r = 0; r < n * n * n; ++r)
                if (!f.eq(lhs.t[r], f.neg(rhs.t[r]))) {
                    if (bad_quad) {
                        bad_quad[0] = a;
                        bad_quad[1] = b;
                        bad_quad[2] = (r / n) / n;
                        bad_quad[3] = (r / n) % n;
                    }
                    return false;
                }
        }
    }
    return true;
}

template <Field F>
struct TerminalReport {
    bool ok = false;
    int bad[4] = {-1, -1, -1, -1}; // violating (a, b, x, y) when not ok
};

// Terminal identity: the conservativity identity with the fixed associated
// product F(a,b) = (2ab + ba)/3. Requires 3 invertible in the field.
template <Field F>
TerminalReport<F> check_terminal(const StructureAlgebra<F>& A) {
    const F& f = A.field;
    if (f.characteristic() == 3) throw error("check_terminal: 1/3 undefined in characteristic 3");
    int n = A.dim;
    auto third = f.inv(f.from_int(3));
    BilinearMap<F> Fab(f, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto ab = A.basis_product(a, b);
            auto ba = A.basis_product(b, a);
            for (int k = 0; k < n; ++k)
                Fab.at(a, b, k) = f.mul(third, f.add(f.add(ab[k], ab[k]), ba[k]));
        }
    TerminalReport<F> rep;
    rep.ok = verify_associated_product(A, Fab, rep.bad);
    return rep;
}

// ----- characteristic polynomial invariants -----

template <Field F>
std::vector<typename F::Elem> charpoly_of_left_mult(const StructureAlgebra<F>& A,
                                                    const Vec<F>& w) {
    return charpoly(A.field, left_mult(A, w));
}

// The printed invariant polynomials: ell_1..ell_6 for W2 (6 coordinates),
// Lambda_1..Lambda_3 for W(2) (8 coordinates). Evaluated literally.
template <Field F>
std::vector<typename F::Elem> charpoly_invariants(CatalogName which, const F& f,
                                                  const Vec<F>& w) {
    auto I = [&](long long v) { return f.from_int(v); };
    auto at = [&](int i) { return w[i - 1]; }; // 1-based like the paper
    if (which == CatalogName::W2) {
        if (w.size() != 6) throw error("charpoly_invariants: W2 expects 6 coordinates");
        auto l1 = at(1), l2 = at(2), l3 = at(3), l5 = at(5), l6 = at(6);
        auto sq = [&](auto a) { return f.mul(a, a); };
        std::vector<typename F::Elem> out;
        // 9 l5
        out.push_back(f.mul(I(9), l5));
        // -11 l1^2 - 11 l5 l1 + 31 l5^2 + 11 l2 l3 - 11 l2 l6
        {
            auto v = f.mul(I(-11), sq(l1));
            v = f.add(v, f.mul(I(-11), f.mul(l5, l1)));
            v = f.add(v, f.mul(I(31), sq(l5)));
            v = f.add(v, f.mul(I(11), f.mul(l2, l3)));
            v = f.add(v, f.mul(I(-11), f.mul(l2, l6)));
            out.push_back(v);
        }
        // -3 l5 (22 l1^2 + 22 l5 l1 - 17 l5^2 - 22 l2 l3 + 22 l2 l6)
        {
            auto v = f.mul(I(22), sq(l1));
            v = f.add(v, f.mul(I(22), f.mul(l5, l1)));
            v = f.add(v, f.mul(I(-17), sq(l5)));
            v = f.add(v, f.mul(I(-22), f.mul(l2, l3)));
            v = f.add(v, f.mul(I(22), f.mul(l2, l6)));
            out.push_back(f.mul(f.mul(I(-3), l5), v));
        }
        // ell_4, written term by term
        {
            auto v = f.mul(I(19), f.mul(sq(l1), sq(l1)));
            v = f.add(v, f.mul(I(38), f.mul(l5, f.mul(l1, sq(l1)))));
            v = f.add(v, f.mul(I(-120), f.mul(sq(l5), sq(l1))));
            v = f.add(v, f.mul(I(-38), f.mul(f.mul(l2, l3), sq(l1))));
            v = f.add(v, f.mul(I(38), f.mul(f.mul(l2, l6), sq(l1))));
            v = f.add(v, f.mul(I(-139), f.mul(f.mul(sq(l5), l5), l1)));
            v = f.add(v, f.mul(I(-38), f.mul(f.mul(l2, l3), f.mul(l5, l1))));
            v = f.add(v, f.mul(I(38), f.mul(f.mul(l2, l5), f.mul(l6, l1))));
            v = f.add(v, f.mul(I(40), f.mul(sq(l5), sq(l5))));
            v = f.add(v, f.mul(I(19), f.mul(sq(l2), sq(l3))));
            v = f.add(v, f.mul(I(139), f.mul(f.mul(l2, l3), sq(l5))));
            v = f.add(v, f.mul(I(19), f.mul(sq(l2), sq(l6))));
            v = f.add(v, f.mul(I(-139), f.mul(f.mul(l2, l6), sq(l5))));
            v = f.add(v, f.mul(I(-38), f.mul(sq(l2), f.mul(l3, l6))));
            out.push_back(v);
        }
        // shared quadratic forms
        auto q = f.add(f.add(sq(l1), f.mul(l5, l1)),
                       f.sub(f.mul(l2, l6), f.mul(l2, l3))); // l1^2 + l5 l1 - l2 l3 + l2 l6
        auto q2 = f.sub(q, f.mul(I(2), sq(l5)));             // q - 2 l5^2
        // 3 l5 * q2 * (19 q - 2 l5^2 + ... ) where the second factor is
        // 19 l1^2 + 19 l5 l1 - 2 l5^2 - 19 l2 l3 + 19 l2 l6 = 19 q - 2 l5^2
        {
            auto second = f.sub(f.mul(I(19), q), f.mul(I(2), sq(l5)));
            out.push_back(f.mul(f.mul(I(3), l5), f.mul(q2, second)));
        }
        // -9 q q2^2
        out.push_back(f.mul(I(-9), f.mul(q, sq(q2))));
        return out;
    }
    if (which == CatalogName::W2x2) {
        if (w.size() != 8) throw error("charpoly_invariants: W2x2 expects 8 coordinates");
        auto l1 = at(1), l2 = at(2), l3 = at(3), l5 = at(5), l6 = at(6), l7 = at(7), l8 = at(8);
        auto sq = [&](auto a) { return f.mul(a, a); };
        std::vector<typename F::Elem> out;
        auto s = f.add(f.mul(I(3), l5), l8); // 3 l5 + l8
        out.push_back(f.mul(I(4), s));
        {
            auto v = f.mul(I(3), sq(l1));
            v = f.add(v, f.mul(I(3), f.mul(l5, l1)));
            v = f.add(v, f.mul(I(-3), f.mul(l8, l1)));
            v = f.add(v, f.mul(I(-15), sq(l5)));
            v = f.add(v, f.mul(I(-1), sq(l8)));
            v = f.add(v, f.mul(I(-3), f.mul(l2, l3)));
            v = f.add(v, f.mul(I(3), f.mul(l2, l6)));
            v = f.add(v, f.mul(I(3), f.mul(l2, l7)));
            v = f.add(v, f.mul(I(-12), f.mul(l5, l8)));
            out.push_back(f.mul(I(-4), v));
        }
        {
            auto v = f.mul(I(18), sq(l1));
            v = f.add(v, f.mul(I(18), f.mul(l5, l1)));
            v = f.add(v, f.mul(I(-18), f.mul(l8, l1)));
            v = f.add(v, f.mul(I(-27), sq(l5)));
            v = f.add(v, sq(l8));
            v = f.add(v, f.mul(I(-18), f.mul(l2, l3)));
            v = f.add(v, f.mul(I(18), f.mul(l2, l6)));
            v = f.add(v, f.mul(I(18), f.mul(l2, l7)));
            v = f.add(v, f.mul(I(-30), f.mul(l5, l8)));
            out.push_back(f.mul(f.mul(I(-2), s), v));
        }
        return out;
    }
    throw error("charpoly_invariants: defined for W2 and W2x2 only");
}

// One entry per invariant: which characteristic-polynomial coefficient it
// equals, and with which sign.
struct InvariantMapping {
    std::vector<int> index;
    std::vector<int> sign; // +1 or -1
};

// Sampling oracle: finds, per invariant, the (coefficient index, sign) pair
// that matches on every sample, or leaves the slot empty (-1) if none fits.
template <Field F>
InvariantMapping find_invariant_normalization(CatalogName which, const F& f,
                                              const std::vector<Vec<F>>& samples) {
    auto A = catalog(which, f);
    int n = A.dim;
    int count = which == CatalogName::W2 ? 6 : 3;
    InvariantMapping map;
    map.index.assign(count, -1);
    map.sign.assign(count, 0);
    std::vector<std::vector<typename F::Elem>> cps, invs;
    for (const auto& w : samples) {
        cps.push_back(charpoly_of_left_mult(A, w));
        invs.push_back(charpoly_invariants(which, f, w));
    }
    for (int i = 0; i < count; ++i) {
        for (int idx = 0; idx <= n && map.index[i] < 0; ++idx) {
            for (int sgn : {1, -1}) {
                bool all = true;
                for (size_t s = 0; s < samples.size() && all; ++s) {
                    auto expect = sgn == 1 ? cps[s][idx] : f.neg(cps[s][idx]);
                    all = f.eq(invs[s][i], expect);
                }
                if (all) {
                    map.index[i] = idx;
                    map.sign[i] = sgn;
                    break;
                }
            }
        }
    }
    return map;
}

} // namespace conserv
