#pragma once

// Finite-dimensional algebras presented by structure constants, together with
// the constructions the rest of the library is built on: multiplication
// operators, annihilators, subalgebras on basis subsets, quotients by ideals
// and homomorphism verification.

#include <sstream>
#include <string>
#include <vector>

#include "conserv/matrix.hpp"

namespace conserv {

// e_i * e_j = sum_k c_{ij}^k e_k, with the tensor stored dense.
template <Field F>
struct StructureAlgebra {
    using Elem = typename F::Elem;
    F field;
    int dim = 0;
    std::string name;
    std::vector<Elem> table; // (i*dim + j)*dim + k

    StructureAlgebra() = default;
    StructureAlgebra(const F& f, int n, std::string nm = "")
        : field(f), dim(n), name(std::move(nm)),
          table(size_t(n) * n * n, f.zero()) {}

    Elem& c(int i, int j, int k) { return table[(size_t(i) * dim + j) * dim + k]; }
    const Elem& c(int i, int j, int k) const { return table[(size_t(i) * dim + j) * dim + k]; }

    Vec<F> basis_product(int i, int j) const {
        Vec<F> v(dim);
        for (int k = 0; k < dim; ++k) v[k] = c(i, j, k);
        return v;
    }

    bool has_zero_product() const {
        for (const auto& x : table)
            if (!field.is_zero(x)) return false;
        return true;
    }
};

template <Field F>
StructureAlgebra<F> zero_algebra(const F& f, int n) {
    return StructureAlgebra<F>(f, n, "zero" + std::to_string(n));
}

template <Field F>
Vec<F> multiply(const StructureAlgebra<F>& A, const Vec<F>& x, const Vec<F>& y) {
    const F& f = A.field;
    if (int(x.size()) != A.dim || int(y.size()) != A.dim)
        throw error("multiply: dimension mismatch");
    Vec<F> out(A.dim, f.zero());
    for (int i = 0; i < A.dim; ++i) {
        if (f.is_zero(x[i])) continue;
        for (int j = 0; j < A.dim; ++j) {
            if (f.is_zero(y[j])) continue;
            auto xy = f.mul(x[i], y[j]);
            for (int k = 0; k < A.dim; ++k)
                out[k] = f.add(out[k], f.mul(xy, A.c(i, j, k)));
        }
    }
    return out;
}

// Column j of L_x is x*e_j; of R_x, e_j*x.
template <Field F>
Matrix<F> left_mult(const StructureAlgebra<F>& A, const Vec<F>& x) {
    const F& f = A.field;
    if (int(x.size()) != A.dim) throw error("left_mult: dimension mismatch");
    Matrix<F> m(f, A.dim, A.dim);
    for (int i = 0; i < A.dim; ++i) {
        if (f.is_zero(x[i])) continue;
        for (int j = 0; j < A.dim; ++j)
            for (int k = 0; k < A.dim; ++k)
                m.at(k, j) = f.add(m.at(k, j), f.mul(x[i], A.c(i, j, k)));
    }
    return m;
}

template <Field F>
Matrix<F> right_mult(const StructureAlgebra<F>& A, const Vec<F>& x) {
    const F& f = A.field;
    if (int(x.size()) != A.dim) throw error("right_mult: dimension mismatch");
    Matrix<F> m(f, A.dim, A.dim);
    for (int i = 0; i < A.dim; ++i) {
        if (f.is_zero(x[i])) continue;
        for (int j = 0; j < A.dim; ++j)
            for (int k = 0; k < A.dim; ++k)
                m.at(k, j) = f.add(m.at(k, j), f.mul(x[i], A.c(j, i, k)));
    }
    return m;
}

template <Field F>
std::string format_vec(const StructureAlgebra<F>& A, const Vec<F>& v) {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < A.dim; ++k) {
        if (A.field.is_zero(v[k])) continue;
        if (!first) os << " + ";
        os << A.field.to_string(v[k]) << "*e" << (k + 1);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

template <Field F>
struct AnnihilatorBases {
    std::vector<Vec<F>> left, right, two_sided;
};

// Left annihilator {x : xA = 0} as the kernel of i -> (c_{ij}^k)_{jk};
// similarly on the right, and the intersection for the two-sided one.
template <Field F>
AnnihilatorBases<F> annihilators(const StructureAlgebra<F>& A) {
    const F& f = A.field;
    int n = A.dim;
    Matrix<F> L(f, n * n, n), R(f, n * n, n), T(f, 2 * n * n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                L.at(j * n + k, i) = A.c(i, j, k);
                R.at(j * n + k, i) = A.c(j, i, k);
                T.at(j * n + k, i) = A.c(i, j, k);
                T.at(n * n + j * n + k, i) = A.c(j, i, k);
            }
    AnnihilatorBases<F> out;
    auto echelon = [&](std::vector<Vec<F>> vs) {
        auto s = span_of(f, n, vs);
        return s.rows;
    };
    out.left = echelon(nullspace(f, L));
    out.right = echelon(nullspace(f, R));
    out.two_sided = echelon(nullspace(f, T));
    return out;
}

// Restriction to the span of the given basis indices; rejects index sets
// whose span is not closed, naming a violating product.
template <Field F>
StructureAlgebra<F> subalgebra_on_indices(const StructureAlgebra<F>& A,
                                          const std::vector<int>& idx) {
    const F& f = A.field;
    std::vector<int> pos(A.dim, -1);
    for (size_t a = 0; a < idx.size(); ++a) {
        if (idx[a] < 0 || idx[a] >= A.dim) throw error("subalgebra: index out of range");
        pos[idx[a]] = int(a);
    }
    int m = int(idx.size());
    StructureAlgebra<F> S(f, m, A.name + "|sub");
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int k = 0; k < A.dim; ++k) {
                const auto& v = A.c(idx[a], idx[b], k);
                if (f.is_zero(v)) continue;
                if (pos[k] < 0) {
                    std::ostringstream os;
                    os << "subalgebra: span not closed, e" << (idx[a] + 1) << "*e"
                       << (idx[b] + 1) << " has component e" << (k + 1);
                    throw error(os.str());
                }
                S.c(a, b, pos[k]) = v;
            }
    return S;
}

template <Field F>
bool is_ideal(const StructureAlgebra<F>& A, const RowSpace<F>& I) {
    for (const auto& u : I.rows)
        for (int j = 0; j < A.dim; ++j) {
            auto e = unit_vec(A.field, A.dim, j);
            if (!I.contains(multiply(A, e, u))) return false;
            if (!I.contains(multiply(A, u, e))) return false;
        }
    return true;
}

template <Field F>
struct Quotient {
    StructureAlgebra<F> algebra;
    Matrix<F> projection;        // m x n, coordinates along the complement
    std::vector<Vec<F>> complement;
};

// Structure constants induced on a complement of a verified two-sided ideal.
// When no complement is supplied, the unit vectors away from the ideal's
// pivot columns are used.
template <Field F>
Quotient<F> quotient_by_ideal(const StructureAlgebra<F>& A,
                              const std::vector<Vec<F>>& ideal_basis,
                              const std::vector<Vec<F>>* complement = nullptr) {
    const F& f = A.field;
    int n = A.dim;
    auto I = span_of(f, n, ideal_basis);
    if (!is_ideal(A, I)) throw error("quotient: subspace is not a two-sided ideal");
    int d = I.dim(), m = n - d;

    std::vector<Vec<F>> comp;
    if (complement) {
        comp = *complement;
        if (int(comp.size()) != m) throw error("quotient: complement has wrong dimension");
    } else {
        std::vector<bool> is_piv(n, false);
        for (int p : I.pivots) is_piv[p] = true;
        for (int j = 0; j < n; ++j)
            if (!is_piv[j]) comp.push_back(unit_vec(f, n, j));
    }

    // P = [complement | ideal] must be invertible
    Matrix<F> P(f, n, n);
    for (int c = 0; c < m; ++c) P.set_col(c, comp[c]);
    for (int c = 0; c < d; ++c) P.set_col(m + c, I.rows[c]);
    auto Pinv = mat_inverse(f, P);
    if (!Pinv) throw error("quotient: complement does not complement the ideal");

    Matrix<F> proj(f, m, n);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c) proj.at(r, c) = Pinv->at(r, c);
    StructureAlgebra<F> qa(f, m, A.name + "/I");
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            auto z = mat_apply(f, proj, multiply(A, comp[a], comp[b]));
            for (int k = 0; k < m; ++k) qa.c(a, b, k) = z[k];
        }
    return Quotient<F>{std::move(qa), std::move(proj), std::move(comp)};
}

template <Field F>
struct HomReport {
    bool ok = false;
    bool multiplicative = false;
    bool invertible = false;
    struct Violation {
        int i, j;
        Vec<F> expected, got;
    };
    std::vector<Violation> violations;
};

// Checks M(e_i e_j) = M(e_i) M(e_j) on all basis pairs plus invertibility;
// M is column-action from A-coordinates to B-coordinates.
template <Field F>
HomReport<F> verify_homomorphism(const StructureAlgebra<F>& A,
                                 const StructureAlgebra<F>& B,
                                 const Matrix<F>& M,
                                 int max_violations = 8) {
    const F& f = A.field;
    if (A.dim != B.dim || !(A.field.spec() == B.field.spec()))
        throw error("verify_homomorphism: incompatible algebras");
    HomReport<F> rep;
    rep.multiplicative = true;
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            auto lhs = mat_apply(f, M, A.basis_product(i, j));
            auto rhs = multiply(B, M.col(i), M.col(j));
            if (!vec_eq(f, lhs, rhs)) {
                rep.multiplicative = false;
                if (int(rep.violations.size()) < max_violations)
                    rep.violations.push_back({i, j, lhs, rhs});
            }
        }
    rep.invertible = mat_inverse(f, M).has_value();
    rep.ok = rep.multiplicative && rep.invertible;
    return rep;
}

} // namespace conserv
