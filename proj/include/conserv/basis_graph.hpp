#pragma once

// The directed graph of an algebra basis: an edge i -> j whenever some
// one-step product e_i e_k or e_k e_i has a nonzero e_j component. Strong
// connectivity, reachability closures and their fixed points (which span
// ideals), and the two-condition simplicity test over finite fields.

#include <sstream>

#include "conserv/mult_algebra.hpp"

namespace conserv {

struct BasisEdge {
    int from = 0, to = 0;
    bool left = false;   // true: e_k * e_from, false: e_from * e_k
    int multiplier = 0;  // the index k
};

struct BasisGraph {
    int n = 0;
    std::vector<std::vector<int>> out;  // adjacency, deduplicated, sorted
    std::vector<BasisEdge> edges;       // one provenance per edge

    bool has_edge(int i, int j) const {
        return std::binary_search(out[i].begin(), out[i].end(), j);
    }
    int edge_count() const { return int(edges.size()); }
};

// One-step products against single basis generators on both sides; self-loops
// dropped per the drawing convention. Reachability under this rule equals
// reachability under all of M_1(A) since those operators generate it.
template <Field F>
BasisGraph build_graph(const StructureAlgebra<F>& A) {
    const F& f = A.field;
    BasisGraph g;
    g.n = A.dim;
    g.out.assign(A.dim, {});
    std::vector<std::vector<char>> seen(A.dim, std::vector<char>(A.dim, 0));
    for (int i = 0; i < A.dim; ++i)
        for (int k = 0; k < A.dim; ++k)
            for (int j = 0; j < A.dim; ++j) {
                if (j == i) continue;
                if (!seen[i][j] && !f.is_zero(A.c(i, k, j))) { // e_i e_k has e_j part
                    seen[i][j] = 1;
                    g.edges.push_back({i, j, false, k});
                }
                if (!seen[i][j] && !f.is_zero(A.c(k, i, j))) { // e_k e_i has e_j part
                    seen[i][j] = 1;
                    g.edges.push_back({i, j, true, k});
                }
            }
    for (const auto& e : g.edges) g.out[e.from].push_back(e.to);
    for (auto& adj : g.out) std::sort(adj.begin(), adj.end());
    return g;
}

inline std::vector<int> reachable_from(const BasisGraph& g, const std::vector<int>& start) {
    std::vector<char> vis(g.n, 0);
    std::vector<int> stack;
    for (int s : start)
        if (!vis[s]) { vis[s] = 1; stack.push_back(s); }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.out[v])
            if (!vis[w]) { vis[w] = 1; stack.push_back(w); }
    }
    std::vector<int> out;
    for (int v = 0; v < g.n; ++v)
        if (vis[v]) out.push_back(v);
    return out;
}

inline bool is_strongly_connected(const BasisGraph& g) {
    if (g.n <= 1) return true;
    if (int(reachable_from(g, {0}).size()) != g.n) return false;
    BasisGraph rev;
    rev.n = g.n;
    rev.out.assign(g.n, {});
    for (int v = 0; v < g.n; ++v)
        for (int w : g.out[v]) rev.out[w].push_back(v);
    return int(reachable_from(rev, {0}).size()) == g.n;
}

// tree(S): S together with everything reachable from it.
inline std::vector<int> tree_closure(const BasisGraph& g, const std::vector<int>& S) {
    return reachable_from(g, S);
}

// All S with tree(S) = S, i.e. the subsets closed under successors.
// Exhaustive over 2^n subsets; n is small for everything in the catalog.
inline std::vector<std::vector<int>> tree_fixed_points(const BasisGraph& g) {
    if (g.n > 20) throw error("tree_fixed_points: exhaustive mode limited to n <= 20");
    std::vector<unsigned> succ(g.n, 0);
    for (int v = 0; v < g.n; ++v)
        for (int w : g.out[v]) succ[v] |= 1u << w;
    std::vector<std::vector<int>> fixed;
    for (unsigned mask = 0; mask < (1u << g.n); ++mask) {
        bool closed = true;
        for (int v = 0; v < g.n && closed; ++v)
            if (mask & (1u << v)) closed = (succ[v] & ~mask) == 0;
        if (!closed) continue;
        std::vector<int> S;
        for (int v = 0; v < g.n; ++v)
            if (mask & (1u << v)) S.push_back(v);
        fixed.push_back(std::move(S));
    }
    std::stable_sort(fixed.begin(), fixed.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return fixed;
}

template <Field F>
struct FixedPointIdeal {
    std::vector<int> vertices;
    bool verified = false; // direct A.I and I.A containment check
};

// Every tree fixed point spans an ideal; each one is verified directly.
template <Field F>
std::vector<FixedPointIdeal<F>> ideals_from_fixed_points(const StructureAlgebra<F>& A) {
    auto g = build_graph(A);
    std::vector<FixedPointIdeal<F>> out;
    for (auto& S : tree_fixed_points(g)) {
        if (S.empty() || int(S.size()) == A.dim) continue;
        std::vector<Vec<F>> basis;
        for (int v : S) basis.push_back(unit_vec(A.field, A.dim, v));
        auto span = span_of(A.field, A.dim, basis);
        out.push_back({S, is_ideal(A, span)});
    }
    return out;
}

struct SimplicityCertificate {
    bool simple = false;
    bool strongly_connected = false;
    bool scanned_all = false;          // exhaustive over nonzero x up to scalars
    long long vectors_checked = 0;
    std::vector<long long> witness_counts; // per basis index, how many x it witnessed
    std::string failure;               // violating x, when not simple
};

// Lemma-style simplicity test over a finite field: (1) the graph is strongly
// connected, (2) for every nonzero x the subspace M x contains some basis
// vector. x is scanned projectively (first nonzero coordinate 1). The scan
// budget guards q^n; catalog sizes stay far below it.
template <Field F>
SimplicityCertificate simplicity_lemma_check(const StructureAlgebra<F>& A,
                                             long long budget = 10'000'000) {
    const F& f = A.field;
    long long q = f.characteristic();
    if (q == 0) throw error("simplicity_lemma_check: finite field required");
    SimplicityCertificate cert;
    cert.strongly_connected = is_strongly_connected(build_graph(A));
    cert.witness_counts.assign(A.dim, 0);
    if (!cert.strongly_connected) {
        cert.simple = false;
        cert.failure = "graph not strongly connected";
        return cert;
    }
    long long total = 1;
    for (int i = 0; i < A.dim; ++i) {
        total *= q;
        if (total > budget) throw error("simplicity_lemma_check: q^n exceeds budget");
    }
    auto M = generate_mult_algebra(A, false);
    auto ops = M.ops();
    cert.scanned_all = true;
    // enumerate projective representatives: x with leading coordinate 1
    Vec<F> x(A.dim, f.zero());
    std::vector<long long> digits(A.dim, 0);
    for (int lead = 0; lead < A.dim; ++lead) {
        // x_lead = 1, x_i free for i > lead
        long long count = 1;
        for (int i = lead + 1; i < A.dim; ++i) count *= q;
        for (long long idx = 0; idx < count; ++idx) {
            for (int i = 0; i < A.dim; ++i) x[i] = f.zero();
            x[lead] = f.one();
            long long rest = idx;
            for (int i = lead + 1; i < A.dim; ++i) {
                x[i] = f.from_int(rest % q);
                rest /= q;
            }
            RowSpace<F> mx(f, A.dim);
            for (const auto& T : ops) mx.insert(mat_apply(f, T, x));
            int witness = -1;
            for (int i = 0; i < A.dim && witness < 0; ++i)
                if (mx.contains(unit_vec(f, A.dim, i))) witness = i;
            ++cert.vectors_checked;
            if (witness < 0) {
                cert.simple = false;
                std::ostringstream os;
                os << "no basis vector in Mx for x = (";
                for (int i = 0; i < A.dim; ++i)
                    os << (i ? "," : "") << f.to_string(x[i]);
                os << ")";
                cert.failure = os.str();
                return cert;
            }
            ++cert.witness_counts[witness];
        }
    }
    cert.simple = true;
    return cert;
}

inline std::string export_dot(const BasisGraph& g) {
    std::ostringstream os;
    os << "digraph basis {\n";
    for (int v = 0; v < g.n; ++v) os << "  e" << (v + 1) << ";\n";
    for (const auto& e : g.edges)
        os << "  e" << (e.from + 1) << " -> e" << (e.to + 1) << " [label=\""
           << (e.left ? "L" : "R") << " e" << (e.multiplier + 1) << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace conserv
