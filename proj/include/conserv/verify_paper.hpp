#pragma once

// The full verification suite: every computational statement the library is
// built to check, run as one deterministic report. The CLI's verify-paper
// subcommand and the acceptance test binary both drive this.

#include "conserv/aut.hpp"
#include "conserv/basis_graph.hpp"
#include "conserv/json_io.hpp"
#include "conserv/kantor.hpp"
#include "conserv/report.hpp"

namespace conserv {

struct VerifyOptions {
    std::string data_dir = "data"; // invariant_normalization.json lives here
    long long dfs_budget = 200'000'000;
};

namespace detail {

template <Field F>
Vec<F> random_vec_for(const F& f, int n, std::mt19937_64& rng, long long lo, long long hi) {
    std::uniform_int_distribution<long long> d(lo, hi);
    Vec<F> v(n);
    for (auto& x : v) x = f.from_int(d(rng));
    return v;
}

// sum of scaled paper-style units E(a -> b), 1-based
template <Field F>
Matrix<F> unit_combo(const F& f, int n, std::initializer_list<std::array<int, 3>> terms) {
    Matrix<F> m(f, n, n);
    for (auto [a, b, coef] : terms)
        m = mat_add(f, m, mat_scale(f, f.from_int(coef), basis_unit(f, n, a - 1, b - 1)));
    return m;
}

template <Field F>
RowSpace<F> op_span_of(const F& f, int n, const std::vector<Matrix<F>>& ops) {
    RowSpace<F> s(f, n * n);
    for (const auto& T : ops) s.insert(flatten_op(T));
    return s;
}

inline void timed(VerificationReport& rep, const std::string& name,
                  const std::function<std::pair<bool, std::string>()>& run,
                  const std::string& expected) {
    Stopwatch sw;
    try {
        auto [ok, actual] = run();
        rep.checks.push_back({name, ok ? CheckStatus::pass : CheckStatus::fail, expected,
                              actual, sw.ms()});
    } catch (const std::exception& e) {
        rep.checks.push_back(
            {name, CheckStatus::fail, expected, std::string("exception: ") + e.what(), sw.ms()});
    }
}

} // namespace detail

// Criterion 1: the Kantor construction over Q, pushed through the e-basis
// change, reproduces the printed W(2) table entry for entry.
inline VerificationReport verify_criterion1() {
    VerificationReport rep;
    detail::timed(rep, "c01.kantor_rebuild_w2x2_over_Q", [&]() -> std::pair<bool, std::string> {
        Rationals Q;
        auto built = change_to_e_basis(build_W2(Q));
        auto printed = catalog(CatalogName::W2x2, Q);
        int mismatches = 0;
        std::string first;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                if (!vec_eq(Q, built.basis_product(i, j), printed.basis_product(i, j))) {
                    if (!mismatches)
                        first = "e" + std::to_string(i + 1) + "*e" + std::to_string(j + 1) +
                                ": built " + format_vec(built, built.basis_product(i, j)) +
                                " vs printed " + format_vec(printed, printed.basis_product(i, j));
                    ++mismatches;
                }
        return {mismatches == 0,
                mismatches == 0 ? "0 mismatches"
                                : std::to_string(mismatches) + " mismatches, first: " + first};
    }, "0 mismatches");
    return rep;
}

// Criterion 2: S2 structure across Q, F5, F3.
inline VerificationReport verify_criterion2() {
    VerificationReport rep;
    Rationals Q;
    PrimeField F5(5), F3(3);
    detail::timed(rep, "c02.s2.Q.dimM16_simple", [&]() -> std::pair<bool, std::string> {
        auto M = generate_mult_algebra(catalog(CatalogName::S2, Q));
        bool simple = simplicity_by_dimension(catalog(CatalogName::S2, Q));
        return {M.dim() == 16 && simple, "dim " + std::to_string(M.dim())};
    }, "dim 16, simple");
    detail::timed(rep, "c02.s2.F5.dimM16_both_criteria", [&]() -> std::pair<bool, std::string> {
        auto A = catalog(CatalogName::S2, F5);
        auto M = generate_mult_algebra(A);
        bool dim_ok = M.dim() == 16;
        bool s1 = simplicity_by_dimension(A);
        bool s2 = simplicity_lemma_check(A).simple;
        return {dim_ok && s1 && s2, "dim " + std::to_string(M.dim()) + ", criteria " +
                                        std::to_string(s1) + "/" + std::to_string(s2)};
    }, "dim 16, both simple");
    detail::timed(rep, "c02.s2.F3.radical_structure", [&]() -> std::pair<bool, std::string> {
        auto A = catalog(CatalogName::S2, F3);
        auto M = generate_mult_algebra(A);
        if (M.dim() != 8) return {false, "dim M = " + std::to_string(M.dim())};
        auto rad = trace_form_radical(M);
        std::vector<Matrix<PrimeField>> printed;
        for (auto [a, b] : {std::pair{4, 3}, {2, 1}, {2, 3}, {4, 1}})
            printed.push_back(basis_unit(F3, 4, a - 1, b - 1));
        bool span_ok = detail::op_span_of(F3, 4, rad).equals(detail::op_span_of(F3, 4, printed));
        auto nil = subspace_is_nilpotent(M, rad);
        bool sq_zero = nil.nilpotent && nil.index == 2;
        std::vector<Matrix<PrimeField>> fam{
            basis_unit(F3, 4, 0, 0), basis_unit(F3, 4, 0, 2),
            basis_unit(F3, 4, 2, 0), basis_unit(F3, 4, 2, 2)};
        auto units = verify_matrix_units(M, {fam}, 2);
        bool units_ok = units.all_inside && units.relations_ok;
        return {span_ok && sq_zero && units_ok,
                "dim 8, radical span " + std::to_string(span_ok) + ", rad^2=0 " +
                    std::to_string(sq_zero) + ", M2 units " + std::to_string(units_ok)};
    }, "dim 8, printed radical, rad^2 = 0, M2 units");
    return rep;
}

// Criterion 3: the graph suite.
inline VerificationReport verify_criterion3() {
    VerificationReport rep;
    Rationals Q;
    PrimeField F2(2), F3(3), F5(5);
    detail::timed(rep, "c03.s2.F3.tree_fixed_points", [&]() -> std::pair<bool, std::string> {
        auto fps = tree_fixed_points(build_graph(catalog(CatalogName::S2, F3)));
        std::vector<std::vector<int>> expect{{}, {0, 2}, {0, 1, 2}, {0, 2, 3}, {0, 1, 2, 3}};
        return {fps == expect, std::to_string(fps.size()) + " fixed points"};
    }, "exactly the paper's five sets");
    detail::timed(rep, "c03.s2.F3.three_proper_ideals_verified",
                  [&]() -> std::pair<bool, std::string> {
        auto ideals = ideals_from_fixed_points(catalog(CatalogName::S2, F3));
        bool all = ideals.size() == 3;
        for (const auto& I : ideals) all = all && I.verified;
        return {all, std::to_string(ideals.size()) + " proper ideals"};
    }, "3 verified ideals");
    detail::timed(rep, "c03.nonsimplicity_certificates", [&]() -> std::pair<bool, std::string> {
        auto w2c = simplicity_lemma_check(catalog(CatalogName::W2, F3));
        auto wc = simplicity_lemma_check(catalog(CatalogName::W2x2, F2));
        bool ok = !w2c.simple && !w2c.strongly_connected && !wc.simple &&
                  wc.strongly_connected && !wc.failure.empty();
        return {ok, "W2/F3: " + w2c.failure + "; W(2)/F2: " + wc.failure};
    }, "W2/F3 fails connectivity, W(2)/F2 fails condition 2");
    detail::timed(rep, "c03.strong_connectivity_verdicts", [&]() -> std::pair<bool, std::string> {
        bool ok = is_strongly_connected(build_graph(catalog(CatalogName::S2, Q))) &&
                  !is_strongly_connected(build_graph(catalog(CatalogName::S2, F3))) &&
                  is_strongly_connected(build_graph(catalog(CatalogName::W2, F5))) &&
                  !is_strongly_connected(build_graph(catalog(CatalogName::W2, F3))) &&
                  is_strongly_connected(build_graph(catalog(CatalogName::W2x2, Q))) &&
                  is_strongly_connected(build_graph(catalog(CatalogName::W2x2, F2))) &&
                  is_strongly_connected(build_graph(catalog(CatalogName::W2x2, F3))) &&
                  is_strongly_connected(build_graph(catalog(CatalogName::W2x2, F5)));
        return {ok, ok ? "all verdicts match" : "some verdict differs"};
    }, "verdicts match the printed figures");
    return rep;
}

// Criterion 4: W2 structure.
inline VerificationReport verify_criterion4() {
    VerificationReport rep;
    Rationals Q;
    PrimeField F2(2), F3(3), F5(5);
    detail::timed(rep, "c04.w2.char025.simple", [&]() -> std::pair<bool, std::string> {
        auto mq = generate_mult_algebra(catalog(CatalogName::W2, Q)).dim();
        auto m2 = generate_mult_algebra(catalog(CatalogName::W2, F2)).dim();
        auto m5 = generate_mult_algebra(catalog(CatalogName::W2, F5)).dim();
        bool ok = mq == 36 && m2 == 36 && m5 == 36 &&
                  simplicity_by_dimension(catalog(CatalogName::W2, Q)) &&
                  simplicity_by_dimension(catalog(CatalogName::W2, F2)) &&
                  simplicity_by_dimension(catalog(CatalogName::W2, F5));
        return {ok, "dims " + std::to_string(mq) + "/" + std::to_string(m2) + "/" +
                        std::to_string(m5)};
    }, "dim M = 36 over Q, F2, F5; simple");
    detail::timed(rep, "c04.w2.F3.radical_chain", [&]() -> std::pair<bool, std::string> {
        auto A = catalog(CatalogName::W2, F3);
        auto M = generate_mult_algebra(A);
        if (M.dim() != 20) return {false, "dim M = " + std::to_string(M.dim())};
        auto rad = trace_form_radical(M);
        auto C = [&](std::initializer_list<std::array<int, 3>> t) {
            return detail::unit_combo(F3, 6, t);
        };
        std::vector<Matrix<PrimeField>> printed_rad;
        for (int a : {2, 4})
            for (int j : {1, 3, 5, 6}) printed_rad.push_back(C({{{a, j, 1}}}));
        printed_rad.push_back(C({{{1, 1, 1}}, {{1, 5, 1}}, {{5, 1, -1}}, {{5, 5, 2}}}));
        printed_rad.push_back(C({{{1, 3, 1}}, {{1, 6, 1}}, {{5, 3, -1}}, {{5, 6, 2}}}));
        printed_rad.push_back(C({{{3, 1, 1}}, {{3, 5, 1}}, {{6, 1, -1}}, {{6, 5, 2}}}));
        printed_rad.push_back(C({{{3, 3, 1}}, {{3, 6, 1}}, {{6, 3, -1}}, {{6, 6, 2}}}));
        bool rad_ok = rad.size() == 12 &&
                      detail::op_span_of(F3, 6, rad).equals(detail::op_span_of(F3, 6, printed_rad));
        // (M_perp)^2 is the printed 4-dim span; the 4th power vanishes
        RowSpace<PrimeField> sq(F3, 36);
        for (const auto& a : rad)
            for (const auto& b : rad) sq.insert(flatten_op(op_compose(F3, a, b)));
        std::vector<Matrix<PrimeField>> printed_sq;
        printed_sq.push_back(C({{{4, 3, 1}}, {{4, 6, 1}}}));
        printed_sq.push_back(C({{{4, 1, 1}}, {{4, 5, 1}}}));
        printed_sq.push_back(C({{{2, 3, 1}}, {{2, 6, 1}}}));
        printed_sq.push_back(C({{{2, 1, 1}}, {{2, 5, 1}}}));
        bool sq_ok = sq.equals(detail::op_span_of(F3, 6, printed_sq));
        auto nil = subspace_is_nilpotent(M, rad);
        bool fourth_zero = nil.nilpotent && nil.index <= 4;
        std::vector<Matrix<PrimeField>> e_fam{
            C({{{1, 1, 1}}, {{1, 5, 1}}}), C({{{1, 3, 1}}, {{1, 6, 1}}}),
            C({{{3, 1, 1}}, {{3, 5, 1}}}), C({{{3, 3, 1}}, {{3, 6, 1}}})};
        std::vector<Matrix<PrimeField>> u_fam{
            C({{{1, 5, -1}}, {{5, 5, 1}}}), C({{{1, 6, 1}}, {{5, 6, -1}}}),
            C({{{3, 5, 1}}, {{6, 5, -1}}}), C({{{3, 6, -1}}, {{6, 6, 1}}})};
        auto units = verify_matrix_units(M, {e_fam, u_fam}, 2);
        bool units_ok = units.all_inside && units.relations_ok && units.cross_ok;
        return {rad_ok && sq_ok && fourth_zero && units_ok,
                "radical " + std::to_string(rad.size()) + "-dim span " + std::to_string(rad_ok) +
                    ", square " + std::to_string(sq_ok) + ", nilpotent index " +
                    std::to_string(nil.index) + ", M2+M2 units " + std::to_string(units_ok)};
    }, "dim 20, printed 12-dim radical, printed square, 4th power 0, M2+M2");
    return rep;
}

// Criterion 5: W(2) structure.
inline VerificationReport verify_criterion5() {
    VerificationReport rep;
    PrimeField F2(2), F3(3), F5(5);
    detail::timed(rep, "c05.w2x2.F5.simple_dim64", [&]() -> std::pair<bool, std::string> {
        auto M = generate_mult_algebra(catalog(CatalogName::W2x2, F5));
        bool simple = simplicity_by_dimension(catalog(CatalogName::W2x2, F5));
        return {M.dim() == 64 && simple, "dim " + std::to_string(M.dim())};
    }, "dim M = 64, simple");
    detail::timed(rep, "c05.w2x2.F2.radical_action_ideal", [&]() -> std::pair<bool, std::string> {
        auto A = catalog(CatalogName::W2x2, F2);
        auto M = generate_mult_algebra(A);
        auto rad = trace_form_radical(M);
        auto ideal = radical_action_ideal(A, M, rad);
        auto expect = span_of(F2, 8,
                              {Vec<PrimeField>{0, 0, 0, 0, 1, 0, 0, 1},
                               Vec<PrimeField>{0, 0, 0, 0, 0, 1, 1, 0}});
        return {span_of(F2, 8, ideal).equals(expect),
                "R.W(2) dim " + std::to_string(ideal.size())};
    }, "span(e5+e8, e6+e7)");
    detail::timed(rep, "c05.w2x2.F2.quotient_is_w2", [&]() -> std::pair<bool, std::string> {
        auto A = catalog(CatalogName::W2x2, F2);
        Vec<PrimeField> f1{0, 0, 0, 0, 1, 0, 0, 1}, f2{0, 0, 0, 0, 0, 1, 1, 0};
        std::vector<Vec<PrimeField>> comp;
        for (int i = 0; i < 6; ++i) comp.push_back(unit_vec(F2, 8, i));
        auto q = quotient_by_ideal(A, {f1, f2}, &comp);
        auto hom = verify_homomorphism(q.algebra, catalog(CatalogName::W2, F2),
                                       Matrix<PrimeField>::identity(F2, 6));
        return {hom.ok, hom.ok ? "identity map verifies" : "map fails"};
    }, "explicit verified isomorphism to W2(F2)");
    // The paper (and the spec criterion) put dim M(W(2), F2) at 40, reading
    // M as M_6 + M_2. The computed dimension is 52; 40 is the dimension of
    // the semisimple quotient M/rad. The check is kept as stated and fails;
    // the companions below record the verified facts.
    detail::timed(rep, "c05.w2x2.F2.dimM_as_stated", [&]() -> std::pair<bool, std::string> {
        auto M = generate_mult_algebra(catalog(CatalogName::W2x2, F2));
        return {M.dim() == 40, "dim M = " + std::to_string(M.dim())};
    }, "dim M = 40");
    detail::timed(rep, "c05.w2x2.F2.semisimple_quotient_M6_M2",
                  [&]() -> std::pair<bool, std::string> {
        auto A = catalog(CatalogName::W2x2, F2);
        auto M = generate_mult_algebra(A);
        auto rad = trace_form_radical(M);
        // the two actions: on W(2)/RW(2) (= W2 on e1..e6) and on RW(2)
        Vec<PrimeField> f1{0, 0, 0, 0, 1, 0, 0, 1}, f2{0, 0, 0, 0, 0, 1, 1, 0};
        std::vector<Vec<PrimeField>> comp;
        for (int i = 0; i < 6; ++i) comp.push_back(unit_vec(F2, 8, i));
        auto q = quotient_by_ideal(A, {f1, f2}, &comp);
        auto I = span_of(F2, 8, {f1, f2});
        // joint action T -> (induced map on W(2)/RW(2), restriction to RW(2)),
        // flattened into a 40-coordinate vector
        RowSpace<PrimeField> image6(F2, 36), image2(F2, 4), joint(F2, 40);
        Matrix<PrimeField> B(F2, 8, 2);
        B.set_col(0, f1);
        B.set_col(1, f2);
        for (int i = 0; i < M.dim(); ++i) {
            auto T = M.op(i);
            Matrix<PrimeField> indq(F2, 6, 6);
            for (int c = 0; c < 6; ++c)
                indq.set_col(c, mat_apply(F2, q.projection, mat_apply(F2, T, comp[c])));
            Matrix<PrimeField> res(F2, 2, 2);
            for (int c = 0; c < 2; ++c) {
                auto img = mat_apply(F2, T, c == 0 ? f1 : f2);
                if (!I.contains(img)) return {false, "ideal not M-invariant"};
                auto coords = solve(F2, B, img);
                if (!coords) return {false, "restriction coordinates failed"};
                res.set_col(c, *coords);
            }
            image6.insert(flatten_op(indq));
            image2.insert(flatten_op(res));
            auto jv = flatten_op(indq);
            auto rv = flatten_op(res);
            jv.insert(jv.end(), rv.begin(), rv.end());
            joint.insert(std::move(jv));
        }
        // onto M6 + M2 with the radical as kernel: rank 40, nullity 12
        bool ok = M.dim() == 52 && image6.dim() == 36 && image2.dim() == 4 &&
                  joint.dim() == 40 && int(rad.size()) == 12 &&
                  M.dim() - joint.dim() == int(rad.size());
        return {ok, "dim M 52, joint image 40 (36 + 4), radical 12"};
    }, "M/rad = M6 + M2 (dims 36 + 4), dim M = 52 with 12-dim radical");
    detail::timed(rep, "c05.w2x2.F3.radical_facts", [&]() -> std::pair<bool, std::string> {
        auto A = catalog(CatalogName::W2x2, F3);
        auto M = generate_mult_algebra(A);
        auto rad = trace_form_radical(M);
        auto nil = subspace_is_nilpotent(M, rad);
        auto ideal = radical_action_ideal(A, M, rad);
        auto expect = span_of(F3, 8,
                              {Vec<PrimeField>{1, 0, 0, 0, 1, 0, 0, 0},
                               Vec<PrimeField>{0, 0, 1, 0, 0, 1, 0, 0}});
        bool ok = rad.size() == 12 && nil.nilpotent && nil.index == 2 &&
                  span_of(F3, 8, ideal).equals(expect);
        return {ok, "radical dim " + std::to_string(rad.size()) + ", index " +
                        std::to_string(nil.index)};
    }, "M_perp dim 12, square 0, action ideal span(e1+e5, e3+e6)");
    return rep;
}

// Criterion 6: automorphism completeness.
inline VerificationReport verify_criterion6(long long budget) {
    VerificationReport rep;
    auto run = [&](long long p, const char* fam_name, long long count, const char* label) {
        detail::timed(rep, std::string("c06.") + label, [&]() -> std::pair<bool, std::string> {
            PrimeField Fp(p);
            auto fams = automorphism_families(Fp);
            auto r = family_completeness(Fp, family_by_name(fams, fam_name), budget);
            return {r.ok && r.enumerated == count,
                    std::to_string(r.enumerated) + " enumerated, " +
                        std::to_string(r.family_size) + " in family, sets " +
                        (r.sets_equal ? "equal" : "differ")};
        }, std::to_string(count) + " automorphisms, sets equal");
    };
    run(2, "s2_w2", 2, "s2.F2");
    run(3, "s2_w3", 6, "s2.F3");
    run(5, "s2_w", 20, "s2.F5");
    run(2, "w2_w", 2, "w2.F2");
    run(3, "w2_M", 12, "w2.F3");
    run(5, "w2_w", 20, "w2.F5");
    run(2, "w2x2_omega", 4, "w2x2.F2");
    run(3, "w2x2_M", 36, "w2x2.F3");
    run(5, "w2x2_block", 20, "w2x2.F5");
    detail::timed(rep, "c06.s2.F2.full_scan_agrees", [&]() -> std::pair<bool, std::string> {
        PrimeField F2(2);
        auto A = catalog(CatalogName::S2, F2);
        auto full = enumerate_automorphisms(A, EnumMode::full);
        auto dfs = enumerate_automorphisms(A, EnumMode::dfs);
        bool ok = full.size() == dfs.size();
        for (size_t i = 0; ok && i < full.size(); ++i) ok = mat_eq(F2, full[i], dfs[i]);
        return {ok, std::to_string(full.size()) + " = " + std::to_string(dfs.size())};
    }, "full 2^16 scan equals dfs");
    return rep;
}

// Criterion 7: group laws, inverse formulas, product structure.
inline VerificationReport verify_criterion7() {
    VerificationReport rep;
    auto law = [&](long long p, const char* fam_name) {
        detail::timed(rep,
                      "c07.law." + std::string(fam_name) + ".F" + std::to_string(p),
                      [&]() -> std::pair<bool, std::string> {
            PrimeField Fp(p);
            auto fams = automorphism_families(Fp);
            auto r = verify_group_law(Fp, family_by_name(fams, fam_name));
            return {r.ok, std::to_string(r.members_checked) + " pairs"};
        }, "all pairs satisfy law and inverses");
    };
    law(5, "s2_w");
    law(7, "s2_w");
    law(2, "s2_w2");
    law(3, "s2_w3");
    law(2, "w2_w");
    law(5, "w2_w");
    law(7, "w2_w");
    law(3, "w2_M");
    law(5, "w2x2_block");
    law(7, "w2x2_block");
    law(2, "w2x2_omega");
    law(3, "w2x2_M");
    detail::timed(rep, "c07.law.rational_samples", [&]() -> std::pair<bool, std::string> {
        Rationals Q;
        auto fams = automorphism_families(Q);
        long long checked = 0;
        for (auto name : {"s2_w", "w2_w", "w2x2_block"}) {
            auto r = verify_group_law(Q, family_by_name(fams, name));
            if (!r.ok) return {false, r.first_failure};
            checked += r.members_checked;
            auto rf = verify_family(Q, family_by_name(fams, name));
            if (!rf.ok) return {false, rf.first_failure};
        }
        return {true, std::to_string(checked) + " rational samples"};
    }, ">= 50 samples per characteristic-0 family");
    detail::timed(rep, "c07.char2_semidirect", [&]() -> std::pair<bool, std::string> {
        PrimeField F2(2);
        auto r = semidirect_structure_check(F2);
        return {r.ok, r.ok ? "Aff2 x| Aff2 verified" : r.failure};
    }, "semidirect structure at F2");
    detail::timed(rep, "c07.char3_direct_products", [&]() -> std::pair<bool, std::string> {
        PrimeField F3(3);
        auto r = direct_product_structure_check(F3);
        return {r.ok, r.ok ? "direct products verified" : r.failure};
    }, "direct product structure at F3");
    return rep;
}

// Criterion 8: derivations of S2.
inline VerificationReport verify_criterion8() {
    VerificationReport rep;
    detail::timed(rep, "c08.der_s2_aff2", [&]() -> std::pair<bool, std::string> {
        Rationals Q;
        auto dq = derivations(catalog(CatalogName::S2, Q));
        bool ok = dq.dim() == 2 && dq.aff2_normalized;
        std::string dims = "Q:" + std::to_string(dq.dim());
        for (long long p : {2, 3, 5}) {
            PrimeField Fp(p);
            auto dp = derivations(catalog(CatalogName::S2, Fp));
            ok = ok && dp.dim() == 2 && dp.aff2_normalized;
            dims += " F" + std::to_string(p) + ":" + std::to_string(dp.dim());
        }
        return {ok, dims};
    }, "dim 2 over Q, F2, F3, F5 with [h,x] = x");
    return rep;
}

// Criterion 9: invariants vs characteristic polynomial coefficients.
inline VerificationReport verify_criterion9(const VerifyOptions& opt) {
    VerificationReport rep;
    detail::timed(rep, "c09.normalized_invariants", [&]() -> std::pair<bool, std::string> {
        auto j = load_json_file(opt.data_dir + "/invariant_normalization.json");
        auto check_catalog = [&](CatalogName which, const std::string& key, int inv_count,
                                 int coords) -> bool {
            std::vector<int> idx = j.at(key).at("indices").get<std::vector<int>>();
            std::vector<int> sgn = j.at(key).at("signs").get<std::vector<int>>();
            if (int(idx.size()) != inv_count) return false;
            PrimeField F101(101);
            auto A = catalog(which, F101);
            std::mt19937_64 rng(which == CatalogName::W2 ? 2024 : 4048);
            for (int s = 0; s < 200; ++s) {
                auto w = detail::random_vec_for(F101, coords, rng, 0, 100);
                auto cp = charpoly_of_left_mult(A, w);
                auto inv = charpoly_invariants(which, F101, w);
                for (int i = 0; i < inv_count; ++i) {
                    auto expect = sgn[i] == 1 ? cp[idx[i]] : F101.neg(cp[idx[i]]);
                    if (!F101.eq(inv[i], expect)) return false;
                }
            }
            Rationals Q;
            auto AQ = catalog(which, Q);
            for (int s = 0; s < 20; ++s) {
                auto w = detail::random_vec_for(Q, coords, rng, -9, 9);
                auto cp = charpoly_of_left_mult(AQ, w);
                auto inv = charpoly_invariants(which, Q, w);
                for (int i = 0; i < inv_count; ++i) {
                    auto expect = sgn[i] == 1 ? cp[idx[i]] : Q.neg(cp[idx[i]]);
                    if (!Q.eq(inv[i], expect)) return false;
                }
            }
            return true;
        };
        bool ok = check_catalog(CatalogName::W2, "W2", 6, 6) &&
                  check_catalog(CatalogName::W2x2, "W2x2", 3, 8);
        return {ok, ok ? "200 F101 + 20 Q samples per algebra" : "mismatch"};
    }, "l1..l6 and Lambda1..Lambda3 match charpoly coefficients");
    detail::timed(rep, "c09.conjugation_invariance", [&]() -> std::pair<bool, std::string> {
        struct Case {
            CatalogName which;
            long long p;
        };
        for (Case c : {Case{CatalogName::S2, 3}, Case{CatalogName::S2, 5},
                       Case{CatalogName::W2, 3}, Case{CatalogName::W2, 5},
                       Case{CatalogName::W2x2, 3}, Case{CatalogName::W2x2, 5}}) {
            PrimeField Fp(c.p);
            auto A = catalog(c.which, Fp);
            auto autos = enumerate_automorphisms(A);
            std::mt19937_64 rng(99);
            std::vector<Vec<PrimeField>> ws;
            for (int s = 0; s < 20; ++s)
                ws.push_back(detail::random_vec_for(Fp, A.dim, rng, 0, c.p - 1));
            if (!invariant_conjugation_check(A, autos, ws))
                return {false, "failed for " + A.name + "/F" + std::to_string(c.p)};
        }
        return {true, "all enumerated automorphisms, 20 samples each"};
    }, "charpoly invariant under every enumerated automorphism");
    return rep;
}

// Criterion 10: terminal and conservative identities.
inline VerificationReport verify_criterion10() {
    VerificationReport rep;
    detail::timed(rep, "c10.terminal_identity", [&]() -> std::pair<bool, std::string> {
        Rationals Q;
        bool ok = check_terminal(catalog(CatalogName::S2, Q)).ok &&
                  check_terminal(catalog(CatalogName::W2, Q)).ok;
        for (long long p : {2, 5, 7}) {
            PrimeField Fp(p);
            ok = ok && check_terminal(catalog(CatalogName::S2, Fp)).ok &&
                 check_terminal(catalog(CatalogName::W2, Fp)).ok;
        }
        return {ok, "S2 and W2 over Q, F2, F5, F7"};
    }, "terminal identity holds on all basis quadruples");
    detail::timed(rep, "c10.conservativity_witness", [&]() -> std::pair<bool, std::string> {
        Rationals Q;
        auto wq = conservativity_witness(catalog(CatalogName::W2x2, Q));
        bool ok = wq.feasible && verify_associated_product(catalog(CatalogName::W2x2, Q),
                                                           wq.associated);
        PrimeField F5(5);
        auto w5 = conservativity_witness(catalog(CatalogName::W2x2, F5));
        ok = ok && w5.feasible &&
             verify_associated_product(catalog(CatalogName::W2x2, F5), w5.associated);
        return {ok, "witness found and re-verified on all 4096 quadruples"};
    }, "W(2) conservative over Q and F5, witness re-verified by substitution");
    return rep;
}

// Criterion 11: annihilators.
inline VerificationReport verify_criterion11() {
    VerificationReport rep;
    detail::timed(rep, "c11.left_annihilators", [&]() -> std::pair<bool, std::string> {
        Rationals Q;
        auto s2 = annihilators(catalog(CatalogName::S2, Q));
        bool ok = s2.left.size() == 1 && vec_eq(Q, s2.left[0], unit_vec(Q, 4, 3));
        PrimeField F5(5), F3(3);
        auto w5 = annihilators(catalog(CatalogName::W2, F5));
        ok = ok && span_of(F5, 6, w5.left)
                       .equals(span_of(F5, 6,
                                       {Vec<PrimeField>{0, 0, 1, 0, 0, 1},
                                        unit_vec(F5, 6, 3)}));
        auto w3 = annihilators(catalog(CatalogName::W2, F3));
        ok = ok && span_of(F3, 6, w3.left)
                       .equals(span_of(F3, 6,
                                       {Vec<PrimeField>{1, 0, 0, 0, 1, 0},
                                        Vec<PrimeField>{0, 0, 1, 0, 0, 1},
                                        unit_vec(F3, 6, 3)}));
        return {ok, "Lann(S2) = e4; Lann(W2/F5) 2-dim; Lann(W2/F3) 3-dim"};
    }, "annihilator formulas at F5 and F3 points");
    return rep;
}

inline VerificationReport run_paper_verification(const VerifyOptions& opt = {}) {
    VerificationReport rep;
    rep.merge(verify_criterion1());
    rep.merge(verify_criterion2());
    rep.merge(verify_criterion3());
    rep.merge(verify_criterion4());
    rep.merge(verify_criterion5());
    rep.merge(verify_criterion6(opt.dfs_budget));
    rep.merge(verify_criterion7());
    rep.merge(verify_criterion8());
    rep.merge(verify_criterion9(opt));
    rep.merge(verify_criterion10());
    rep.merge(verify_criterion11());
    rep.sort_by_name();
    return rep;
}

} // namespace conserv
