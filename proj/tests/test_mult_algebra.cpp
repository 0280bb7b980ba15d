#include <catch2/catch_amalgamated.hpp>

#include "conserv/mult_algebra.hpp"
#include "conserv/catalog.hpp"

using namespace conserv;

namespace {

// sum of scaled basis units, each {a, b, coef} meaning coef * (e_a -> e_b),
// 1-based like the paper
template <Field F>
Matrix<F> combo(const F& f, int n, std::initializer_list<std::array<int, 3>> terms) {
    Matrix<F> m(f, n, n);
    for (auto [a, b, coef] : terms)
        m = mat_add(f, m, mat_scale(f, f.from_int(coef), basis_unit(f, n, a - 1, b - 1)));
    return m;
}

template <Field F>
RowSpace<F> op_span(const F& f, int n, const std::vector<Matrix<F>>& ops) {
    RowSpace<F> s(f, n * n);
    for (const auto& T : ops) s.insert(flatten_op(T));
    return s;
}

} // namespace

TEST_CASE("multiplication algebra dimensions") {
    Rationals Q;
    CHECK(generate_mult_algebra(catalog(CatalogName::S2, Q)).dim() == 16);
    PrimeField F3(3), F5(5), F2(2);
    CHECK(generate_mult_algebra(catalog(CatalogName::S2, F5)).dim() == 16);
    CHECK(generate_mult_algebra(catalog(CatalogName::S2, F3)).dim() == 8);
    CHECK(generate_mult_algebra(catalog(CatalogName::W2, F3)).dim() == 20);
    // 52, not the 40 = dim(M6 + M2) one might read off the paper: the
    // semisimple quotient has dimension 40, M itself carries a 12-dim radical
    CHECK(generate_mult_algebra(catalog(CatalogName::W2x2, F2)).dim() == 52);
    CHECK(generate_mult_algebra(catalog(CatalogName::W2x2, F3)).dim() == 52);

    auto Z = zero_algebra(Q, 3);
    CHECK(generate_mult_algebra(Z).dim() == 0);
    CHECK(generate_mult_algebra(Z, true).dim() == 1);
}

TEST_CASE("closure is idempotent and closed under composition") {
    PrimeField F3(3);
    auto A = catalog(CatalogName::W2, F3);
    auto M = generate_mult_algebra(A);
    auto ops = M.ops();
    for (const auto& a : ops)
        for (const auto& b : ops) CHECK(M.contains(mat_mul(F3, a, b)));
}

TEST_CASE("M(S2, F3) equals the printed eight-operator span") {
    PrimeField F3(3);
    auto M = generate_mult_algebra(catalog(CatalogName::S2, F3));
    std::vector<Matrix<PrimeField>> printed;
    for (auto [a, b] : {std::pair{1, 1}, {3, 3}, {3, 1}, {1, 3}, {2, 1}, {2, 3}, {4, 1}, {4, 3}})
        printed.push_back(basis_unit(F3, 4, a - 1, b - 1));
    CHECK(M.space.equals(op_span(F3, 4, printed)));

    CHECK(M.contains(basis_unit(F3, 4, 1, 2)));  // E_23 = R_{e4}
    CHECK(!M.contains(basis_unit(F3, 4, 0, 1))); // E_12 not in M
}

TEST_CASE("M(S2, Q) contains E_32 per the paper's computation") {
    Rationals Q;
    auto A = catalog(CatalogName::S2, Q);
    auto M = generate_mult_algebra(A);
    CHECK(M.contains(basis_unit(Q, 4, 2, 1)));
    // and indeed E_32 = (1/3) R_{e2}^2
    auto R2 = right_mult(A, unit_vec(Q, 4, 1));
    auto T = mat_scale(Q, Q.inv(Q.from_int(3)), mat_mul(Q, R2, R2));
    CHECK(mat_eq(Q, T, basis_unit(Q, 4, 2, 1)));
}

TEST_CASE("ideals generated by vector sets") {
    Rationals Q;
    auto S2 = catalog(CatalogName::S2, Q);
    auto whole = ideal_generated(S2, {unit_vec(Q, 4, 1)});
    CHECK(int(whole.ideal.size()) == 4);
    CHECK(whole.coincide);
    CHECK(ideal_generated(S2, {}).ideal.empty());

    PrimeField F3(3);
    auto S23 = catalog(CatalogName::S2, F3);
    auto I = ideal_generated(S23, {unit_vec(F3, 4, 0)});
    auto expect = span_of(F3, 4, {unit_vec(F3, 4, 0), unit_vec(F3, 4, 2)});
    CHECK(span_of(F3, 4, I.ideal).equals(expect));
}

TEST_CASE("trace form radicals match the printed spans") {
    PrimeField F3(3);
    auto MS2 = generate_mult_algebra(catalog(CatalogName::S2, F3));
    auto rad = trace_form_radical(MS2);
    std::vector<Matrix<PrimeField>> printed;
    for (auto [a, b] : {std::pair{4, 3}, {2, 1}, {2, 3}, {4, 1}})
        printed.push_back(basis_unit(F3, 4, a - 1, b - 1));
    CHECK(op_span(F3, 4, rad).equals(op_span(F3, 4, printed)));

    // radical is a two-sided ideal of M
    auto sp = op_span(F3, 4, rad);
    for (const auto& T : rad)
        for (int i = 0; i < MS2.dim(); ++i) {
            CHECK(sp.contains(flatten_op(mat_mul(F3, T, MS2.op(i)))));
            CHECK(sp.contains(flatten_op(mat_mul(F3, MS2.op(i), T))));
        }

    // over Q the multiplication algebra of S2 is all of End, radical 0
    Rationals Q;
    CHECK(trace_form_radical(generate_mult_algebra(catalog(CatalogName::S2, Q))).empty());
}

TEST_CASE("W2 over F3: 20-dim M, printed 12-dim radical, nilpotency chain") {
    PrimeField F3(3);
    auto A = catalog(CatalogName::W2, F3);
    auto M = generate_mult_algebra(A);
    REQUIRE(M.dim() == 20);

    // printed M basis
    std::vector<Matrix<PrimeField>> mb;
    auto C = [&](std::initializer_list<std::array<int, 3>> t) { return combo(F3, 6, t); };
    mb.push_back(C({{{1, 1, 1}}, {{5, 5, 1}}}));
    mb.push_back(C({{{3, 3, 1}}, {{6, 6, 1}}}));
    mb.push_back(C({{{3, 1, 1}}, {{6, 5, 1}}}));
    mb.push_back(C({{{1, 3, 1}}, {{5, 6, 1}}}));
    mb.push_back(C({{{1, 1, 1}}, {{5, 1, -1}}}));
    mb.push_back(C({{{3, 3, 1}}, {{6, 3, -1}}}));
    mb.push_back(C({{{3, 1, 1}}, {{6, 1, -1}}}));
    mb.push_back(C({{{1, 3, 1}}, {{5, 3, -1}}}));
    mb.push_back(C({{{1, 5, 1}}, {{5, 5, -1}}}));
    mb.push_back(C({{{3, 6, 1}}, {{6, 6, -1}}}));
    mb.push_back(C({{{1, 6, 1}}, {{5, 6, -1}}}));
    mb.push_back(C({{{3, 5, 1}}, {{6, 5, -1}}}));
    for (int a : {2, 4})
        for (int j : {1, 3, 5, 6}) mb.push_back(C({{{a, j, 1}}}));
    CHECK(M.space.equals(op_span(F3, 6, mb)));

    auto rad = trace_form_radical(M);
    REQUIRE(int(rad.size()) == 12);
    std::vector<Matrix<PrimeField>> printed_rad;
    for (int a : {2, 4})
        for (int j : {1, 3, 5, 6}) printed_rad.push_back(C({{{a, j, 1}}}));
    printed_rad.push_back(C({{{1, 1, 1}}, {{1, 5, 1}}, {{5, 1, -1}}, {{5, 5, 2}}}));
    printed_rad.push_back(C({{{1, 3, 1}}, {{1, 6, 1}}, {{5, 3, -1}}, {{5, 6, 2}}}));
    printed_rad.push_back(C({{{3, 1, 1}}, {{3, 5, 1}}, {{6, 1, -1}}, {{6, 5, 2}}}));
    printed_rad.push_back(C({{{3, 3, 1}}, {{3, 6, 1}}, {{6, 3, -1}}, {{6, 6, 2}}}));
    CHECK(op_span(F3, 6, rad).equals(op_span(F3, 6, printed_rad)));

    auto nil = subspace_is_nilpotent(M, rad);
    CHECK(nil.nilpotent);
    // chain 12, 4, 0: the cube already vanishes, so (M_perp)^4 = 0 holds
    CHECK(nil.index == 3);
    CHECK(nil.chain_dims == std::vector<int>{12, 4, 0});

    // (M_perp)^2 equals the printed 4-dim span
    RowSpace<PrimeField> sq(F3, 36);
    for (const auto& a : rad)
        for (const auto& b : rad) sq.insert(flatten_op(op_compose(F3, a, b)));
    std::vector<Matrix<PrimeField>> printed_sq;
    printed_sq.push_back(C({{{4, 3, 1}}, {{4, 6, 1}}}));
    printed_sq.push_back(C({{{4, 1, 1}}, {{4, 5, 1}}}));
    printed_sq.push_back(C({{{2, 3, 1}}, {{2, 6, 1}}}));
    printed_sq.push_back(C({{{2, 1, 1}}, {{2, 5, 1}}}));
    CHECK(sq.equals(op_span(F3, 6, printed_sq)));
}

TEST_CASE("S2 over F3: radical squares to zero, quotient units give M2") {
    PrimeField F3(3);
    auto M = generate_mult_algebra(catalog(CatalogName::S2, F3));
    auto rad = trace_form_radical(M);
    auto nil = subspace_is_nilpotent(M, rad);
    CHECK(nil.nilpotent);
    CHECK(nil.index == 2);

    // {E11, E13, E31, E33} behave as 2x2 matrix units on indices {1,3}
    std::vector<Matrix<PrimeField>> fam{
        basis_unit(F3, 4, 0, 0), basis_unit(F3, 4, 0, 2),
        basis_unit(F3, 4, 2, 0), basis_unit(F3, 4, 2, 2)};
    auto rep = verify_matrix_units(M, {fam}, 2);
    CHECK(rep.all_inside);
    CHECK(rep.relations_ok);

    // identity span is not nilpotent
    auto MI = generate_mult_algebra(catalog(CatalogName::S2, F3), true);
    auto id = Matrix<PrimeField>::identity(F3, 4);
    CHECK(!subspace_is_nilpotent(MI, {id}).nilpotent);
}

TEST_CASE("W2 over F3: printed matrix units certify M2 + M2") {
    PrimeField F3(3);
    auto M = generate_mult_algebra(catalog(CatalogName::W2, F3));
    auto C = [&](std::initializer_list<std::array<int, 3>> t) { return combo(F3, 6, t); };
    // e_{11}, e_{12}, e_{21}, e_{22} then u_{11}, u_{12}, u_{21}, u_{22}
    std::vector<Matrix<PrimeField>> e_fam{
        C({{{1, 1, 1}}, {{1, 5, 1}}}), C({{{1, 3, 1}}, {{1, 6, 1}}}),
        C({{{3, 1, 1}}, {{3, 5, 1}}}), C({{{3, 3, 1}}, {{3, 6, 1}}})};
    std::vector<Matrix<PrimeField>> u_fam{
        C({{{1, 5, -1}}, {{5, 5, 1}}}), C({{{1, 6, 1}}, {{5, 6, -1}}}),
        C({{{3, 5, 1}}, {{6, 5, -1}}}), C({{{3, 6, -1}}, {{6, 6, 1}}})};
    auto rep = verify_matrix_units(M, {e_fam, u_fam}, 2);
    CHECK(rep.all_inside);
    CHECK(rep.relations_ok);
    CHECK(rep.cross_ok);

    // a scaled unit breaks the relations
    auto bad = e_fam;
    bad[1] = mat_scale(F3, F3.from_int(2), bad[1]);
    CHECK(!verify_matrix_units(M, {bad}, 2).relations_ok);
}

TEST_CASE("W(2) over F2: radical action ideal and printed radical basis") {
    PrimeField F2(2);
    auto A = catalog(CatalogName::W2x2, F2);
    auto M = generate_mult_algebra(A);
    REQUIRE(M.dim() == 52);
    auto rad = trace_form_radical(M);
    REQUIRE(int(rad.size()) == 12);

    auto C = [&](std::initializer_list<std::array<int, 3>> t) { return combo(F2, 8, t); };
    std::vector<Matrix<PrimeField>> printed;
    for (int a : {1, 2, 3, 4}) {
        printed.push_back(C({{{a, 5, 1}}, {{a, 8, 1}}}));
        printed.push_back(C({{{a, 6, 1}}, {{a, 7, 1}}}));
    }
    printed.push_back(C({{{5, 5, 1}}, {{5, 8, 1}}, {{8, 5, 1}}, {{8, 8, 1}}}));
    printed.push_back(C({{{5, 6, 1}}, {{5, 7, 1}}, {{8, 6, 1}}, {{8, 7, 1}}}));
    printed.push_back(C({{{6, 5, 1}}, {{6, 8, 1}}, {{7, 5, 1}}, {{7, 8, 1}}}));
    printed.push_back(C({{{6, 6, 1}}, {{6, 7, 1}}, {{7, 6, 1}}, {{7, 7, 1}}}));
    CHECK(op_span(F2, 8, rad).equals(op_span(F2, 8, printed)));

    auto nil = subspace_is_nilpotent(M, rad);
    CHECK(nil.nilpotent);
    CHECK(nil.index == 2); // R^2 = 0

    auto ideal = radical_action_ideal(A, M, rad);
    auto expect = span_of(F2, 8,
                          {Vec<PrimeField>{0, 0, 0, 0, 1, 0, 0, 1},
                           Vec<PrimeField>{0, 0, 0, 0, 0, 1, 1, 0}});
    CHECK(span_of(F2, 8, ideal).equals(expect));
}

TEST_CASE("W(2) over F3: printed 52-dim M basis, radical action ideal") {
    PrimeField F3(3);
    auto A = catalog(CatalogName::W2x2, F3);
    auto M = generate_mult_algebra(A);
    REQUIRE(M.dim() == 52);

    auto C = [&](std::initializer_list<std::array<int, 3>> t) { return combo(F3, 8, t); };
    std::vector<Matrix<PrimeField>> mb;
    for (int i : {2, 4, 7, 8})
        for (int j = 1; j <= 8; ++j) mb.push_back(C({{{i, j, 1}}}));
    for (auto [a, b] : {std::pair{1, 5}, {3, 6}, {5, 5}, {6, 6}})
        for (auto [i, j] : {std::pair{1, 5}, {3, 6}})
            mb.push_back(C({{{a, i, 1}}, {{b, j, 1}}}));
    for (auto [a, b] : {std::pair{1, 5}, {3, 6}})
        for (int i : {2, 4, 5, 6, 7, 8})
            mb.push_back(C({{{a, i, 1}}, {{b, i, -1}}}));
    CHECK(M.space.equals(op_span(F3, 8, mb)));

    auto rad = trace_form_radical(M);
    REQUIRE(int(rad.size()) == 12);
    std::vector<Matrix<PrimeField>> printed_rad;
    for (int a : {2, 4, 7, 8}) {
        printed_rad.push_back(C({{{a, 1, 1}}, {{a, 5, 1}}}));
        printed_rad.push_back(C({{{a, 3, 1}}, {{a, 6, 1}}}));
    }
    printed_rad.push_back(C({{{1, 1, 1}}, {{1, 5, 1}}, {{5, 1, -1}}, {{5, 5, 2}}}));
    printed_rad.push_back(C({{{1, 3, 1}}, {{1, 6, 1}}, {{5, 3, -1}}, {{5, 6, 2}}}));
    printed_rad.push_back(C({{{3, 1, 1}}, {{3, 5, 1}}, {{6, 1, -1}}, {{6, 5, 2}}}));
    printed_rad.push_back(C({{{3, 3, 1}}, {{3, 6, 1}}, {{6, 3, -1}}, {{6, 6, 2}}}));
    CHECK(op_span(F3, 8, rad).equals(op_span(F3, 8, printed_rad)));

    CHECK(subspace_is_nilpotent(M, rad).index == 2); // (M_perp)^2 = 0

    auto ideal = radical_action_ideal(A, M, rad);
    auto expect = span_of(F3, 8,
                          {Vec<PrimeField>{1, 0, 0, 0, 1, 0, 0, 0},
                           Vec<PrimeField>{0, 0, 1, 0, 0, 1, 0, 0}});
    CHECK(span_of(F3, 8, ideal).equals(expect));

    // R = {} acts as zero
    CHECK(radical_action_ideal(A, M, {}).empty());
}

TEST_CASE("simplicity by dimension") {
    PrimeField F2(2), F3(3), F5(5);
    CHECK(simplicity_by_dimension(catalog(CatalogName::W2, F2)));
    CHECK(simplicity_by_dimension(catalog(CatalogName::W2x2, F5)));
    CHECK(!simplicity_by_dimension(catalog(CatalogName::W2, F3)));
    Rationals Q;
    CHECK_THROWS_WITH(simplicity_by_dimension(zero_algebra(Q, 2)),
                      Catch::Matchers::ContainsSubstring("zero-multiplication"));
}
