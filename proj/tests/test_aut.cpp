#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "conserv/aut.hpp"
#include "conserv/basis_graph.hpp"

using namespace conserv;

namespace {

template <Field F>
Vec<F> rvec(const F& f, int n, std::mt19937_64& rng, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<long long> d(lo, hi);
    Vec<F> v(n);
    for (auto& x : v) x = f.from_int(d(rng));
    return v;
}

} // namespace

TEST_CASE("family members at reference parameters") {
    Rationals Q;
    auto fams = automorphism_families(Q);
    const auto& w = family_by_name(fams, "s2_w");
    CHECK(mat_eq(Q, family_member(Q, w, {Q.one(), Q.zero()}),
                 Matrix<Rationals>::identity(Q, 4)));
    CHECK_THROWS_WITH(family_member(Q, w, {Q.zero(), Q.zero()}),
                      Catch::Matchers::ContainsSubstring("unit"));

    PrimeField F5(5);
    auto fams5 = automorphism_families(F5);
    const auto& w5 = family_by_name(fams5, "s2_w");
    // printed first row at lambda = 2, mu = 1: (1, 0, 1, 3/4 = 2 in F5)
    auto printed = w5.printed(F5, {F5.from_int(2), F5.one()});
    CHECK(printed.at(0, 0) == 1);
    CHECK(printed.at(0, 1) == 0);
    CHECK(printed.at(0, 2) == 1);
    CHECK(printed.at(0, 3) == 2);

    // characteristic constraints
    CHECK_THROWS_WITH(family_member(F5, family_by_name(fams5, "s2_w3"),
                                    {F5.one(), F5.zero()}),
                      Catch::Matchers::ContainsSubstring("characteristic"));

    PrimeField F2(2);
    auto fams2 = automorphism_families(F2);
    const auto& omega = family_by_name(fams2, "w2x2_omega");
    CHECK(mat_eq(F2, family_member(F2, omega, {F2.one(), F2.zero(), F2.one(), F2.zero()}),
                 Matrix<PrimeField>::identity(F2, 8)));
}

TEST_CASE("all eight families verify over their finite domains") {
    PrimeField F2(2), F3(3), F5(5), F7(7);
    auto run = [&](auto& field, const char* name, long long expect_members) {
        auto fams = automorphism_families(field);
        auto rep = verify_family(field, family_by_name(fams, name));
        CHECK(rep.ok);
        CHECK(rep.members_checked == expect_members);
    };
    run(F5, "s2_w", 20);
    run(F7, "s2_w", 42);
    run(F2, "s2_w2", 2);
    run(F3, "s2_w3", 6);
    run(F2, "w2_w", 2);
    run(F5, "w2_w", 20);
    run(F3, "w2_M", 12);
    run(F5, "w2x2_block", 20);
    run(F2, "w2x2_omega", 4);
    run(F3, "w2x2_M", 36);

    // rational sampling for the characteristic-0 families
    Rationals Q;
    auto fq = automorphism_families(Q);
    for (auto name : {"s2_w", "w2_w", "w2x2_block"}) {
        auto rep = verify_family(Q, family_by_name(fq, name));
        CHECK(rep.ok);
        CHECK(rep.members_checked >= 50);
    }
}

TEST_CASE("every family member is invertible") {
    PrimeField F3(3), F5(5);
    for (auto* fp : {&F3, &F5}) {
        auto fams = automorphism_families(*fp);
        for (const auto& fam : fams) {
            if (!fam.char_ok(fp->characteristic())) continue;
            for (const auto& p : all_params(*fp, fam))
                CHECK(mat_inverse(*fp, family_member(*fp, fam, p)).has_value());
        }
    }
}

TEST_CASE("a corrupted family fails with a located violation") {
    PrimeField F3(3);
    auto fams = automorphism_families(F3);
    auto bad = family_by_name(fams, "s2_w3");
    auto orig = bad.printed;
    bad.printed = [orig](const PrimeField& ff, const Vec<PrimeField>& p) {
        auto M = orig(ff, p);
        M.at(0, 2) = ff.neg(M.at(0, 2)); // flip the sign of the mu/lambda entry
        return M;
    };
    auto rep = verify_family(F3, bad);
    CHECK(!rep.ok);
    CHECK(rep.first_failure.find("member failed") != std::string::npos);
}

TEST_CASE("group laws and inverse formulas") {
    PrimeField F2(2), F3(3), F5(5), F7(7);
    auto run = [&](auto& field, const char* name, long long pairs) {
        auto fams = automorphism_families(field);
        auto rep = verify_group_law(field, family_by_name(fams, name));
        CHECK(rep.ok);
        CHECK(rep.members_checked == pairs);
    };
    run(F5, "s2_w", 400);
    run(F2, "s2_w2", 4);
    run(F3, "s2_w3", 36);
    run(F2, "w2_w", 4);
    run(F7, "w2_w", 1764);
    run(F3, "w2_M", 144);
    run(F5, "w2x2_block", 400);
    run(F2, "w2x2_omega", 16);
    run(F3, "w2x2_M", 1296);

    Rationals Q;
    auto fq = automorphism_families(Q);
    for (auto name : {"s2_w", "w2_w", "w2x2_block"})
        CHECK(verify_group_law(Q, family_by_name(fq, name)).ok);
}

TEST_CASE("enumeration: dfs and full agree on S2 over F2") {
    PrimeField F2(2);
    auto A = catalog(CatalogName::S2, F2);
    auto full = enumerate_automorphisms(A, EnumMode::full);
    auto dfs = enumerate_automorphisms(A, EnumMode::dfs);
    REQUIRE(full.size() == 2);
    REQUIRE(dfs.size() == 2);
    for (size_t i = 0; i < full.size(); ++i) CHECK(mat_eq(F2, full[i], dfs[i]));

    // and the two automorphisms are w2(1,0), w2(1,1)
    auto fams = automorphism_families(F2);
    const auto& w2 = family_by_name(fams, "s2_w2");
    std::vector<Matrix<PrimeField>> members{
        family_member(F2, w2, {F2.one(), F2.zero()}),
        family_member(F2, w2, {F2.one(), F2.one()})};
    sort_matrices(F2, members);
    for (size_t i = 0; i < 2; ++i) CHECK(mat_eq(F2, full[i], members[i]));
}

TEST_CASE("family completeness on the small part of the matrix") {
    PrimeField F2(2), F3(3);
    auto check = [&](auto& field, const char* name, long long count) {
        auto fams = automorphism_families(field);
        auto rep = family_completeness(field, family_by_name(fams, name));
        CHECK(rep.ok);
        CHECK(rep.enumerated == count);
        CHECK(rep.family_size == count);
        CHECK(rep.predicted == count);
    };
    check(F2, "s2_w2", 2);
    check(F3, "s2_w3", 6);
    check(F2, "w2_w", 2);
    check(F3, "w2_M", 12);
    check(F2, "w2x2_omega", 4);
    check(F3, "w2x2_M", 36);
}

TEST_CASE("no isomorphism between the char-3 f-basis quotient and W2") {
    PrimeField F3(3);
    auto W = catalog(CatalogName::W2x2, F3);
    Vec<PrimeField> i1{1, 0, 0, 0, 1, 0, 0, 0}, i2{0, 0, 1, 0, 0, 1, 0, 0};
    std::vector<Vec<PrimeField>> comp;
    for (int i = 0; i < 4; ++i) comp.push_back(unit_vec(F3, 8, i));
    comp.push_back(unit_vec(F3, 8, 7));
    comp.push_back(vec_scale(F3, F3.from_int(2), unit_vec(F3, 8, 6)));
    auto q = quotient_by_ideal(W, {i1, i2}, &comp);
    CHECK(enumerate_isomorphisms(q.algebra, catalog(CatalogName::W2, F3)).empty());
}

TEST_CASE("group structure: semidirect in char 2, direct in char 3") {
    PrimeField F2(2), F3(3);
    auto semi = semidirect_structure_check(F2);
    CHECK(semi.ok);
    auto direct = direct_product_structure_check(F3);
    CHECK(direct.ok);
    CHECK_THROWS_AS(semidirect_structure_check(F3), error);
}

TEST_CASE("automorphisms fix the canonical ideals") {
    PrimeField F2(2);
    auto A = catalog(CatalogName::W2x2, F2);
    auto autos = enumerate_automorphisms(A, EnumMode::dfs);
    REQUIRE(autos.size() == 4);
    // theta(I) = I for I = span(e5+e8, e6+e7)
    auto I = span_of(F2, 8,
                     {Vec<PrimeField>{0, 0, 0, 0, 1, 0, 0, 1},
                      Vec<PrimeField>{0, 0, 0, 0, 0, 1, 1, 0}});
    for (const auto& th : autos)
        for (const auto& v : I.rows) CHECK(I.contains(mat_apply(F2, th, v)));
}

TEST_CASE("derivations of S2 exhibit aff2 over every field") {
    Rationals Q;
    auto der = derivations(catalog(CatalogName::S2, Q));
    CHECK(der.dim() == 2);
    CHECK(der.aff2_normalized);
    CHECK(mat_eq(Q, commutator(Q, der.h, der.x), der.x));
    for (const auto& D : der.basis) CHECK(is_derivation(catalog(CatalogName::S2, Q), D));

    for (long long p : {2, 3, 5}) {
        PrimeField Fp(p);
        auto dp = derivations(catalog(CatalogName::S2, Fp));
        CHECK(dp.dim() == 2);
        CHECK(dp.aff2_normalized);
    }

    // zero algebra: every linear map is a derivation
    CHECK(derivations(zero_algebra(Q, 3)).dim() == 9);

    // bracket of two derivations is a derivation: closed structure constants
    auto A = catalog(CatalogName::S2, Q);
    for (int a = 0; a < der.dim(); ++a)
        for (int b = 0; b < der.dim(); ++b)
            CHECK(is_derivation(A, commutator(Q, der.basis[a], der.basis[b])));
}

TEST_CASE("conjugation invariance of characteristic polynomials") {
    PrimeField F5(5);
    auto A = catalog(CatalogName::W2, F5);
    auto fams = automorphism_families(F5);
    const auto& w = family_by_name(fams, "w2_w");
    std::vector<Matrix<PrimeField>> members;
    for (const auto& p : all_params(F5, w)) members.push_back(family_member(F5, w, p));
    std::mt19937_64 rng(23);
    std::vector<Vec<PrimeField>> ws;
    for (int s = 0; s < 20; ++s) ws.push_back(rvec(F5, 6, rng, 0, 4));
    CHECK(invariant_conjugation_check(A, members, ws));

    // theta = identity is trivially invariant
    CHECK(invariant_conjugation_check(A, {Matrix<PrimeField>::identity(F5, 6)}, ws));
}

TEST_CASE("budget exceeded reports an error") {
    PrimeField F5(5);
    auto A = catalog(CatalogName::W2, F5);
    CHECK_THROWS_WITH(enumerate_automorphisms(A, EnumMode::dfs, 100),
                      Catch::Matchers::ContainsSubstring("budget"));
}
