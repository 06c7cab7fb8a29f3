#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "ocat/catprop.hpp"
#include "ocat/rng.hpp"

using namespace ocat;

namespace {

CatMorphism random_basis_morphism(Rng& rng, const CatCat& cat, int m, int n) {
    const auto& hs = cat.hom(m, n);
    REQUIRE(hs.dim() > 0);
    return cat.single(hs.basis[rng.below(hs.dim())]);
}

}  // namespace

TEST_CASE("hom space dims over Lie") {
    CatCat cat(Operad::builtin("lie", 5));
    CHECK(cat.hom(2, 1).dim() == 1);
    CHECK(cat.hom(3, 2).dim() == 6);
    CHECK(cat.hom(1, 2).dim() == 0);  // reduced, m < n
    CHECK(cat.hom(3, 1).dim() == 2);
    CHECK(cat.hom(0, 0).dim() == 1);
    CHECK(cat.hom(2, 0).dim() == 0);
}

TEST_CASE("hom dims agree with the multinomial formula") {
    for (const char* name : {"lie", "leib", "assu", "comu"}) {
        CatCat cat(Operad::builtin(name, 4));
        for (int m = 0; m <= 4; ++m)
            for (int n = 0; n <= 4; ++n)
                CHECK(cat.hom(m, n).dim() == cat.dim_by_formula(m, n));
    }
}

TEST_CASE("identity is a two-sided unit") {
    Rng rng(11);
    CatCat cat(Operad::builtin("lie", 5));
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + rng.below(2);
        int m = n + rng.below(5 - n);
        if (cat.hom(m, n).dim() == 0) continue;
        CatMorphism xi = random_basis_morphism(rng, cat, m, n);
        CHECK(cat.compose(cat.identity(n), xi) == xi);
        CHECK(cat.compose(xi, cat.identity(m)) == xi);
    }
}

TEST_CASE("mu_1(1) composed with the flip is -mu in Cat Lie(2,1)") {
    CatCat cat(Operad::builtin("lie", 3));
    OperadElement mu = cat.operad()->mu_default();
    CatMorphism m11 = cat.mu_i(mu, 1, 0);
    CatMorphism flip = cat.perm_morphism({1, 0});
    CatMorphism lhs = cat.compose(m11, flip);
    CatMorphism expect = cat.from_element(mu);
    expect *= Rat(-1);
    CHECK(lhs == expect);
}

TEST_CASE("composition is associative on random basis triples") {
    Rng rng(20240902);
    int total = 0;
    for (const char* name : {"lie", "leib", "assu"}) {
        CatCat cat(Operad::builtin(name, 5));
        bool reduced = cat.operad()->reduced();
        int checked = 0;
        for (int trial = 0; trial < 1200 && checked < 340; ++trial) {
            int p = 1 + rng.below(3);
            int n = reduced ? p + rng.below(5 - p + 1) : rng.below(4);
            int m = reduced ? n + rng.below(5 - n + 1) : rng.below(4);
            if (m > 5 || n > 5 || p > 5) continue;
            if (cat.hom(m, n).dim() == 0 || cat.hom(n, p).dim() == 0) continue;
            CatMorphism xi = random_basis_morphism(rng, cat, m, n);
            CatMorphism eta = random_basis_morphism(rng, cat, n, p);
            int q = 1 + rng.below(p);
            if (cat.hom(p, q).dim() == 0) continue;
            CatMorphism zeta = random_basis_morphism(rng, cat, p, q);
            CHECK(cat.compose(zeta, cat.compose(eta, xi)) ==
                  cat.compose(cat.compose(zeta, eta), xi));
            ++checked;
        }
        CHECK(checked >= 300);
        total += checked;
    }
    CHECK(total >= 1000);
}

TEST_CASE("composition is associative exhaustively at small arities") {
    CatCat cat(Operad::builtin("leib", 4));
    for (int m = 1; m <= 3; ++m) {
        for (int n = 1; n <= m; ++n) {
            for (int p = 1; p <= n; ++p) {
                const auto& hmn = cat.hom(m, n);
                const auto& hnp = cat.hom(n, p);
                const auto& hp1 = cat.hom(p, 1);
                for (int i = 0; i < hmn.dim(); ++i)
                    for (int j = 0; j < hnp.dim(); ++j)
                        for (int k = 0; k < hp1.dim(); ++k) {
                            CatMorphism xi = cat.single(hmn.basis[i]);
                            CatMorphism eta = cat.single(hnp.basis[j]);
                            CatMorphism zeta = cat.single(hp1.basis[k]);
                            CHECK(cat.compose(zeta, cat.compose(eta, xi)) ==
                                  cat.compose(cat.compose(zeta, eta), xi));
                        }
            }
        }
    }
}

TEST_CASE("boxplus: units, dims, interchange") {
    Rng rng(33);
    CatCat cat(Operad::builtin("lie", 5));
    OperadElement mu = cat.operad()->mu_default();

    CatMorphism id0 = cat.identity(0);
    CatMorphism m21 = cat.from_element(mu);
    CHECK(cat.boxplus(m21, id0) == m21);
    CHECK(cat.boxplus(cat.identity(1), cat.identity(1)) == cat.identity(2));

    // mu ⊞ Id_1: underlying map 1,2 -> 1, 3 -> 2 with labels (mu, unit)
    CatMorphism mbox = cat.boxplus(m21, cat.identity(1));
    REQUIRE(mbox.terms.size() == 1);
    const CatElt& e = mbox.terms.begin()->first;
    CHECK(e.f == std::vector<int>{0, 0, 1});

    // interchange: (xi' o eta') ⊞ (xi'' o eta'') = (xi' ⊞ xi'') o (eta' ⊞ eta'')
    for (int trial = 0; trial < 40; ++trial) {
        int n1 = 1 + rng.below(2), m1 = n1 + rng.below(2);
        int n2 = 1 + rng.below(2), m2 = n2 + rng.below(2);
        int p1 = 1 + rng.below(n1), p2 = 1 + rng.below(n2);
        if (m1 + m2 > 5 || cat.hom(m1, n1).dim() == 0 || cat.hom(m2, n2).dim() == 0 ||
            cat.hom(n1, p1).dim() == 0 || cat.hom(n2, p2).dim() == 0)
            continue;
        CatMorphism eta1 = random_basis_morphism(rng, cat, m1, n1);
        CatMorphism eta2 = random_basis_morphism(rng, cat, m2, n2);
        CatMorphism xi1 = random_basis_morphism(rng, cat, n1, p1);
        CatMorphism xi2 = random_basis_morphism(rng, cat, n2, p2);
        CatMorphism lhs = cat.boxplus(cat.compose(xi1, eta1), cat.compose(xi2, eta2));
        CatMorphism rhs = cat.compose(cat.boxplus(xi1, xi2), cat.boxplus(eta1, eta2));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("mu_i conjugation identities") {
    CatCat cat(Operad::builtin("leib", 5));
    OperadElement mu = cat.operad()->mu_default();
    for (int n = 2; n <= 4; ++n) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                CatMorphism tau_n = cat.perm_morphism(perm_transposition(n, i, j));
                CatMorphism tau_n1 = cat.perm_morphism(perm_transposition(n + 1, i, j));
                CatMorphism conj = cat.compose(tau_n, cat.compose(cat.mu_i(mu, n, j), tau_n1));
                CHECK(conj == cat.mu_i(mu, n, i));
                for (int k = 0; k < n; ++k) {
                    if (k == i || k == j) continue;
                    CatMorphism conj2 =
                        cat.compose(tau_n, cat.compose(cat.mu_i(mu, n, k), tau_n1));
                    CHECK(conj2 == cat.mu_i(mu, n, k));
                }
            }
        }
    }
}

TEST_CASE("mu_sum: edge cases and equivariance") {
    CatCat cat(Operad::builtin("lie", 5));
    OperadElement mu = cat.operad()->mu_default();

    CHECK(cat.mu_sum(mu, 0).is_zero());
    CHECK(cat.mu_sum(mu, 1) == cat.mu_i(mu, 1, 0));
    CHECK(cat.mu_sum(mu, 2).terms.size() == 2);

    // sigma o mu(n) = mu(n) o (sigma ⊞ Id_1) for all sigma in S_n, n <= 4
    for (int n = 1; n <= 4; ++n) {
        Perm p(n);
        std::iota(p.begin(), p.end(), 0);
        do {
            CatMorphism lhs = cat.compose(cat.perm_morphism(p), cat.mu_sum(mu, n));
            CatMorphism rhs =
                cat.compose(cat.mu_sum(mu, n),
                            cat.boxplus(cat.perm_morphism(p), cat.identity(1)));
            CHECK(lhs == rhs);
        } while (std::next_permutation(p.begin(), p.end()));
    }
}

TEST_CASE("leibniz_check: Lie and Leib hold, AssU product fails") {
    CatCat lie(Operad::builtin("lie", 5));
    CatCat leib(Operad::builtin("leib", 5));
    CatCat assu(Operad::builtin("assu", 5));

    CHECK(leibniz_check(lie, lie.operad()->mu_default(), LeibnizMode::Generators, 4).holds);
    CHECK(leibniz_check(lie, lie.operad()->mu_default(), LeibnizMode::Exhaustive, 4).holds);
    CHECK(leibniz_check(leib, leib.operad()->mu_default(), LeibnizMode::Generators, 4).holds);
    CHECK(leibniz_check(leib, leib.operad()->mu_default(), LeibnizMode::Exhaustive, 4).holds);

    auto rep = leibniz_check(assu, assu.operad()->mu_default(), LeibnizMode::Generators, 4);
    CHECK_FALSE(rep.holds);
    REQUIRE(rep.defect.has_value());
    CHECK_FALSE(rep.defect->is_zero());
    CHECK(rep.defect->arity == 3);
    // the defect of the product is (xy)z - (xz)y - x(yz) = -xzy in k[S_3]
    SVec expect = SVec::unit(1, Rat(-1));  // word "132"
    CHECK(rep.defect->coords == expect);

    auto rep2 = leibniz_check(assu, assu.operad()->mu_default(), LeibnizMode::Exhaustive, 4);
    CHECK_FALSE(rep2.holds);
}

TEST_CASE("shift naturality: Cat phi commutes with (-) ⊞ Id_1") {
    auto leib = Operad::builtin("leib", 5);
    auto lie = Operad::builtin("lie", 5);
    auto assu = Operad::builtin("assu", 5);
    CatCat cleib(leib), clie(lie), cassu(assu);

    OperadMorphism leib2lie(leib, lie, {lie->mu_default()});
    OperadElement comm = assu->element(2, SVec::unit(0));
    comm.coords.add(1, Rat(-1));
    OperadMorphism lie2assu(lie, assu, {comm});

    auto check_square = [](const OperadMorphism& phi, const CatCat& src, const CatCat& tgt) {
        for (int m = 1; m <= 4; ++m) {
            for (int n = 1; n <= m; ++n) {
                const auto& hs = src.hom(m, n);
                for (const auto& e : hs.basis) {
                    CatMorphism xi = src.single(e);
                    CatMorphism lhs =
                        cat_apply(phi, src, tgt, src.boxplus(xi, src.identity(1)));
                    CatMorphism rhs =
                        tgt.boxplus(cat_apply(phi, src, tgt, xi), tgt.identity(1));
                    CHECK(lhs == rhs);
                }
            }
        }
    };
    check_square(leib2lie, cleib, clie);
    check_square(lie2assu, clie, cassu);
}

TEST_CASE("cat element keys round trip") {
    CatCat cat(Operad::builtin("leib", 4));
    const auto& hs = cat.hom(3, 2);
    for (const auto& e : hs.basis) {
        CatElt back = CatElt::from_key(e.key(), 3, 2);
        CHECK(back == e);
    }
}
