#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ocat/operad.hpp"
#include "ocat/presentation_io.hpp"
#include "ocat/rng.hpp"

using namespace ocat;

TEST_CASE("free operad tree counts") {
    TreeArena arena;
    CHECK(enumerate_trees(arena, {2}, 1).size() == 1);
    CHECK(enumerate_trees(arena, {2}, 2).size() == 2);
    CHECK(enumerate_trees(arena, {2}, 3).size() == 12);  // 2 shapes x 3!
    CHECK(enumerate_trees(arena, {2}, 4).size() == 120);
    CHECK(enumerate_trees(arena, {2}, 5).size() == 1680);
}

TEST_CASE("Lie dims via the quotient engine: (n-1)!") {
    auto lie = Operad::builtin("lie", 4);
    CHECK(lie->dim(0) == 0);  // reduced
    CHECK(lie->dim(1) == 1);
    CHECK(lie->dim(2) == 1);
    CHECK(lie->dim(3) == 2);
    CHECK(lie->dim(4) == 6);
    CHECK(lie->reduced());
    CHECK(lie->unital_arity_one());
}

TEST_CASE("Leib dims via the quotient engine: n!") {
    auto leib = Operad::builtin("leib", 4);
    CHECK(leib->dim(1) == 1);
    CHECK(leib->dim(2) == 2);
    CHECK(leib->dim(3) == 6);
    CHECK(leib->dim(4) == 24);
}

TEST_CASE("free binary operad: no relations") {
    OperadPresentation p;
    p.name = "freebin";
    p.gens.push_back({"m", 2});
    auto free2 = Operad::build(p, 3);
    CHECK(free2->dim(2) == 2);
    CHECK(free2->dim(3) == 12);
}

TEST_CASE("builtin AssU / ComU / I dims and flags") {
    auto assu = Operad::builtin("assu", 3);
    CHECK(assu->dim(0) == 1);
    CHECK(assu->dim(1) == 1);
    CHECK(assu->dim(2) == 2);
    CHECK(assu->dim(3) == 6);
    CHECK_FALSE(assu->reduced());

    auto comu = Operad::builtin("comu", 3);
    for (int n = 0; n <= 3; ++n) CHECK(comu->dim(n) == 1);

    auto I = Operad::builtin("I", 3);
    CHECK(I->dim(1) == 1);
    CHECK(I->dim(0) == 0);
    CHECK(I->dim(2) == 0);
    CHECK(I->reduced());
}

TEST_CASE("partial_compose: unit axiom and Jacobi normal form") {
    auto lie = Operad::builtin("lie", 4);
    OperadElement mu = lie->mu_default();
    CHECK(mu.arity == 2);

    // unit o x = x, x o unit = x
    OperadElement u = lie->unit();
    CHECK(lie->partial_compose(u, 0, mu).coords == mu.coords);
    CHECK(lie->partial_compose(mu, 0, u).coords == mu.coords);
    CHECK(lie->partial_compose(mu, 1, u).coords == mu.coords);

    // Jacobi in normal form: mu o_1 mu - mu o_2 mu + s12.(mu o_2 mu) = 0
    OperadElement a = lie->partial_compose(mu, 0, mu);
    OperadElement b = lie->partial_compose(mu, 1, mu);
    OperadElement bs = lie->sym_act(perm_transposition(3, 0, 1), b);
    SVec total = a.coords;
    total -= b.coords;
    total += bs.coords;
    CHECK(total.empty());
}

TEST_CASE("sym_act basics") {
    auto lie = Operad::builtin("lie", 3);
    OperadElement mu = lie->mu_default();
    CHECK(lie->sym_act(perm_identity(2), mu).coords == mu.coords);
    SVec swapped = lie->sym_act(perm_transposition(2, 0, 1), mu).coords;
    SVec expect = mu.coords;
    expect *= Rat(-1);
    CHECK(swapped == expect);  // antisymmetry

    auto assu = Operad::builtin("assu", 3);
    OperadElement e = assu->basis_element(2, 0);
    SVec tr = assu->sym_act(perm_transposition(2, 0, 1), e).coords;
    CHECK(tr == SVec::unit(1));  // regular action swaps the two words
}

TEST_CASE("AssU composition is block substitution") {
    auto assu = Operad::builtin("assu", 4);
    // identity word in S_2 composed with itself at slot 1 gives identity in S_3
    SVec r = assu->compose_basis(2, 0, 0, 2, 0);
    CHECK(r == SVec::unit(0));
    // arity-0 insertion deletes an input: (12) o_1 e = id in S_1
    SVec d = assu->compose_basis(2, 0, 0, 0, 0);
    CHECK(d == SVec::unit(0));
}

TEST_CASE("operad axioms: associativity shapes and equivariance") {
    Rng rng(4711);
    for (const char* name : {"lie", "leib", "assu"}) {
        auto op = Operad::builtin(name, 4);
        int lo = op->reduced() ? 1 : 0;
        for (int trial = 0; trial < 220; ++trial) {
            int m = 2 + rng.below(2);             // 2..3
            int k = lo == 0 ? rng.below(3) : 1 + rng.below(2);
            int c = lo == 0 ? rng.below(2) : 1 + rng.below(2);
            if (op->dim(m) == 0 || op->dim(k) == 0 || op->dim(c) == 0) continue;
            OperadElement x = op->basis_element(m, rng.below(op->dim(m)));
            OperadElement y = op->basis_element(k, rng.below(op->dim(k)));
            OperadElement z = op->basis_element(c, rng.below(op->dim(c)));

            // nested: (x o_i y) o_{i+p} z == x o_i (y o_p z)
            if (k >= 1 && m + k - 1 + c - 1 <= op->nmax() && k + c - 1 >= lo) {
                int i = rng.below(m);
                int p = k > 0 ? rng.below(std::max(k, 1)) : 0;
                if (k > 0) {
                    auto lhs = op->partial_compose(op->partial_compose(x, i, y), i + p, z);
                    auto rhs = op->partial_compose(x, i, op->partial_compose(y, p, z));
                    CHECK(lhs.coords == rhs.coords);
                }
            }
            // disjoint: i' < i: (x o_i y) o_{i'} z == (x o_{i'} z) o_{i + c - 1} y
            if (m >= 2 && m + k - 1 + c - 1 <= op->nmax()) {
                int i = 1 + rng.below(m - 1);
                int ip = rng.below(i);
                auto lhs = op->partial_compose(op->partial_compose(x, i, y), ip, z);
                auto rhs = op->partial_compose(op->partial_compose(x, ip, z), i + c - 1, y);
                CHECK(lhs.coords == rhs.coords);
            }
            // equivariance: (p x) o_{p(i)} y == blowup(p, i, k) . (x o_i y)
            if (k >= 1 && m + k - 1 <= op->nmax()) {
                Perm p(m);
                for (int s = 0; s < m; ++s) p[s] = s;
                for (int s = m - 1; s > 0; --s) std::swap(p[s], p[rng.below(s + 1)]);
                int i = rng.below(m);
                auto lhs = op->partial_compose(op->sym_act(p, x), p[i], y);
                auto rhs = op->sym_act(perm_blowup(p, i, k), op->partial_compose(x, i, y));
                CHECK(lhs.coords == rhs.coords);
            }
        }
    }
}

TEST_CASE("sym_act composes as permutation product; SymAction verifies") {
    Rng rng(99);
    auto leib = Operad::builtin("leib", 4);
    for (int n = 1; n <= 4; ++n) CHECK(leib->sym(n).verify());
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + rng.below(3);
        Perm p(n), q(n);
        for (int s = 0; s < n; ++s) p[s] = q[s] = s;
        for (int s = n - 1; s > 0; --s) std::swap(p[s], p[rng.below(s + 1)]);
        for (int s = n - 1; s > 0; --s) std::swap(q[s], q[rng.below(s + 1)]);
        OperadElement x = leib->basis_element(n, rng.below(leib->dim(n)));
        auto lhs = leib->sym_act(p, leib->sym_act(q, x));
        auto rhs = leib->sym_act(perm_compose(p, q), x);
        CHECK(lhs.coords == rhs.coords);
    }
}

TEST_CASE("morphisms: Leib -> Lie and Lie -> AssU are valid") {
    auto leib = Operad::builtin("leib", 4);
    auto lie = Operad::builtin("lie", 4);
    auto assu = Operad::builtin("assu", 4);

    OperadMorphism leib2lie(leib, lie, {lie->mu_default()});
    CHECK(leib2lie.matrix(3).rows() == 2);
    CHECK(leib2lie.matrix(3).cols() == 6);
    CHECK(rank_of(leib2lie.matrix(3)) == 2);  // surjective

    // bracket = (12) - (21)
    OperadElement comm = assu->element(2, SVec::unit(0));
    comm.coords.add(1, Rat(-1));
    OperadMorphism lie2assu(lie, assu, {comm});
    CHECK(rank_of(lie2assu.matrix(2)) == 1);

    // morphism matrices commute with sym_act and partial composition on all
    // basis pairs within the window
    auto commutes = [](const OperadMorphism& phi) {
        const OperadPtr& src = phi.source();
        const OperadPtr& tgt = phi.target();
        for (int m = 2; m <= 3; ++m) {
            for (int k = 2; m + k - 1 <= 4; ++k) {
                for (int b1 = 0; b1 < src->dim(m); ++b1) {
                    for (int b2 = 0; b2 < src->dim(k); ++b2) {
                        OperadElement x = src->basis_element(m, b1);
                        OperadElement y = src->basis_element(k, b2);
                        for (int i = 0; i < m; ++i) {
                            auto lhs = phi.apply(src->partial_compose(x, i, y));
                            auto rhs =
                                tgt->partial_compose(phi.apply(x), i, phi.apply(y));
                            if (!(lhs.coords == rhs.coords)) return false;
                        }
                    }
                }
            }
            for (int b1 = 0; b1 < src->dim(m); ++b1) {
                OperadElement x = src->basis_element(m, b1);
                for (int a = 0; a + 1 < m; ++a) {
                    Perm p = perm_transposition(m, a, a + 1);
                    auto l2 = phi.apply(src->sym_act(p, x));
                    auto r2 = tgt->sym_act(p, phi.apply(x));
                    if (!(l2.coords == r2.coords)) return false;
                }
            }
        }
        return true;
    };
    CHECK(commutes(leib2lie));
    CHECK(commutes(lie2assu));
}

TEST_CASE("morphism with a relation-violating image is rejected") {
    auto leib = Operad::builtin("leib", 3);
    auto assu = Operad::builtin("assu", 3);
    // gen -> product: the Leibniz relation does not die in k[S_3]
    OperadElement prod = assu->basis_element(2, 0);
    CHECK_THROWS_AS(OperadMorphism(leib, assu, {prod}), std::invalid_argument);
}

TEST_CASE("augmentation") {
    auto lie = Operad::builtin("lie", 3);
    OperadMorphism aug = OperadMorphism::augmentation(lie);
    CHECK(aug.matrix(1) == LinMap::identity(1));
    CHECK(aug.matrix(2).is_zero());
    CHECK(aug.matrix(2).rows() == 0);

    auto I = Operad::builtin("I", 3);
    OperadMorphism idaug = OperadMorphism::augmentation(I);
    CHECK(idaug.matrix(1) == LinMap::identity(1));

    auto assu = Operad::builtin("assu", 3);
    CHECK_THROWS_AS(OperadMorphism::augmentation(assu), std::invalid_argument);
}

TEST_CASE("presentation parser round trip on Leib") {
    std::string text =
        "# right Leibniz algebras\n"
        "gen b 2\n"
        "rel (b (b 1 2) 3) - (b (b 1 3) 2) - (b 1 (b 2 3))\n";
    OperadPresentation p = parse_presentation(text, "leib_file");
    auto op = Operad::build(p, 4);
    CHECK(op->dim(3) == 6);
    CHECK(op->dim(4) == 24);
}

TEST_CASE("presentation parser: coefficients and errors") {
    // fractional coefficients parse; the symmetrization relation leaves dim 1
    std::string text = "gen b 2\nrel 1/2 (b 1 2) - 1/2 (b 2 1)\n";
    auto op = Operad::build(parse_presentation(text, "t"), 3);
    CHECK(op->dim(2) == 1);
    // a relation whose symmetric closure kills the arity-2 slice
    std::string killall = "gen b 2\nrel 2/3 (b 1 2) + (b 2 1)\n";
    CHECK(Operad::build(parse_presentation(killall, "t"), 3)->dim(2) == 0);

    CHECK_THROWS_AS(parse_presentation("gen b 2\nrel (b 1)\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_presentation("gen b 2\nrel (c 1 2)\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_presentation("rel (b 1 2)\n", "t"), ParseError);

    // unit killed
    std::string killed = "gen b 2\nrel 1\n";
    CHECK_THROWS_AS(Operad::build(parse_presentation(killed, "t"), 3), std::invalid_argument);

    // arity-1 generators rejected by the engine
    OperadPresentation bad;
    bad.gens.push_back({"u", 1});
    CHECK_THROWS_AS(Operad::build(bad, 3), std::invalid_argument);
}

TEST_CASE("eval_tree agrees with basis representatives") {
    auto lie = Operad::builtin("lie", 4);
    Rng rng(17);
    for (int n = 2; n <= 4; ++n) {
        for (int j = 0; j < lie->dim(n); ++j) {
            OperadElement e = lie->eval_tree(lie->basis_tree(n, j));
            CHECK(e.coords == SVec::unit(j));
        }
    }
}
