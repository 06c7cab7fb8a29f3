#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ocat/linalg.hpp"
#include "ocat/rng.hpp"
#include "ocat/symrep.hpp"

using namespace ocat;

namespace {

LinMap random_map(Rng& rng, int rows, int cols, int density_pct = 60) {
    LinMap m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            if (rng.below(100) < density_pct) m.set(i, j, rat(rng.small_int(4)));
    return m;
}

}  // namespace

TEST_CASE("sparse vector arithmetic") {
    SVec v;
    v.add(3, rat(1, 2));
    v.add(1, rat(2));
    v.add(3, rat(-1, 2));
    CHECK(v.nnz() == 1);
    CHECK(v.lead() == 1);
    SVec w = SVec::unit(1, rat(-2));
    v += w;
    CHECK(v.empty());
}

TEST_CASE("kernel: zero map, identity, (1,-1)") {
    Space s3 = Space::anonymous(3);
    auto [k0, incl0] = kernel(LinMap::zero(3, 3), s3);
    CHECK(k0.dim() == 3);
    CHECK(incl0 == LinMap::identity(3));

    Space s2 = Space::anonymous(2);
    auto [k1, incl1] = kernel(LinMap::identity(2), s2);
    CHECK(k1.dim() == 0);

    LinMap f(1, 2);
    f.set(0, 0, rat(1));
    f.set(0, 1, rat(-1));
    auto [k2, incl2] = kernel(f, s2);
    REQUIRE(k2.dim() == 1);
    CHECK(incl2.at(0, 0) == rat(1));
    CHECK(incl2.at(1, 0) == rat(1));  // spanned by e1 + e2
}

TEST_CASE("cokernel: zero, identity, rank-1 row") {
    Space s2 = Space::anonymous(2);
    auto [c0, p0] = cokernel(LinMap::zero(2, 1), s2);
    CHECK(c0.dim() == 2);
    auto [c1, p1] = cokernel(LinMap::identity(2), s2);
    CHECK(c1.dim() == 0);

    LinMap f(1, 2);  // (1,-1) viewed as 2-dim -> 1-dim
    f.set(0, 0, rat(1));
    f.set(0, 1, rat(-1));
    Space s1 = Space::anonymous(1);
    auto [c2, p2] = cokernel(f, s1);
    CHECK(c2.dim() == 0);
}

TEST_CASE("rank-nullity bookkeeping on random maps") {
    Rng rng(20240901);
    for (int trial = 0; trial < 25; ++trial) {
        int rows = 1 + rng.below(6), cols = 1 + rng.below(6);
        LinMap f = random_map(rng, rows, cols);
        Space dom = Space::anonymous(cols), cod = Space::anonymous(rows);
        int r = rank_of(f);
        auto [k, incl] = kernel(f, dom);
        auto [c, proj] = cokernel(f, cod);
        CHECK(k.dim() + r == cols);
        CHECK(c.dim() + r == rows);
        CHECK(f.compose(incl).is_zero());
        CHECK(proj.compose(f).is_zero());
        // projection surjective
        CHECK(rank_of(proj) == c.dim());
    }
}

TEST_CASE("solve recovers preimages") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        int rows = 1 + rng.below(5), cols = 1 + rng.below(5);
        LinMap f = random_map(rng, rows, cols);
        Echelon ech(f);
        SVec x;
        for (int j = 0; j < cols; ++j) x.add(j, rat(rng.small_int(3)));
        SVec b = f.apply(x);
        auto sol = ech.solve(b);
        REQUIRE(sol.has_value());
        CHECK(f.apply(*sol) == b);
    }
}

TEST_CASE("tensor dims and action") {
    Space a = Space::anonymous(2), b = Space::anonymous(3);
    SymAction sa = SymAction::trivial(2, 2);
    // nontrivial S_2 action on a: swap basis
    sa.gens[0] = LinMap(2, 2);
    sa.gens[0].set(1, 0, rat(1));
    sa.gens[0].set(0, 1, rat(1));
    SymAction sb = SymAction::trivial(2, 3);
    auto t = tensor(a, sa, b, sb);
    CHECK(t.space.dim() == 6);
    // (s x 1)(a_i x b_j) = (s a_i) x b_j
    CHECK(t.action.left.gens[0].at(1 * 3 + 2, 0 * 3 + 2) == rat(1));

    Space zero = Space::anonymous(0);
    auto tz = tensor(zero, SymAction::trivial(2, 0), b, sb);
    CHECK(tz.space.dim() == 0);
}

TEST_CASE("induce: regular representation of S_2") {
    Space a = Space::anonymous(1);
    ProductAction pa{SymAction::trivial(1, 1), SymAction::trivial(1, 1)};
    auto ind = induce(a, pa);
    CHECK(ind.space.dim() == 2);
    REQUIRE(ind.action.gens.size() == 1);
    // permutation action swapping the two cosets
    CHECK(ind.action.gens[0].at(1, 0) == rat(1));
    CHECK(ind.action.gens[0].at(0, 1) == rat(1));
    CHECK(ind.action.verify());
}

TEST_CASE("induce: sign x triv from S_2 x S_1 to S_3 has character -1 on transpositions") {
    Space a = Space::anonymous(1);
    SymAction sign;
    sign.n = 2;
    sign.dim = 1;
    {
        LinMap m(1, 1);
        m.set(0, 0, rat(-1));
        sign.gens.push_back(m);
    }
    ProductAction pa{sign, SymAction::trivial(1, 1)};
    auto ind = induce(a, pa);
    CHECK(ind.space.dim() == 3);
    CHECK(ind.action.verify());
    // brute-force character on a transposition
    Rat tr(0);
    const LinMap& g = ind.action.gens[0];
    for (int i = 0; i < 3; ++i) tr += g.at(i, i);
    CHECK(tr == rat(-1));
    // restriction of the identity coset block recovers the block action:
    // identity coset is {0,1}, first in lex order; s_0 acts there by sign
    CHECK(ind.action.gens[0].at(0, 0) == rat(-1));
}

TEST_CASE("coinvariants in characteristic zero") {
    Space v3 = Space::anonymous(3);
    auto [triv, ptriv] = coinvariants(v3, {LinMap::identity(3)});
    CHECK(triv.dim() == 3);

    // regular representation of S_2
    LinMap swap2(2, 2);
    swap2.set(1, 0, rat(1));
    swap2.set(0, 1, rat(1));
    Space v2 = Space::anonymous(2);
    auto [reg, preg] = coinvariants(v2, {swap2});
    CHECK(reg.dim() == 1);
    CHECK(preg.compose(swap2) == preg);

    // sign representation dies in char 0
    LinMap neg(1, 1);
    neg.set(0, 0, rat(-1));
    Space v1 = Space::anonymous(1);
    auto [sgn, psgn] = coinvariants(v1, {neg});
    CHECK(sgn.dim() == 0);

    // non-invertible generator rejected
    CHECK_THROWS(coinvariants(v2, {LinMap::zero(2, 2)}));
}

TEST_CASE("coinvariants projection equals image of averaging idempotent") {
    Rng rng(99);
    // a few small S_2- and S_3-representations assembled from permutation blocks
    for (int trial = 0; trial < 5; ++trial) {
        int blocks = 1 + rng.below(3);
        int dim = 2 * blocks;
        LinMap g(dim, dim);
        for (int b = 0; b < blocks; ++b) {
            if (rng.below(2)) {  // regular block
                g.set(2 * b + 1, 2 * b, rat(1));
                g.set(2 * b, 2 * b + 1, rat(1));
            } else {  // diag(1,-1)
                g.set(2 * b, 2 * b, rat(1));
                g.set(2 * b + 1, 2 * b + 1, rat(-1));
            }
        }
        Space v = Space::anonymous(dim);
        auto [q, proj] = coinvariants(v, {g});
        LinMap avg = averaging_idempotent(dim, {g});
        CHECK(q.dim() == rank_of(avg));
        // proj kills exactly ker(avg) = im(g - 1)
        CHECK(proj.compose(g - LinMap::identity(dim)).is_zero());
    }
}

TEST_CASE("perm utilities") {
    Perm p = {2, 0, 1};  // 0->2, 1->0, 2->1
    auto word = perm_adjacent_word(p);
    Perm q = perm_identity(3);
    for (int a : word) q = perm_compose(q, perm_transposition(3, a, a + 1));
    CHECK(q == p);
    CHECK(perm_compose(p, perm_inverse(p)) == perm_identity(3));
    Perm pat = perm_pattern(p, {0, 2});  // values 2,1 -> pattern (1,0)
    CHECK(pat == Perm{1, 0});
}
