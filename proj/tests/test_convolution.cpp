#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ocat/convolution.hpp"

using namespace ocat;

namespace {

CatPtr lie_cat() {
    static CatPtr cat = std::make_shared<CatCat>(Operad::builtin("lie", 5));
    return cat;
}
OperadElement lie_mu() { return lie_cat()->operad()->mu_default(); }

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

SigmaModule trivial_at(int n, int N) {
    SigmaModule m;
    m.N = N;
    for (int k = 0; k <= N; ++k) {
        m.spaces.push_back(k == n ? Space({"t"}) : Space());
        m.sym.push_back(SymAction::trivial(k, k == n ? 1 : 0));
    }
    return m;
}

}  // namespace

TEST_CASE("convolution dims follow the induced-module count") {
    auto f = free_module(lie_cat(), 2, 4);
    auto g = free_module(lie_cat(), 3, 4);
    ConvModule c = convolution(f, g);
    for (int n = 0; n <= 4; ++n) {
        long long expect = 0;
        for (int k = 0; k <= n; ++k) expect += binom(n, k) * f->dim(k) * g->dim(n - k);
        CHECK(c.module->dim(n) == expect);
    }
    std::string why;
    CHECK_MESSAGE(c.module->validate(&why), why);
}

TEST_CASE("the unit is neutral for convolution") {
    auto f = free_module(lie_cat(), 2, 4);
    auto u = unit_module(lie_cat(), 4);
    ConvModule c = convolution(f, u);
    for (int n = 0; n <= 4; ++n) CHECK(c.module->dim(n) == f->dim(n));
    // the only nonzero component is c = {1..n}; action matrices agree
    for (int m = 1; m <= 4; ++m) {
        for (int n = 1; n < m; ++n) {
            const auto& hs = lie_cat()->hom(m, n);
            for (int i = 0; i < hs.dim(); ++i)
                CHECK(c.module->action_of_basis(m, n, i) == f->action_of_basis(m, n, i));
        }
        for (int a = 0; a + 1 < m; ++a)
            CHECK(c.module->sym[m].gens[a] == f->sym[m].gens[a]);
    }

    ConvModule cc = convolution(u, u);
    for (int n = 0; n <= 4; ++n) CHECK(cc.module->dim(n) == (n == 0 ? 1 : 0));
}

TEST_CASE("delta splits over convolution") {
    auto f = free_module(lie_cat(), 2, 4);
    auto g = alpha_embed(lie_cat(), trivial_at(1, 4));
    DeltaConvSplit sp = delta_conv_split(f, g);
    for (int n = 0; n <= 3; ++n) {
        CHECK(sp.source->dim(n) == sp.target->dim(n));
        CHECK(rank_of(sp.iso.maps[n]) == sp.source->dim(n));
    }
    std::string why;
    CHECK_MESSAGE(sp.iso.validate(&why), why);
}

TEST_CASE("mu-tilde of a convolution is the two-term sum") {
    auto f = free_module(lie_cat(), 2, 4);
    auto g = alpha_embed(lie_cat(), trivial_at(1, 4));
    ConvMuReport rep = conv_mu_checks(f, g, lie_mu());
    CHECK_MESSAGE(rep.sum_rule, rep.detail);
    CHECK_MESSAGE(rep.reflection_iso, rep.detail);
}

TEST_CASE("modules in the subcategory are stable under convolution") {
    auto a = alpha_embed(lie_cat(), trivial_at(2, 4));
    auto b = coker_mu(free_module(lie_cat(), 2, 4), lie_mu()).module;
    REQUIRE(is_in_mu(a, lie_mu()));
    REQUIRE(is_in_mu(b, lie_mu()));
    ConvModule c = convolution(a, b);
    CHECK(is_in_mu(c.module, lie_mu()));
}

TEST_CASE("trivial pair: unit with unit") {
    auto u = unit_module(lie_cat(), 3);
    ConvMuReport rep = conv_mu_checks(u, u, lie_mu());
    CHECK(rep.sum_rule);
    CHECK(rep.reflection_iso);
}

TEST_CASE("random pairs: sum rule and reflection isomorphism") {
    Rng rng(20240905);
    int done = 0;
    for (int trial = 0; trial < 6 && done < 4; ++trial) {
        auto f = random_module(lie_cat(), 3, rng);
        auto g = random_module(lie_cat(), 3, rng);
        ConvMuReport rep = conv_mu_checks(f, g, lie_mu());
        CHECK_MESSAGE(rep.sum_rule, rep.detail);
        CHECK_MESSAGE(rep.reflection_iso, rep.detail);
        ++done;
    }
    CHECK(done >= 4);
}
