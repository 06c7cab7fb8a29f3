#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ocat/groupside.hpp"
#include "ocat/module_io.hpp"
#include "ocat/presentation_io.hpp"
#include "ocat/reflection.hpp"

using namespace ocat;

namespace {

CatPtr lie_cat() {
    static CatPtr cat = std::make_shared<CatCat>(Operad::builtin("lie", 5));
    return cat;
}

bool same_action(ModulePtr a, ModulePtr b) {
    if (a->N != b->N) return false;
    const CatCat& cat = *a->cat;
    for (int n = 0; n <= a->N; ++n) {
        if (a->dim(n) != b->dim(n)) return false;
        for (int s = 0; s + 1 < n; ++s)
            if (!(a->sym[n].gens[s] == b->sym[n].gens[s])) return false;
    }
    for (int m = 0; m <= a->N; ++m) {
        for (int n = 0; n <= a->N; ++n) {
            if (cat.operad()->reduced() && m < n) continue;
            const auto& hs = cat.hom(m, n);
            for (int i = 0; i < hs.dim(); ++i)
                if (!(a->action_of_basis(m, n, i) == b->action_of_basis(m, n, i))) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("module serialization round trip: free, delta, reflected, random") {
    Rng rng(404);
    std::vector<ModulePtr> mods;
    mods.push_back(free_module(lie_cat(), 2, 3));
    mods.push_back(delta_module(free_module(lie_cat(), 3, 4)));
    mods.push_back(coker_mu(free_module(lie_cat(), 2, 3),
                            lie_cat()->operad()->mu_default()).module);
    for (int t = 0; t < 3; ++t) mods.push_back(random_module(lie_cat(), 3, rng));
    for (const auto& f : mods) {
        std::string text = module_save(f);
        ModulePtr back = module_load(text, lie_cat());
        CHECK(same_action(f, back));
        // serialization is deterministic
        CHECK(module_save(back) == text);
    }
}

TEST_CASE("round trip over a non-reduced operad (full equal-arity storage)") {
    CatPtr assu = std::make_shared<CatCat>(Operad::builtin("assu", 4));
    auto f = free_module(assu, 2, 3);
    ModulePtr back = module_load(module_save(f), assu);
    CHECK(back->full_equal_arity);
    for (int m = 0; m <= 3; ++m) {
        for (int n = 0; n <= 3; ++n) {
            const auto& hs = assu->hom(m, n);
            for (int i = 0; i < hs.dim(); ++i)
                CHECK(f->action_of_basis(m, n, i) == back->action_of_basis(m, n, i));
        }
    }
}

TEST_CASE("module load rejects malformed input") {
    CHECK_THROWS(module_load("not a module", lie_cat()));
    CHECK_THROWS(module_load("ocat-module 1\noperad leib\nbound 2\ndims 0 1 1\nend\n", lie_cat()));
    CHECK_THROWS(module_load("ocat-module 1\noperad lie\nbound 2\ndims 0 1\nend\n", lie_cat()));
    // unknown basis morphism key
    std::string bad =
        "ocat-module 1\noperad lie\nbound 2\ndims 0 1 2\nact 2 1 99|0 1 2\nend\n";
    CHECK_THROWS(module_load(bad, lie_cat()));
}

TEST_CASE("loaded modules still pass functoriality") {
    auto f = free_module(lie_cat(), 2, 3);
    ModulePtr back = module_load(module_save(f), lie_cat());
    std::string why;
    CHECK_MESSAGE(back->validate(&why), why);
    // and mu-tilde matrices agree
    OperadElement mu = lie_cat()->operad()->mu_default();
    auto raw1 = mu_tilde_raw(f, mu);
    auto raw2 = mu_tilde_raw(back, mu);
    for (std::size_t n = 0; n < raw1.size(); ++n) CHECK(raw1[n] == raw2[n]);
}

TEST_CASE("presentation files: whitespace insensitivity and named errors") {
    OperadPresentation a = parse_presentation(
        "gen b 2\nrel (b (b 1 2) 3)-(b (b 1 3) 2)   - (b 1 (b 2 3))\n", "x");
    OperadPresentation b = parse_presentation(
        "# comment line\ngen b 2\nrel ( b ( b 1 2 ) 3 ) - ( b ( b 1 3 ) 2 ) - ( b 1 ( b 2 3 ) )\n",
        "x");
    CHECK(Operad::build(a, 4)->dim(4) == Operad::build(b, 4)->dim(4));

    try {
        parse_presentation("gen b 2\nrel (c 1 2)\n", "x");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("'c'") != std::string::npos);
    }
}

TEST_CASE("group hom text format") {
    GroupHom h = hom_parse("2->3: x1 x3; x2^-1");
    CHECK(hom_str(h) == "2->3: x1 x3; x2^-1");
    GroupHom c = conj_hom(2);
    CHECK(hom_str(c) == "2->3: x3^-1 x1 x3; x3^-1 x2 x3");
    CHECK_THROWS(hom_parse("banana"));
    CHECK_THROWS(hom_parse("2->2: x1"));
}

TEST_CASE("cat element canonical keys reject bad shapes") {
    CHECK_THROWS(CatElt::from_key("12", 2, 2));
    CHECK_THROWS(CatElt::from_key("12|0,0", 3, 2));
    CatElt e = CatElt::from_key("12|0,0", 2, 2);
    CHECK(e.f == std::vector<int>{0, 1});
}
