#include "ocat/verify.hpp"

#include <chrono>
#include <numeric>
#include <sstream>

#include "ocat/convolution.hpp"
#include "ocat/groupside.hpp"
#include "ocat/hopf.hpp"
#include "ocat/reflection.hpp"
#include "ocat/resolution.hpp"

namespace ocat {

CatPtr VerifyContext::cat(const std::string& operad, int nmax) {
    auto key = std::make_pair(operad, nmax);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    CatPtr c = std::make_shared<CatCat>(Operad::builtin(operad, nmax));
    cache_[key] = c;
    return c;
}

namespace {

CheckResult check(const std::string& name, bool pass, const std::string& detail = "") {
    return {name, pass, detail};
}

// ---------------------------------------------------------------- operads --

std::vector<CheckResult> suite_operads(VerifyContext& ctx) {
    (void)ctx;
    std::vector<CheckResult> out;
    auto t0 = std::chrono::steady_clock::now();
    auto lie = Operad::builtin("lie", 5);
    auto leib = Operad::builtin("leib", 5);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    bool dims_ok = true;
    long long fact = 1;
    for (int n = 1; n <= 5; ++n) {
        if (n >= 2) fact *= (n - 1);
        long long lie_expect = fact;  // (n-1)!
        long long leib_expect = fact * n;
        if (lie->dim(n) != lie_expect) dims_ok = false;
        if (leib->dim(n) != leib_expect) dims_ok = false;
    }
    {
        // the detail must stay byte-stable across runs, so the measured time
        // only appears when the budget is blown
        bool fast = secs < 60.0;
        std::ostringstream os;
        if (fast)
            os << "dims to arity 5 built within the 60s budget";
        else
            os << "build took " << secs << "s (budget 60s)";
        out.push_back(check("operad_quotient_dims_factorial_n5", dims_ok && fast, os.str()));
    }

    // operad axioms, exhaustively for composite arity <= 4
    bool axioms = true;
    for (const char* name : {"lie", "leib", "assu"}) {
        auto op = Operad::builtin(name, 4);
        int lo = op->reduced() ? 1 : 0;
        for (int m = 1; m <= 4 && axioms; ++m) {
            for (int k = lo; k <= 4 && axioms; ++k) {
                if (m + k - 1 > 4 || op->dim(m) == 0 || op->dim(k) == 0) continue;
                for (int b1 = 0; b1 < op->dim(m) && axioms; ++b1) {
                    for (int b2 = 0; b2 < op->dim(k) && axioms; ++b2) {
                        OperadElement x = op->basis_element(m, b1), y = op->basis_element(k, b2);
                        // unit axioms
                        for (int i = 0; i < m; ++i) {
                            auto ux = op->partial_compose(x, i, op->unit());
                            if (!(ux.coords == x.coords)) axioms = false;
                        }
                        // equivariance on all permutations
                        Perm p(m);
                        std::iota(p.begin(), p.end(), 0);
                        do {
                            for (int i = 0; i < m && axioms; ++i) {
                                auto lhs = op->partial_compose(op->sym_act(p, x), p[i], y);
                                auto rhs =
                                    op->sym_act(perm_blowup(p, i, k), op->partial_compose(x, i, y));
                                if (!(lhs.coords == rhs.coords)) axioms = false;
                            }
                        } while (std::next_permutation(p.begin(), p.end()) && axioms);
                        // associativity, both shapes, third factor
                        for (int c = lo; c <= 4 && axioms; ++c) {
                            if (m + k - 1 + c - 1 > 4 || op->dim(c) == 0) continue;
                            for (int b3 = 0; b3 < op->dim(c) && axioms; ++b3) {
                                OperadElement z = op->basis_element(c, b3);
                                for (int i = 0; i < m && axioms; ++i) {
                                    for (int q = 0; q < k; ++q) {
                                        auto l =
                                            op->partial_compose(op->partial_compose(x, i, y), i + q, z);
                                        auto r =
                                            op->partial_compose(x, i, op->partial_compose(y, q, z));
                                        if (!(l.coords == r.coords)) axioms = false;
                                    }
                                    for (int ip = 0; ip < i; ++ip) {
                                        auto l =
                                            op->partial_compose(op->partial_compose(x, i, y), ip, z);
                                        auto r = op->partial_compose(op->partial_compose(x, ip, z),
                                                                     i + c - 1, y);
                                        if (!(l.coords == r.coords)) axioms = false;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out.push_back(check("operad_axioms_exhaustive_n4", axioms));
    return out;
}

// ---------------------------------------------------------------- leibniz --

std::vector<CheckResult> suite_leibniz(VerifyContext& ctx) {
    std::vector<CheckResult> out;
    struct Case {
        const char* operad;
        bool expect_holds;
    };
    // the factorial dimension oracle at the full default truncation
    {
        CatPtr lie6 = ctx.cat("lie", 6);
        CatPtr leib6 = ctx.cat("leib", 6);
        bool dims6 = true;
        long long fact = 1;
        for (int n = 1; n <= 6; ++n) {
            if (n >= 2) fact *= (n - 1);
            if (lie6->operad()->dim(n) != fact) dims6 = false;
            if (leib6->operad()->dim(n) != fact * n) dims6 = false;
        }
        out.push_back(check("operad_quotient_dims_factorial_n6", dims6));
    }
    for (const Case& c : {Case{"lie", true}, Case{"leib", true}, Case{"assu", false}}) {
        CatPtr cat = ctx.cat(c.operad, 6);
        OperadElement mu = cat->operad()->mu_default();
        auto gen = leibniz_check(*cat, mu, LeibnizMode::Generators, 5);
        auto exh = leibniz_check(*cat, mu, LeibnizMode::Exhaustive, 5);
        std::string nm = std::string("right_leibniz_") + c.operad;
        std::ostringstream os;
        os << "generators " << (gen.holds ? "holds" : "fails") << ", exhaustive(<=5) "
           << (exh.holds ? "holds" : "fails");
        if (!exh.holds && exh.defect)
            os << ", witness arity " << exh.defect->arity << " defect " << exh.defect->coords.str();
        bool pass = gen.holds == c.expect_holds && exh.holds == c.expect_holds &&
                    (c.expect_holds || (exh.defect && !exh.defect->is_zero()));
        out.push_back(check(nm, pass, os.str()));
        out.push_back(check(std::string("leibniz_mode_agreement_") + c.operad,
                            gen.holds == exh.holds));
    }
    return out;
}

// ---------------------------------------------------------------- mutilde --

std::vector<CheckResult> suite_mutilde(VerifyContext& ctx) {
    std::vector<CheckResult> out;
    Rng rng(ctx.options().seed);
    bool natural = true;
    std::string why;
    for (const char* opname : {"lie", "leib"}) {
        CatPtr cat = ctx.cat(opname, 5);
        OperadElement mu = cat->operad()->mu_default();
        for (int trial = 0; trial < 10; ++trial) {
            auto f = random_module(cat, 3, rng);
            ModuleMorphism mt = mu_tilde(f, mu);
            if (!mt.validate(&why)) natural = false;
        }
    }
    out.push_back(check("mutilde_natural_on_20_random_modules", natural, why));

    CatPtr assu = ctx.cat("assu", 4);
    auto fa = free_module(assu, 2, 3);
    auto viol = naturality_violation(fa, assu->operad()->mu_default());
    std::ostringstream os;
    if (viol)
        os << "violating basis morphism " << viol->xi.key() << " of Cat(" << viol->m << ","
           << viol->n << ")";
    out.push_back(check("mutilde_violates_naturality_over_assu", viol.has_value() &&
                                                                      !(viol->lhs == viol->rhs),
                        os.str()));
    return out;
}

// -------------------------------------------------------------- deltaproj --

std::vector<CheckResult> suite_deltaproj(VerifyContext& ctx) {
    std::vector<CheckResult> out;
    CatPtr cat = ctx.cat("lie", 5);
    bool ok = true;
    std::string why;
    for (int m0 = 1; m0 <= 4 && ok; ++m0) {
        auto dec = delta_proj_decompose(cat, m0, 4);
        for (int n = 0; n <= 4; ++n) {
            if (dec.source->dim(n) != dec.target->dim(n)) ok = false;
            if (rank_of(dec.iso.maps[n]) != dec.source->dim(n)) ok = false;
        }
        if (ok && !dec.iso.validate(&why)) ok = false;
    }
    out.push_back(check("delta_projective_decomposition_m4", ok, why));
    return out;
}

// ------------------------------------------------------------- reflection --

std::vector<CheckResult> suite_reflection(VerifyContext& ctx) {
    std::vector<CheckResult> out;
    CatPtr cat = ctx.cat("lie", 5);
    OperadElement mu = cat->operad()->mu_default();
    Rng rng(ctx.options().seed + 1);

    bool coker_in = true, adjunction = true, closure = true, sixterm = true;
    std::string detail;
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_module(cat, 3, rng);
        auto refl = coker_mu(f, mu);
        if (!is_in_mu(refl.module, mu)) coker_in = false;

        // adjunction: morphisms F -> G with G in the subcategory factor
        // uniquely; G is the reflection extended by zero to F's full bound so
        // that the morphisms see every arity F does
        ModulePtr g_ext = extend_zero(refl.module, f->N);
        auto homs = hom_module(f, g_ext);
        for (const auto& h : homs) {
            std::vector<LinMap> trimmed(h.maps.begin(), h.maps.end() - 1);
            ModuleMorphism restricted =
                make_morphism(truncate(f, f->N - 1), refl.module, std::move(trimmed));
            ModuleMorphism lift = factor_through_reflection(restricted, refl);
            for (int n = 0; n <= lift.N; ++n)
                if (!(compose(lift, refl.map).maps[n] == restricted.maps[n])) adjunction = false;
        }

        // closure under random subobjects, quotients and sums
        std::vector<std::vector<SVec>> seeds(refl.module->N + 1);
        for (int n = 0; n <= refl.module->N; ++n) {
            if (refl.module->dim(n) == 0 || rng.below(2)) continue;
            SVec v;
            for (int b = 0; b < refl.module->dim(n); ++b) v.add(b, rat(rng.small_int(2)));
            if (!v.empty()) seeds[n].push_back(v);
        }
        auto sub = submodule_closure(refl.module, seeds);
        if (!is_in_mu(sub.module, mu)) closure = false;
        auto quo = quotient_by(sub.map);
        if (!is_in_mu(quo.module, mu)) closure = false;
        if (!is_in_mu(direct_sum({refl.module, sub.module}), mu)) closure = false;

        // six-term exactness on a random short exact sequence
        std::vector<std::vector<SVec>> seeds2(f->N + 1);
        for (int n = 0; n <= f->N; ++n) {
            if (f->dim(n) == 0) continue;
            SVec v;
            for (int b = 0; b < f->dim(n); ++b) v.add(b, rat(rng.small_int(2)));
            if (!v.empty() && rng.below(2)) seeds2[n].push_back(v);
        }
        auto sub2 = submodule_closure(f, seeds2);
        auto quo2 = quotient_by(sub2.map);
        ShortExact ses = make_short_exact(sub2.map, quo2.map);
        SixTermReport rep = six_term(ses, mu);
        if (!rep.exact) {
            sixterm = false;
            if (!rep.failures.empty()) detail = rep.failures.front();
        }
    }
    out.push_back(check("coker_mu_lands_in_subcategory_20_random", coker_in));
    out.push_back(check("adjunction_factorization_unique", adjunction));
    out.push_back(check("closure_sub_quotient_sum", closure));
    out.push_back(check("six_term_exactness", sixterm, detail));
    return out;
}

// -------------------------------------------------------------- operadnat --

std::vector<CheckResult> suite_operadnat(VerifyContext& ctx) {
    std::vector<CheckResult> out;
    CatPtr lie = ctx.cat("lie", 5);
    CatPtr leib = ctx.cat("leib", 5);
    OperadMorphism phi(leib->operad(), lie->operad(), {lie->operad()->mu_default()});
    OperadElement mu_lie = lie->operad()->mu_default();
    OperadElement mu_leib = leib->operad()->mu_default();
    Rng rng(ctx.options().seed + 2);

    bool equivalence = true, dims_match = true;
    auto run_one = [&](ModulePtr g) {
        auto rg = restrict_along(phi, leib, g);
        if (is_in_mu(g, mu_lie) != is_in_mu(rg, mu_leib)) equivalence = false;
        auto refl_lie = coker_mu(g, mu_lie);
        auto rrefl = restrict_along(phi, leib, refl_lie.module);
        auto refl_leib = coker_mu(rg, mu_leib);
        for (int n = 0; n <= refl_leib.module->N; ++n)
            if (rrefl->dim(n) != refl_leib.module->dim(n)) dims_match = false;
    };
    for (int m0 = 1; m0 <= 3; ++m0) run_one(free_module(lie, m0, 3));
    for (int trial = 0; trial < 10; ++trial) run_one(random_module(lie, 3, rng));
    out.push_back(check("mu_phimu_equivalence_leib_to_lie", equivalence));
    out.push_back(check("restriction_commutes_with_reflection_dims", dims_match));
    return out;
}

// ------------------------------------------------------------ convolution --

std::vector<CheckResult> suite_convolution(VerifyContext& ctx) {
    std::vector<CheckResult> out;
    CatPtr cat = ctx.cat("lie", 5);
    OperadElement mu = cat->operad()->mu_default();
    Rng rng(ctx.options().seed + 3);
    bool split_ok = true, sum_ok = true, refl_ok = true;
    std::string detail;
    for (int pair = 0; pair < 10; ++pair) {
        int N = pair < 8 ? 3 : 4;
        auto f = random_module(cat, N, rng);
        auto g = random_module(cat, N, rng);
        DeltaConvSplit sp = delta_conv_split(f, g);
        for (int n = 0; n + 1 <= sp.conv_fg.module->N; ++n) {
            if (sp.source->dim(n) != sp.target->dim(n) ||
                rank_of(sp.iso.maps[n]) != sp.source->dim(n))
                split_ok = false;
        }
        ConvMuReport rep = conv_mu_checks(f, g, mu);
        if (!rep.sum_rule) {
            sum_ok = false;
            detail = rep.detail;
        }
        if (!rep.reflection_iso) {
            refl_ok = false;
            detail = rep.detail;
        }
    }
    out.push_back(check("delta_splits_over_convolution", split_ok));
    out.push_back(check("mutilde_sum_rule_under_convolution", sum_ok, detail));
    out.push_back(check("reflection_is_monoidal_10_pairs", refl_ok, detail));
    return out;
}

// --------------------------------------------------------------- homology --

std::vector<CheckResult> suite_homology(VerifyContext& ctx) {
    std::vector<CheckResult> out;
    CatPtr cat = ctx.cat("lie", 5);
    OperadElement mu = cat->operad()->mu_default();
    Rng rng(ctx.options().seed + 4);

    bool agree = true, proj_vanish = true, support_ok = true, valid = true;
    std::string detail;
    int tested = 0;

    auto run_one = [&](ModulePtr f, bool projective, int single_arity) {
        int support = 0;
        for (int n = 0; n <= f->N; ++n)
            if (f->dim(n) > 0) support = n;
        ChainComplex c = projective_resolution(f, support);
        std::string why;
        if (!resolution_is_valid(c, &why)) {
            valid = false;
            detail = why;
            return;
        }
        DerivedReport rep = derived_mu(f, mu, c);
        if (!rep.methods_agree || !rep.l0_is_reflection || !rep.kappa_vanishing) {
            agree = false;
            detail = rep.detail;
        }
        if (projective) {
            for (std::size_t i = 1; i < rep.L.size(); ++i)
                for (int n = 0; n <= f->N - 1; ++n)
                    if (rep.L[i].dim(n) != 0) proj_vanish = false;
        }
        if (single_arity >= 0 && rep.L.size() > 1) {
            auto df = delta_module(f);
            for (int n = 0; n <= f->N - 1; ++n) {
                if (n != single_arity - 1 && rep.L[1].dim(n) != 0) support_ok = false;
                if (rep.L[1].dim(n) > df->dim(n)) support_ok = false;
            }
        }
        ++tested;
    };

    run_one(free_module(cat, 2, 4), true, -1);
    run_one(free_module(cat, 3, 4), true, -1);
    for (int arity = 2; arity <= 3; ++arity) {
        for (bool sign : {false, true}) {
            SigmaModule m;
            m.N = 4;
            for (int k = 0; k <= 4; ++k) {
                m.spaces.push_back(k == arity ? Space({"x"}) : Space());
                SymAction s;
                s.n = k;
                s.dim = k == arity ? 1 : 0;
                for (int a = 0; a + 1 < k; ++a) {
                    LinMap g(s.dim, s.dim);
                    if (s.dim == 1) g.set(0, 0, sign ? rat(-1) : rat(1));
                    s.gens.push_back(std::move(g));
                }
                m.sym.push_back(std::move(s));
            }
            run_one(alpha_embed(cat, m), false, arity);
        }
    }
    for (int trial = 0; trial < 4; ++trial) run_one(random_module(cat, 3, rng), false, -1);

    out.push_back(check("derived_routes_agree_10_modules", agree && valid && tested == 10, detail));
    out.push_back(check("derived_vanishes_on_projectives", proj_vanish));
    out.push_back(check("L1_of_single_arity_concentrated", support_ok));
    return out;
}

// -------------------------------------------------------------- groupside --

std::vector<CheckResult> suite_groupside(VerifyContext& ctx) {
    std::vector<CheckResult> out;
    std::string why;
    out.push_back(check("hopf_axioms_d2_D4", hopf_axioms_ok(2, 4, &why), why));

    ExpFunctor e4(2, 4);
    bool prim = true;
    for (int n = 0; n <= 2; ++n) {
        auto rep = primitive_conjugation_check(e4, n);
        if (!rep.ok) prim = false;
    }
    out.push_back(check("primitive_conjugation_adjoint_formula", prim));

    ExpFunctor e3(2, 3);
    bool psis = true;
    for (int n = 0; n <= 2; ++n)
        for (int k = 1; k <= 3; ++k)
            if (!(e3.rho(n).compose(e3.psi_k_star(k, n)) == e3.rho_k(k, n))) psis = false;
    out.push_back(check("psi_rho_composites_k3", psis));

    CatPtr lie = ctx.cat("lie", 5);
    bool pbw_ok = true;
    for (int m0 = 1; m0 <= 4 && pbw_ok; ++m0) {
        auto g = free_module(lie, m0, m0);
        for (int n = 0; n <= 4; ++n)
            if (pbw_dim(g, n) != cat_ass_dim_formula(m0, n)) pbw_ok = false;
    }
    out.push_back(check("pbw_dims_match_cat_assu_m4_n4", pbw_ok));

    bool basis_ok = true;
    CatPtr assu = ctx.cat("assu", 4);
    for (int m = 0; m <= 4 && basis_ok; ++m)
        for (int n = 0; n <= 4; ++n)
            if (cat_ass_hom(m, n).space.dim() != assu->hom(m, n).dim()) basis_ok = false;
    out.push_back(check("cat_assu_ordered_fibre_basis", basis_ok));

    bool gamma_ok = true;
    for (int m0 = 1; m0 <= 3 && gamma_ok; ++m0) {
        auto g = free_module(lie, m0, m0);
        for (int n = 0; n <= 2; ++n)
            if (!gamma_tbar_dim_check(g, n).equal) gamma_ok = false;
    }
    out.push_back(check("gamma_tbar_dims_free_m3_n2", gamma_ok));

    FreeNilpotentLie g2(2, 3);
    bool bridge = true;
    std::string bdetail;
    for (int n = 0; n <= 2; ++n) {
        auto rep = mu_rho_bridge_check(lie, g2, e3, n);
        if (!rep.ok) {
            bridge = false;
            bdetail = rep.detail;
        }
    }
    out.push_back(check("mu_rho_bridge", bridge, bdetail));

    ExpFunctor e1(1, 3);
    auto o1 = outer_check_exponential(e1, 2);
    auto o2 = outer_check_exponential(e3, 2);
    bool outer_ok = o1.outer && o1.consistent && !o2.outer && o2.consistent;
    // membership of the underline modules mirrors the outer verdicts
    FreeNilpotentLie g1(1, 3);
    OperadElement mu = lie->operad()->mu_default();
    if (is_in_mu(underline_module(lie, g1, 2), mu) != o1.outer) outer_ok = false;
    if (is_in_mu(underline_module(lie, g2, 2), mu) != o2.outer) outer_ok = false;
    out.push_back(check("outer_vs_inner_consistency", outer_ok));
    return out;
}

const std::map<std::string, std::vector<CheckResult> (*)(VerifyContext&)>& suites() {
    static const std::map<std::string, std::vector<CheckResult> (*)(VerifyContext&)> table = {
        {"operads", suite_operads},       {"leibniz", suite_leibniz},
        {"mutilde", suite_mutilde},       {"deltaproj", suite_deltaproj},
        {"reflection", suite_reflection}, {"operadnat", suite_operadnat},
        {"convolution", suite_convolution}, {"homology", suite_homology},
        {"groupside", suite_groupside},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [k, v] : suites()) out.push_back(k);
        return out;
    }();
    return names;
}

std::vector<CheckResult> run_suite(VerifyContext& ctx, const std::string& name) {
    auto it = suites().find(name);
    if (it == suites().end()) throw std::invalid_argument("unknown verify suite: " + name);
    return it->second(ctx);
}

std::vector<CheckResult> run_all(VerifyContext& ctx) {
    std::vector<CheckResult> out;
    for (const auto& name : suite_names()) {
        auto part = run_suite(ctx, name);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace ocat
