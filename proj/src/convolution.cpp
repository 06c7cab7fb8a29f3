#include "ocat/convolution.hpp"

#include <algorithm>
#include <sstream>

namespace ocat {

namespace {

std::vector<std::vector<int>> all_subsets(int n) {
    std::vector<std::vector<int>> out;
    for (int k = 0; k <= n; ++k)
        for (auto& s : subsets_of_size(n, k)) out.push_back(s);
    return out;
}

std::vector<int> complement_of(const std::vector<int>& c, int n) {
    std::vector<int> out;
    std::size_t p = 0;
    for (int i = 0; i < n; ++i) {
        if (p < c.size() && c[p] == i) {
            ++p;
        } else {
            out.push_back(i);
        }
    }
    return out;
}

}  // namespace

int ConvModule::comp_index(int n, const std::vector<int>& c) const {
    const auto& list = comps[n];
    for (std::size_t i = 0; i < list.size(); ++i)
        if (list[i] == c) return static_cast<int>(i);
    throw std::logic_error("ConvModule: component not found");
}

ModulePtr unit_module(CatPtr cat, int N) {
    SigmaModule m;
    m.N = N;
    for (int n = 0; n <= N; ++n) {
        m.spaces.push_back(n == 0 ? Space({"1"}) : Space());
        m.sym.push_back(SymAction::trivial(n, n == 0 ? 1 : 0));
    }
    return alpha_embed(cat, m);
}

ConvModule convolution(ModulePtr f, ModulePtr g) {
    const CatPtr& cat = f->cat;
    if (!cat->operad()->reduced() || !cat->operad()->unital_arity_one())
        throw std::invalid_argument("convolution: operad must be reduced with O(1) = k");
    if (g->cat->operad() != cat->operad())
        throw std::invalid_argument("convolution: mismatched operads");
    int N = std::min(f->N, g->N);
    ConvModule cm;
    cm.f = truncate(f, N);
    cm.g = truncate(g, N);

    auto mod = std::make_shared<TruncatedModule>();
    mod->cat = cat;
    mod->name = "(" + f->name + ")o(" + g->name + ")";
    mod->N = N;
    mod->full_equal_arity = false;

    cm.comps.resize(N + 1);
    cm.offsets.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        cm.comps[n] = all_subsets(n);
        Space sp;
        int off = 0;
        for (const auto& c : cm.comps[n]) {
            cm.offsets[n].push_back(off);
            int k = static_cast<int>(c.size());
            std::ostringstream cs;
            cs << "{";
            for (std::size_t i = 0; i < c.size(); ++i) cs << (i ? "," : "") << c[i] + 1;
            cs << "}";
            for (const auto& la : cm.f->spaces[k].labels)
                for (const auto& lb : cm.g->spaces[n - k].labels)
                    sp.labels.push_back(cs.str() + ":" + la + "*" + lb);
            off += cm.f->dim(k) * cm.g->dim(n - k);
        }
        cm.offsets[n].push_back(off);
        mod->spaces.push_back(std::move(sp));
    }

    // symmetric action
    for (int n = 0; n <= N; ++n) {
        SymAction s;
        s.n = n;
        s.dim = mod->dim(n);
        for (int a = 0; a + 1 < n; ++a) {
            LinMap gmat(s.dim, s.dim);
            for (std::size_t ci = 0; ci < cm.comps[n].size(); ++ci) {
                const auto& c = cm.comps[n][ci];
                int k = static_cast<int>(c.size());
                int df = cm.f->dim(k), dg = cm.g->dim(n - k);
                if (df * dg == 0) continue;
                bool has_a = std::binary_search(c.begin(), c.end(), a);
                bool has_b = std::binary_search(c.begin(), c.end(), a + 1);
                if (has_a == has_b) {
                    // component fixed; block action of the adjacent
                    // transposition on the matching factor
                    LinMap block;
                    if (has_a) {
                        int r = static_cast<int>(std::lower_bound(c.begin(), c.end(), a) -
                                                 c.begin());
                        block = kron(cm.f->sym[k].gens[r], LinMap::identity(dg));
                    } else {
                        auto comp = complement_of(c, n);
                        int r = static_cast<int>(
                            std::lower_bound(comp.begin(), comp.end(), a) - comp.begin());
                        block = kron(LinMap::identity(df), cm.g->sym[n - k].gens[r]);
                    }
                    for (int j = 0; j < block.cols(); ++j)
                        for (const auto& [i, v] : block.col(j).entries())
                            gmat.set(cm.offsets[n][ci] + i, cm.offsets[n][ci] + j, v);
                } else {
                    std::vector<int> moved = c;
                    for (int& x : moved) {
                        if (x == a)
                            x = a + 1;
                        else if (x == a + 1)
                            x = a;
                    }
                    std::sort(moved.begin(), moved.end());
                    int cj = cm.comp_index(n, moved);
                    for (int j = 0; j < df * dg; ++j)
                        gmat.set(cm.offsets[n][cj] + j, cm.offsets[n][ci] + j, Rat(1));
                }
            }
            s.gens.push_back(std::move(gmat));
        }
        mod->sym.push_back(std::move(s));
    }

    // action of basis morphisms: split-or-zero rule
    for (int m = 0; m <= N; ++m) {
        for (int n = 0; n <= N; ++n) {
            if (m < n) continue;  // reduced
            if (m == n) continue;  // bijections via sym
            const auto& hmn = cat->hom(m, n);
            if (hmn.dim() == 0 || mod->dim(m) == 0) continue;
            std::vector<LinMap> mats;
            mats.reserve(hmn.dim());
            for (const auto& xi : hmn.basis) {
                LinMap a(mod->dim(n), mod->dim(m));
                std::vector<std::vector<int>> fib(n);
                for (int x = 0; x < m; ++x) fib[xi.f[x]].push_back(x);
                for (std::size_t ci = 0; ci < cm.comps[m].size(); ++ci) {
                    const auto& c = cm.comps[m][ci];
                    int k = static_cast<int>(c.size());
                    if (cm.f->dim(k) * cm.g->dim(m - k) == 0) continue;
                    // purity: every fibre inside c or inside the complement
                    bool pure = true;
                    std::vector<int> cprime;
                    for (int j = 0; j < n && pure; ++j) {
                        bool inside = std::binary_search(c.begin(), c.end(), fib[j][0]);
                        for (int x : fib[j]) {
                            if (std::binary_search(c.begin(), c.end(), x) != inside) {
                                pure = false;
                                break;
                            }
                        }
                        if (pure && inside) cprime.push_back(j);
                    }
                    if (!pure) continue;
                    auto comp_m = complement_of(c, m);
                    auto comp_n = complement_of(cprime, n);
                    // collapse xi to the F- and G-restricted basis morphisms
                    auto collapse = [&](const std::vector<int>& srcs,
                                        const std::vector<int>& tgts) {
                        CatElt r;
                        r.f.resize(srcs.size());
                        for (std::size_t x = 0; x < srcs.size(); ++x) {
                            int j = xi.f[srcs[x]];
                            r.f[x] = static_cast<int>(
                                std::lower_bound(tgts.begin(), tgts.end(), j) - tgts.begin());
                        }
                        for (int j : tgts) r.labels.push_back(xi.labels[j]);
                        return r;
                    };
                    CatElt xf = collapse(c, cprime);
                    CatElt xg = collapse(comp_m, comp_n);
                    int kp = static_cast<int>(cprime.size());
                    LinMap af = cm.f->action_of_basis(k, kp, cat->hom(k, kp).index.at(xf));
                    LinMap ag = cm.g->action_of_basis(m - k, n - kp,
                                                      cat->hom(m - k, n - kp).index.at(xg));
                    LinMap block = kron(af, ag);
                    int cj = cm.comp_index(n, cprime);
                    for (int j = 0; j < block.cols(); ++j)
                        for (const auto& [i, v] : block.col(j).entries())
                            a.set(cm.offsets[n][cj] + i, cm.offsets[m][ci] + j, v);
                }
                mats.push_back(std::move(a));
            }
            mod->act[{m, n}] = std::move(mats);
        }
    }
    cm.module = mod;
    return cm;
}

ModuleMorphism conv_morphism(const ConvModule& src, const ConvModule& tgt,
                             const ModuleMorphism& phi, const ModuleMorphism& psi) {
    int N = std::min(src.module->N, tgt.module->N);
    std::vector<LinMap> maps;
    for (int n = 0; n <= N; ++n) {
        LinMap m(tgt.module->dim(n), src.module->dim(n));
        for (std::size_t ci = 0; ci < src.comps[n].size(); ++ci) {
            const auto& c = src.comps[n][ci];
            int k = static_cast<int>(c.size());
            LinMap block = kron(phi.maps[k], psi.maps[n - k]);
            int cj = tgt.comp_index(n, c);
            for (int j = 0; j < block.cols(); ++j)
                for (const auto& [i, v] : block.col(j).entries())
                    m.set(tgt.offsets[n][cj] + i, src.offsets[n][ci] + j, v);
        }
        maps.push_back(std::move(m));
    }
    return make_morphism(truncate(src.module, N), truncate(tgt.module, N), std::move(maps));
}

DeltaConvSplit delta_conv_split(ModulePtr f, ModulePtr g) {
    DeltaConvSplit sp;
    int N = std::min(f->N, g->N);
    ModulePtr ftr = truncate(f, N), gtr = truncate(g, N);
    sp.conv_fg = convolution(ftr, gtr);
    sp.source = delta_module(sp.conv_fg.module);
    sp.left = convolution(delta_module(ftr), gtr);
    sp.right = convolution(ftr, delta_module(gtr));
    sp.target = direct_sum({sp.left.module, sp.right.module});

    std::vector<LinMap> maps;
    for (int n = 0; n + 1 <= N; ++n) {
        LinMap m(sp.target->dim(n), sp.source->dim(n));
        int left_total = sp.left.module->dim(n);
        // source basis: components c of (F⊙G)(n+1)
        for (std::size_t ci = 0; ci < sp.conv_fg.comps[n + 1].size(); ++ci) {
            const auto& c = sp.conv_fg.comps[n + 1][ci];
            int k = static_cast<int>(c.size());
            int df = sp.conv_fg.f->dim(k), dg = sp.conv_fg.g->dim(n + 1 - k);
            if (df * dg == 0) continue;
            bool last_in_c = !c.empty() && c.back() == n;
            if (last_in_c) {
                std::vector<int> c0(c.begin(), c.end() - 1);
                int cj = sp.left.comp_index(n, c0);
                // delta F(|c0|) = F(k); coordinates carry over verbatim
                for (int j = 0; j < df * dg; ++j)
                    m.set(sp.left.offsets[n][cj] + j,
                          sp.conv_fg.offsets[n + 1][ci] + j, Rat(1));
            } else {
                int cj = sp.right.comp_index(n, c);
                for (int j = 0; j < df * dg; ++j)
                    m.set(left_total + sp.right.offsets[n][cj] + j,
                          sp.conv_fg.offsets[n + 1][ci] + j, Rat(1));
            }
        }
        maps.push_back(std::move(m));
    }
    sp.iso = make_morphism(sp.source, sp.target, std::move(maps));
    return sp;
}

ConvMuReport conv_mu_checks(ModulePtr f, ModulePtr g, const OperadElement& mu) {
    ConvMuReport rep;
    int N = std::min(f->N, g->N);
    if (N < 1) {
        rep.sum_rule = rep.reflection_iso = true;
        rep.detail = "bound too small; nothing to check";
        return rep;
    }
    ModulePtr ftr = truncate(f, N), gtr = truncate(g, N);

    // (1) the sum rule through the delta-splitting isomorphism
    DeltaConvSplit sp = delta_conv_split(ftr, gtr);
    auto raw = mu_tilde_raw(sp.conv_fg.module, mu);

    ModuleMorphism mu_f = mu_tilde(ftr, mu, false);
    ModuleMorphism mu_g = mu_tilde(gtr, mu, false);
    // mu_F ⊙ id_G : (delta F ⊙ G)|N-1 -> (F ⊙ G)|N-1 and its mirror
    ConvModule conv_small = convolution(truncate(ftr, N - 1), truncate(gtr, N - 1));
    ConvModule left_small = convolution(mu_f.src, truncate(gtr, N - 1));
    ConvModule right_small = convolution(truncate(ftr, N - 1), mu_g.src);
    ModuleMorphism a1 = conv_morphism(left_small, conv_small, mu_f,
                                      identity_morphism(truncate(gtr, N - 1)));
    ModuleMorphism a2 = conv_morphism(right_small, conv_small,
                                      identity_morphism(truncate(ftr, N - 1)), mu_g);

    rep.sum_rule = true;
    for (int n = 0; n + 1 <= N && rep.sum_rule; ++n) {
        // source blocks through the iso: left part feeds a1, right part a2
        // left/right at bound N-1 coincide with sp.left / sp.right there
        LinMap lhs = raw[n];
        int left_total = sp.left.module->dim(n);
        LinMap stacked(conv_small.module->dim(n), sp.target->dim(n));
        for (int j = 0; j < left_total; ++j) stacked.col(j) = a1.maps[n].col(j);
        for (int j = 0; j < sp.right.module->dim(n); ++j)
            stacked.col(left_total + j) = a2.maps[n].col(j);
        LinMap rhs = stacked.compose(sp.iso.maps[n]);
        if (!(lhs == rhs)) {
            rep.sum_rule = false;
            rep.detail = "sum rule fails at arity " + std::to_string(n);
        }
    }

    // (2) (F⊙G)^mu -> F^mu ⊙ G^mu is an isomorphism
    SubQuotient refl_fg = coker_mu(sp.conv_fg.module, mu);
    SubQuotient refl_f = coker_mu(ftr, mu);
    SubQuotient refl_g = coker_mu(gtr, mu);
    ConvModule conv_refl = convolution(refl_f.module, refl_g.module);
    ModuleMorphism proj_pair =
        conv_morphism(conv_small, conv_refl, refl_f.map, refl_g.map);
    // factor through (F⊙G) ->> (F⊙G)^mu; conv_small is (F⊙G) truncated
    ModuleMorphism through = make_morphism(refl_fg.map.src, conv_refl.module, proj_pair.maps);
    ModuleMorphism h = factor_through_reflection(through, refl_fg);
    rep.reflection_iso = true;
    for (int n = 0; n + 1 <= N; ++n) {
        int rk = rank_of(h.maps[n]);
        if (!(rk == refl_fg.module->dim(n) && rk == conv_refl.module->dim(n))) {
            rep.reflection_iso = false;
            rep.detail += (rep.detail.empty() ? "" : "; ") + std::string("reflection map not iso at arity ") +
                          std::to_string(n);
        }
    }
    return rep;
}

}  // namespace ocat
