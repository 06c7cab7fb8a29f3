#include "ocat/resolution.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ocat {

namespace {

std::vector<Perm> all_perms(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Perm> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

struct SubquotientPiece {
    Space space;
    SymAction sym;
};

// homology at the middle of U --in--> V --out--> W with the S-action on V
SubquotientPiece homology_piece(const Space& vspace, const SymAction& vsym, const LinMap& out,
                                const LinMap& in) {
    auto [kspace, incl] = kernel(out, vspace);
    Echelon kech(incl);
    LinMap img(kspace.dim(), in.cols());
    for (int j = 0; j < in.cols(); ++j) {
        auto sol = kech.solve(in.col(j));
        if (!sol) throw std::logic_error("homology: not a complex (image escapes kernel)");
        img.col(j) = *sol;
    }
    Echelon iech(img);
    const auto& piv = iech.pivot_rows();
    std::vector<int> keep;
    std::size_t p = 0;
    for (int i = 0; i < kspace.dim(); ++i) {
        if (p < piv.size() && piv[p] == i) {
            ++p;
        } else {
            keep.push_back(i);
        }
    }
    SubquotientPiece piece;
    std::vector<int> pos(kspace.dim(), -1);
    for (std::size_t j = 0; j < keep.size(); ++j) {
        piece.space.labels.push_back("h" + std::to_string(j));
        pos[keep[j]] = static_cast<int>(j);
    }
    LinMap proj(static_cast<int>(keep.size()), kspace.dim());
    for (int i = 0; i < kspace.dim(); ++i)
        proj.col(i) = iech.reduce(SVec::unit(i)).mapped([&](int r) { return pos[r]; });
    LinMap sect(kspace.dim(), static_cast<int>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) sect.set(keep[j], static_cast<int>(j), Rat(1));

    piece.sym.n = vsym.n;
    piece.sym.dim = piece.space.dim();
    for (const auto& g : vsym.gens) {
        LinMap gk(kspace.dim(), kspace.dim());
        for (int j = 0; j < kspace.dim(); ++j) {
            auto sol = kech.solve(g.apply(incl.col(j)));
            if (!sol) throw std::logic_error("homology: action does not preserve kernel");
            gk.col(j) = *sol;
        }
        piece.sym.gens.push_back(proj.compose(gk).compose(sect));
    }
    return piece;
}

// homology of a complex of modules at position k (d_k: T[k] -> T[k-1]); the
// map out of T[0] is `out0` (the augmentation for the kappa complex, zero for
// the plain complex); index k = 0..K
SigmaModule complex_homology(const std::vector<ModulePtr>& terms,
                             const std::vector<ModuleMorphism>& diffs, const LinMap* out0,
                             int k, int nmax) {
    SigmaModule h;
    h.N = nmax;
    for (int n = 0; n <= nmax; ++n) {
        LinMap out = k == 0 ? (out0 ? out0[n] : LinMap::zero(0, terms[0]->dim(n)))
                            : diffs[k - 1].maps[n];
        LinMap in = k + 1 < static_cast<int>(terms.size())
                        ? diffs[k].maps[n]
                        : LinMap::zero(terms[k]->dim(n), 0);
        auto piece = homology_piece(terms[k]->spaces[n], terms[k]->sym[n], out, in);
        h.spaces.push_back(std::move(piece.space));
        h.sym.push_back(std::move(piece.sym));
    }
    return h;
}

}  // namespace

bool sigma_isomorphic(const SigmaModule& a, const SigmaModule& b) {
    if (a.N != b.N) return false;
    for (int n = 0; n <= a.N; ++n) {
        if (a.dim(n) != b.dim(n)) return false;
        if (n <= 5 && a.dim(n) > 0) {
            for (const auto& p : all_perms(n)) {
                Rat ta(0), tb(0);
                LinMap ma = a.sym[n].act(p), mb = b.sym[n].act(p);
                for (int i = 0; i < a.dim(n); ++i) {
                    ta += ma.at(i, i);
                    tb += mb.at(i, i);
                }
                if (!(ta == tb)) return false;
            }
        }
    }
    return true;
}

IndSummand induced_projective(CatPtr cat, int s, const Space& mspace, const SymAction& maction,
                              int N) {
    IndSummand sum;
    sum.s = s;
    sum.mspace = mspace;
    sum.maction = maction;
    const int dm = mspace.dim();

    auto mod = std::make_shared<TruncatedModule>();
    mod->cat = cat;
    mod->name = "Ind(" + std::to_string(s) + ")";
    mod->N = N;
    mod->full_equal_arity = false;

    sum.co.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        const auto& hs = cat->hom(s, n);
        int dc = hs.dim();
        Space big = Space::anonymous(dc * dm, "t");
        std::vector<LinMap> diag;
        for (int a = 0; a + 1 < s; ++a) {
            CatMorphism t = cat->perm_morphism(perm_transposition(s, a, a + 1));
            LinMap rg(dc, dc);
            for (int j = 0; j < dc; ++j)
                rg.col(j) = cat->coords(cat->compose(cat->single(hs.basis[j]), t));
            diag.push_back(kron(rg, maction.gens[a]));
        }
        sum.co[n] = coinvariants_with_section(big, diag);
        Space sp;
        for (int j = 0; j < sum.co[n].space.dim(); ++j)
            sp.labels.push_back("i" + std::to_string(j));
        mod->spaces.push_back(std::move(sp));
    }
    for (int n = 0; n <= N; ++n) {
        SymAction sy;
        sy.n = n;
        sy.dim = mod->dim(n);
        const auto& hs = cat->hom(s, n);
        for (int a = 0; a + 1 < n; ++a) {
            CatMorphism t = cat->perm_morphism(perm_transposition(n, a, a + 1));
            LinMap lg(hs.dim(), hs.dim());
            for (int j = 0; j < hs.dim(); ++j)
                lg.col(j) = cat->coords(cat->compose(t, cat->single(hs.basis[j])));
            sy.gens.push_back(
                sum.co[n].proj.compose(kron(lg, LinMap::identity(dm))).compose(sum.co[n].sect));
        }
        mod->sym.push_back(std::move(sy));
    }
    for (int m = 0; m <= N; ++m) {
        for (int n = 0; n <= N; ++n) {
            if (m <= n) continue;  // reduced; equal arity via sym
            const auto& hmn = cat->hom(m, n);
            const auto& dom = cat->hom(s, m);
            if (hmn.dim() == 0 || dom.dim() == 0) continue;
            std::vector<LinMap> mats;
            mats.reserve(hmn.dim());
            for (const auto& xi : hmn.basis) {
                LinMap post(cat->hom(s, n).dim(), dom.dim());
                for (int j = 0; j < dom.dim(); ++j)
                    post.col(j) =
                        cat->coords(cat->compose(cat->single(xi), cat->single(dom.basis[j])));
                mats.push_back(
                    sum.co[n].proj.compose(kron(post, LinMap::identity(dm))).compose(sum.co[m].sect));
            }
            mod->act[{m, n}] = std::move(mats);
        }
    }
    sum.module = mod;
    const auto& hss = cat->hom(s, s);
    CatMorphism id = cat->identity(s);
    int id_idx = hss.index.at(id.terms.begin()->first);
    sum.unit_inj = LinMap(mod->dim(s), dm);
    for (int x = 0; x < dm; ++x) sum.unit_inj.col(x) = sum.co[s].proj.col(id_idx * dm + x);
    return sum;
}

ModuleMorphism ind_eval(const IndSummand& sum, ModulePtr f, const LinMap& u) {
    const CatPtr& cat = f->cat;
    for (int a = 0; a + 1 < sum.s; ++a) {
        if (!(u.compose(sum.maction.gens[a]) == f->sym[sum.s].gens[a].compose(u)))
            throw std::invalid_argument("ind_eval: generator map is not equivariant");
    }
    int N = std::min(sum.module->N, f->N);
    const int dm = sum.mspace.dim();
    std::vector<LinMap> maps;
    for (int n = 0; n <= N; ++n) {
        const auto& hs = cat->hom(sum.s, n);
        LinMap ev(f->dim(n), hs.dim() * dm);
        for (int j = 0; j < hs.dim(); ++j) {
            LinMap axn = f->action_of_basis(sum.s, n, j);
            for (int x = 0; x < dm; ++x) ev.col(j * dm + x) = axn.apply(u.col(x));
        }
        maps.push_back(ev.compose(sum.co[n].sect));
    }
    return make_morphism(truncate(sum.module, N), truncate(f, N), std::move(maps));
}

Cover projective_cover(ModulePtr target) {
    const CatPtr& cat = target->cat;
    int N = target->N;
    int top = -1;
    for (int n = N; n >= 0; --n) {
        if (target->dim(n) > 0) {
            top = n;
            break;
        }
    }
    Cover cov;
    if (top < 0) {
        cov.module = zero_module(cat, N);
        cov.onto = zero_morphism(cov.module, target);
        return cov;
    }
    IndSummand first = induced_projective(cat, top, target->spaces[top], target->sym[top], N);
    LinMap u_id = LinMap::identity(target->dim(top));
    ModuleMorphism e1 = ind_eval(first, target, u_id);
    SubQuotient coker = cokernel_module(e1);
    bool coker_zero = true;
    for (int n = 0; n <= N; ++n)
        if (coker.module->dim(n) > 0) coker_zero = false;

    std::vector<IndSummand> summands{first};
    std::vector<ModuleMorphism> blocks{e1};
    if (!coker_zero) {
        Cover sub = projective_cover(coker.module);
        // lift each summand map through target ->> coker
        for (std::size_t j = 0; j < sub.summands.size(); ++j) {
            const IndSummand& S = sub.summands[j];
            ModuleMorphism inj =
                sum_injection(/*parts*/ [&] {
                    std::vector<ModulePtr> ps;
                    for (const auto& t : sub.summands) ps.push_back(t.module);
                    return ps;
                }(), sub.module, static_cast<int>(j));
            // u_j : M_j -> coker(s_j)
            LinMap u_j = sub.onto.maps[S.s].compose(inj.maps[S.s]).compose(S.unit_inj);
            // raw lift through the projection
            Echelon ech(coker.map.maps[S.s]);
            LinMap raw(target->dim(S.s), u_j.cols());
            for (int x = 0; x < u_j.cols(); ++x) {
                auto sol = ech.solve(u_j.col(x));
                if (!sol) throw std::logic_error("projective_cover: lift failed");
                raw.col(x) = *sol;
            }
            // equivariant average over S_s
            auto perms = all_perms(S.s);
            LinMap avg = LinMap::zero(target->dim(S.s), u_j.cols());
            for (const auto& p : perms) {
                LinMap term = target->sym[S.s].act(p).compose(raw).compose(
                    S.maction.act(perm_inverse(p)));
                avg = avg + term;
            }
            avg = avg.scaled(Rat(1) / Rat(static_cast<long>(perms.size())));
            blocks.push_back(ind_eval(S, target, avg));
            summands.push_back(S);
        }
    }
    std::vector<ModulePtr> parts;
    for (const auto& s : summands) parts.push_back(s.module);
    cov.module = parts.size() == 1 ? parts[0] : direct_sum(parts);
    cov.summands = summands;
    std::vector<LinMap> maps;
    for (int n = 0; n <= N; ++n) {
        LinMap m(target->dim(n), cov.module->dim(n));
        int off = 0;
        for (std::size_t j = 0; j < summands.size(); ++j) {
            const LinMap& b = blocks[j].maps[n];
            for (int c = 0; c < b.cols(); ++c) m.col(off + c) = b.col(c);
            off += b.cols();
        }
        maps.push_back(std::move(m));
    }
    cov.onto = make_morphism(cov.module, target, std::move(maps));
    // surjectivity per arity
    for (int n = 0; n <= N; ++n) {
        if (rank_of(cov.onto.maps[n]) != target->dim(n))
            throw std::logic_error("projective_cover: not surjective at arity " +
                                   std::to_string(n));
    }
    return cov;
}

ChainComplex projective_resolution(ModulePtr f, int support_bound) {
    const OperadPtr& O = f->operad();
    if (!O->reduced() || !O->unital_arity_one())
        throw std::invalid_argument(
            "projective_resolution: operad must be reduced with O(1) = k (hypothesis flags)");
    for (int n = support_bound + 1; n <= f->N; ++n) {
        if (f->dim(n) != 0)
            throw std::invalid_argument("projective_resolution: module not supported <= bound");
    }
    ChainComplex c;
    c.target = f;
    Cover cov = projective_cover(f);
    c.terms.push_back(cov.module);
    c.aug = cov.onto;
    ModuleMorphism cur_onto = cov.onto;
    while (true) {
        SubQuotient k = kernel_module(cur_onto);
        bool zero = true;
        for (int n = 0; n <= k.module->N; ++n)
            if (k.module->dim(n) > 0) zero = false;
        if (zero) break;
        Cover next = projective_cover(k.module);
        c.terms.push_back(next.module);
        c.diffs.push_back(compose(k.map, next.onto));
        cur_onto = next.onto;
        if (static_cast<int>(c.terms.size()) > support_bound + 2)
            throw std::logic_error("projective_resolution: length bound exceeded");
    }
    return c;
}

bool resolution_is_valid(const ChainComplex& c, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    int N = c.target->N;
    for (std::size_t k = 0; k < c.diffs.size(); ++k) {
        const ModuleMorphism& upper = c.diffs[k];
        const ModuleMorphism& lower = k == 0 ? c.aug : c.diffs[k - 1];
        for (int n = 0; n <= N; ++n) {
            if (!lower.maps[n].compose(upper.maps[n]).is_zero())
                return fail("d.d nonzero at degree " + std::to_string(k));
        }
    }
    // acyclicity of the augmented complex by rank bookkeeping
    for (int n = 0; n <= N; ++n) {
        // at F: aug surjective
        if (rank_of(c.aug.maps[n]) != c.target->dim(n)) return fail("augmentation not surjective");
        for (std::size_t k = 0; k < c.terms.size(); ++k) {
            const LinMap& out = k == 0 ? c.aug.maps[n] : c.diffs[k - 1].maps[n];
            int rk_in = k < c.diffs.size() ? rank_of(c.diffs[k].maps[n]) : 0;
            if (rank_of(out) + rk_in != c.terms[k]->dim(n))
                return fail("augmented complex not exact at degree " + std::to_string(k) +
                            ", arity " + std::to_string(n));
        }
    }
    return true;
}

DerivedReport derived_mu(ModulePtr f, const OperadElement& mu, const ChainComplex& res) {
    DerivedReport rep;
    int N = f->N - 1;  // everything after reflection lives at this bound
    const int K = res.length();

    // route (a): apply the reflection to the resolution and take homology
    std::vector<SubQuotient> refl;
    for (const auto& p : res.terms) refl.push_back(coker_mu(p, mu));
    std::vector<ModulePtr> terms_a;
    for (const auto& r : refl) terms_a.push_back(r.module);
    std::vector<ModuleMorphism> diffs_a;
    for (int k = 0; k < K; ++k)
        diffs_a.push_back(reflection_functor(res.diffs[k], refl[k + 1], refl[k]));
    for (int i = 0; i <= K; ++i) rep.L.push_back(complex_homology(terms_a, diffs_a, nullptr, i, N));

    // route (b): kappa of the augmented complex
    std::vector<SubQuotient> kap;
    for (const auto& p : res.terms) kap.push_back(ker_mu(p, mu));
    SubQuotient kf = ker_mu(f, mu);
    std::vector<ModuleMorphism> kdiffs;
    for (int k = 0; k < K; ++k) kdiffs.push_back(kappa_functor(res.diffs[k], kap[k + 1], kap[k]));
    ModuleMorphism kaug = kappa_functor(res.aug, kap[0], kf);

    // H_{-1} = coker(kappa P0 -> kappa F) gives L_1
    {
        SigmaModule l1;
        l1.N = N;
        for (int n = 0; n <= N; ++n) {
            auto piece = homology_piece(kf.module->spaces[n], kf.module->sym[n],
                                        LinMap::zero(0, kf.module->dim(n)), kaug.maps[n]);
            l1.spaces.push_back(std::move(piece.space));
            l1.sym.push_back(std::move(piece.sym));
        }
        rep.L_kappa.push_back(std::move(l1));  // index 0 <-> L_1
    }
    std::vector<ModulePtr> terms_b;
    for (const auto& kq : kap) terms_b.push_back(kq.module);
    for (int i = 2; i <= K + 2; ++i) {
        int deg = i - 2;
        if (deg > K) break;
        std::vector<LinMap> out0 = kaug.maps;
        rep.L_kappa.push_back(complex_homology(terms_b, kdiffs, out0.data(), deg, N));
    }

    // cross-check: route (a) defines L_i = 0 for i > K
    rep.methods_agree = true;
    for (std::size_t idx = 0; idx < rep.L_kappa.size(); ++idx) {
        int i = static_cast<int>(idx) + 1;
        const SigmaModule& b = rep.L_kappa[idx];
        if (i <= K) {
            if (!sigma_isomorphic(rep.L[i], b)) {
                rep.methods_agree = false;
                rep.detail += "L_" + std::to_string(i) + " differs between routes; ";
            }
        } else {
            for (int n = 0; n <= N; ++n) {
                if (b.dim(n) != 0) {
                    rep.methods_agree = false;
                    rep.detail += "kappa route nonzero beyond the resolution length; ";
                    break;
                }
            }
        }
    }

    SubQuotient f_refl = coker_mu(f, mu);
    rep.l0_is_reflection = true;
    for (int n = 0; n <= N; ++n) {
        if (rep.L[0].dim(n) != f_refl.module->dim(n)) rep.l0_is_reflection = false;
    }

    // H_*(kappa P_aug) = 0 for * >= N_support - 1
    rep.kappa_vanishing = true;
    int support = -1;
    for (int n = 0; n <= f->N; ++n)
        if (f->dim(n) > 0) support = n;
    for (std::size_t j = 1; j < rep.L_kappa.size(); ++j) {
        int star = static_cast<int>(j) - 1;  // homological degree in kappa P_aug
        if (support >= 1 && star >= support - 1) {
            for (int n = 0; n <= N; ++n)
                if (rep.L_kappa[j].dim(n) != 0) rep.kappa_vanishing = false;
        }
    }
    return rep;
}

}  // namespace ocat
