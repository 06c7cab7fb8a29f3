#include "ocat/reflection.hpp"

#include <algorithm>
#include <sstream>

namespace ocat {

std::vector<LinMap> mu_tilde_raw(ModulePtr f, const OperadElement& mu) {
    std::vector<LinMap> maps;
    for (int n = 0; n + 1 <= f->N; ++n) {
        if (n == 0) {
            maps.push_back(LinMap::zero(f->dim(0), f->dim(1)));  // empty sum
        } else {
            maps.push_back(f->action(f->cat->mu_sum(mu, n)));
        }
    }
    return maps;
}

ModuleMorphism mu_tilde(ModulePtr f, const OperadElement& mu, bool check_leibniz) {
    if (check_leibniz) {
        int max_gen_arity = 2;
        if (f->operad()->kind() == Operad::Kind::Presented)
            for (const auto& g : f->operad()->presentation().gens)
                max_gen_arity = std::max(max_gen_arity, g.arity);
        auto rep = leibniz_check(*f->cat, mu, LeibnizMode::Generators,
                                 std::min(f->operad()->nmax() - 1, max_gen_arity));
        if (!rep.holds) throw LeibnizFailure(*rep.witness_nu, *rep.defect);
    }
    return make_morphism(delta_module(f), truncate(f, f->N - 1), mu_tilde_raw(f, mu));
}

bool is_in_mu(ModulePtr f, const OperadElement& mu) {
    for (const auto& m : mu_tilde_raw(f, mu))
        if (!m.is_zero()) return false;
    return true;
}

std::optional<NaturalityViolation> naturality_violation(ModulePtr f, const OperadElement& mu) {
    auto raw = mu_tilde_raw(f, mu);
    ModulePtr df = delta_module(f);
    const CatCat& cat = *f->cat;
    int N = f->N - 1;
    for (int m = 0; m <= N; ++m) {
        for (int n = 0; n <= N; ++n) {
            if (cat.operad()->reduced() && m < n) continue;
            const auto& hs = cat.hom(m, n);
            for (int i = 0; i < hs.dim(); ++i) {
                LinMap lhs = f->action_of_basis(m, n, i).compose(raw[m]);
                LinMap rhs = raw[n].compose(df->action_of_basis(m, n, i));
                if (!(lhs == rhs))
                    return NaturalityViolation{m, n, hs.basis[i], std::move(lhs), std::move(rhs)};
            }
        }
    }
    return std::nullopt;
}

SubQuotient coker_mu(ModulePtr f, const OperadElement& mu) {
    return cokernel_module(mu_tilde(f, mu));
}

SubQuotient ker_mu(ModulePtr f, const OperadElement& mu) {
    return kernel_module(mu_tilde(f, mu));
}

ModuleMorphism delta_morphism(const ModuleMorphism& g) {
    std::vector<LinMap> maps(g.maps.begin() + 1, g.maps.end());
    return make_morphism(delta_module(g.src), delta_module(g.tgt), std::move(maps));
}

ModuleMorphism kappa_functor(const ModuleMorphism& g, const SubQuotient& ka,
                             const SubQuotient& kb) {
    ModuleMorphism dg = delta_morphism(g);
    std::vector<LinMap> maps;
    for (int n = 0; n <= ka.module->N; ++n) {
        Echelon ech(kb.map.maps[n]);
        LinMap out(kb.module->dim(n), ka.module->dim(n));
        for (int j = 0; j < ka.module->dim(n); ++j) {
            SVec img = dg.maps[n].apply(ka.map.maps[n].col(j));
            auto sol = ech.solve(img);
            if (!sol) throw std::logic_error("kappa_functor: image escapes the kernel");
            out.col(j) = *sol;
        }
        maps.push_back(std::move(out));
    }
    return make_morphism(ka.module, kb.module, std::move(maps));
}

ModuleMorphism reflection_functor(const ModuleMorphism& g, const SubQuotient& ca,
                                  const SubQuotient& cb) {
    std::vector<LinMap> maps;
    int N = ca.module->N;
    for (int n = 0; n <= N; ++n) {
        // proj_b . g . section_a ; the section of a cokernel projection is the
        // coordinate inclusion of the kept rows, recovered by solving
        Echelon ech(ca.map.maps[n]);  // projection: F(n) ->> coker(n)
        LinMap out(cb.module->dim(n), ca.module->dim(n));
        for (int j = 0; j < ca.module->dim(n); ++j) {
            auto pre = ech.solve(SVec::unit(j));
            if (!pre) throw std::logic_error("reflection_functor: projection not surjective");
            out.col(j) = cb.map.maps[n].apply(g.maps[n].apply(*pre));
        }
        maps.push_back(std::move(out));
    }
    return make_morphism(ca.module, cb.module, std::move(maps));
}

ShortExact make_short_exact(ModuleMorphism incl, ModuleMorphism proj) {
    if (incl.tgt != proj.src) throw std::invalid_argument("make_short_exact: middle mismatch");
    ShortExact ses{incl.src, incl.tgt, proj.tgt, incl, proj};
    for (int n = 0; n <= std::min(incl.N, proj.N); ++n) {
        int ri = rank_of(incl.maps[n]);
        int rp = rank_of(proj.maps[n]);
        bool ok = ri == ses.f1->dim(n) && rp == ses.f3->dim(n) &&
                  proj.maps[n].compose(incl.maps[n]).is_zero() &&
                  ri + rp == ses.f2->dim(n);
        if (!ok)
            throw std::invalid_argument("make_short_exact: sequence not exact at arity " +
                                        std::to_string(n));
    }
    return ses;
}

SixTermReport six_term(const ShortExact& ses, const OperadElement& mu) {
    SixTermReport rep;
    auto k1 = ker_mu(ses.f1, mu), k2 = ker_mu(ses.f2, mu), k3 = ker_mu(ses.f3, mu);
    auto c1 = coker_mu(ses.f1, mu), c2 = coker_mu(ses.f2, mu), c3 = coker_mu(ses.f3, mu);
    ModuleMorphism ka = kappa_functor(ses.incl, k1, k2);
    ModuleMorphism kb = kappa_functor(ses.proj, k2, k3);
    ModuleMorphism cc1 = reflection_functor(ses.incl, c1, c2);
    ModuleMorphism cc2 = reflection_functor(ses.proj, c2, c3);

    // connecting map kappa F3 -> F1^mu by the snake construction
    auto raw2 = mu_tilde_raw(ses.f2, mu);
    int N = ses.f1->N - 1;
    std::vector<LinMap> conn;
    for (int n = 0; n <= N; ++n) {
        Echelon lift_p(ses.proj.maps[n + 1]);
        Echelon lift_i(ses.incl.maps[n]);
        LinMap out(c1.module->dim(n), k3.module->dim(n));
        for (int j = 0; j < k3.module->dim(n); ++j) {
            SVec w = k3.map.maps[n].col(j);          // in delta F3(n) = F3(n+1)
            auto x = lift_p.solve(w);                // in F2(n+1)
            if (!x) throw std::logic_error("six_term: projection lift failed");
            SVec y = raw2[n].apply(*x);              // in F2(n)
            auto z = lift_i.solve(y);                // in F1(n)
            if (!z) throw std::logic_error("six_term: snake image not in F1");
            out.col(j) = c1.map.maps[n].apply(*z);   // in F1^mu(n)
        }
        conn.push_back(std::move(out));
    }
    ModuleMorphism delta_conn = make_morphism(k3.module, c1.module, std::move(conn));

    rep.maps = {ka, kb, delta_conn, cc1, cc2};
    auto check_exact_at = [&](const std::string& where, const LinMap& fin, const LinMap& fout,
                              int dim_mid, int n) {
        if (!fout.compose(fin).is_zero()) {
            rep.exact = false;
            rep.failures.push_back(where + " arity " + std::to_string(n) + ": composite nonzero");
            return;
        }
        if (rank_of(fin) + rank_of(fout) != dim_mid) {
            rep.exact = false;
            rep.failures.push_back(where + " arity " + std::to_string(n) + ": rank defect");
        }
    };
    for (int n = 0; n <= N; ++n) {
        // injectivity of ka
        if (rank_of(ka.maps[n]) != k1.module->dim(n)) {
            rep.exact = false;
            rep.failures.push_back("kappa F1 arity " + std::to_string(n) + ": not injective");
        }
        check_exact_at("kappa F2", ka.maps[n], kb.maps[n], k2.module->dim(n), n);
        check_exact_at("kappa F3", kb.maps[n], delta_conn.maps[n], k3.module->dim(n), n);
        check_exact_at("F1^mu", delta_conn.maps[n], cc1.maps[n], c1.module->dim(n), n);
        check_exact_at("F2^mu", cc1.maps[n], cc2.maps[n], c2.module->dim(n), n);
        if (rank_of(cc2.maps[n]) != c3.module->dim(n)) {
            rep.exact = false;
            rep.failures.push_back("F3^mu arity " + std::to_string(n) + ": not surjective");
        }
    }
    return rep;
}

ModuleMorphism factor_through_reflection(const ModuleMorphism& f, const SubQuotient& coker) {
    // h with h . proj = f; exists iff f kills im(mu-tilde), and it is then
    // unique because proj is surjective
    int N = coker.module->N;
    std::vector<LinMap> maps;
    for (int n = 0; n <= N; ++n) {
        Echelon ech(coker.map.maps[n]);
        LinMap h(f.tgt->dim(n), coker.module->dim(n));
        for (int j = 0; j < coker.module->dim(n); ++j) {
            auto pre = ech.solve(SVec::unit(j));
            if (!pre) throw std::logic_error("factor_through_reflection: proj not surjective");
            h.col(j) = f.maps[n].apply(*pre);
        }
        maps.push_back(std::move(h));
    }
    ModuleMorphism h = make_morphism(coker.module, truncate(f.tgt, N), std::move(maps));
    // well-definedness
    for (int n = 0; n <= N; ++n) {
        if (!(h.maps[n].compose(coker.map.maps[n]) == f.maps[n]))
            throw std::invalid_argument(
                "factor_through_reflection: morphism does not kill the image of mu-tilde");
    }
    return h;
}

DeltaProjDecomposition delta_proj_decompose(CatPtr cat, int m0, int N) {
    if (!cat->operad()->reduced())
        throw std::invalid_argument("delta_proj_decompose: operad must be reduced");
    const OperadPtr& O = cat->operad();
    DeltaProjDecomposition dec;
    ModulePtr F = free_module(cat, m0, N + 1);
    dec.source = delta_module(F);

    // proper subsets of {0..m0-1}
    for (int k = 0; k < m0; ++k)
        for (auto& s : subsets_of_size(m0, k)) dec.subsets.push_back(s);

    // each summand: dim O(m0-|X|) copies of Cat(|X|, -)
    std::vector<ModulePtr> parts;
    for (const auto& X : dec.subsets) {
        int k = static_cast<int>(X.size());
        int copies = O->dim(m0 - k);
        ModulePtr base = free_module(cat, k, N);
        std::vector<ModulePtr> reps(copies, base);
        parts.push_back(copies == 1 ? base : direct_sum(reps));
        if (copies == 0) parts.back() = zero_module(cat, N);
    }
    dec.summands = parts;
    dec.target = parts.size() == 1 ? parts[0] : direct_sum(parts);

    // offsets of the summand blocks per arity
    auto sub_index = [&](const std::vector<int>& X) {
        for (std::size_t i = 0; i < dec.subsets.size(); ++i)
            if (dec.subsets[i] == X) return static_cast<int>(i);
        throw std::logic_error("delta_proj_decompose: subset lookup");
    };

    std::vector<LinMap> maps;
    for (int n = 0; n <= N; ++n) {
        std::vector<int> offset(dec.subsets.size() + 1, 0);
        for (std::size_t i = 0; i < dec.subsets.size(); ++i)
            offset[i + 1] = offset[i] + parts[i]->dim(n);
        LinMap m(dec.target->dim(n), dec.source->dim(n));
        const auto& hs = cat->hom(m0, n + 1);
        for (int j = 0; j < hs.dim(); ++j) {
            const CatElt& e = hs.basis[j];
            std::vector<int> X;
            std::vector<int> last_fibre;
            for (int x = 0; x < m0; ++x) {
                if (e.f[x] == n)
                    last_fibre.push_back(x);
                else
                    X.push_back(x);
            }
            int si = sub_index(X);
            int k = static_cast<int>(X.size());
            // collapsed morphism in Cat(|X|, n)
            CatElt c;
            c.f.resize(k);
            for (int r = 0; r < k; ++r) c.f[r] = e.f[X[r]];
            c.labels.assign(e.labels.begin(), e.labels.begin() + n);
            int w = e.labels[n];  // O(m0-k) basis index, the tensor factor
            int copies = O->dim(m0 - k);
            int inner = cat->hom(k, n).index.at(c);
            // block layout of direct_sum(copies of Cat(k,-)): copy w occupies
            // rows [w * dim Cat(k,n) .. ), inner position within
            int row = offset[si] + w * cat->hom(k, n).dim() + inner;
            (void)copies;
            m.set(row, j, Rat(1));
        }
        maps.push_back(std::move(m));
    }
    dec.iso = make_morphism(dec.source, dec.target, std::move(maps));
    return dec;
}

}  // namespace ocat
