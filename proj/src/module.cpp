#include "ocat/module.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ocat {

namespace {

bool needs_full_equal_arity(const OperadPtr& o) { return !o->reduced() || o->dim(1) != 1; }

// basis-morphism pairs (m, n) that can act nontrivially within the bound
std::vector<std::pair<int, int>> action_pairs(const CatCat& cat, int N, bool full_equal) {
    std::vector<std::pair<int, int>> out;
    for (int m = 0; m <= N; ++m) {
        for (int n = 0; n <= N; ++n) {
            if (m == n && !full_equal) continue;
            if (cat.operad()->reduced() && m < n) continue;
            out.emplace_back(m, n);
        }
    }
    return out;
}

}  // namespace

LinMap TruncatedModule::action_of_basis(int m, int n, int idx) const {
    if (m == n && !full_equal_arity) {
        const CatElt& e = cat->hom(n, n).basis[idx];
        return sym[n].act(Perm(e.f.begin(), e.f.end()));
    }
    auto it = act.find({m, n});
    if (it == act.end()) return LinMap::zero(dim(n), dim(m));
    return it->second[idx];
}

LinMap TruncatedModule::action(const CatMorphism& xi) const {
    LinMap out = LinMap::zero(dim(xi.n), dim(xi.m));
    const auto& hs = cat->hom(xi.m, xi.n);
    for (const auto& [e, c] : xi.terms) {
        out = out + action_of_basis(xi.m, xi.n, hs.index.at(e)).scaled(c);
    }
    return out;
}

SigmaModule TruncatedModule::restrict_sigma() const {
    SigmaModule s;
    s.N = N;
    s.spaces = spaces;
    s.sym = sym;
    return s;
}

bool TruncatedModule::validate(std::string* why, int max_checks) const {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (int n = 0; n <= N; ++n) {
        if (sym[n].dim != dim(n)) return fail("sym dim mismatch at arity " + std::to_string(n));
        if (!sym[n].verify()) return fail("Coxeter relations fail at arity " + std::to_string(n));
    }
    // identity acts as identity
    for (int n = 0; n <= N; ++n) {
        if (dim(n) == 0) continue;
        const auto& hs = cat->hom(n, n);
        CatMorphism id = cat->identity(n);
        LinMap a = action_of_basis(n, n, hs.index.at(id.terms.begin()->first));
        if (!(a == LinMap::identity(dim(n)))) return fail("identity does not act as identity");
    }
    // composition on basis pairs
    int done = 0;
    for (int m = 0; m <= N; ++m) {
        for (int n = 0; n <= N; ++n) {
            if (cat->operad()->reduced() && m < n) continue;
            if (dim(m) == 0) continue;
            for (int p = 0; p <= N; ++p) {
                if (cat->operad()->reduced() && n < p) continue;
                const auto& hmn = cat->hom(m, n);
                const auto& hnp = cat->hom(n, p);
                if (hmn.dim() == 0 || hnp.dim() == 0) continue;
                for (int i = 0; i < hnp.dim(); ++i) {
                    for (int j = 0; j < hmn.dim(); ++j) {
                        if (max_checks > 0 && done >= max_checks) return true;
                        CatMorphism comp =
                            cat->compose(cat->single(hnp.basis[i]), cat->single(hmn.basis[j]));
                        LinMap lhs = action(comp);
                        LinMap rhs =
                            action_of_basis(n, p, i).compose(action_of_basis(m, n, j));
                        if (!(lhs == rhs))
                            return fail("functoriality fails on a basis pair (" +
                                        std::to_string(m) + "," + std::to_string(n) + "," +
                                        std::to_string(p) + ")");
                        ++done;
                    }
                }
            }
        }
    }
    return true;
}

bool ModuleMorphism::is_zero() const {
    for (const auto& m : maps)
        if (!m.is_zero()) return false;
    return true;
}

bool ModuleMorphism::validate(std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const auto& cat = *src->cat;
    for (int m = 0; m <= N; ++m) {
        for (int n = 0; n <= N; ++n) {
            if (cat.operad()->reduced() && m < n) continue;
            const auto& hs = cat.hom(m, n);
            for (int i = 0; i < hs.dim(); ++i) {
                LinMap lhs = maps[n].compose(src->action_of_basis(m, n, i));
                LinMap rhs = tgt->action_of_basis(m, n, i).compose(maps[m]);
                if (!(lhs == rhs))
                    return fail("naturality fails on basis morphism " + hs.basis[i].key() +
                                " of (" + std::to_string(m) + "," + std::to_string(n) + ")");
            }
        }
    }
    return true;
}

// --- builders ---------------------------------------------------------------

ModulePtr zero_module(CatPtr cat, int N) {
    auto f = std::make_shared<TruncatedModule>();
    f->cat = cat;
    f->name = "0";
    f->N = N;
    f->spaces.assign(N + 1, Space());
    for (int n = 0; n <= N; ++n) f->sym.push_back(SymAction::trivial(n, 0));
    f->full_equal_arity = needs_full_equal_arity(cat->operad());
    return f;
}

ModulePtr free_module(CatPtr cat, int m0, int N) {
    if (N > cat->nmax()) throw std::out_of_range("free_module: bound beyond N_max");
    auto f = std::make_shared<TruncatedModule>();
    f->cat = cat;
    f->name = "Cat(" + std::to_string(m0) + ",-)";
    f->N = N;
    f->free_rank = m0;
    f->full_equal_arity = needs_full_equal_arity(cat->operad());
    for (int n = 0; n <= N; ++n) f->spaces.push_back(cat->hom(m0, n).space);

    for (int n = 0; n <= N; ++n) {
        SymAction s;
        s.n = n;
        s.dim = f->dim(n);
        for (int a = 0; a + 1 < n; ++a) {
            CatMorphism t = cat->perm_morphism(perm_transposition(n, a, a + 1));
            LinMap g(f->dim(n), f->dim(n));
            const auto& hs = cat->hom(m0, n);
            for (int j = 0; j < hs.dim(); ++j)
                g.col(j) = cat->coords(cat->compose(t, cat->single(hs.basis[j])));
            s.gens.push_back(std::move(g));
        }
        f->sym.push_back(std::move(s));
    }
    for (auto [m, n] : action_pairs(*cat, N, f->full_equal_arity)) {
        const auto& hmn = cat->hom(m, n);
        const auto& dom = cat->hom(m0, m);
        if (hmn.dim() == 0 || dom.dim() == 0) continue;
        std::vector<LinMap> mats;
        mats.reserve(hmn.dim());
        for (const auto& xi : hmn.basis) {
            LinMap a(f->dim(n), f->dim(m));
            for (int j = 0; j < dom.dim(); ++j)
                a.col(j) = cat->coords(cat->compose(cat->single(xi), cat->single(dom.basis[j])));
            mats.push_back(std::move(a));
        }
        f->act[{m, n}] = std::move(mats);
    }
    // for non-reduced operads the symmetric action must agree with the stored
    // bijection matrices; rebuild it from them
    if (f->full_equal_arity) {
        for (int n = 2; n <= N; ++n) {
            const auto& hs = cat->hom(n, n);
            for (int a = 0; a + 1 < n; ++a) {
                CatMorphism t = cat->perm_morphism(perm_transposition(n, a, a + 1));
                f->sym[n].gens[a] = f->act[{n, n}][hs.index.at(t.terms.begin()->first)];
            }
        }
    }
    return f;
}

ModulePtr truncate(ModulePtr f, int N) {
    if (N >= f->N) return f;
    auto g = std::make_shared<TruncatedModule>();
    g->cat = f->cat;
    g->name = f->name;
    g->N = N;
    g->free_rank = f->free_rank;
    g->full_equal_arity = f->full_equal_arity;
    g->spaces.assign(f->spaces.begin(), f->spaces.begin() + N + 1);
    g->sym.assign(f->sym.begin(), f->sym.begin() + N + 1);
    for (const auto& [key, mats] : f->act) {
        if (key.first <= N && key.second <= N) g->act[key] = mats;
    }
    return g;
}

ModulePtr extend_zero(ModulePtr f, int N) {
    if (N <= f->N) return f;
    if (N > f->cat->nmax()) throw std::out_of_range("extend_zero: bound beyond N_max");
    auto g = std::make_shared<TruncatedModule>();
    g->cat = f->cat;
    g->name = f->name;
    g->N = N;
    g->full_equal_arity = f->full_equal_arity;
    g->spaces = f->spaces;
    g->sym = f->sym;
    for (int n = f->N + 1; n <= N; ++n) {
        g->spaces.push_back(Space());
        g->sym.push_back(SymAction::trivial(n, 0));
    }
    g->act = f->act;
    return g;
}

ModulePtr delta_module(ModulePtr f) {
    if (f->N < 1) throw std::invalid_argument("delta_module: bound must be >= 1");
    const CatPtr& cat = f->cat;
    auto g = std::make_shared<TruncatedModule>();
    g->cat = cat;
    g->name = "delta(" + f->name + ")";
    g->N = f->N - 1;
    g->full_equal_arity = f->full_equal_arity;
    for (int n = 0; n <= g->N; ++n) {
        Space sp = f->spaces[n + 1];
        g->spaces.push_back(std::move(sp));
        SymAction s;
        s.n = n;
        s.dim = f->dim(n + 1);
        for (int a = 0; a + 1 < n; ++a) s.gens.push_back(f->sym[n + 1].gens[a]);
        g->sym.push_back(std::move(s));
    }
    int unit_idx = static_cast<int>(cat->operad()->unit().coords.lead());
    for (auto [m, n] : action_pairs(*cat, g->N, g->full_equal_arity)) {
        const auto& hmn = cat->hom(m, n);
        if (hmn.dim() == 0 || g->dim(m) == 0) continue;
        const auto& big = cat->hom(m + 1, n + 1);
        std::vector<LinMap> mats;
        mats.reserve(hmn.dim());
        for (const auto& xi : hmn.basis) {
            CatElt boxed = xi;
            boxed.f.push_back(n);
            boxed.labels.push_back(unit_idx);
            mats.push_back(f->action_of_basis(m + 1, n + 1, big.index.at(boxed)));
        }
        g->act[{m, n}] = std::move(mats);
    }
    return g;
}

ModulePtr alpha_embed(CatPtr cat, const SigmaModule& m) {
    if (!cat->operad()->reduced() || !cat->operad()->unital_arity_one())
        throw std::invalid_argument("alpha_embed: operad must be reduced with O(1) = k");
    auto f = std::make_shared<TruncatedModule>();
    f->cat = cat;
    f->name = "alpha(M)";
    f->N = m.N;
    f->spaces = m.spaces;
    f->sym = m.sym;
    f->full_equal_arity = false;
    // all non-bijections act by zero: nothing stored
    return f;
}

ModulePtr direct_sum(const std::vector<ModulePtr>& parts) {
    if (parts.empty()) throw std::invalid_argument("direct_sum: empty");
    const CatPtr& cat = parts[0]->cat;
    int N = parts[0]->N;
    for (const auto& p : parts) {
        if (p->cat->operad() != cat->operad() || p->N != N)
            throw std::invalid_argument("direct_sum: mismatched summands");
    }
    auto f = std::make_shared<TruncatedModule>();
    f->cat = cat;
    f->name = "sum";
    f->N = N;
    f->full_equal_arity = parts[0]->full_equal_arity;
    for (int n = 0; n <= N; ++n) {
        Space sp;
        for (std::size_t k = 0; k < parts.size(); ++k)
            for (const auto& l : parts[k]->spaces[n].labels)
                sp.labels.push_back("s" + std::to_string(k) + ":" + l);
        f->spaces.push_back(std::move(sp));
    }
    auto block_map = [&](int n, const std::function<const LinMap&(const TruncatedModule&)>& pick,
                         int rows, int cols) {
        LinMap out(rows, cols);
        int roff = 0, coff = 0;
        for (const auto& p : parts) {
            const LinMap& b = pick(*p);
            for (int j = 0; j < b.cols(); ++j)
                for (const auto& [i, c] : b.col(j).entries()) out.set(roff + i, coff + j, c);
            roff += b.rows();
            coff += b.cols();
        }
        (void)n;
        return out;
    };
    for (int n = 0; n <= N; ++n) {
        SymAction s;
        s.n = n;
        s.dim = f->dim(n);
        for (int a = 0; a + 1 < n; ++a) {
            s.gens.push_back(block_map(
                n, [&](const TruncatedModule& p) -> const LinMap& { return p.sym[n].gens[a]; },
                f->dim(n), f->dim(n)));
        }
        f->sym.push_back(std::move(s));
    }
    for (auto [m, n] : action_pairs(*cat, N, f->full_equal_arity)) {
        const auto& hmn = cat->hom(m, n);
        if (hmn.dim() == 0 || f->dim(m) == 0) continue;
        std::vector<LinMap> mats;
        mats.reserve(hmn.dim());
        std::vector<LinMap> scratch(parts.size());
        for (int i = 0; i < hmn.dim(); ++i) {
            for (std::size_t k = 0; k < parts.size(); ++k)
                scratch[k] = parts[k]->action_of_basis(m, n, i);
            std::size_t kk = 0;
            mats.push_back(block_map(
                n,
                [&](const TruncatedModule&) -> const LinMap& { return scratch[kk++]; },
                f->dim(n), f->dim(m)));
        }
        f->act[{m, n}] = std::move(mats);
    }
    return f;
}

ModuleMorphism sum_injection(const std::vector<ModulePtr>& parts, ModulePtr total, int part) {
    ModuleMorphism mm;
    mm.src = parts[part];
    mm.tgt = total;
    mm.N = total->N;
    for (int n = 0; n <= total->N; ++n) {
        int off = 0;
        for (int k = 0; k < part; ++k) off += parts[k]->dim(n);
        LinMap m(total->dim(n), parts[part]->dim(n));
        for (int j = 0; j < parts[part]->dim(n); ++j) m.set(off + j, j, Rat(1));
        mm.maps.push_back(std::move(m));
    }
    return mm;
}

ModuleMorphism sum_projection(const std::vector<ModulePtr>& parts, ModulePtr total, int part) {
    ModuleMorphism mm;
    mm.src = total;
    mm.tgt = parts[part];
    mm.N = total->N;
    for (int n = 0; n <= total->N; ++n) {
        int off = 0;
        for (int k = 0; k < part; ++k) off += parts[k]->dim(n);
        LinMap m(parts[part]->dim(n), total->dim(n));
        for (int j = 0; j < parts[part]->dim(n); ++j) m.set(j, off + j, Rat(1));
        mm.maps.push_back(std::move(m));
    }
    return mm;
}

ModulePtr restrict_along(const OperadMorphism& phi, CatPtr src_cat, ModulePtr g) {
    if (phi.target() != g->cat->operad())
        throw std::invalid_argument("restrict_along: operad mismatch");
    auto f = std::make_shared<TruncatedModule>();
    f->cat = src_cat;
    f->name = "phi*(" + g->name + ")";
    f->N = g->N;
    f->spaces = g->spaces;
    f->sym = g->sym;
    f->full_equal_arity = needs_full_equal_arity(src_cat->operad());
    for (auto [m, n] : action_pairs(*src_cat, f->N, f->full_equal_arity)) {
        const auto& hmn = src_cat->hom(m, n);
        if (hmn.dim() == 0 || f->dim(m) == 0) continue;
        std::vector<LinMap> mats;
        mats.reserve(hmn.dim());
        for (const auto& xi : hmn.basis) {
            CatMorphism img = cat_apply(phi, *src_cat, *g->cat, src_cat->single(xi));
            mats.push_back(g->action(img));
        }
        f->act[{m, n}] = std::move(mats);
    }
    return f;
}

ModuleMorphism make_morphism(ModulePtr src, ModulePtr tgt, std::vector<LinMap> maps) {
    ModuleMorphism mm;
    mm.src = std::move(src);
    mm.tgt = std::move(tgt);
    mm.N = std::min(mm.src->N, mm.tgt->N);
    mm.maps = std::move(maps);
    if (static_cast<int>(mm.maps.size()) != mm.N + 1)
        throw std::invalid_argument("make_morphism: wrong number of maps");
    for (int n = 0; n <= mm.N; ++n) {
        if (mm.maps[n].rows() != mm.tgt->dim(n) || mm.maps[n].cols() != mm.src->dim(n))
            throw std::invalid_argument("make_morphism: shape mismatch at arity " +
                                        std::to_string(n));
    }
    return mm;
}

ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
    if (g.src != f.tgt) throw std::invalid_argument("compose: middle modules differ");
    ModuleMorphism mm;
    mm.src = f.src;
    mm.tgt = g.tgt;
    mm.N = std::min(f.N, g.N);
    for (int n = 0; n <= mm.N; ++n) mm.maps.push_back(g.maps[n].compose(f.maps[n]));
    return mm;
}

ModuleMorphism identity_morphism(ModulePtr f) {
    std::vector<LinMap> maps;
    for (int n = 0; n <= f->N; ++n) maps.push_back(LinMap::identity(f->dim(n)));
    return make_morphism(f, f, std::move(maps));
}

ModuleMorphism zero_morphism(ModulePtr src, ModulePtr tgt) {
    std::vector<LinMap> maps;
    int N = std::min(src->N, tgt->N);
    for (int n = 0; n <= N; ++n) maps.push_back(LinMap::zero(tgt->dim(n), src->dim(n)));
    return make_morphism(src, tgt, std::move(maps));
}

ModuleMorphism morphism_from_element(ModulePtr free_src, ModulePtr tgt, const SVec& v) {
    if (free_src->free_rank < 0)
        throw std::invalid_argument("morphism_from_element: source is not a free module");
    int m0 = free_src->free_rank;
    const CatPtr& cat = free_src->cat;
    std::vector<LinMap> maps;
    for (int n = 0; n <= std::min(free_src->N, tgt->N); ++n) {
        const auto& hs = cat->hom(m0, n);
        LinMap a(tgt->dim(n), free_src->dim(n));
        for (int j = 0; j < hs.dim(); ++j)
            a.col(j) = tgt->action_of_basis(m0, n, j).apply(v);
        maps.push_back(std::move(a));
    }
    return make_morphism(free_src, truncate(tgt, std::min(free_src->N, tgt->N)), std::move(maps));
}

namespace {

// Builds the module structure on per-arity subquotients presented by
// section/projection pairs (proj . sect = id).
ModulePtr induced_module(const TruncatedModule& f, const std::vector<Space>& spaces,
                         const std::vector<LinMap>& proj, const std::vector<LinMap>& sect,
                         const std::string& name, int N) {
    auto g = std::make_shared<TruncatedModule>();
    g->cat = f.cat;
    g->name = name;
    g->N = N;
    g->spaces = spaces;
    g->full_equal_arity = f.full_equal_arity;
    for (int n = 0; n <= N; ++n) {
        SymAction s;
        s.n = n;
        s.dim = g->dim(n);
        for (int a = 0; a + 1 < n; ++a)
            s.gens.push_back(proj[n].compose(f.sym[n].gens[a]).compose(sect[n]));
        g->sym.push_back(std::move(s));
    }
    for (auto [m, n] : action_pairs(*f.cat, N, g->full_equal_arity)) {
        auto it = f.act.find({m, n});
        bool have = it != f.act.end();
        if (m == n && !f.full_equal_arity) continue;
        if (!have) continue;
        const auto& hmn = f.cat->hom(m, n);
        if (hmn.dim() == 0 || g->dim(m) == 0) continue;
        std::vector<LinMap> mats;
        mats.reserve(hmn.dim());
        for (int i = 0; i < hmn.dim(); ++i)
            mats.push_back(proj[n].compose(it->second[i]).compose(sect[m]));
        g->act[{m, n}] = std::move(mats);
    }
    return g;
}

}  // namespace

SubQuotient kernel_module(const ModuleMorphism& f) {
    const TruncatedModule& src = *f.src;
    int N = f.N;
    std::vector<Space> spaces;
    std::vector<LinMap> incl;
    std::vector<Echelon> ech;  // of inclusions, for preimage solving
    for (int n = 0; n <= N; ++n) {
        auto [ks, ki] = kernel(f.maps[n], src.spaces[n]);
        spaces.push_back(std::move(ks));
        incl.push_back(std::move(ki));
    }
    for (int n = 0; n <= N; ++n) ech.emplace_back(incl[n]);

    auto g = std::make_shared<TruncatedModule>();
    g->cat = src.cat;
    g->name = "ker";
    g->N = N;
    g->spaces = spaces;
    g->full_equal_arity = src.full_equal_arity;
    auto restrict = [&](const LinMap& big, int m, int n) {
        LinMap out(g->spaces[n].dim(), g->spaces[m].dim());
        for (int j = 0; j < out.cols(); ++j) {
            SVec img = big.apply(incl[m].col(j));
            auto sol = ech[n].solve(img);
            if (!sol) throw std::logic_error("kernel_module: action does not preserve kernel");
            out.col(j) = *sol;
        }
        return out;
    };
    for (int n = 0; n <= N; ++n) {
        SymAction s;
        s.n = n;
        s.dim = g->dim(n);
        for (int a = 0; a + 1 < n; ++a) s.gens.push_back(restrict(src.sym[n].gens[a], n, n));
        g->sym.push_back(std::move(s));
    }
    for (auto [m, n] : action_pairs(*src.cat, N, g->full_equal_arity)) {
        const auto& hmn = src.cat->hom(m, n);
        if (hmn.dim() == 0 || g->dim(m) == 0) continue;
        std::vector<LinMap> mats;
        mats.reserve(hmn.dim());
        for (int i = 0; i < hmn.dim(); ++i)
            mats.push_back(restrict(src.action_of_basis(m, n, i), m, n));
        g->act[{m, n}] = std::move(mats);
    }
    SubQuotient sq;
    sq.module = g;
    sq.map = make_morphism(g, f.src, std::move(incl));
    return sq;
}

SubQuotient cokernel_module(const ModuleMorphism& f) {
    const TruncatedModule& tgt = *f.tgt;
    int N = f.N;
    std::vector<Space> spaces;
    std::vector<LinMap> proj, sect;
    for (int n = 0; n <= N; ++n) {
        Echelon ech(f.maps[n]);
        const auto& piv = ech.pivot_rows();
        std::vector<int> keep;
        std::size_t p = 0;
        for (int i = 0; i < tgt.dim(n); ++i) {
            if (p < piv.size() && piv[p] == i) {
                ++p;
            } else {
                keep.push_back(i);
            }
        }
        Space qs;
        std::vector<int> pos(tgt.dim(n), -1);
        for (std::size_t j = 0; j < keep.size(); ++j) {
            qs.labels.push_back(tgt.spaces[n].labels[keep[j]]);
            pos[keep[j]] = static_cast<int>(j);
        }
        LinMap pr(static_cast<int>(keep.size()), tgt.dim(n));
        for (int i = 0; i < tgt.dim(n); ++i)
            pr.col(i) = ech.reduce(SVec::unit(i)).mapped([&](int r) { return pos[r]; });
        LinMap se(tgt.dim(n), static_cast<int>(keep.size()));
        for (std::size_t j = 0; j < keep.size(); ++j) se.set(keep[j], static_cast<int>(j), Rat(1));
        spaces.push_back(std::move(qs));
        proj.push_back(std::move(pr));
        sect.push_back(std::move(se));
    }
    ModulePtr g = induced_module(tgt, spaces, proj, sect, "coker", N);
    SubQuotient sq;
    sq.module = g;
    sq.map = make_morphism(truncate(f.tgt, N), g, std::move(proj));
    return sq;
}

SubQuotient submodule_closure(ModulePtr f, const std::vector<std::vector<SVec>>& seeds) {
    const TruncatedModule& F = *f;
    int N = F.N;
    // span_n maintained as RREF rows
    std::vector<std::vector<SVec>> span(N + 1);
    for (int n = 0; n <= N && n < static_cast<int>(seeds.size()); ++n) {
        std::vector<SVec> rows = seeds[n];
        span[n] = rref(std::move(rows));
    }
    bool changed = true;
    auto feed = [&](int n, const SVec& v) {
        std::vector<SVec> rows = span[n];
        rows.push_back(v);
        auto next = rref(std::move(rows));
        if (next.size() != span[n].size()) {
            span[n] = std::move(next);
            return true;
        }
        return false;
    };
    while (changed) {
        changed = false;
        for (int m = 0; m <= N; ++m) {
            if (span[m].empty()) continue;
            for (int a = 0; a + 1 < m; ++a)
                for (const auto& v : std::vector<SVec>(span[m]))
                    if (feed(m, F.sym[m].gens[a].apply(v))) changed = true;
            for (int n = 0; n <= N; ++n) {
                if (F.cat->operad()->reduced() && m < n) continue;
                const auto& hmn = F.cat->hom(m, n);
                for (int i = 0; i < hmn.dim(); ++i) {
                    LinMap a = F.action_of_basis(m, n, i);
                    for (const auto& v : std::vector<SVec>(span[m]))
                        if (feed(n, a.apply(v))) changed = true;
                }
            }
        }
    }
    // inclusion morphism from the closure
    std::vector<LinMap> incl;
    std::vector<Space> spaces;
    for (int n = 0; n <= N; ++n) {
        LinMap m(F.dim(n), static_cast<int>(span[n].size()));
        Space sp;
        for (std::size_t j = 0; j < span[n].size(); ++j) {
            m.col(static_cast<int>(j)) = span[n][j];
            sp.labels.push_back("v" + std::to_string(j));
        }
        incl.push_back(std::move(m));
        spaces.push_back(std::move(sp));
    }
    // build the submodule structure by solving through the inclusion
    auto g = std::make_shared<TruncatedModule>();
    g->cat = F.cat;
    g->name = "sub";
    g->N = N;
    g->spaces = spaces;
    g->full_equal_arity = F.full_equal_arity;
    std::vector<Echelon> ech;
    for (int n = 0; n <= N; ++n) ech.emplace_back(incl[n]);
    auto restrict = [&](const LinMap& big, int m, int n) {
        LinMap out(g->dim(n), g->dim(m));
        for (int j = 0; j < out.cols(); ++j) {
            auto sol = ech[n].solve(big.apply(incl[m].col(j)));
            if (!sol) throw std::logic_error("submodule_closure: span not action-stable");
            out.col(j) = *sol;
        }
        return out;
    };
    for (int n = 0; n <= N; ++n) {
        SymAction s;
        s.n = n;
        s.dim = g->dim(n);
        for (int a = 0; a + 1 < n; ++a) s.gens.push_back(restrict(F.sym[n].gens[a], n, n));
        g->sym.push_back(std::move(s));
    }
    for (auto [m, n] : action_pairs(*F.cat, N, g->full_equal_arity)) {
        const auto& hmn = F.cat->hom(m, n);
        if (hmn.dim() == 0 || g->dim(m) == 0) continue;
        std::vector<LinMap> mats;
        for (int i = 0; i < hmn.dim(); ++i)
            mats.push_back(restrict(F.action_of_basis(m, n, i), m, n));
        g->act[{m, n}] = std::move(mats);
    }
    SubQuotient sq;
    sq.module = g;
    sq.map = make_morphism(g, f, std::move(incl));
    return sq;
}

SubQuotient quotient_by(const ModuleMorphism& inclusion) { return cokernel_module(inclusion); }

std::vector<ModuleMorphism> hom_module(ModulePtr f, ModulePtr g) {
    const CatCat& cat = *f->cat;
    int N = std::min(f->N, g->N);
    // variables: entries of h_n (dim g(n) x dim f(n)), row-major per arity
    std::vector<int> offset(N + 2, 0);
    for (int n = 0; n <= N; ++n) offset[n + 1] = offset[n] + g->dim(n) * f->dim(n);
    int nvars = offset[N + 1];
    std::vector<SVec> rows;  // constraint rows over variables

    auto var = [&](int n, int r, int c) { return offset[n] + r * f->dim(n) + c; };
    auto add_constraint = [&](int m, int n, const LinMap& fa, const LinMap& ga) {
        // h_n . fa - ga . h_m = 0 : one row per (target row r, source col c)
        for (int r = 0; r < g->dim(n); ++r) {
            for (int c = 0; c < f->dim(m); ++c) {
                SVec row;
                // (h_n . fa)[r, c] = sum_k h_n[r, k] fa[k, c]
                for (const auto& [k, v] : fa.col(c).entries()) row.add(var(n, r, k), v);
                // (ga . h_m)[r, c] = sum_k ga[r, k] h_m[k, c]
                for (int k = 0; k < g->dim(m); ++k) {
                    Rat v = ga.at(r, k);
                    if (!is_zero(v)) row.add(var(m, k, c), -v);
                }
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
    };
    for (int m = 0; m <= N; ++m) {
        for (int a = 0; a + 1 < m; ++a) add_constraint(m, m, f->sym[m].gens[a], g->sym[m].gens[a]);
        for (int n = 0; n <= N; ++n) {
            if (cat.operad()->reduced() && m < n) continue;
            if (m == n && !f->full_equal_arity) continue;
            const auto& hmn = cat.hom(m, n);
            for (int i = 0; i < hmn.dim(); ++i)
                add_constraint(m, n, f->action_of_basis(m, n, i), g->action_of_basis(m, n, i));
        }
    }
    // kernel of the constraint matrix
    LinMap big(static_cast<int>(rows.size()), nvars);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r].entries()) big.set(static_cast<int>(r), c, v);
    Space dom = Space::anonymous(nvars);
    auto [ks, ki] = kernel(big, dom);
    std::vector<ModuleMorphism> out;
    ModulePtr ftr = truncate(f, N), gtr = truncate(g, N);
    for (int j = 0; j < ks.dim(); ++j) {
        std::vector<LinMap> maps;
        for (int n = 0; n <= N; ++n) {
            LinMap h(g->dim(n), f->dim(n));
            for (int r = 0; r < g->dim(n); ++r)
                for (int c = 0; c < f->dim(n); ++c) {
                    Rat v = ki.at(var(n, r, c), j);
                    if (!is_zero(v)) h.set(r, c, v);
                }
            maps.push_back(std::move(h));
        }
        out.push_back(make_morphism(ftr, gtr, std::move(maps)));
    }
    return out;
}

SigmaModule random_sigma_module(int N, Rng& rng) {
    SigmaModule m;
    m.N = N;
    for (int n = 0; n <= N; ++n) {
        // a few copies of sign/trivial one-dimensional pieces with honest
        // Coxeter relations; permutation blocks at small n
        int copies = rng.below(3);
        if (n == 0 && copies == 0 && rng.below(2)) copies = 1;
        Space sp;
        SymAction s;
        s.n = n;
        std::vector<int> kinds;
        for (int c = 0; c < copies; ++c) kinds.push_back(rng.below(n >= 2 ? 2 : 1));
        int dim = 0;
        for (int k : kinds) dim += (k == 0 ? 1 : 1);
        s.dim = dim;
        for (int c = 0; c < dim; ++c) sp.labels.push_back("m" + std::to_string(c));
        for (int a = 0; a + 1 < n; ++a) {
            LinMap g(dim, dim);
            for (int c = 0; c < static_cast<int>(kinds.size()); ++c)
                g.set(c, c, kinds[c] == 0 ? Rat(1) : Rat(-1));
            s.gens.push_back(std::move(g));
        }
        m.spaces.push_back(std::move(sp));
        m.sym.push_back(std::move(s));
    }
    return m;
}

ModulePtr random_module(CatPtr cat, int N, Rng& rng) {
    int kind = rng.below(5);
    auto random_free = [&]() {
        int m0 = 1 + rng.below(std::min(N + 1, cat->nmax() - 1));
        return free_module(cat, m0, N);
    };
    switch (kind) {
        case 0:
            return random_free();
        case 1:
            return direct_sum({random_free(), random_free()});
        case 2:
            return alpha_embed(cat, random_sigma_module(N, rng));
        case 3: {
            // cokernel of a random morphism between frees
            ModulePtr p = random_free();
            ModulePtr q = direct_sum({random_free(), alpha_embed(cat, random_sigma_module(N, rng))});
            int m0 = p->free_rank;
            SVec v;
            for (int b = 0; b < q->dim(m0); ++b) v.add(b, rat(rng.small_int(2)));
            ModuleMorphism f = morphism_from_element(p, q, v);
            return cokernel_module(f).module;
        }
        default: {
            // kernel of a random morphism between frees
            ModulePtr p = random_free();
            ModulePtr q = random_free();
            int m0 = p->free_rank;
            SVec v;
            for (int b = 0; b < q->dim(m0); ++b) v.add(b, rat(rng.small_int(2)));
            ModuleMorphism f = morphism_from_element(p, q, v);
            return kernel_module(f).module;
        }
    }
}

}  // namespace ocat
