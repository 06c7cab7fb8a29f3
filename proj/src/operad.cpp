#include "ocat/operad.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace ocat {

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const {
        return static_cast<std::size_t>(p.first ^ (p.second * 0x9e3779b97f4a7c15ULL));
    }
};

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::pair<std::uint64_t, std::uint64_t> row_fingerprint(const SVec& row) {
    // row must be lead-normalized; two independent 64-bit streams
    std::uint64_t h1 = 0x243f6a8885a308d3ULL, h2 = 0x13198a2e03707344ULL;
    for (const auto& [i, c] : row.entries()) {
        std::uint64_t n = mpz_get_ui(c.get_num().get_mpz_t());
        std::uint64_t d = mpz_get_ui(c.get_den().get_mpz_t());
        std::uint64_t s = sgn(c) < 0 ? 0x5bf0a8b145769234ULL : 0;
        std::uint64_t v = mix(static_cast<std::uint64_t>(i) * 0x100000001b3ULL ^ n ^ (d << 17) ^ s);
        h1 = mix(h1 ^ v);
        h2 = h2 * 0x100000001b3ULL + v;
    }
    return {h1, h2};
}

// Relation-closure row reduction for one arity slice of the free operad.
class Slice {
  public:
    std::vector<TreeId> trees;
    std::unordered_map<TreeId, int> col;
    std::map<int, SVec> pivots;  // lead -> row (lead coeff 1)
    std::vector<int> std_cols;
    std::unordered_map<int, int> std_index;
    // pivot rows as tree combinations, for composing into higher arities
    std::vector<std::vector<std::pair<Rat, TreeId>>> pivot_trees;

    bool insert(SVec row) {
        while (!row.empty()) {
            auto it = pivots.find(row.lead());
            if (it == pivots.end()) {
                Rat inv = Rat(1) / row.lead_coeff();
                row *= inv;
                pivots.emplace(row.lead(), std::move(row));
                return true;
            }
            Rat f = -row.lead_coeff();
            row.axpy(f, it->second);
        }
        return false;
    }

    void finalize() {
        // full back-substitution, decreasing pivot order
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            SVec out;
            SVec work = it->second;
            while (!work.empty()) {
                int l = work.lead();
                Rat c = work.lead_coeff();
                work.set(l, Rat(0));
                auto jt = pivots.find(l);
                if (jt != pivots.end() && jt->first != it->first) {
                    SVec tail = jt->second;
                    tail.set(l, Rat(0));
                    work.axpy(-c, tail);
                } else {
                    out.add(l, c);
                }
            }
            it->second = std::move(out);
        }
        for (int c = 0; c < static_cast<int>(trees.size()); ++c) {
            if (!pivots.count(c)) {
                std_index[c] = static_cast<int>(std_cols.size());
                std_cols.push_back(c);
            }
        }
    }

    // coordinates of a tree in the quotient basis (valid after finalize)
    SVec nf(TreeId t) const {
        int c = col.at(t);
        auto it = pivots.find(c);
        if (it == pivots.end()) return SVec::unit(std_index.at(c));
        SVec out;
        for (const auto& [i, coef] : it->second.entries()) {
            if (i == c) continue;
            out.add(std_index.at(i), -coef);
        }
        return out;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// Presented operads: the quotient engine.

class QuotientEngine {
  public:
    QuotientEngine(const OperadPresentation& pres, int nmax, Operad& out)
        : pres_(pres), arena_(*pres.arena), nmax_(nmax), out_(out) {}

    void run() {
        validate_presentation();
        out_.spaces_.assign(nmax_ + 1, Space());
        out_.syms_.assign(nmax_ + 1, SymAction());
        out_.basis_trees_.assign(nmax_ + 1, {});
        gen_arities_.clear();
        for (const auto& g : pres_.gens) gen_arities_.push_back(g.arity);

        slices_.resize(nmax_ + 1);
        for (int n = 1; n <= nmax_; ++n) build_arity(n);
    }

  private:
    const OperadPresentation& pres_;
    TreeArena& arena_;
    int nmax_;
    Operad& out_;
    std::vector<int> gen_arities_;
    std::vector<Slice> slices_;

    void validate_presentation() {
        for (const auto& g : pres_.gens) {
            if (g.arity < 2)
                throw std::invalid_argument(
                    "build_operad: generators of arity < 2 are not supported by the "
                    "brute-force engine (generator '" + g.name + "')");
        }
        for (const auto& rel : pres_.relations) {
            if (rel.terms.empty()) continue;
            for (const auto& [c, t] : rel.terms) {
                if (arena_.arity(t) != rel.arity)
                    throw std::invalid_argument("build_operad: relation not homogeneous in arity");
            }
            if (rel.arity == 1)
                throw std::invalid_argument("build_operad: inconsistent presentation (unit killed)");
        }
    }

    void build_arity(int n) {
        Slice& sl = slices_[n];
        sl.trees = enumerate_trees(arena_, gen_arities_, n);
        if (sl.trees.size() > 300000)
            throw std::runtime_error("build_operad: free operad slice too large at arity " +
                                     std::to_string(n));
        for (int c = 0; c < static_cast<int>(sl.trees.size()); ++c) sl.col[sl.trees[c]] = c;

        std::unordered_set<std::pair<std::uint64_t, std::uint64_t>, PairHash> seen;
        auto feed = [&](SVec row) {
            if (row.empty()) return;
            if (!seen.insert(row_fingerprint(row)).second) return;
            sl.insert(std::move(row));
        };

        // relations of this arity, closed under the symmetric action
        for (const auto& rel : pres_.relations) {
            if (rel.arity != n) continue;
            Perm p(n);
            std::iota(p.begin(), p.end(), 0);
            do {
                SVec row;
                for (const auto& [c, t] : rel.terms) row.add(sl.col.at(arena_.relabel(t, p)), c);
                feed(std::move(row));
            } while (std::next_permutation(p.begin(), p.end()));
        }

        // One-step shuffle compositions of lower-arity ideal rows with
        // single-node trees. Attaching one node at a time is enough: any tree
        // attachment factors through intermediate arities, whose ideal slices
        // this recursion has already closed.
        std::set<int> node_arities(gen_arities_.begin(), gen_arities_.end());
        for (int b : node_arities) {
            int a = n - b + 1;
            if (a < 2 || a >= n) continue;
            const Slice& la = slices_[a];
            if (la.pivot_trees.empty()) continue;
            std::vector<TreeId> nodes;
            for (std::size_t g = 0; g < gen_arities_.size(); ++g) {
                if (gen_arities_[g] != b) continue;
                std::vector<TreeId> leaves;
                for (int i = 0; i < b; ++i) leaves.push_back(arena_.leaf(i));
                TreeId base = arena_.node(static_cast<int>(g), leaves);
                Perm p(b);
                std::iota(p.begin(), p.end(), 0);
                do {
                    nodes.push_back(arena_.relabel(base, p));
                } while (std::next_permutation(p.begin(), p.end()));
            }
            auto subs_b = subsets_of_size(n, b);
            auto subs_a = subsets_of_size(n, a);
            // w o_{i,S} t
            for (const auto& w : la.pivot_trees) {
                for (int i = 0; i < a; ++i) {
                    for (const auto& S : subs_b) {
                        for (TreeId t : nodes) {
                            std::vector<SVec::Entry> terms;
                            terms.reserve(w.size());
                            for (const auto& [c, wt] : w)
                                terms.emplace_back(sl.col.at(arena_.shuffle_graft(wt, i, t, S, n)), c);
                            feed(SVec::from_terms(std::move(terms)));
                        }
                    }
                }
            }
            // t o_{j,S} w
            for (TreeId t : nodes) {
                for (int j = 0; j < b; ++j) {
                    for (const auto& S : subs_a) {
                        for (const auto& w : la.pivot_trees) {
                            std::vector<SVec::Entry> terms;
                            terms.reserve(w.size());
                            for (const auto& [c, wt] : w)
                                terms.emplace_back(sl.col.at(arena_.shuffle_graft(t, j, wt, S, n)), c);
                            feed(SVec::from_terms(std::move(terms)));
                        }
                    }
                }
            }
        }

        sl.finalize();
        if (n == 1 && sl.std_cols.size() != 1)
            throw std::invalid_argument("build_operad: inconsistent presentation (unit killed)");

        // record the quotient basis
        std::vector<std::string> gen_names;
        for (const auto& g : pres_.gens) gen_names.push_back(g.name);
        Space sp;
        for (int c : sl.std_cols) {
            sp.labels.push_back(arena_.str(sl.trees[c], gen_names));
            out_.basis_trees_[n].push_back(sl.trees[c]);
        }
        const int dim = sp.dim();
        out_.spaces_[n] = std::move(sp);

        // symmetric action
        SymAction sym;
        sym.n = n;
        sym.dim = dim;
        for (int aidx = 0; aidx + 1 < n; ++aidx) {
            Perm s = perm_transposition(n, aidx, aidx + 1);
            LinMap g(dim, dim);
            for (int j = 0; j < dim; ++j)
                g.col(j) = sl.nf(arena_.relabel(sl.trees[sl.std_cols[j]], s));
            sym.gens.push_back(std::move(g));
        }
        out_.syms_[n] = std::move(sym);

        // composition tables (m, slot, k) with m, k >= 2 landing in arity n
        for (int m = 2; m < n; ++m) {
            int k = n - m + 1;
            if (k < 2) continue;
            const auto& bm = out_.basis_trees_[m];
            const auto& bk = out_.basis_trees_[k];
            for (int slot = 0; slot < m; ++slot) {
                std::vector<SVec> tab(bm.size() * bk.size());
                for (std::size_t b1 = 0; b1 < bm.size(); ++b1)
                    for (std::size_t b2 = 0; b2 < bk.size(); ++b2)
                        tab[b1 * bk.size() + b2] = sl.nf(arena_.graft(bm[b1], slot, bk[b2]));
                out_.tables_[{m, slot, k}] = std::move(tab);
            }
        }

        // coordinates of generators of this arity
        for (std::size_t g = 0; g < pres_.gens.size(); ++g) {
            if (pres_.gens[g].arity != n) continue;
            std::vector<TreeId> leaves;
            for (int i = 0; i < n; ++i) leaves.push_back(arena_.leaf(i));
            out_.gen_coords_[static_cast<int>(g)] = sl.nf(arena_.node(static_cast<int>(g), leaves));
        }

        // keep pivot rows as tree combinations for higher arities, then drop
        // the column-indexed form
        for (const auto& [lead, row] : sl.pivots) {
            std::vector<std::pair<Rat, TreeId>> w;
            w.reserve(row.nnz());
            for (const auto& [i, c] : row.entries()) w.emplace_back(c, sl.trees[i]);
            sl.pivot_trees.push_back(std::move(w));
        }
        sl.pivots.clear();
        if (n == nmax_) {
            sl.pivot_trees.clear();
            sl.pivot_trees.shrink_to_fit();
        }
    }
};

OperadPtr Operad::build(const OperadPresentation& pres, int nmax) {
    if (nmax < 2) throw std::invalid_argument("build_operad: N_max must be >= 2");
    auto op = std::make_shared<Operad>();
    op->kind_ = Kind::Presented;
    op->name_ = pres.name;
    op->nmax_ = nmax;
    op->reduced_ = true;
    op->unital1_ = true;
    op->pres_ = std::make_shared<OperadPresentation>(pres);
    QuotientEngine engine(*op->pres_, nmax, *op);
    engine.run();
    return op;
}

OperadPresentation Operad::lie_presentation() {
    OperadPresentation p;
    p.name = "lie";
    p.gens.push_back({"b", 2});
    TreeArena& a = *p.arena;
    TreeId l0 = a.leaf(0), l1 = a.leaf(1), l2 = a.leaf(2);
    // antisymmetry: b(1,2) + b(2,1)
    TreePoly antisym;
    antisym.arity = 2;
    antisym.terms = {{Rat(1), a.node(0, {l0, l1})}, {Rat(1), a.node(0, {l1, l0})}};
    p.relations.push_back(antisym);
    // Jacobi: b(b(1,2),3) + b(b(2,3),1) + b(b(3,1),2)
    TreePoly jac;
    jac.arity = 3;
    jac.terms = {{Rat(1), a.node(0, {a.node(0, {l0, l1}), l2})},
                 {Rat(1), a.node(0, {a.node(0, {l1, l2}), l0})},
                 {Rat(1), a.node(0, {a.node(0, {l2, l0}), l1})}};
    p.relations.push_back(jac);
    return p;
}

OperadPresentation Operad::leib_presentation() {
    OperadPresentation p;
    p.name = "leib";
    p.gens.push_back({"b", 2});
    TreeArena& a = *p.arena;
    TreeId l0 = a.leaf(0), l1 = a.leaf(1), l2 = a.leaf(2);
    // right Leibniz: (xy)z - (xz)y - x(yz)
    TreePoly leib;
    leib.arity = 3;
    leib.terms = {{Rat(1), a.node(0, {a.node(0, {l0, l1}), l2})},
                  {Rat(-1), a.node(0, {a.node(0, {l0, l2}), l1})},
                  {Rat(-1), a.node(0, {l0, a.node(0, {l1, l2})})}};
    p.relations.push_back(leib);
    return p;
}

// ---------------------------------------------------------------------------
// Built-ins with structure constants.

std::vector<int> Operad::assu_unrank(int n, int idx) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> w;
    w.reserve(n);
    int fact = 1;
    for (int i = 2; i < n; ++i) fact *= i;  // (n-1)!
    for (int i = n - 1; i >= 1; --i) {
        int q = idx / fact;
        idx %= fact;
        w.push_back(pool[q]);
        pool.erase(pool.begin() + q);
        fact /= i;
    }
    if (n >= 1) w.push_back(pool[0]);
    return w;
}

int Operad::assu_rank(const std::vector<int>& w) {
    int n = static_cast<int>(w.size());
    int fact = 1;
    for (int i = 2; i < n; ++i) fact *= i;
    int idx = 0;
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < n - 1; ++i) {
        auto it = std::find(pool.begin(), pool.end(), w[i]);
        idx += static_cast<int>(it - pool.begin()) * fact;
        pool.erase(it);
        if (n - 2 - i >= 1) fact /= (n - 1 - i);
    }
    return idx;
}

std::vector<int> Operad::assu_substitute(const std::vector<int>& w, int slot,
                                         const std::vector<int>& v) {
    int k = static_cast<int>(v.size());
    std::vector<int> out;
    out.reserve(w.size() + v.size() - 1);
    for (int x : w) {
        if (x == slot) {
            for (int y : v) out.push_back(y + slot);
        } else {
            out.push_back(x < slot ? x : x + k - 1);
        }
    }
    return out;
}

void Operad::build_spaces_assu() {
    spaces_.assign(nmax_ + 1, Space());
    syms_.assign(nmax_ + 1, SymAction());
    spaces_[0] = Space({"e"});
    syms_[0] = SymAction::trivial(0, 1);
    for (int n = 1; n <= nmax_; ++n) {
        int d = 1;
        for (int i = 2; i <= n; ++i) d *= i;
        Space sp;
        for (int idx = 0; idx < d; ++idx) {
            auto w = assu_unrank(n, idx);
            std::string lbl;
            for (int x : w) lbl += std::to_string(x + 1);
            sp.labels.push_back(lbl);
        }
        spaces_[n] = std::move(sp);
        SymAction sym;
        sym.n = n;
        sym.dim = d;
        for (int a = 0; a + 1 < n; ++a) {
            LinMap g(d, d);
            for (int idx = 0; idx < d; ++idx) {
                auto w = assu_unrank(n, idx);
                for (int& x : w) {
                    if (x == a)
                        x = a + 1;
                    else if (x == a + 1)
                        x = a;
                }
                g.set(assu_rank(w), idx, Rat(1));
            }
            sym.gens.push_back(std::move(g));
        }
        syms_[n] = std::move(sym);
    }
}

void Operad::build_spaces_comu() {
    spaces_.assign(nmax_ + 1, Space());
    syms_.assign(nmax_ + 1, SymAction());
    for (int n = 0; n <= nmax_; ++n) {
        spaces_[n] = Space({"c" + std::to_string(n)});
        syms_[n] = SymAction::trivial(n, 1);
    }
}

void Operad::build_spaces_unit() {
    spaces_.assign(nmax_ + 1, Space());
    syms_.assign(nmax_ + 1, SymAction());
    spaces_[1] = Space({"1"});
    syms_[1] = SymAction::trivial(1, 1);
    for (int n = 0; n <= nmax_; ++n)
        if (n != 1) syms_[n] = SymAction::trivial(n, 0);
}

OperadPtr Operad::builtin(const std::string& name, int nmax) {
    if (name == "lie") return build(lie_presentation(), nmax);
    if (name == "leib") return build(leib_presentation(), nmax);
    auto op = std::make_shared<Operad>();
    op->nmax_ = nmax;
    op->name_ = name;
    if (name == "assu") {
        op->kind_ = Kind::AssU;
        op->reduced_ = false;
        op->unital1_ = true;
        op->build_spaces_assu();
    } else if (name == "comu") {
        op->kind_ = Kind::ComU;
        op->reduced_ = false;
        op->unital1_ = true;
        op->build_spaces_comu();
    } else if (name == "I") {
        op->kind_ = Kind::UnitI;
        op->reduced_ = true;
        op->unital1_ = true;
        op->build_spaces_unit();
    } else {
        throw std::invalid_argument("unknown builtin operad: " + name);
    }
    return op;
}

// ---------------------------------------------------------------------------
// Common accessors and element operations.

int Operad::dim(int n) const {
    if (n < 0 || n > nmax_) return 0;
    return spaces_[n].dim();
}

const Space& Operad::component(int n) const {
    if (n < 0 || n > nmax_) throw std::out_of_range("Operad::component: arity out of window");
    return spaces_[n];
}

const SymAction& Operad::sym(int n) const {
    if (n < 0 || n > nmax_) throw std::out_of_range("Operad::sym: arity out of window");
    return syms_[n];
}

SVec Operad::compose_assu(int m, int b1, int slot, int k, int b2) const {
    (void)b2;
    auto w = assu_unrank(m, b1);
    auto v = assu_unrank(k, b2);
    return SVec::unit(assu_rank(assu_substitute(w, slot, v)));
}

SVec Operad::compose_basis(int m, int b1, int slot, int k, int b2) const {
    // Only table-backed operads are bound by the truncation window; the
    // structure-constant built-ins compose exactly at any arity (needed for
    // intermediate arities when nullary labels are involved).
    if (kind_ == Kind::Presented && m + k - 1 > nmax_)
        throw std::out_of_range("compose_basis: arity overflow beyond N_max");
    if (slot < 0 || slot >= m) throw std::out_of_range("compose_basis: slot out of range");
    if (m == 1) return SVec::unit(b2);  // unit axiom; O(1) = k for every kind here
    if (k == 1) return SVec::unit(b1);
    switch (kind_) {
        case Kind::Presented: {
            auto it = tables_.find({m, slot, k});
            if (it == tables_.end()) throw std::logic_error("compose_basis: missing table");
            return it->second[static_cast<std::size_t>(b1) * dim(k) + b2];
        }
        case Kind::AssU:
            return compose_assu(m, b1, slot, k, b2);
        case Kind::ComU:
            return SVec::unit(0);
        case Kind::UnitI:
            throw std::logic_error("compose_basis: unit operad has no arity >= 2 part");
    }
    throw std::logic_error("unreachable");
}

OperadElement Operad::unit() const {
    if (dim(1) != 1) throw std::logic_error("Operad::unit: O(1) is not one-dimensional");
    return {1, SVec::unit(0)};
}

OperadElement Operad::partial_compose(const OperadElement& x, int slot,
                                      const OperadElement& y) const {
    if (slot < 0 || slot >= x.arity) throw std::out_of_range("partial_compose: slot");
    int n = x.arity + y.arity - 1;
    if (kind_ == Kind::Presented && n > nmax_)
        throw std::out_of_range("partial_compose: arity overflow beyond N_max");
    OperadElement r = zero(n);
    for (const auto& [b1, c1] : x.coords.entries())
        for (const auto& [b2, c2] : y.coords.entries())
            r.coords.axpy(c1 * c2, compose_basis(x.arity, b1, slot, y.arity, b2));
    return r;
}

OperadElement Operad::sym_act(const Perm& p, const OperadElement& x) const {
    if (static_cast<int>(p.size()) != x.arity)
        throw std::invalid_argument("sym_act: permutation size mismatch");
    return {x.arity, sym(x.arity).act(p).apply(x.coords)};
}

OperadElement Operad::generator_element(int g) const {
    if (kind_ != Kind::Presented) throw std::logic_error("generator_element: not presented");
    return {pres_->gens.at(g).arity, gen_coords_.at(g)};
}

TreeId Operad::basis_tree(int n, int idx) const {
    if (kind_ != Kind::Presented) throw std::logic_error("basis_tree: not presented");
    return basis_trees_.at(n).at(idx);
}

const OperadPresentation& Operad::presentation() const {
    if (!pres_) throw std::logic_error("presentation: not a presented operad");
    return *pres_;
}

OperadElement Operad::eval_tree(TreeId t) const {
    if (kind_ != Kind::Presented) throw std::logic_error("eval_tree: not presented");
    const TreeArena& a = *pres_->arena;
    std::function<OperadElement(TreeId)> shape_eval = [&](TreeId u) -> OperadElement {
        const TreeNode& nd = a.get(u);
        if (nd.gen < 0) return unit();
        OperadElement acc = generator_element(nd.gen);
        for (int j = static_cast<int>(nd.kids.size()) - 1; j >= 0; --j)
            acc = partial_compose(acc, j, shape_eval(nd.kids[j]));
        return acc;
    };
    OperadElement positional = shape_eval(t);
    auto ll = a.leaf_labels(t);
    return sym_act(Perm(ll.begin(), ll.end()), positional);
}

OperadElement Operad::mu_default() const {
    switch (kind_) {
        case Kind::Presented: {
            for (std::size_t g = 0; g < pres_->gens.size(); ++g)
                if (pres_->gens[g].arity == 2) return generator_element(static_cast<int>(g));
            throw std::logic_error("mu_default: no binary generator");
        }
        case Kind::AssU:
        case Kind::ComU:
            return basis_element(2, 0);  // the product
        case Kind::UnitI:
            throw std::logic_error("mu_default: unit operad has no binary part");
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Morphisms.

OperadMorphism::OperadMorphism(OperadPtr src, OperadPtr tgt, std::vector<OperadElement> gen_images)
    : src_(std::move(src)), tgt_(std::move(tgt)), images_(std::move(gen_images)) {
    if (src_->kind() != Operad::Kind::Presented && src_->kind() != Operad::Kind::UnitI)
        throw std::invalid_argument("OperadMorphism: source must be presented (or I)");
    int nmax = std::min(src_->nmax(), tgt_->nmax());

    std::function<OperadElement(const TreeArena&, TreeId)> shape_eval =
        [&](const TreeArena& a, TreeId t) -> OperadElement {
        const TreeNode& nd = a.get(t);
        if (nd.gen < 0) return tgt_->unit();
        OperadElement acc = images_.at(nd.gen);
        if (acc.arity != static_cast<int>(nd.kids.size()))
            throw std::invalid_argument("OperadMorphism: generator image arity mismatch");
        for (int j = static_cast<int>(nd.kids.size()) - 1; j >= 0; --j)
            acc = tgt_->partial_compose(acc, j, shape_eval(a, nd.kids[j]));
        return acc;
    };
    // positionally compose the generator images, then relabel once at the top
    auto eval = [&](const TreeArena& a, TreeId t) -> OperadElement {
        OperadElement positional = shape_eval(a, t);
        auto ll = a.leaf_labels(t);
        return tgt_->sym_act(Perm(ll.begin(), ll.end()), positional);
    };

    if (src_->kind() == Operad::Kind::UnitI) {
        for (int n = 0; n <= nmax; ++n) {
            LinMap m(tgt_->dim(n), src_->dim(n));
            if (n == 1) m.col(0) = tgt_->unit().coords;
            mats_[n] = std::move(m);
        }
        return;
    }

    const auto& pres = src_->presentation();
    const TreeArena& a = *pres.arena;
    // relation preservation
    for (const auto& rel : pres.relations) {
        if (rel.arity > nmax) continue;
        SVec img;
        for (const auto& [c, t] : rel.terms) img.axpy(c, eval(a, t).coords);
        if (!img.empty()) {
            throw std::invalid_argument(
                "OperadMorphism: relation not preserved; offending image " + img.str());
        }
    }
    for (int n = 0; n <= nmax; ++n) {
        LinMap m(tgt_->dim(n), src_->dim(n));
        for (int j = 0; j < src_->dim(n); ++j) m.col(j) = eval(a, src_->basis_tree(n, j)).coords;
        mats_[n] = std::move(m);
    }
}

OperadMorphism OperadMorphism::augmentation(OperadPtr src) {
    if (!src->reduced() || !src->unital_arity_one())
        throw std::invalid_argument(
            "augmentation: operad must be reduced with O(1) = k (flags unsatisfied)");
    OperadPtr I = Operad::builtin("I", src->nmax());
    if (src->kind() == Operad::Kind::UnitI) return OperadMorphism(src, I, {});
    std::vector<OperadElement> images;
    for (const auto& g : src->presentation().gens) images.push_back(I->zero(g.arity));
    return OperadMorphism(src, I, std::move(images));
}

OperadElement OperadMorphism::apply(const OperadElement& x) const {
    return {x.arity, mats_.at(x.arity).apply(x.coords)};
}

}  // namespace ocat
