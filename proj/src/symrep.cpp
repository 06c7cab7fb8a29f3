#include "ocat/symrep.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ocat {

Perm perm_identity(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm perm_compose(const Perm& p, const Perm& q) {
    Perm r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
}

Perm perm_inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}

Perm perm_transposition(int n, int a, int b) {
    Perm p = perm_identity(n);
    std::swap(p[a], p[b]);
    return p;
}

bool perm_is_identity(const Perm& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != static_cast<int>(i)) return false;
    return true;
}

std::vector<int> perm_adjacent_word(const Perm& p) {
    // q := p * s_{a1} * ... * s_{ak} = id  =>  p = s_{ak} * ... * s_{a1}
    Perm q = p;
    std::vector<int> word;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a + 1 < static_cast<int>(q.size()); ++a) {
            if (q[a] > q[a + 1]) {
                word.push_back(a);
                std::swap(q[a], q[a + 1]);
                changed = true;
            }
        }
    }
    std::reverse(word.begin(), word.end());
    return word;  // p = s_{word[0]} * s_{word[1]} * ... (functional order)
}

Perm perm_pattern(const Perm& p, const std::vector<int>& subset) {
    std::vector<std::pair<int, int>> vals;  // (p[s], rank-in-subset)
    for (std::size_t r = 0; r < subset.size(); ++r)
        vals.emplace_back(p[subset[r]], static_cast<int>(r));
    std::sort(vals.begin(), vals.end());
    Perm pat(subset.size());
    for (std::size_t rank = 0; rank < vals.size(); ++rank) pat[vals[rank].second] = static_cast<int>(rank);
    return pat;
}

Perm perm_blowup(const Perm& p, int slot, int k) {
    const int m = static_cast<int>(p.size());
    Perm b(m + k - 1);
    for (int j = 0; j < m; ++j) {
        if (j == slot) {
            for (int s = 0; s < k; ++s) b[j + s] = p[slot] + s;
        } else {
            int src = j < slot ? j : j + k - 1;
            int dst = p[j] < p[slot] ? p[j] : p[j] + k - 1;
            b[src] = dst;
        }
    }
    return b;
}

SymAction SymAction::trivial(int n, int dim) {
    SymAction s;
    s.n = n;
    s.dim = dim;
    for (int a = 0; a + 1 < n; ++a) s.gens.push_back(LinMap::identity(dim));
    return s;
}

LinMap SymAction::act(const Perm& p) const {
    LinMap m = LinMap::identity(dim);
    // p = s_{w0} * s_{w1} * ...; act(p) = M(w0) * M(w1) * ...
    for (int a : perm_adjacent_word(p)) m = m.compose(gens[a]);
    return m;
}

bool SymAction::verify() const {
    LinMap id = LinMap::identity(dim);
    for (int a = 0; a + 1 < n; ++a) {
        if (!(gens[a].compose(gens[a]) == id)) return false;
        if (a + 2 < n) {
            LinMap lhs = gens[a].compose(gens[a + 1]).compose(gens[a]);
            LinMap rhs = gens[a + 1].compose(gens[a]).compose(gens[a + 1]);
            if (!(lhs == rhs)) return false;
        }
        for (int b = a + 2; b + 1 < n; ++b) {
            if (!(gens[a].compose(gens[b]) == gens[b].compose(gens[a]))) return false;
        }
    }
    return true;
}

LinMap kron(const LinMap& a, const LinMap& b) {
    LinMap r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int ja = 0; ja < a.cols(); ++ja) {
        for (const auto& [ia, ca] : a.col(ja).entries()) {
            for (int jb = 0; jb < b.cols(); ++jb) {
                for (const auto& [ib, cb] : b.col(jb).entries()) {
                    r.set(ia * b.rows() + ib, ja * b.cols() + jb, ca * cb);
                }
            }
        }
    }
    return r;
}

TensorResult tensor(const Space& a, const SymAction& sa, const Space& b, const SymAction& sb) {
    TensorResult t;
    for (const auto& la : a.labels)
        for (const auto& lb : b.labels) t.space.labels.push_back("(" + la + ")x(" + lb + ")");
    int dim = a.dim() * b.dim();
    t.action.left.n = sa.n;
    t.action.left.dim = dim;
    for (const auto& g : sa.gens) t.action.left.gens.push_back(kron(g, LinMap::identity(b.dim())));
    t.action.right.n = sb.n;
    t.action.right.dim = dim;
    for (const auto& g : sb.gens) t.action.right.gens.push_back(kron(LinMap::identity(a.dim()), g));
    return t;
}

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        if (k == 0) break;
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

InducedResult induce(const Space& a, const ProductAction& act) {
    const int n1 = act.left.n;
    const int n2 = act.right.n;
    const int n = n1 + n2;
    const int d = a.dim();
    InducedResult res;
    res.cosets = subsets_of_size(n, n1);
    res.block_dim = d;
    const int ncos = static_cast<int>(res.cosets.size());
    for (int c = 0; c < ncos; ++c) {
        std::ostringstream os;
        os << "{";
        for (std::size_t i = 0; i < res.cosets[c].size(); ++i)
            os << (i ? "," : "") << res.cosets[c][i] + 1;
        os << "}";
        for (const auto& la : a.labels) res.space.labels.push_back(os.str() + ":" + la);
    }
    // index of a subset in the lex enumeration
    std::map<std::vector<int>, int> cidx;
    for (int c = 0; c < ncos; ++c) cidx[res.cosets[c]] = c;

    res.action.n = n;
    res.action.dim = ncos * d;
    for (int p = 0; p + 1 < n; ++p) {
        LinMap g(res.action.dim, res.action.dim);
        for (int c = 0; c < ncos; ++c) {
            const auto& sub = res.cosets[c];
            bool has_p = std::binary_search(sub.begin(), sub.end(), p);
            bool has_q = std::binary_search(sub.begin(), sub.end(), p + 1);
            if (has_p == has_q) {
                // coset fixed; act by the adjacent transposition of the
                // corresponding block factor
                const LinMap* block;
                if (has_p) {
                    int r = static_cast<int>(std::lower_bound(sub.begin(), sub.end(), p) - sub.begin());
                    block = &act.left.gens[r];
                } else {
                    std::vector<int> comp;
                    for (int i = 0; i < n; ++i)
                        if (!std::binary_search(sub.begin(), sub.end(), i)) comp.push_back(i);
                    int r = static_cast<int>(std::lower_bound(comp.begin(), comp.end(), p) - comp.begin());
                    block = &act.right.gens[r];
                }
                for (int j = 0; j < d; ++j)
                    for (const auto& [i, coef] : block->col(j).entries())
                        g.set(c * d + i, c * d + j, coef);
            } else {
                // coset moves, block untouched
                std::vector<int> moved = sub;
                for (int& x : moved) {
                    if (x == p)
                        x = p + 1;
                    else if (x == p + 1)
                        x = p;
                }
                std::sort(moved.begin(), moved.end());
                int c2 = cidx.at(moved);
                for (int j = 0; j < d; ++j) g.set(c2 * d + j, c * d + j, Rat(1));
            }
        }
        res.action.gens.push_back(std::move(g));
    }
    return res;
}

std::pair<Space, LinMap> coinvariants(const Space& v, const std::vector<LinMap>& gens) {
    CoinvariantData d = coinvariants_with_section(v, gens);
    return {std::move(d.space), std::move(d.proj)};
}

CoinvariantData coinvariants_with_section(const Space& v, const std::vector<LinMap>& gens) {
    const int d = v.dim();
    for (const auto& g : gens) {
        if (g.rows() != d || g.cols() != d) throw std::invalid_argument("coinvariants: shape");
        if (rank_of(g) != d) throw std::invalid_argument("coinvariants: non-invertible generator");
    }
    LinMap span(d, d * static_cast<int>(gens.size()));
    int col = 0;
    for (const auto& g : gens) {
        for (int b = 0; b < d; ++b) {
            SVec w = g.col(b);
            w.add(b, Rat(-1));
            span.col(col++) = std::move(w);
        }
    }
    Echelon ech(span);
    const auto& piv = ech.pivot_rows();
    std::vector<int> keep;
    std::size_t p = 0;
    for (int i = 0; i < d; ++i) {
        if (p < piv.size() && piv[p] == i) {
            ++p;
        } else {
            keep.push_back(i);
        }
    }
    CoinvariantData out;
    std::vector<int> pos(d, -1);
    for (std::size_t j = 0; j < keep.size(); ++j) {
        out.space.labels.push_back(v.labels[keep[j]]);
        pos[keep[j]] = static_cast<int>(j);
    }
    out.proj = LinMap(static_cast<int>(keep.size()), d);
    for (int i = 0; i < d; ++i)
        out.proj.col(i) = ech.reduce(SVec::unit(i)).mapped([&](int r) { return pos[r]; });
    out.sect = LinMap(d, static_cast<int>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j)
        out.sect.set(keep[j], static_cast<int>(j), Rat(1));
    return out;
}

LinMap averaging_idempotent(int dim, const std::vector<LinMap>& gens) {
    // BFS closure of the generated group (small groups only)
    std::vector<LinMap> elems{LinMap::identity(dim)};
    auto key = [](const LinMap& m) {
        std::ostringstream os;
        for (int j = 0; j < m.cols(); ++j)
            for (const auto& [i, c] : m.col(j).entries()) os << j << ":" << i << ":" << rat_str(c) << ";";
        return os.str();
    };
    std::set<std::string> seen{key(elems[0])};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : gens) {
            LinMap next = g.compose(elems[head]);
            if (seen.insert(key(next)).second) elems.push_back(std::move(next));
            if (elems.size() > 100000) throw std::runtime_error("averaging_idempotent: group too large");
        }
    }
    LinMap sum  = LinMap::zero(dim, dim);
    for (const auto& m : elems) sum = sum + m;
    return sum.scaled(Rat(1) / Rat(static_cast<long>(elems.size())));
}

}  // namespace ocat
