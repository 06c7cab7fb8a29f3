#include "ocat/catprop.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ocat {

std::string CatElt::key() const {
    std::ostringstream os;
    if (f.empty()) {
        os << "-";
    } else {
        for (int x : f) {
            if (x > 8) throw std::logic_error("CatElt::key: outputs beyond 9 unsupported");
            os << x + 1;
        }
    }
    os << "|";
    for (std::size_t j = 0; j < labels.size(); ++j) os << (j ? "," : "") << labels[j];
    return os.str();
}

CatElt CatElt::from_key(const std::string& key, int m, int n) {
    auto bar = key.find('|');
    if (bar == std::string::npos) throw std::invalid_argument("CatElt key: missing '|'");
    CatElt e;
    std::string fpart = key.substr(0, bar);
    if (fpart != "-") {
        for (char c : fpart) {
            if (c < '1' || c > '9') throw std::invalid_argument("CatElt key: bad digit");
            e.f.push_back(c - '1');
        }
    }
    std::string lpart = key.substr(bar + 1);
    if (!lpart.empty()) {
        std::istringstream ls(lpart);
        std::string tok;
        while (std::getline(ls, tok, ',')) e.labels.push_back(std::stoi(tok));
    }
    if (e.m() != m || e.n() != n) throw std::invalid_argument("CatElt key: shape mismatch");
    return e;
}

void CatMorphism::add(const CatElt& e, const Rat& c) {
    if (ocat::is_zero(c)) return;
    auto [it, fresh] = terms.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (ocat::is_zero(it->second)) terms.erase(it);
    }
}

CatMorphism& CatMorphism::operator+=(const CatMorphism& o) {
    for (const auto& [e, c] : o.terms) add(e, c);
    return *this;
}

CatMorphism& CatMorphism::operator-=(const CatMorphism& o) {
    for (const auto& [e, c] : o.terms) add(e, -c);
    return *this;
}

CatMorphism& CatMorphism::operator*=(const Rat& c) {
    if (ocat::is_zero(c)) {
        terms.clear();
        return *this;
    }
    for (auto& [e, v] : terms) v *= c;
    return *this;
}

bool CatMorphism::operator==(const CatMorphism& o) const {
    return m == o.m && n == o.n && terms == o.terms;
}

const CatCat::HomSpace& CatCat::hom(int m, int n) const {
    if (m < 0 || n < 0 || m > nmax() || n > nmax())
        throw std::out_of_range("CatCat::hom: object out of window");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find({m, n});
    if (it != cache_.end()) return *it->second;

    auto hs = std::make_unique<HomSpace>();
    auto emit_for_map = [&](const std::vector<int>& f) {
        std::vector<std::vector<int>> fibres(n);
        for (int x = 0; x < m; ++x) fibres[f[x]].push_back(x);
        if (O_->reduced()) {
            for (const auto& fb : fibres)
                if (fb.empty()) return;
        }
        for (int j = 0; j < n; ++j)
            if (O_->dim(static_cast<int>(fibres[j].size())) == 0) return;
        std::vector<int> lab(n, 0);
        while (true) {
            CatElt e;
            e.f = f;
            e.labels = lab;
            hs->index[e] = static_cast<int>(hs->basis.size());
            hs->space.labels.push_back(e.key());
            hs->basis.push_back(std::move(e));
            int j = n - 1;
            while (j >= 0 && ++lab[j] == O_->dim(static_cast<int>(fibres[j].size())))
                lab[j--] = 0;
            if (j < 0) break;
        }
    };

    if (m == 0) {
        emit_for_map({});
    } else if (n > 0) {
        std::vector<int> f(m, 0);
        while (true) {
            emit_for_map(f);
            int x = m - 1;
            while (x >= 0 && ++f[x] == n) f[x--] = 0;
            if (x < 0) break;
        }
    }
    auto& ref = *hs;
    cache_[{m, n}] = std::move(hs);
    return ref;
}

long long CatCat::dim_by_formula(int m, int n) const {
    if (n == 0) return m == 0 ? 1 : 0;
    std::vector<long long> fact(m + 1, 1);
    for (int i = 1; i <= m; ++i) fact[i] = fact[i - 1] * i;
    long long total = 0;
    std::vector<int> parts(n, 0);
    std::function<void(int, int)> rec = [&](int j, int left) {
        if (j == n) {
            if (left != 0) return;
            long long coef = fact[m];
            long long dims = 1;
            for (int i = 0; i < n; ++i) {
                coef /= fact[parts[i]];
                dims *= O_->dim(parts[i]);
            }
            total += coef * dims;
            return;
        }
        for (int v = 0; v <= left; ++v) {
            parts[j] = v;
            rec(j + 1, left - v);
        }
    };
    rec(0, m);
    return total;
}

CatMorphism CatCat::identity(int n) const {
    CatElt e;
    e.f.resize(n);
    std::iota(e.f.begin(), e.f.end(), 0);
    int unit_idx = n > 0 ? static_cast<int>(O_->unit().coords.lead()) : 0;
    e.labels.assign(n, unit_idx);
    CatMorphism r;
    r.m = r.n = n;
    r.add(e, Rat(1));
    return r;
}

CatMorphism CatCat::single(const CatElt& e, Rat c) const {
    CatMorphism r;
    r.m = e.m();
    r.n = e.n();
    r.add(e, c);
    return r;
}

CatMorphism CatCat::from_element(const OperadElement& x) const {
    CatMorphism r;
    r.m = x.arity;
    r.n = 1;
    for (const auto& [b, c] : x.coords.entries()) {
        CatElt e;
        e.f.assign(x.arity, 0);
        e.labels = {b};
        r.add(e, c);
    }
    return r;
}

OperadElement CatCat::to_element(const CatMorphism& xi) const {
    if (xi.n != 1) throw std::invalid_argument("to_element: target object must be 1");
    OperadElement x = O_->zero(xi.m);
    for (const auto& [e, c] : xi.terms) x.coords.add(e.labels[0], c);
    return x;
}

CatMorphism CatCat::perm_morphism(const Perm& p) const {
    int n = static_cast<int>(p.size());
    CatElt e;
    e.f.assign(p.begin(), p.end());
    int unit_idx = n > 0 ? static_cast<int>(O_->unit().coords.lead()) : 0;
    e.labels.assign(n, unit_idx);
    CatMorphism r;
    r.m = r.n = n;
    r.add(e, Rat(1));
    return r;
}

void CatCat::compose_basis_elt(const CatElt& g, const CatElt& f, CatMorphism& out,
                               const Rat& coeff) const {
    const int m = f.m();
    const int p = g.n();
    CatElt base;
    base.f.resize(m);
    for (int x = 0; x < m; ++x) base.f[x] = g.f[f.f[x]];
    base.labels.assign(p, 0);

    std::vector<std::vector<int>> ffib(f.n()), hfib(p), gfib(p);
    for (int x = 0; x < m; ++x) ffib[f.f[x]].push_back(x);
    for (int x = 0; x < m; ++x) hfib[base.f[x]].push_back(x);
    for (int i = 0; i < g.m(); ++i) gfib[g.f[i]].push_back(i);

    std::vector<OperadElement> out_labels(p);
    for (int j = 0; j < p; ++j) {
        const auto& ins = gfib[j];  // inputs of the label at output j, increasing
        OperadElement acc = O_->basis_element(static_cast<int>(ins.size()), g.labels[j]);
        for (int t = static_cast<int>(ins.size()) - 1; t >= 0; --t) {
            int i = ins[t];
            acc = O_->partial_compose(
                acc, t, O_->basis_element(static_cast<int>(ffib[i].size()), f.labels[i]));
        }
        // permutation converting block order of the union of fibres to
        // increasing order
        std::vector<int> blockseq;
        for (int i : ins)
            for (int x : ffib[i]) blockseq.push_back(x);
        const auto& sorted = hfib[j];
        Perm sigma(blockseq.size());
        for (std::size_t pos = 0; pos < blockseq.size(); ++pos) {
            sigma[pos] = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), blockseq[pos]) - sorted.begin());
        }
        acc = O_->sym_act(sigma, acc);
        out_labels[j] = std::move(acc);
    }

    std::function<void(int, Rat)> expand = [&](int j, Rat c) {
        if (j == p) {
            out.add(base, c);
            return;
        }
        for (const auto& [b, cb] : out_labels[j].coords.entries()) {
            base.labels[j] = b;
            expand(j + 1, c * cb);
        }
    };
    expand(0, coeff);
}

CatMorphism CatCat::compose(const CatMorphism& eta, const CatMorphism& xi) const {
    if (xi.n != eta.m) throw std::invalid_argument("CatCat::compose: shape mismatch");
    CatMorphism out;
    out.m = xi.m;
    out.n = eta.n;
    for (const auto& [g, cg] : eta.terms)
        for (const auto& [f, cf] : xi.terms) compose_basis_elt(g, f, out, cg * cf);
    return out;
}

CatMorphism CatCat::boxplus(const CatMorphism& a, const CatMorphism& b) const {
    if (a.m + b.m > nmax() || a.n + b.n > nmax())
        throw std::out_of_range("boxplus: object overflow beyond N_max");
    CatMorphism out;
    out.m = a.m + b.m;
    out.n = a.n + b.n;
    for (const auto& [ea, ca] : a.terms) {
        for (const auto& [eb, cb] : b.terms) {
            CatElt e;
            e.f = ea.f;
            for (int x : eb.f) e.f.push_back(x + a.n);
            e.labels = ea.labels;
            e.labels.insert(e.labels.end(), eb.labels.begin(), eb.labels.end());
            out.add(e, ca * cb);
        }
    }
    return out;
}

CatMorphism CatCat::mu_i(const OperadElement& mu, int n, int i) const {
    if (mu.arity != 2) throw std::invalid_argument("mu_i: mu must be binary");
    if (i < 0 || i >= n || n + 1 > nmax()) throw std::out_of_range("mu_i: index out of range");
    int unit_idx = static_cast<int>(O_->unit().coords.lead());
    CatMorphism out;
    out.m = n + 1;
    out.n = n;
    for (const auto& [b, c] : mu.coords.entries()) {
        CatElt e;
        e.f.resize(n + 1);
        for (int x = 0; x < n; ++x) e.f[x] = x;
        e.f[n] = i;
        e.labels.assign(n, unit_idx);
        e.labels[i] = b;
        out.add(e, c);
    }
    return out;
}

CatMorphism CatCat::mu_sum(const OperadElement& mu, int n) const {
    CatMorphism out;
    out.m = n + 1;
    out.n = n;
    for (int i = 0; i < n; ++i) out += mu_i(mu, n, i);
    return out;
}

SVec CatCat::coords(const CatMorphism& xi) const {
    const HomSpace& hs = hom(xi.m, xi.n);
    SVec v;
    for (const auto& [e, c] : xi.terms) v.add(hs.index.at(e), c);
    return v;
}

CatMorphism cat_apply(const OperadMorphism& phi, const CatCat& src, const CatCat& tgt,
                      const CatMorphism& xi) {
    (void)src;
    (void)tgt;
    CatMorphism out;
    out.m = xi.m;
    out.n = xi.n;
    for (const auto& [e, c] : xi.terms) {
        std::vector<std::vector<int>> fib(e.n());
        for (int x = 0; x < e.m(); ++x) fib[e.f[x]].push_back(x);
        CatElt base = e;
        std::function<void(int, Rat)> expand = [&](int j, Rat coef) {
            if (j == e.n()) {
                out.add(base, coef);
                return;
            }
            int k = static_cast<int>(fib[j].size());
            OperadElement img = phi.apply(phi.source()->basis_element(k, e.labels[j]));
            for (const auto& [b, cb] : img.coords.entries()) {
                base.labels[j] = b;
                expand(j + 1, coef * cb);
            }
        };
        expand(0, c);
    }
    return out;
}

LeibnizReport leibniz_check(const CatCat& cat, const OperadElement& mu, LeibnizMode mode,
                            int max_arity) {
    const OperadPtr& O = cat.operad();
    if (mu.arity != 2) throw std::invalid_argument("leibniz_check: mu must be binary");
    if (max_arity + 1 > O->nmax())
        throw std::out_of_range("leibniz_check: arity overflow beyond N_max");

    CatMorphism mu_m = cat.from_element(mu);

    std::vector<OperadElement> candidates;
    if (mode == LeibnizMode::Generators) {
        if (O->kind() == Operad::Kind::Presented) {
            for (std::size_t g = 0; g < O->presentation().gens.size(); ++g)
                candidates.push_back(O->generator_element(static_cast<int>(g)));
        } else {
            // built-ins: generated by the product, plus the nullary element
            // when the operad is not reduced
            candidates.push_back(O->basis_element(2, 0));
            if (!O->reduced() && O->dim(0) > 0) candidates.push_back(O->basis_element(0, 0));
        }
    } else {
        for (int n = O->min_arity(); n <= max_arity; ++n)
            for (int b = 0; b < O->dim(n); ++b) candidates.push_back(O->basis_element(n, b));
    }

    for (const auto& nu : candidates) {
        int n = nu.arity;
        if (n + 1 > O->nmax()) continue;
        CatMorphism lhs =
            cat.compose(mu_m, cat.boxplus(cat.from_element(nu), cat.identity(1)));
        CatMorphism rhs = cat.compose(cat.from_element(nu), cat.mu_sum(mu, n));
        lhs -= rhs;
        if (!lhs.is_zero()) {
            LeibnizReport rep;
            rep.holds = false;
            rep.witness_nu = nu;
            rep.defect = cat.to_element(lhs);
            return rep;
        }
    }
    return LeibnizReport{};
}

}  // namespace ocat
