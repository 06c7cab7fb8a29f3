#include "ocat/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ocat {

SVec SVec::unit(int i, Rat c) {
    SVec v;
    if (!is_zero(c)) v.e_.emplace_back(i, std::move(c));
    return v;
}

SVec SVec::from_terms(std::vector<Entry> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SVec v;
    v.e_.reserve(terms.size());
    for (auto& [i, c] : terms) {
        if (!v.e_.empty() && v.e_.back().first == i) {
            v.e_.back().second += c;
            if (is_zero(v.e_.back().second)) v.e_.pop_back();
        } else if (!is_zero(c)) {
            v.e_.emplace_back(i, std::move(c));
        }
    }
    return v;
}

Rat SVec::at(int i) const {
    auto it = std::lower_bound(e_.begin(), e_.end(), i,
                               [](const Entry& a, int b) { return a.first < b; });
    if (it != e_.end() && it->first == i) return it->second;
    return Rat(0);
}

void SVec::set(int i, const Rat& c) {
    auto it = std::lower_bound(e_.begin(), e_.end(), i,
                               [](const Entry& a, int b) { return a.first < b; });
    if (it != e_.end() && it->first == i) {
        if (is_zero(c))
            e_.erase(it);
        else
            it->second = c;
    } else if (!is_zero(c)) {
        e_.insert(it, {i, c});
    }
}

void SVec::add(int i, const Rat& c) {
    if (is_zero(c)) return;
    auto it = std::lower_bound(e_.begin(), e_.end(), i,
                               [](const Entry& a, int b) { return a.first < b; });
    if (it != e_.end() && it->first == i) {
        it->second += c;
        if (is_zero(it->second)) e_.erase(it);
    } else {
        e_.insert(it, {i, c});
    }
}

void SVec::axpy(const Rat& c, const SVec& o) {
    if (is_zero(c) || o.e_.empty()) return;
    std::vector<Entry> out;
    out.reserve(e_.size() + o.e_.size());
    auto a = e_.begin();
    auto b = o.e_.begin();
    while (a != e_.end() || b != o.e_.end()) {
        if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
            out.push_back(*a++);
        } else if (a == e_.end() || b->first < a->first) {
            Rat v = c * b->second;
            if (!is_zero(v)) out.emplace_back(b->first, std::move(v));
            ++b;
        } else {
            Rat v = a->second + c * b->second;
            if (!is_zero(v)) out.emplace_back(a->first, std::move(v));
            ++a;
            ++b;
        }
    }
    e_ = std::move(out);
}

SVec& SVec::operator+=(const SVec& o) {
    axpy(Rat(1), o);
    return *this;
}

SVec& SVec::operator-=(const SVec& o) {
    axpy(Rat(-1), o);
    return *this;
}

SVec& SVec::operator*=(const Rat& c) {
    if (is_zero(c)) {
        e_.clear();
        return *this;
    }
    for (auto& [i, v] : e_) v *= c;
    return *this;
}

std::string SVec::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : e_) {
        if (!first) os << " + ";
        os << rat_str(c) << "*e" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

Space Space::anonymous(int dim, const std::string& prefix) {
    std::vector<std::string> ls;
    ls.reserve(dim);
    for (int i = 0; i < dim; ++i) ls.push_back(prefix + std::to_string(i));
    return Space(std::move(ls));
}

LinMap LinMap::identity(int n) {
    LinMap m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, Rat(1));
    return m;
}

SVec LinMap::apply(const SVec& v) const {
    SVec r;
    for (const auto& [j, c] : v.entries()) {
        if (j < 0 || j >= cols()) throw std::out_of_range("LinMap::apply: index");
        r.axpy(c, cols_[j]);
    }
    return r;
}

LinMap LinMap::compose(const LinMap& inner) const {
    if (inner.rows() != cols()) throw std::invalid_argument("LinMap::compose: shape mismatch");
    LinMap r(rows(), inner.cols());
    for (int j = 0; j < inner.cols(); ++j) r.col(j) = apply(inner.col(j));
    return r;
}

LinMap LinMap::operator+(const LinMap& o) const {
    if (rows() != o.rows() || cols() != o.cols()) throw std::invalid_argument("LinMap::+: shape");
    LinMap r = *this;
    for (int j = 0; j < cols(); ++j) r.col(j) += o.col(j);
    return r;
}

LinMap LinMap::operator-(const LinMap& o) const {
    if (rows() != o.rows() || cols() != o.cols()) throw std::invalid_argument("LinMap::-: shape");
    LinMap r = *this;
    for (int j = 0; j < cols(); ++j) r.col(j) -= o.col(j);
    return r;
}

LinMap LinMap::scaled(const Rat& c) const {
    LinMap r = *this;
    for (int j = 0; j < cols(); ++j) r.col(j) *= c;
    return r;
}

bool LinMap::operator==(const LinMap& o) const {
    if (rows_ != o.rows_ || cols() != o.cols()) return false;
    for (int j = 0; j < cols(); ++j)
        if (!(cols_[j] == o.cols_[j])) return false;
    return true;
}

bool LinMap::is_zero() const {
    for (const auto& c : cols_)
        if (!c.empty()) return false;
    return true;
}

LinMap LinMap::transpose() const {
    LinMap r(cols(), rows());
    for (int j = 0; j < cols(); ++j)
        for (const auto& [i, c] : cols_[j].entries()) r.set(j, i, c);
    return r;
}

std::string LinMap::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows(); ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < cols(); ++j) os << (j ? " " : "") << rat_str(at(i, j));
        os << (i + 1 == rows() ? "]" : "\n");
    }
    if (rows() == 0) os << "[]";
    return os.str();
}

Echelon::Echelon(const LinMap& m) : dom_dim_(m.cols()) {
    for (int j = 0; j < m.cols(); ++j) {
        Col c;
        c.v = m.col(j);
        c.pre = SVec::unit(j);
        // eliminate against existing pivots
        while (!c.v.empty()) {
            auto it = by_lead_.find(c.v.lead());
            if (it == by_lead_.end()) break;
            const Col& p = piv_[it->second];
            Rat f = -c.v.lead_coeff();  // pivot columns are lead-normalized
            c.v.axpy(f, p.v);
            c.pre.axpy(f, p.pre);
        }
        if (c.v.empty()) {
            ker_.push_back(c.pre);
        } else {
            Rat inv = Rat(1) / c.v.lead_coeff();
            c.v *= inv;
            c.pre *= inv;
            by_lead_[c.v.lead()] = static_cast<int>(piv_.size());
            piv_.push_back(std::move(c));
        }
    }
    for (const auto& [r, _] : by_lead_) piv_rows_.push_back(r);
    ker_ = rref(std::move(ker_));
}

SVec Echelon::reduce(const SVec& b) const {
    SVec rest = b;
    SVec out;
    while (!rest.empty()) {
        auto it = by_lead_.find(rest.lead());
        if (it == by_lead_.end()) {
            out.add(rest.lead(), rest.lead_coeff());
            rest.set(rest.lead(), Rat(0));
        } else {
            rest.axpy(-rest.lead_coeff(), piv_[it->second].v);
        }
    }
    return out;
}

std::optional<SVec> Echelon::solve(const SVec& b) const {
    SVec v = b;
    SVec x;
    while (!v.empty()) {
        auto it = by_lead_.find(v.lead());
        if (it == by_lead_.end()) return std::nullopt;
        Rat f = v.lead_coeff();
        v.axpy(-f, piv_[it->second].v);
        x.axpy(f, piv_[it->second].pre);
    }
    return x;
}

bool Echelon::in_span(const SVec& b) const { return solve(b).has_value(); }

std::vector<SVec> rref(std::vector<SVec> rows) {
    std::vector<SVec> piv;
    std::map<int, int> by_lead;
    for (auto& r : rows) {
        while (!r.empty()) {
            auto it = by_lead.find(r.lead());
            if (it == by_lead.end()) break;
            r.axpy(-r.lead_coeff(), piv[it->second]);
        }
        if (r.empty()) continue;
        r *= Rat(1) / r.lead_coeff();
        by_lead[r.lead()] = static_cast<int>(piv.size());
        piv.push_back(std::move(r));
    }
    // Back-substitute in decreasing pivot order; rows substituted in are
    // already fully reduced, so their tails never cascade.
    for (auto it = by_lead.rbegin(); it != by_lead.rend(); ++it) {
        SVec& row = piv[it->second];
        SVec out;
        SVec work = row;
        while (!work.empty()) {
            int l = work.lead();
            Rat c = work.lead_coeff();
            work.set(l, Rat(0));
            auto jt = by_lead.find(l);
            if (jt != by_lead.end() && jt->second != it->second) {
                // row -= c * piv_row(l); removes c*e_l, pulls in -c * tail(l)
                SVec tail = piv[jt->second];
                tail.set(l, Rat(0));
                work.axpy(-c, tail);
            } else {
                out.add(l, c);
            }
        }
        row = std::move(out);
    }
    std::vector<SVec> out;
    for (const auto& [lead, idx] : by_lead) out.push_back(piv[idx]);
    return out;
}

int rank_of(const LinMap& m) { return Echelon(m).rank(); }

std::pair<Space, LinMap> kernel(const LinMap& f, const Space& domain) {
    Echelon ech(f);
    const auto& ker = ech.kernel();
    Space ks;
    LinMap incl(domain.dim(), static_cast<int>(ker.size()));
    for (std::size_t j = 0; j < ker.size(); ++j) {
        ks.labels.push_back("ker" + std::to_string(j));
        incl.col(static_cast<int>(j)) = ker[j];
    }
    return {std::move(ks), std::move(incl)};
}

std::pair<Space, LinMap> cokernel(const LinMap& f, const Space& codomain) {
    Echelon ech(f);
    const auto& piv = ech.pivot_rows();
    std::vector<int> keep;
    {
        std::size_t p = 0;
        for (int i = 0; i < codomain.dim(); ++i) {
            if (p < piv.size() && piv[p] == i) {
                ++p;
            } else {
                keep.push_back(i);
            }
        }
    }
    Space qs;
    for (int i : keep) qs.labels.push_back(codomain.labels[i]);
    // projection: reduce each codomain basis vector modulo im f, then express
    // in the kept coordinates
    std::vector<int> pos(codomain.dim(), -1);
    for (std::size_t j = 0; j < keep.size(); ++j) pos[keep[j]] = static_cast<int>(j);
    LinMap proj(static_cast<int>(keep.size()), codomain.dim());
    for (int i = 0; i < codomain.dim(); ++i) {
        SVec red = ech.reduce(SVec::unit(i));
        proj.col(i) = red.mapped([&](int r) { return pos[r]; });
    }
    return {std::move(qs), std::move(proj)};
}

}  // namespace ocat
