#include "ocat/hopf.hpp"

#include <algorithm>
#include <functional>

namespace ocat {

WordAlgebra::WordAlgebra(int d, int cap) : d_(d), cap_(cap) {
    std::vector<int> w;
    std::function<void(int)> rec = [&](int len) {
        if (static_cast<int>(w.size()) == len) {
            index_[w] = static_cast<int>(words_.size());
            words_.push_back(w);
            return;
        }
        for (int l = 0; l < d_; ++l) {
            w.push_back(l);
            rec(len);
            w.pop_back();
        }
    };
    for (int len = 0; len <= cap_; ++len) rec(len);
}

int WordAlgebra::product(int a, int b) const {
    const auto& wa = words_[a];
    const auto& wb = words_[b];
    if (static_cast<int>(wa.size() + wb.size()) > cap_) return -1;
    std::vector<int> w = wa;
    w.insert(w.end(), wb.begin(), wb.end());
    return index_.at(w);
}

std::pair<Rat, int> WordAlgebra::antipode(int a) const {
    std::vector<int> w = words_[a];
    std::reverse(w.begin(), w.end());
    Rat sign = (w.size() % 2 == 0) ? Rat(1) : Rat(-1);
    return {sign, index_.at(w)};
}

namespace {

// basis of H (x) H (total degree matched), and of H (x) H (x) H
struct PairBasis {
    std::vector<std::pair<int, int>> elems;
    std::map<std::pair<int, int>, int> index;
};

PairBasis pair_basis(const WordAlgebra& h) {
    PairBasis pb;
    for (int a = 0; a < h.dim(); ++a) {
        for (int b = 0; b < h.dim(); ++b) {
            if (h.degree(a) + h.degree(b) > h.cap()) continue;
            pb.index[{a, b}] = static_cast<int>(pb.elems.size());
            pb.elems.emplace_back(a, b);
        }
    }
    return pb;
}

struct TripleBasis {
    std::vector<std::tuple<int, int, int>> elems;
    std::map<std::tuple<int, int, int>, int> index;
};

TripleBasis triple_basis(const WordAlgebra& h) {
    TripleBasis tb;
    for (int a = 0; a < h.dim(); ++a)
        for (int b = 0; b < h.dim(); ++b)
            for (int c = 0; c < h.dim(); ++c) {
                if (h.degree(a) + h.degree(b) + h.degree(c) > h.cap()) continue;
                tb.index[{a, b, c}] = static_cast<int>(tb.elems.size());
                tb.elems.emplace_back(a, b, c);
            }
    return tb;
}

// Delta(w) = sum over ordered splittings of the letter positions
SVec coproduct(const WordAlgebra& h, const PairBasis& pb, int a) {
    const auto& w = h.word(a);
    int len = static_cast<int>(w.size());
    SVec out;
    for (int mask = 0; mask < (1 << len); ++mask) {
        std::vector<int> left, right;
        for (int p = 0; p < len; ++p) {
            if (mask & (1 << p))
                left.push_back(w[p]);
            else
                right.push_back(w[p]);
        }
        out.add(pb.index.at({h.index(left), h.index(right)}), Rat(1));
    }
    return out;
}

}  // namespace

bool hopf_axioms_ok(int d, int cap, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    WordAlgebra h(d, cap);
    PairBasis pb = pair_basis(h);
    TripleBasis tb = triple_basis(h);
    const int dh = h.dim();
    const int dp = static_cast<int>(pb.elems.size());
    const int dt = static_cast<int>(tb.elems.size());

    LinMap delta(dp, dh);
    for (int a = 0; a < dh; ++a) delta.col(a) = coproduct(h, pb, a);

    // coassociativity into the triple basis (degree preserved, so no
    // truncation occurs inside the window)
    LinMap d_left(dt, dp), d_right(dt, dp);
    for (int j = 0; j < dp; ++j) {
        auto [a, b] = pb.elems[j];
        SVec da = coproduct(h, pb, a);
        for (const auto& [k, c] : da.entries()) {
            auto [a1, a2] = pb.elems[k];
            d_left.col(j).add(tb.index.at({a1, a2, b}), c);
        }
        SVec db = coproduct(h, pb, b);
        for (const auto& [k, c] : db.entries()) {
            auto [b1, b2] = pb.elems[k];
            d_right.col(j).add(tb.index.at({a, b1, b2}), c);
        }
    }
    if (!(d_left.compose(delta) == d_right.compose(delta)))
        return fail("coassociativity fails");

    // counit: (eps (x) id) Delta = id = (id (x) eps) Delta
    LinMap l_counit(dh, dh), r_counit(dh, dh);
    for (int a = 0; a < dh; ++a) {
        for (const auto& [k, c] : delta.col(a).entries()) {
            auto [x, y] = pb.elems[k];
            if (h.degree(x) == 0) l_counit.col(a).add(y, c);
            if (h.degree(y) == 0) r_counit.col(a).add(x, c);
        }
    }
    if (!(l_counit == LinMap::identity(dh)) || !(r_counit == LinMap::identity(dh)))
        return fail("counit axiom fails");

    // antipode: m(chi (x) id) Delta = eta . eps = m(id (x) chi) Delta
    LinMap conv_l(dh, dh), conv_r(dh, dh);
    for (int a = 0; a < dh; ++a) {
        for (const auto& [k, c] : delta.col(a).entries()) {
            auto [x, y] = pb.elems[k];
            auto [sx, xr] = h.antipode(x);
            int p1 = h.product(xr, y);
            if (p1 >= 0) conv_l.col(a).add(p1, c * sx);
            auto [sy, yr] = h.antipode(y);
            int p2 = h.product(x, yr);
            if (p2 >= 0) conv_r.col(a).add(p2, c * sy);
        }
    }
    LinMap eta_eps(dh, dh);
    eta_eps.set(h.unit_index(), h.unit_index(), Rat(1));
    if (!(conv_l == eta_eps) || !(conv_r == eta_eps))
        return fail("antipode convolution identity fails");

    // Delta is an algebra map where the product stays in the window
    for (int a = 0; a < dh; ++a) {
        for (int b = 0; b < dh; ++b) {
            int ab = h.product(a, b);
            if (ab < 0) continue;
            SVec lhs = delta.col(ab);
            SVec rhs;
            for (const auto& [k1, c1] : delta.col(a).entries()) {
                auto [x1, y1] = pb.elems[k1];
                for (const auto& [k2, c2] : delta.col(b).entries()) {
                    auto [x2, y2] = pb.elems[k2];
                    int px = h.product(x1, x2);
                    int py = h.product(y1, y2);
                    if (px >= 0 && py >= 0) rhs.add(pb.index.at({px, py}), c1 * c2);
                }
            }
            if (!(lhs == rhs)) return fail("Delta is not multiplicative in the window");
        }
    }
    return true;
}

}  // namespace ocat
