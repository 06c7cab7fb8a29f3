// The PROP Cat O: hom spaces indexed by set maps with operad labels on the
// fibres, PROP composition, the monoidal sum, the morphisms mu_i(n) and
// mu(n), and the right-Leibniz checker.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "ocat/operad.hpp"

namespace ocat {

// Basis element of Cat O(m, n): a total map f: {0..m-1} -> {0..n-1} together
// with one O-basis index per output, the fibre being identified with
// {0..|fibre|-1} by the increasing bijection.
struct CatElt {
    std::vector<int> f;       // size m
    std::vector<int> labels;  // size n

    int m() const { return static_cast<int>(f.size()); }
    int n() const { return static_cast<int>(labels.size()); }
    auto operator<=>(const CatElt&) const = default;

    std::string key() const;  // canonical text encoding
    static CatElt from_key(const std::string& key, int m, int n);
};

// Sparse morphism of Cat O(m, n).
struct CatMorphism {
    int m = 0, n = 0;
    std::map<CatElt, Rat> terms;

    void add(const CatElt& e, const Rat& c);
    CatMorphism& operator+=(const CatMorphism& o);
    CatMorphism& operator-=(const CatMorphism& o);
    CatMorphism& operator*=(const Rat& c);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const CatMorphism& o) const;
};

// The PROP with memoized hom-space enumeration.
class CatCat {
  public:
    explicit CatCat(OperadPtr op) : O_(std::move(op)) {}

    const OperadPtr& operad() const { return O_; }
    int nmax() const { return O_->nmax(); }

    struct HomSpace {
        Space space;
        std::vector<CatElt> basis;
        std::map<CatElt, int> index;
        int dim() const { return static_cast<int>(basis.size()); }
    };

    const HomSpace& hom(int m, int n) const;
    long long dim_by_formula(int m, int n) const;  // multinomial summation

    CatMorphism identity(int n) const;
    CatMorphism single(const CatElt& e, Rat c = Rat(1)) const;
    // Embeds an operad element as a morphism in Cat O(k, 1).
    CatMorphism from_element(const OperadElement& x) const;
    // Extracts the operad element from a morphism into object 1.
    OperadElement to_element(const CatMorphism& xi) const;
    // A permutation as the bijection basis morphism of Cat O(n, n).
    CatMorphism perm_morphism(const Perm& p) const;

    CatMorphism compose(const CatMorphism& eta, const CatMorphism& xi) const;
    CatMorphism boxplus(const CatMorphism& a, const CatMorphism& b) const;

    CatMorphism mu_i(const OperadElement& mu, int n, int i) const;  // Cat O(n+1, n), i 0-based
    CatMorphism mu_sum(const OperadElement& mu, int n) const;

    SVec coords(const CatMorphism& xi) const;  // in the hom(m, n) basis

  private:
    OperadPtr O_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<HomSpace>> cache_;

    void compose_basis_elt(const CatElt& g, const CatElt& f, CatMorphism& out,
                           const Rat& coeff) const;
};

// Applies Cat phi to a morphism (labels pushed through the operad morphism).
CatMorphism cat_apply(const OperadMorphism& phi, const CatCat& src, const CatCat& tgt,
                      const CatMorphism& xi);

struct LeibnizReport {
    bool holds = true;
    // first failing element and its defect d(nu) in O(n+1)
    std::optional<OperadElement> witness_nu;
    std::optional<OperadElement> defect;
};

enum class LeibnizMode { Generators, Exhaustive };

// d(nu) = mu o (nu ⊞ Id_1) - nu o mu(n) for nu running over generators or over
// all basis elements of arities <= max_arity.
LeibnizReport leibniz_check(const CatCat& cat, const OperadElement& mu, LeibnizMode mode,
                            int max_arity);

}  // namespace ocat
