// Operads in k-vector spaces with explicit normal-form bases per arity up to
// a truncation bound. Presented operads (generators of arity >= 2 modulo
// relations) are built by brute-force row reduction of the relation closure
// inside the free operad; Ass^u and Com^u are structure-constant built-ins.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ocat/linalg.hpp"
#include "ocat/symrep.hpp"
#include "ocat/trees.hpp"

namespace ocat {

struct GeneratorSym {
    std::string name;
    int arity;  // >= 2 for the quotient engine
};

// A formal linear combination of labeled trees, homogeneous in arity.
struct TreePoly {
    int arity = 0;
    std::vector<std::pair<Rat, TreeId>> terms;
};

struct OperadPresentation {
    std::string name;
    std::vector<GeneratorSym> gens;
    std::vector<TreePoly> relations;  // trees live in the shared arena
    std::shared_ptr<TreeArena> arena = std::make_shared<TreeArena>();
};

struct OperadElement {
    int arity = 0;
    SVec coords;

    bool is_zero() const { return coords.empty(); }
};

class Operad;
using OperadPtr = std::shared_ptr<const Operad>;

class Operad {
  public:
    enum class Kind { Presented, AssU, ComU, UnitI };

    static OperadPtr build(const OperadPresentation& pres, int nmax);
    static OperadPtr builtin(const std::string& name, int nmax);  // I, Lie, Leib, AssU, ComU
    static OperadPresentation lie_presentation();
    static OperadPresentation leib_presentation();

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    int nmax() const { return nmax_; }
    bool reduced() const { return reduced_; }
    bool unital_arity_one() const { return unital1_; }
    int min_arity() const { return reduced_ ? 1 : 0; }

    int dim(int n) const;
    const Space& component(int n) const;
    const SymAction& sym(int n) const;

    // Basis-level partial composition b1 o_slot b2 (slot 0-based), returning
    // coordinates in O(m + k - 1).
    SVec compose_basis(int m, int b1, int slot, int k, int b2) const;

    OperadElement element(int arity, SVec coords) const { return {arity, std::move(coords)}; }
    OperadElement zero(int arity) const { return {arity, SVec()}; }
    OperadElement unit() const;
    OperadElement basis_element(int arity, int index) const {
        return {arity, SVec::unit(index)};
    }

    OperadElement partial_compose(const OperadElement& x, int slot, const OperadElement& y) const;
    OperadElement sym_act(const Perm& p, const OperadElement& x) const;

    // Presented operads only: the generator as an element, the representative
    // tree of a basis vector, and evaluation of arbitrary trees.
    OperadElement generator_element(int g) const;
    TreeId basis_tree(int n, int idx) const;
    OperadElement eval_tree(TreeId t) const;
    const OperadPresentation& presentation() const;
    std::string basis_label(int n, int idx) const { return component(n).labels[idx]; }

    // The distinguished binary element used by mu-constructions:
    // generator for presented operads, the product (identity permutation)
    // for AssU/ComU.
    OperadElement mu_default() const;

  private:
    Kind kind_;
    std::string name_;
    int nmax_ = 0;
    bool reduced_ = true;
    bool unital1_ = true;

    std::vector<Space> spaces_;      // by arity, 0..nmax
    std::vector<SymAction> syms_;    // by arity
    // compose tables: key (m, slot, k) -> matrix of results, indexed
    // [b1 * dim(k) + b2]
    std::map<std::tuple<int, int, int>, std::vector<SVec>> tables_;

    // presented-only data
    std::shared_ptr<OperadPresentation> pres_;
    std::vector<std::vector<TreeId>> basis_trees_;  // by arity
    std::map<int, SVec> gen_coords_;                // generator -> quotient coords

    // AssU helpers
    static std::vector<int> assu_unrank(int n, int idx);
    static int assu_rank(const std::vector<int>& w);
    static std::vector<int> assu_substitute(const std::vector<int>& w, int slot,
                                            const std::vector<int>& v);

    SVec compose_assu(int m, int b1, int slot, int k, int b2) const;
    void build_spaces_assu();
    void build_spaces_comu();
    void build_spaces_unit();
    friend class QuotientEngine;
};

// Operad morphism determined by images of the source generators; relation
// preservation is verified at construction.
class OperadMorphism {
  public:
    OperadMorphism(OperadPtr src, OperadPtr tgt, std::vector<OperadElement> gen_images);
    static OperadMorphism augmentation(OperadPtr src);  // to the unit operad I

    const OperadPtr& source() const { return src_; }
    const OperadPtr& target() const { return tgt_; }
    OperadElement apply(const OperadElement& x) const;
    const LinMap& matrix(int arity) const { return mats_.at(arity); }

  private:
    OperadPtr src_, tgt_;
    std::vector<OperadElement> images_;
    std::map<int, LinMap> mats_;
};

}  // namespace ocat
