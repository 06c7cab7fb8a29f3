// Finite projective resolutions for modules vanishing above a given arity
// (characteristic zero, reduced operad with O(1) = k), the augmented complex,
// and the left derived functors of the reflection, computed by two
// independent routes and cross-checked.
#pragma once

#include "ocat/reflection.hpp"

namespace ocat {

// The induced projective Cat O(s,-) (x)_{S_s} M.
struct IndSummand {
    int s = 0;
    Space mspace;
    SymAction maction;
    ModulePtr module;
    LinMap unit_inj;                 // M -> module(s), x -> class of id (x) x
    std::vector<CoinvariantData> co; // per arity, over Cat(s,n) (x) M
};
IndSummand induced_projective(CatPtr cat, int s, const Space& mspace, const SymAction& maction,
                              int N);
// The morphism attached to an S_s-equivariant map u: M -> F(s).
ModuleMorphism ind_eval(const IndSummand& sum, ModulePtr f, const LinMap& u);

struct Cover {
    ModulePtr module;
    ModuleMorphism onto;
    std::vector<IndSummand> summands;
};
// Surjection from a finite sum of induced projectives, following the
// finite-length construction: cover the top arity by an isomorphism there,
// then recurse on the cokernel.
Cover projective_cover(ModulePtr target);

struct ChainComplex {
    ModulePtr target;                    // F, in homological degree -1
    std::vector<ModulePtr> terms;        // P^0..P^K
    std::vector<ModuleMorphism> diffs;   // d_k: P^k -> P^{k-1}, k >= 1
    ModuleMorphism aug;                  // P^0 -> F

    int length() const { return static_cast<int>(terms.size()) - 1; }
};

// Requires: reduced operad, O(1) = k, and F(n) = 0 for n > support_bound.
ChainComplex projective_resolution(ModulePtr f, int support_bound);

// d.d = 0 and acyclicity of the augmented complex, by rank bookkeeping.
bool resolution_is_valid(const ChainComplex& c, std::string* why = nullptr);

struct DerivedReport {
    std::vector<SigmaModule> L;        // L_i (-)^mu F via route (a)
    std::vector<SigmaModule> L_kappa;  // L_i for i >= 1 via kappa of the augmented complex
    bool methods_agree = false;        // per-arity dims and characters match
    bool l0_is_reflection = false;
    bool kappa_vanishing = false;      // H_*(kappa P_aug) = 0 for * >= N-1
    std::string detail;
};
DerivedReport derived_mu(ModulePtr f, const OperadElement& mu, const ChainComplex& res);

// Character comparison (traces over the full symmetric group per arity).
bool sigma_isomorphic(const SigmaModule& a, const SigmaModule& b);

}  // namespace ocat
