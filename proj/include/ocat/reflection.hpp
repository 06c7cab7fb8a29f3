// The natural transformation mu-tilde: delta F -> F, the subcategory membership
// test, the reflection F^mu = coker, kappa_mu = ker, the six-term exact
// sequence, the adjunction factorization, and the decomposition of delta on
// free modules.
#pragma once

#include "ocat/module.hpp"

namespace ocat {

struct LeibnizFailure : std::runtime_error {
    OperadElement witness_nu;
    OperadElement defect;
    LeibnizFailure(OperadElement nu, OperadElement d)
        : std::runtime_error("mu does not satisfy the right Leibniz condition"),
          witness_nu(std::move(nu)),
          defect(std::move(d)) {}
};

// Raw per-arity maps F(n+1) -> F(n) induced by mu(n), n = 0..N-1. These are
// always S_n-equivariant; they assemble to a module morphism iff mu satisfies
// the right Leibniz condition.
std::vector<LinMap> mu_tilde_raw(ModulePtr f, const OperadElement& mu);

// The module morphism delta F -> F (truncated); throws LeibnizFailure when the
// generator-mode check fails.
ModuleMorphism mu_tilde(ModulePtr f, const OperadElement& mu, bool check_leibniz = true);

bool is_in_mu(ModulePtr f, const OperadElement& mu);

// First basis morphism on which the raw maps fail naturality, if any.
struct NaturalityViolation {
    int m, n;
    CatElt xi;
    LinMap lhs, rhs;
};
std::optional<NaturalityViolation> naturality_violation(ModulePtr f, const OperadElement& mu);

SubQuotient coker_mu(ModulePtr f, const OperadElement& mu);  // proj: F|N-1 ->> F^mu
SubQuotient ker_mu(ModulePtr f, const OperadElement& mu);    // incl: kappa F -> delta F

// delta applied to a morphism.
ModuleMorphism delta_morphism(const ModuleMorphism& g);

// Functorial maps between kernels/cokernels of mu-tilde along g: A -> B.
ModuleMorphism kappa_functor(const ModuleMorphism& g, const SubQuotient& ka,
                             const SubQuotient& kb);
ModuleMorphism reflection_functor(const ModuleMorphism& g, const SubQuotient& ca,
                                  const SubQuotient& cb);

struct ShortExact {
    ModulePtr f1, f2, f3;
    ModuleMorphism incl, proj;
};
// Verifies per-arity exactness of 0 -> F1 -> F2 -> F3 -> 0.
ShortExact make_short_exact(ModuleMorphism incl, ModuleMorphism proj);

struct SixTermReport {
    bool exact = true;
    std::vector<std::string> failures;
    // the spliced sequence 0 -> kF1 -> kF2 -> kF3 -> F1^mu -> F2^mu -> F3^mu -> 0
    std::vector<ModuleMorphism> maps;
};
SixTermReport six_term(const ShortExact& ses, const OperadElement& mu);

// Unique factorization of f: F -> G through F ->> F^mu when G is in the mu
// subcategory; throws if f does not kill the image of mu-tilde.
ModuleMorphism factor_through_reflection(const ModuleMorphism& f, const SubQuotient& coker);

// delta Cat O(m0,-) = sum over proper subsets X of {1..m0} of
// Cat O(|X|,-) (x) O(m0-|X|); the iso is a bijection of bases.
struct DeltaProjDecomposition {
    ModulePtr source;                       // delta of the free module
    ModulePtr target;                       // the direct sum
    ModuleMorphism iso;                     // source -> target
    std::vector<std::vector<int>> subsets;  // the X indexing the summands
    std::vector<ModulePtr> summands;
};
DeltaProjDecomposition delta_proj_decompose(CatPtr cat, int m0, int N);

}  // namespace ocat
