// Truncated representations of Cat O: functors F(0..N) with per-basis-morphism
// action matrices, module morphisms, and the constructions around the shift
// delta and the natural transformation mu-tilde.
#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "ocat/catprop.hpp"
#include "ocat/rng.hpp"

namespace ocat {

using CatPtr = std::shared_ptr<const CatCat>;

struct SigmaModule {
    int N = -1;
    std::vector<Space> spaces;   // 0..N
    std::vector<SymAction> sym;

    int dim(int n) const { return (n < 0 || n > N) ? 0 : spaces[n].dim(); }
};

class TruncatedModule;
using ModulePtr = std::shared_ptr<const TruncatedModule>;

class TruncatedModule {
  public:
    CatPtr cat;
    std::string name;
    int N = -1;
    std::vector<Space> spaces;    // 0..N
    std::vector<SymAction> sym;   // 0..N
    // action matrices per basis morphism of Cat O(m, n), keyed by (m, n);
    // equal-arity pairs are stored only when the bijections do not span
    // Cat O(n, n) (non-reduced operads, or dim O(1) > 1)
    std::map<std::pair<int, int>, std::vector<LinMap>> act;
    bool full_equal_arity = false;
    int free_rank = -1;  // m0 when this is Cat O(m0, -), else -1

    int dim(int n) const { return (n < 0 || n > N) ? 0 : spaces[n].dim(); }
    const OperadPtr& operad() const { return cat->operad(); }

    LinMap action_of_basis(int m, int n, int idx) const;
    LinMap action(const CatMorphism& xi) const;
    SigmaModule restrict_sigma() const;  // the underlying Sigma-module

    // Functoriality check: identities, Coxeter relations, and composition on
    // basis pairs (exhaustive up to max_checks per (m,n,p) triple; 0 = all).
    bool validate(std::string* why = nullptr, int max_checks = 0) const;
};

struct ModuleMorphism {
    ModulePtr src, tgt;
    int N = -1;                 // common bound
    std::vector<LinMap> maps;   // 0..N

    bool is_zero() const;
    bool validate(std::string* why = nullptr) const;  // naturality on basis morphisms
};

// --- builders ---------------------------------------------------------------

ModulePtr zero_module(CatPtr cat, int N);
ModulePtr free_module(CatPtr cat, int m0, int N);
ModulePtr truncate(ModulePtr f, int N);
// Pads with zero spaces up to the larger bound N.
ModulePtr extend_zero(ModulePtr f, int N);
ModulePtr delta_module(ModulePtr f);                       // bound drops by one
ModulePtr alpha_embed(CatPtr cat, const SigmaModule& m);   // reduced, O(1) = k
ModulePtr direct_sum(const std::vector<ModulePtr>& parts);
// injection/projection of a summand of direct_sum(parts)
ModuleMorphism sum_injection(const std::vector<ModulePtr>& parts, ModulePtr total, int part);
ModuleMorphism sum_projection(const std::vector<ModulePtr>& parts, ModulePtr total, int part);

// Restriction along an operad morphism: same spaces, action through Cat phi.
ModulePtr restrict_along(const OperadMorphism& phi, CatPtr src_cat, ModulePtr g);

// Morphism assembly and linear algebra on modules.
ModuleMorphism make_morphism(ModulePtr src, ModulePtr tgt, std::vector<LinMap> maps);
ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f);
ModuleMorphism identity_morphism(ModulePtr f);
ModuleMorphism zero_morphism(ModulePtr src, ModulePtr tgt);

// Free modules are projective: Hom(Cat O(m0,-), G) = G(m0). The morphism
// attached to a vector v in G(m0) sends a basis morphism xi of Cat O(m0, n)
// to G(xi)(v).
ModuleMorphism morphism_from_element(ModulePtr free_src, ModulePtr tgt, const SVec& v);

// Kernel and cokernel of module morphisms (per arity, with induced action).
struct SubQuotient {
    ModulePtr module;
    ModuleMorphism map;  // inclusion (kernel) or projection (cokernel)
};
SubQuotient kernel_module(const ModuleMorphism& f);
SubQuotient cokernel_module(const ModuleMorphism& f);

// Smallest submodule containing the given per-arity vectors (closure under
// the action of all stored basis morphisms and the symmetric action).
SubQuotient submodule_closure(ModulePtr f, const std::vector<std::vector<SVec>>& seeds);
// Quotient by a submodule presented by its inclusion.
SubQuotient quotient_by(const ModuleMorphism& inclusion);

// The space of module morphisms F -> G, as a basis of ModuleMorphisms.
std::vector<ModuleMorphism> hom_module(ModulePtr f, ModulePtr g);

// Seeded random modules over a fixed operad (sums/kernels/cokernels of free
// modules and alpha-images; always honest functors by construction).
ModulePtr random_module(CatPtr cat, int N, Rng& rng);
SigmaModule random_sigma_module(int N, Rng& rng);

}  // namespace ocat
