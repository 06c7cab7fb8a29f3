// Day-type convolution on Cat O-modules: (F ⊙ G)(n) is the sum over subsets
// c of {1..n} of F(|c|) ⊗ G(n-|c|), with the split-or-zero action rule for
// basis morphisms and the induced-module symmetric action.
#pragma once

#include "ocat/reflection.hpp"

namespace ocat {

struct ConvModule {
    ModulePtr module;
    ModulePtr f, g;  // the factors (at the common bound)
    // per arity: the subsets indexing the components (size ascending, lex
    // within size) and their basis offsets
    std::vector<std::vector<std::vector<int>>> comps;
    std::vector<std::vector<int>> offsets;

    int comp_index(int n, const std::vector<int>& c) const;
};

// Requires a reduced operad with O(1) = k.
ConvModule convolution(ModulePtr f, ModulePtr g);

// The monoidal unit: k in arity 0.
ModulePtr unit_module(CatPtr cat, int N);

// phi ⊙ psi on the convolutions built from the corresponding factors.
ModuleMorphism conv_morphism(const ConvModule& src, const ConvModule& tgt,
                             const ModuleMorphism& phi, const ModuleMorphism& psi);

// The natural isomorphism delta(F ⊙ G) = (delta F ⊙ G) + (F ⊙ delta G),
// determined by whether the last input lies in the F-component.
struct DeltaConvSplit {
    ConvModule conv_fg;       // F ⊙ G at the common bound
    ModulePtr source;         // delta(F ⊙ G)
    ConvModule left;          // delta F ⊙ G
    ConvModule right;         // F ⊙ delta G
    ModulePtr target;         // direct sum of the two
    ModuleMorphism iso;       // source -> target
};
DeltaConvSplit delta_conv_split(ModulePtr f, ModulePtr g);

struct ConvMuReport {
    bool sum_rule = false;        // mu-tilde of F⊙G matches the two-term sum
    bool reflection_iso = false;  // (F⊙G)^mu -> F^mu ⊙ G^mu is an isomorphism
    std::string detail;
};
ConvMuReport conv_mu_checks(ModulePtr f, ModulePtr g, const OperadElement& mu);

}  // namespace ocat
