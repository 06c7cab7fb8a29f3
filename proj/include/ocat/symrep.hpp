// Symmetric group actions on spaces with named bases, plus the standard
// constructions used throughout: tensor products, induction along Young
// subgroups (shuffle coset bases) and coinvariants in characteristic zero.
#pragma once

#include <vector>

#include "ocat/linalg.hpp"

namespace ocat {

// Permutations are 0-based: p[i] = image of position i. Composition is
// functional, (p*q)[i] = p[q[i]].
using Perm = std::vector<int>;

Perm perm_identity(int n);
Perm perm_compose(const Perm& p, const Perm& q);
Perm perm_inverse(const Perm& p);
Perm perm_transposition(int n, int a, int b);
bool perm_is_identity(const Perm& p);
// Writes p as a product of adjacent transpositions s_{a} = (a, a+1).
std::vector<int> perm_adjacent_word(const Perm& p);
// Order pattern of the values of p on the positions in `subset` (sorted):
// result[r] = rank of p[subset[r]] among { p[s] : s in subset }.
Perm perm_pattern(const Perm& p, const std::vector<int>& subset);
// The permutation of {0..m+k-2} obtained from p in S_m by expanding slot
// `slot` into a block of size k (operadic equivariance):
// (p x) o_{p(slot)} y = perm_blowup(p, slot, k) . (x o_slot y).
Perm perm_blowup(const Perm& p, int slot, int k);

// Action of S_n given by matrices for the adjacent transpositions.
struct SymAction {
    int n = 0;
    int dim = 0;
    std::vector<LinMap> gens;  // gens[a] = action of (a, a+1), a = 0..n-2

    static SymAction trivial(int n, int dim);
    LinMap act(const Perm& p) const;
    // Coxeter presentation check: involutions, braid, distant commuting.
    bool verify() const;
};

// A space with commuting actions of S_{n1} x S_{n2}.
struct ProductAction {
    SymAction left;   // S_{n1}
    SymAction right;  // S_{n2}
};

LinMap kron(const LinMap& a, const LinMap& b);  // a ⊗ b, index i*rowsB+j

// Tensor product of two S-spaces; the result carries the product action.
struct TensorResult {
    Space space;
    ProductAction action;
};
TensorResult tensor(const Space& a, const SymAction& sa, const Space& b, const SymAction& sb);

// Induction from S_{n1} x S_{n2} to S_{n1+n2}. Basis: (shuffle coset, A-basis),
// cosets indexed by n1-subsets of {0..n-1}, represented by order-preserving
// injections. Enumeration order: subsets in lexicographic order of their
// sorted element lists.
struct InducedResult {
    Space space;
    SymAction action;
    std::vector<std::vector<int>> cosets;  // sorted subsets
    int block_dim = 0;                     // dim of A
};
InducedResult induce(const Space& a, const ProductAction& act);

std::vector<std::vector<int>> subsets_of_size(int n, int k);  // lex order

// Coinvariants V/<gv - v> of the group generated by the given invertible
// maps. Returns the quotient space and projection.
std::pair<Space, LinMap> coinvariants(const Space& v, const std::vector<LinMap>& gens);

// Same, together with a section (proj . sect = id) given by the kept
// coordinate inclusions.
struct CoinvariantData {
    Space space;
    LinMap proj;
    LinMap sect;
};
CoinvariantData coinvariants_with_section(const Space& v, const std::vector<LinMap>& gens);

// Char-0 cross-check utility: the averaging idempotent of the full group
// generated by `gens` (closure computed by BFS; intended for small groups).
LinMap averaging_idempotent(int dim, const std::vector<LinMap>& gens);

}  // namespace ocat
