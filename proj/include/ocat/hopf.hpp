// The tensor algebra T(V) on d primitive letters, truncated at word length D:
// product by concatenation (zero beyond the cap), coproduct by ordered
// subword splittings, antipode by signed reversal.
#pragma once

#include <map>
#include <vector>

#include "ocat/linalg.hpp"

namespace ocat {

class WordAlgebra {
  public:
    WordAlgebra(int d, int cap);

    int letters() const { return d_; }
    int cap() const { return cap_; }
    int dim() const { return static_cast<int>(words_.size()); }
    const std::vector<int>& word(int idx) const { return words_[idx]; }
    int index(const std::vector<int>& w) const { return index_.at(w); }
    int unit_index() const { return 0; }  // the empty word

    // concatenation; -1 when the product leaves the window
    int product(int a, int b) const;
    // antipode: (sign, reversed word index)
    std::pair<Rat, int> antipode(int a) const;
    int degree(int a) const { return static_cast<int>(words_[a].size()); }

  private:
    int d_, cap_;
    std::vector<std::vector<int>> words_;  // by length, then lexicographic
    std::map<std::vector<int>, int> index_;
};

// Degree-matched Hopf-axiom verification at the given truncation: exact
// matrix identities for coassociativity, counit, the antipode convolution
// identity and compatibility of product and coproduct.
bool hopf_axioms_ok(int d, int cap, std::string* why = nullptr);

}  // namespace ocat
