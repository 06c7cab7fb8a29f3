// Exact sparse linear algebra over Q with named bases: spaces, maps,
// echelon forms, kernels and cokernels with deterministic bases.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ocat/rational.hpp"

namespace ocat {

// Sparse vector: entries sorted by index, no explicit zeros.
class SVec {
  public:
    using Entry = std::pair<int, Rat>;

    SVec() = default;
    static SVec unit(int i, Rat c = Rat(1));
    // Builds from unsorted terms with possible repeats.
    static SVec from_terms(std::vector<Entry> terms);

    bool empty() const { return e_.empty(); }
    std::size_t nnz() const { return e_.size(); }
    int lead() const { return e_.front().first; }  // smallest index
    const Rat& lead_coeff() const { return e_.front().second; }
    const std::vector<Entry>& entries() const { return e_; }

    Rat at(int i) const;
    void set(int i, const Rat& c);   // insert/overwrite/erase-on-zero
    void add(int i, const Rat& c);   // += c * e_i

    SVec& operator+=(const SVec& o);
    SVec& operator-=(const SVec& o);
    SVec& operator*=(const Rat& c);
    // *this += c * o
    void axpy(const Rat& c, const SVec& o);

    bool operator==(const SVec& o) const { return e_ == o.e_; }

    // Applies an index translation; f(i) < 0 drops the entry.
    template <typename F>
    SVec mapped(F&& f) const {
        SVec r;
        for (const auto& [i, c] : e_) {
            int j = f(i);
            if (j >= 0) r.add(j, c);
        }
        return r;
    }

    std::string str() const;

  private:
    std::vector<Entry> e_;
};

// Finite-dimensional space with an ordered, named basis.
struct Space {
    std::vector<std::string> labels;

    Space() = default;
    explicit Space(std::vector<std::string> ls) : labels(std::move(ls)) {}
    static Space anonymous(int dim, const std::string& prefix = "e");

    int dim() const { return static_cast<int>(labels.size()); }
};

// Linear map stored column-major: col(j) = image of the j-th domain basis vector.
class LinMap {
  public:
    LinMap() : rows_(0) {}
    LinMap(int rows, int cols) : rows_(rows), cols_(cols) {}
    static LinMap identity(int n);
    static LinMap zero(int rows, int cols) { return LinMap(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return static_cast<int>(cols_.size()); }

    const SVec& col(int j) const { return cols_[j]; }
    SVec& col(int j) { return cols_[j]; }
    void set(int i, int j, const Rat& c) { cols_[j].set(i, c); }
    Rat at(int i, int j) const { return cols_[j].at(i); }

    SVec apply(const SVec& v) const;
    LinMap compose(const LinMap& inner) const;  // this ∘ inner
    LinMap operator+(const LinMap& o) const;
    LinMap operator-(const LinMap& o) const;
    LinMap scaled(const Rat& c) const;
    bool operator==(const LinMap& o) const;
    bool is_zero() const;
    LinMap transpose() const;

    std::string str() const;  // dense printout, small matrices only

  private:
    int rows_;
    std::vector<SVec> cols_;
};

// Column-echelon engine. Feed columns once; afterwards query rank, a
// deterministic kernel basis (RREF-normalized over the domain), membership
// of vectors in the column span, and preimages.
//
// Pivot rule: first nonzero by basis order (smallest row index).
class Echelon {
  public:
    explicit Echelon(const LinMap& m);

    int rank() const { return static_cast<int>(piv_.size()); }
    // Solves m * x = b; nullopt if b is outside the column span.
    std::optional<SVec> solve(const SVec& b) const;
    bool in_span(const SVec& b) const;
    // Reduces b modulo the column span; the result is supported on non-pivot rows.
    SVec reduce(const SVec& b) const;
    const std::vector<int>& pivot_rows() const { return piv_rows_; }
    // Kernel basis of the fed map, echelon-normalized (deterministic).
    const std::vector<SVec>& kernel() const { return ker_; }

  private:
    struct Col {
        SVec v;    // echelonized column (in codomain coords)
        SVec pre;  // its expression in domain coords
    };
    std::vector<Col> piv_;       // by insertion order
    std::map<int, int> by_lead_;  // lead row -> index into piv_
    std::vector<int> piv_rows_;   // sorted pivot rows
    std::vector<SVec> ker_;
    int dom_dim_;
};

// Row-reduces the given vectors (RREF, pivot = smallest index, lead = 1);
// returns the reduced basis, deterministic for a fixed input order.
std::vector<SVec> rref(std::vector<SVec> rows);

int rank_of(const LinMap& m);

// kernel(f): space with inclusion into the domain; f ∘ incl = 0.
std::pair<Space, LinMap> kernel(const LinMap& f, const Space& domain);
// cokernel(f): quotient of the codomain with projection; proj ∘ f = 0.
// The quotient basis is the set of non-pivot codomain indices of im f.
std::pair<Space, LinMap> cokernel(const LinMap& f, const Space& codomain);

}  // namespace ocat
