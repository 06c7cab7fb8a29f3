// Interned planar rooted trees with generator-labeled internal nodes and
// leaves labeled by a permutation of the inputs. These are the monomials of
// free operads; the quotient engine row-reduces linear combinations of them.
#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "ocat/rational.hpp"

namespace ocat {

using TreeId = int;

struct TreeNode {
    int gen;                // generator id, -1 for a leaf
    int leaf;               // leaf label (0-based), only if gen < 0
    std::vector<TreeId> kids;
    int ar = 1;             // leaf count, filled at intern time

    bool operator==(const TreeNode& o) const {
        return gen == o.gen && leaf == o.leaf && kids == o.kids;
    }
};

class TreeArena {
  public:
    TreeId leaf(int label);
    TreeId node(int gen, const std::vector<TreeId>& kids);
    const TreeNode& get(TreeId t) const { return nodes_[t]; }

    int arity(TreeId t) const;                    // number of leaves
    std::vector<int> leaf_labels(TreeId t) const;  // labels left to right
    // Relabel every leaf l -> p[l].
    TreeId relabel(TreeId t, const std::vector<int>& p);
    // Replace the leaf labeled `slot` of t1 by t2; t2's leaves take the labels
    // in `sub` (sorted, 0-based) in pattern order, t1's remaining leaves take
    // the complement of `sub` in {0..n-1} in their original relative order.
    // n = arity(t1) + arity(t2) - 1 and |sub| = arity(t2).
    TreeId shuffle_graft(TreeId t1, int slot, TreeId t2, const std::vector<int>& sub, int n);
    // Ordinary partial composition: sub = the contiguous block starting at slot.
    TreeId graft(TreeId t1, int slot, TreeId t2);

    // Monomial order key: (left-greedy shape encoding, leaf word).
    // Comparison of keys is the total order used by the quotient engine.
    std::pair<std::string, std::vector<int>> monomial_key(TreeId t) const;

    std::string str(TreeId t, const std::vector<std::string>& gen_names) const;

  private:
    struct NodeHash {
        std::size_t operator()(const TreeNode& n) const;
    };
    std::vector<TreeNode> nodes_;
    std::unordered_map<TreeNode, TreeId, NodeHash> intern_;

    TreeId intern(TreeNode&& n);
    TreeId rebuild(TreeId t, const std::vector<int>& leaf_map, int graft_slot, TreeId graft_tree);
    void shape_of(TreeId t, std::string& out) const;
};

// All trees of the given arity over generators with the given arities
// (each >= 2), sorted by monomial order. Leaf labelings are exhaustive.
std::vector<TreeId> enumerate_trees(TreeArena& arena, const std::vector<int>& gen_arities, int arity);

}  // namespace ocat
