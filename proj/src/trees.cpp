#include "ocat/trees.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ocat {

std::size_t TreeArena::NodeHash::operator()(const TreeNode& n) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ (static_cast<std::uint64_t>(n.gen + 2) << 32) ^
                      static_cast<std::uint64_t>(n.leaf + 1);
    for (TreeId k : n.kids) {
        h ^= static_cast<std::uint64_t>(k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

TreeId TreeArena::intern(TreeNode&& n) {
    auto it = intern_.find(n);
    if (it != intern_.end()) return it->second;
    if (n.gen >= 0) {
        n.ar = 0;
        for (TreeId k : n.kids) n.ar += nodes_[k].ar;
    }
    TreeId id = static_cast<TreeId>(nodes_.size());
    intern_.emplace(n, id);
    nodes_.push_back(std::move(n));
    return id;
}

TreeId TreeArena::leaf(int label) { return intern(TreeNode{-1, label, {}}); }

TreeId TreeArena::node(int gen, const std::vector<TreeId>& kids) {
    return intern(TreeNode{gen, 0, kids});
}

int TreeArena::arity(TreeId t) const { return nodes_[t].ar; }

std::vector<int> TreeArena::leaf_labels(TreeId t) const {
    std::vector<int> out;
    std::function<void(TreeId)> walk = [&](TreeId u) {
        const TreeNode& n = nodes_[u];
        if (n.gen < 0) {
            out.push_back(n.leaf);
        } else {
            for (TreeId k : n.kids) walk(k);
        }
    };
    walk(t);
    return out;
}

TreeId TreeArena::rebuild(TreeId t, const std::vector<int>& leaf_map, int graft_slot,
                          TreeId graft_tree) {
    const TreeNode n = nodes_[t];  // copy: interning may reallocate nodes_
    if (n.gen < 0) {
        if (n.leaf == graft_slot && graft_tree >= 0) return graft_tree;
        return leaf(leaf_map[n.leaf]);
    }
    std::vector<TreeId> kids;
    kids.reserve(n.kids.size());
    for (TreeId k : n.kids) kids.push_back(rebuild(k, leaf_map, graft_slot, graft_tree));
    return node(n.gen, kids);
}

TreeId TreeArena::relabel(TreeId t, const std::vector<int>& p) { return rebuild(t, p, -1, -1); }

TreeId TreeArena::shuffle_graft(TreeId t1, int slot, TreeId t2, const std::vector<int>& sub,
                                int n) {
    const int a = arity(t1);
    const int b = arity(t2);
    if (static_cast<int>(sub.size()) != b || a + b - 1 != n)
        throw std::invalid_argument("shuffle_graft: shape mismatch");
    TreeId t2r = relabel(t2, sub);
    std::vector<char> in_sub(n, 0);
    for (int s : sub) in_sub[s] = 1;
    std::vector<int> comp;
    comp.reserve(n - b);
    for (int i = 0; i < n; ++i)
        if (!in_sub[i]) comp.push_back(i);
    std::vector<int> map1(a, -1);
    int r = 0;
    for (int j = 0; j < a; ++j) {
        if (j == slot) continue;
        map1[j] = comp[r++];
    }
    return rebuild(t1, map1, slot, t2r);
}

TreeId TreeArena::graft(TreeId t1, int slot, TreeId t2) {
    const int b = arity(t2);
    std::vector<int> sub(b);
    std::iota(sub.begin(), sub.end(), slot);
    return shuffle_graft(t1, slot, t2, sub, arity(t1) + b - 1);
}

void TreeArena::shape_of(TreeId t, std::string& out) const {
    const TreeNode& n = nodes_[t];
    if (n.gen < 0) {
        out.push_back('*');
        return;
    }
    out.push_back('(');
    out.push_back(static_cast<char>('a' + n.gen));
    for (TreeId k : n.kids) shape_of(k, out);
    out.push_back(')');
}

std::pair<std::string, std::vector<int>> TreeArena::monomial_key(TreeId t) const {
    std::string shape;
    shape_of(t, shape);
    return {std::move(shape), leaf_labels(t)};
}

std::string TreeArena::str(TreeId t, const std::vector<std::string>& gen_names) const {
    const TreeNode& n = nodes_[t];
    if (n.gen < 0) return std::to_string(n.leaf + 1);
    std::ostringstream os;
    os << "(" << gen_names[n.gen];
    for (TreeId k : n.kids) os << " " << str(k, gen_names);
    os << ")";
    return os.str();
}

namespace {

void compositions(int total, int parts, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& emit) {
    if (parts == 1) {
        if (total >= 1) {
            cur.push_back(total);
            emit(cur);
            cur.pop_back();
        }
        return;
    }
    for (int first = 1; first <= total - (parts - 1); ++first) {
        cur.push_back(first);
        compositions(total - first, parts - 1, cur, emit);
        cur.pop_back();
    }
}

// Shapes of the given arity; leaves carry labels label_from, label_from+1, ...
// in left-to-right order.
std::vector<TreeId> shapes_rec(TreeArena& arena, const std::vector<int>& gen_arities, int arity,
                               int label_from) {
    std::vector<TreeId> out;
    if (arity == 1) {
        out.push_back(arena.leaf(label_from));
        return out;
    }
    for (std::size_t g = 0; g < gen_arities.size(); ++g) {
        int k = gen_arities[g];
        if (k < 2 || k > arity) continue;
        std::vector<int> cur;
        compositions(arity, k, cur, [&](const std::vector<int>& parts) {
            std::vector<std::vector<TreeId>> choices(k);
            int from = label_from;
            for (int c = 0; c < k; ++c) {
                choices[c] = shapes_rec(arena, gen_arities, parts[c], from);
                from += parts[c];
            }
            std::vector<int> idx(k, 0);
            while (true) {
                std::vector<TreeId> kids(k);
                for (int c = 0; c < k; ++c) kids[c] = choices[c][idx[c]];
                out.push_back(arena.node(static_cast<int>(g), kids));
                int c = k - 1;
                while (c >= 0 && ++idx[c] == static_cast<int>(choices[c].size())) idx[c--] = 0;
                if (c < 0) break;
            }
        });
    }
    return out;
}

}  // namespace

std::vector<TreeId> enumerate_trees(TreeArena& arena, const std::vector<int>& gen_arities,
                                    int arity) {
    std::vector<TreeId> shapes = shapes_rec(arena, gen_arities, arity, 0);
    std::vector<int> p(arity);
    std::iota(p.begin(), p.end(), 0);
    std::vector<TreeId> ids;
    do {
        for (TreeId s : shapes) ids.push_back(arena.relabel(s, p));
    } while (std::next_permutation(p.begin(), p.end()));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<std::pair<std::pair<std::string, std::vector<int>>, TreeId>> keyed;
    keyed.reserve(ids.size());
    for (TreeId t : ids) keyed.emplace_back(arena.monomial_key(t), t);
    std::sort(keyed.begin(), keyed.end());
    std::vector<TreeId> out;
    out.reserve(keyed.size());
    for (auto& [k, t] : keyed) out.push_back(t);
    return out;
}

}  // namespace ocat
