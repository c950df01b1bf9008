#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pgtd/core.hpp"

namespace pgtd {

/// Leveled rooted tree with colored leaves and per-internal-node color-pair
/// sets. Leaf ids coincide with game vertex ids; internal node ids are
/// disjoint from leaf ids.
struct TreeModel {
    struct Node {
        int level = 0;
        std::vector<int> children;
        std::set<std::pair<int, int>> pairs;
        bool operator==(const Node&) const = default;
    };

    int height = 0;
    std::vector<Player> palette;
    std::map<int, int> leaf_color;
    std::map<int, Node> nodes;

    int num_leaves() const { return static_cast<int>(leaf_color.size()); }
    /// The unique node at the top level (the single leaf for height 0).
    int root() const;
    bool operator==(const TreeModel&) const = default;
};

/// Checks leveling, single root, unique parents, color validity; throws
/// std::invalid_argument naming the violation.
void validate_tm(const TreeModel& tm);

/// Text format: "treemodel <numColors> <height>;" then color/leaf/node/pair
/// lines; '#' comments.
TreeModel parse_tm(std::istream& in);
TreeModel parse_tm(const std::string& text);
std::string serialize_tm(const TreeModel& tm);

/// Leaves become vertices; every internal node l with (c,c') in pairs(l)
/// contributes an edge from each c-leaf to each c'-leaf of its subtree
/// (including self-loops). Requires dense leaf ids 0..n-1.
std::pair<Arena, Coloring> induce_arena(const TreeModel& tm);

/// Inserts a chain of unary internal nodes with empty pair sets above the
/// root; the induced arena is unchanged.
TreeModel pad_to_height(const TreeModel& tm, int h);

/// Leaves of the subtree rooted at `node` (a leaf is its own subtree).
std::vector<int> subtree_leaves(const TreeModel& tm, int node);

}  // namespace pgtd
