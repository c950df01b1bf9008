#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pgtd/core.hpp"

namespace pgtd {

/// Rooted forest over arena vertices; parent is kNone for roots. Valid for an
/// arena when every edge connects an ancestor with a descendant (a vertex is
/// its own ancestor). Height is counted in edges: a single vertex has depth 0.
struct EliminationForest {
    static constexpr int kNone = -1;
    std::vector<int> parent;

    int size() const { return static_cast<int>(parent.size()); }
    /// Root depth 0; throws on a parent cycle.
    std::vector<int> depths() const;
    int height() const;
    bool is_ancestor(int anc, int v) const;
    bool operator==(const EliminationForest&) const = default;
};

struct ForestDiagnostics {
    bool ok = false;
    /// Names the violating edge or cycle when ok is false.
    std::string message;
};

/// Checks the forest invariants against the arena (edge orientation ignored).
ForestDiagnostics validate_forest(const Arena& arena, const EliminationForest& forest);

/// Exact tree-depth: height in edges of the best elimination forest. Single
/// vertex gives 0. Memoized subset recursion, guarded to n <= 20.
int tree_depth(const Arena& arena);

/// An elimination forest of height <= k, or nothing if tree-depth exceeds k.
/// In each connected component the lowest-id vertex whose removal fits the
/// remaining budget becomes the root, recursively.
std::optional<EliminationForest> find_forest(const Arena& arena, int k);

/// Text format: one line per vertex "<vertex> <parent|-1>;", '#' comments.
EliminationForest parse_forest(std::istream& in);
EliminationForest parse_forest(const std::string& text);
std::string serialize_forest(const EliminationForest& forest);

}  // namespace pgtd
