#pragma once

#include <vector>

#include "pgtd/core.hpp"
#include "pgtd/treedepth.hpp"
#include "pgtd/treemodel.hpp"

namespace pgtd {

/// One copy of an original vertex in the reduced game. Copies are grouped by
/// a childless forest vertex; a group holds two copies (choose then execute)
/// of each forest ancestor of its group vertex.
struct CopyId {
    enum class Kind { kChoose, kExecute };
    Kind kind;
    int original;
    int group;
    bool operator==(const CopyId&) const = default;
};

struct ReductionResult {
    ParityGame reduced;
    TreeModel tm;
    /// Reduced vertex id -> copy; the inverse is copy_vertex below.
    std::vector<CopyId> copies;
    std::vector<Player> original_owner;
    int forest_height = 0;

    int copy_vertex(CopyId::Kind kind, int original, int group) const;
    int palette_size() const { return 4 * (forest_height + 1); }
};

/// Expands the game along the forest: per childless forest vertex, choose and
/// execute copies of each of its ancestors, colored by (kind, owner, depth).
/// Choose copies rank 1 (E-owned) or 0 (O-owned), execute copies rank + 2.
/// The produced tree-model has height forest_height + 2 and induces the
/// reduced game's arena.
ReductionResult reduce(const ParityGame& game, const EliminationForest& forest);

/// E wins an E-vertex iff it wins some choose copy of it, an O-vertex iff it
/// wins every choose copy of it.
WinnerPartition map_winners(const ReductionResult& result, const WinnerPartition& reduced_winners);

/// reduce, solve the reduced game over its tree-model, map winners back.
WinnerPartition solve_treedepth(const ParityGame& game, const EliminationForest& forest);

/// Same, with a forest found at k = tree_depth(arena) first.
WinnerPartition solve_treedepth(const ParityGame& game);

}  // namespace pgtd
