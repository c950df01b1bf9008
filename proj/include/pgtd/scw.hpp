#pragma once

#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "pgtd/core.hpp"
#include "pgtd/enforcement.hpp"
#include "pgtd/treemodel.hpp"

namespace pgtd {

/// Per-vertex enforcement sets plus a flag marking which vertices belong to
/// the part of the game assembled so far. Sets of absent vertices are empty.
struct SolverState {
    EnfParams params;
    std::vector<EnforcementSet> sets;
    std::vector<char> present;

    explicit SolverState(int num_vertices, const EnfParams& p)
        : params(p), sets(num_vertices, EnforcementSet(p)), present(num_vertices, 0) {}
    int num_vertices() const { return static_cast<int>(present.size()); }
    bool operator==(const SolverState&) const = default;
};

/// One state per the disjoint union of all single-vertex games: every leaf is
/// present and carries the up-closure of {[color(v) |-> rank(v)]}.
SolverState init_sets(const ParityGame& game, const TreeModel& tm, int d);

/// Keeps only the listed vertices present (their sets intact, others cleared).
SolverState restrict_to(const SolverState& state, const std::vector<int>& vertices);

/// Adds edges from every present s-colored vertex to every present t-colored
/// one, where s belongs to player E. Old sets must be up-closed.
SolverState update_E(const SolverState& state, const Coloring& coloring, int s, int t);

/// Same edge addition for an O-owned source color s.
SolverState update_O(const SolverState& state, const Coloring& coloring, int s, int t);

/// Disjoint union of the child states, then the given color pairs applied in
/// the given order (update_E or update_O per the owner of the source color).
SolverState process_node_ordered(const std::vector<SolverState>& children,
                                 const std::vector<std::pair<int, int>>& ordered_pairs,
                                 const Coloring& coloring);

/// process_node_ordered with the fixed lexicographic (s, t) order.
SolverState process_node(const std::vector<SolverState>& children,
                         const std::set<std::pair<int, int>>& pairs, const Coloring& coloring);

/// E wins v iff some enforcement at v has no E-color in its domain.
WinnerPartition extract_winners(const SolverState& state, const std::vector<Player>& palette);

/// Called after every applied edge addition with the state and the subgame
/// built so far (edges among present vertices only; absent vertices are
/// edgeless there).
using ScwObserver = std::function<void(const SolverState& state, const ParityGame& subgame)>;

/// Exact winning regions by bottom-up dynamic programming over the tree-model.
/// Requires induce_arena(tm) to reproduce game's arena edge-for-edge. Ranks
/// are normalized internally. Dispatches to an antichain engine when the
/// dense (d+1)^k universe is too large.
WinnerPartition solve_scw(const ParityGame& game, const TreeModel& tm);

/// Dense-engine variant with instrumentation; observer may be empty.
WinnerPartition solve_scw(const ParityGame& game, const TreeModel& tm, const ScwObserver& observer);

/// Antichain mirror of SolverState: each up-closed set is represented by its
/// minimal elements. Used when (d+1)^k is out of dense range; validated
/// against the dense engine on small parameters.
struct AntiSolverState {
    EnfParams params;
    std::vector<std::vector<Enforcement>> anti;
    std::vector<char> present;

    explicit AntiSolverState(int num_vertices, const EnfParams& p)
        : params(p), anti(num_vertices), present(num_vertices, 0) {}
    int num_vertices() const { return static_cast<int>(present.size()); }
};

AntiSolverState anti_init_sets(const ParityGame& game, const TreeModel& tm, int d);
AntiSolverState anti_update_E(const AntiSolverState& state, const Coloring& coloring, int s, int t);
AntiSolverState anti_update_O(const AntiSolverState& state, const Coloring& coloring, int s, int t);
AntiSolverState anti_process_node(const std::vector<AntiSolverState>& children,
                                  const std::set<std::pair<int, int>>& pairs,
                                  const Coloring& coloring);
WinnerPartition anti_extract_winners(const AntiSolverState& state,
                                     const std::vector<Player>& palette);
WinnerPartition solve_scw_antichain(const ParityGame& game, const TreeModel& tm);

}  // namespace pgtd
