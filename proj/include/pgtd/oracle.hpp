#pragma once

#include <map>
#include <vector>

#include "pgtd/core.hpp"
#include "pgtd/enforcement.hpp"

namespace pgtd {

/// For each E-vertex either a successor or STOP. STOP is always permitted in
/// stop parity games.
struct PositionalStopStrategy {
    static constexpr int kStop = -1;
    std::map<int, int> move;

    bool stops_at(int v) const { return move.at(v) == kStop; }
    bool operator==(const PositionalStopStrategy&) const = default;
};

/// Exact winning regions of the normal parity game. A finite play stuck at a
/// V_O vertex is won by E, one stuck at a V_E vertex by O.
WinnerPartition solve_zielonka(const ParityGame& game);

/// Worst-arrival summary of the strategy from v, per color: for O-colored
/// vertices over all consistent arrivals, for E-colored ones over arrivals at
/// which the strategy stops. Computed exactly over the (vertex, max-rank)
/// product space, including the length-one prefix at v.
Enforcement enforcement_of(const ParityGame& game, const Coloring& coloring,
                           const PositionalStopStrategy& strategy, int v);

/// No play from v consistent with the strategy is losing for E.
bool is_safe(const ParityGame& game, const PositionalStopStrategy& strategy, int v);

/// All positional stop strategies, deterministic order (E-vertices ascending;
/// successors ascending, then STOP). Guarded against combinatorial blowup.
std::vector<PositionalStopStrategy> enumerate_positional_stop_strategies(const ParityGame& game);

/// Up-closure of the enforcements of all safe positional stop strategies from
/// v: a lower bound that every valid enforcement set must contain.
EnforcementSet reference_valid_floor(const ParityGame& game, const Coloring& coloring, int v,
                                     const EnfParams& params);

}  // namespace pgtd
