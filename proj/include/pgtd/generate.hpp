#pragma once

#include <random>

#include "pgtd/core.hpp"
#include "pgtd/treedepth.hpp"
#include "pgtd/treemodel.hpp"

namespace pgtd {

/// Uniform value in [0, n). Implemented by rejection directly on the engine
/// so that fixed seeds give identical streams everywhere.
int rand_below(std::mt19937& rng, int n);

/// True with probability percent/100.
bool rand_percent(std::mt19937& rng, int percent);

/// Leveled tree-model with the exact number of leaves, random colors, random
/// per-node pair sets. height 0 requires a single leaf.
TreeModel random_tree_model(std::mt19937& rng, int leaves, int colors, int height);

/// Game on the arena induced by the tree-model, with random ranks below d.
ParityGame random_game_for(std::mt19937& rng, const TreeModel& tm, int d);

/// Random forest of height <= max_height over n vertices.
EliminationForest random_forest(std::mt19937& rng, int n, int max_height);

/// Game whose edges all connect forest-ancestor-related pairs, so the forest
/// validates for it. Random owners and ranks below d.
ParityGame random_game_on_forest(std::mt19937& rng, const EliminationForest& forest, int d,
                                 int edge_percent);

/// Unconstrained random game.
ParityGame random_game(std::mt19937& rng, int n, int d, int edge_percent);

}  // namespace pgtd
