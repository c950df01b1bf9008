#include "pgtd/generate.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgtd {

int rand_below(std::mt19937& rng, int n) {
    if (n <= 0) throw std::invalid_argument("rand_below: empty range");
    uint32_t bound = static_cast<uint32_t>(n);
    uint32_t limit = UINT32_MAX - UINT32_MAX % bound;
    uint32_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return static_cast<int>(draw % bound);
}

bool rand_percent(std::mt19937& rng, int percent) { return rand_below(rng, 100) < percent; }

TreeModel random_tree_model(std::mt19937& rng, int leaves, int colors, int height) {
    if (leaves < 1 || colors < 1 || height < 0)
        throw std::invalid_argument("random_tree_model: bad parameters");
    if (height == 0 && leaves != 1)
        throw std::invalid_argument("random_tree_model: height 0 needs a single leaf");
    TreeModel tm;
    tm.height = height;
    tm.palette.resize(colors);
    for (int c = 0; c < colors; ++c)
        tm.palette[c] = rand_below(rng, 2) ? Player::O : Player::E;
    for (int v = 0; v < leaves; ++v) tm.leaf_color[v] = rand_below(rng, colors);
    if (height == 0) return tm;

    // Random level sizes, never wider than the level below so that every
    // internal node can be given at least one child.
    int next_id = leaves;
    std::vector<std::vector<int>> level_nodes(height + 1);
    int below = leaves;
    for (int l = 1; l <= height; ++l) {
        int count = l == height ? 1 : 1 + rand_below(rng, std::min({leaves, 3, below}));
        below = count;
        for (int i = 0; i < count; ++i) {
            int id = next_id++;
            tm.nodes[id].level = l;
            level_nodes[l].push_back(id);
            for (int s = 0; s < colors; ++s)
                for (int t = 0; t < colors; ++t)
                    if (rand_percent(rng, 30)) tm.nodes[id].pairs.insert({s, t});
        }
    }
    // The first |parents| children are dealt one apiece, the rest attach at
    // random, so no internal node ends up childless.
    auto attach = [&](const std::vector<int>& children, const std::vector<int>& parents) {
        for (size_t i = 0; i < children.size(); ++i) {
            int p = i < parents.size()
                        ? parents[i]
                        : parents[rand_below(rng, static_cast<int>(parents.size()))];
            tm.nodes[p].children.push_back(children[i]);
        }
    };
    std::vector<int> base(leaves);
    for (int v = 0; v < leaves; ++v) base[v] = v;
    std::shuffle(base.begin(), base.end(), rng);
    attach(base, level_nodes[1]);
    for (int l = 1; l < height; ++l) {
        std::vector<int> ids = level_nodes[l];
        std::shuffle(ids.begin(), ids.end(), rng);
        attach(ids, level_nodes[l + 1]);
    }
    // Children lists are kept sorted; that is the serialized form.
    for (auto& [id, node] : tm.nodes)
        std::sort(node.children.begin(), node.children.end());
    validate_tm(tm);
    return tm;
}

ParityGame random_game_for(std::mt19937& rng, const TreeModel& tm, int d) {
    auto [arena, coloring] = induce_arena(tm);
    ParityGame game;
    game.arena = std::move(arena);
    for (int v = 0; v < game.size(); ++v) game.rank.push_back(rand_below(rng, d));
    return game;
}

EliminationForest random_forest(std::mt19937& rng, int n, int max_height) {
    if (n < 1 || max_height < 0) throw std::invalid_argument("random_forest: bad parameters");
    EliminationForest forest;
    forest.parent.assign(n, EliminationForest::kNone);
    std::vector<int> depth(n, 0);
    for (int v = 1; v < n; ++v) {
        std::vector<int> candidates = {EliminationForest::kNone};
        for (int u = 0; u < v; ++u)
            if (depth[u] < max_height) candidates.push_back(u);
        int pick = candidates[rand_below(rng, static_cast<int>(candidates.size()))];
        forest.parent[v] = pick;
        depth[v] = pick == EliminationForest::kNone ? 0 : depth[pick] + 1;
    }
    return forest;
}

ParityGame random_game_on_forest(std::mt19937& rng, const EliminationForest& forest, int d,
                                 int edge_percent) {
    int n = forest.size();
    ParityGame game;
    game.arena.owner.resize(n);
    game.arena.succ.resize(n);
    for (int v = 0; v < n; ++v) {
        game.arena.owner[v] = rand_below(rng, 2) ? Player::O : Player::E;
        game.rank.push_back(rand_below(rng, d));
    }
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w)
            if ((forest.is_ancestor(v, w) || forest.is_ancestor(w, v)) &&
                rand_percent(rng, edge_percent))
                game.arena.add_edge(v, w);
    return game;
}

ParityGame random_game(std::mt19937& rng, int n, int d, int edge_percent) {
    if (n < 1 || d < 1) throw std::invalid_argument("random_game: bad parameters");
    ParityGame game;
    game.arena.owner.resize(n);
    game.arena.succ.resize(n);
    for (int v = 0; v < n; ++v) {
        game.arena.owner[v] = rand_below(rng, 2) ? Player::O : Player::E;
        game.rank.push_back(rand_below(rng, d));
    }
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w)
            if (rand_percent(rng, edge_percent)) game.arena.add_edge(v, w);
    return game;
}

}  // namespace pgtd
