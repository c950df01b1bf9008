#include "pgtd/reduction.hpp"

#include "pgtd/scw.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace pgtd {

namespace {

int color_id(CopyId::Kind kind, Player owner, int depth, int k) {
    int kind_bit = kind == CopyId::Kind::kExecute ? 1 : 0;
    int player_bit = owner == Player::O ? 1 : 0;
    return (kind_bit * 2 + player_bit) * (k + 1) + depth;
}

}  // namespace

int ReductionResult::copy_vertex(CopyId::Kind kind, int original, int group) const {
    for (int v = 0; v < static_cast<int>(copies.size()); ++v)
        if (copies[v] == CopyId{kind, original, group}) return v;
    throw std::invalid_argument("copy_vertex: no such copy");
}

ReductionResult reduce(const ParityGame& game, const EliminationForest& forest) {
    ForestDiagnostics diag = validate_forest(game.arena, forest);
    if (!diag.ok) throw std::invalid_argument("reduce: invalid forest: " + diag.message);
    int n = game.size();
    if (n == 0) throw std::invalid_argument("reduce: empty game");

    std::vector<int> depth = forest.depths();
    int k = 0;
    for (int x : depth) k = std::max(k, x);

    std::vector<char> childless(n, 1);
    for (int v = 0; v < n; ++v)
        if (forest.parent[v] != EliminationForest::kNone) childless[forest.parent[v]] = 0;

    ReductionResult result;
    result.forest_height = k;
    result.original_owner = game.arena.owner;

    // Copy groups: per childless v, choose and execute copies of the ancestor
    // chain from v up to its root.
    auto add_copy = [&](CopyId::Kind kind, int w, int v) {
        int id = static_cast<int>(result.copies.size());
        result.copies.push_back({kind, w, v});
        Player owner = game.arena.owner[w];
        result.reduced.arena.owner.push_back(owner);
        result.reduced.rank.push_back(kind == CopyId::Kind::kExecute
                                          ? game.rank[w] + 2
                                          : (owner == Player::E ? 1 : 0));
        result.tm.leaf_color[id] = color_id(kind, owner, depth[w], k);
        return id;
    };

    TreeModel& tm = result.tm;
    tm.height = k + 2;
    tm.palette.resize(4 * (k + 1));
    for (int c = 0; c < static_cast<int>(tm.palette.size()); ++c) {
        int player_bit = (c / (k + 1)) % 2;
        tm.palette[c] = player_bit ? Player::O : Player::E;
    }

    std::vector<std::vector<int>> ancestors(n);
    for (int v = 0; v < n; ++v)
        for (int w = v; w != EliminationForest::kNone; w = forest.parent[w])
            ancestors[v].push_back(w);

    // Internal node ids continue after the leaf ids; one node per (level,
    // forest vertex) that the construction touches, plus the joining node.
    int next_node = 0;
    for (int v = 0; v < n; ++v)
        if (childless[v]) next_node += 2 * static_cast<int>(ancestors[v].size());
    std::map<std::pair<int, int>, int> node_of;
    auto node_id = [&](int level, int v) {
        auto [it, fresh] = node_of.try_emplace({level, v}, next_node);
        if (fresh) {
            ++next_node;
            tm.nodes[it->second].level = level;
        }
        return it->second;
    };

    // Level 1: gather the copies of each childless vertex's ancestor chain,
    // wire choose -> execute, realize original edges between ancestors, and
    // give the group vertex's own choose copy its stalling self-loop.
    for (int v = 0; v < n; ++v) {
        if (!childless[v]) continue;
        int g = node_id(1, v);
        auto& node = tm.nodes[g];
        for (int w : ancestors[v]) {
            node.children.push_back(add_copy(CopyId::Kind::kChoose, w, v));
            node.children.push_back(add_copy(CopyId::Kind::kExecute, w, v));
            Player p = game.arena.owner[w];
            node.pairs.insert({color_id(CopyId::Kind::kChoose, p, depth[w], k),
                               color_id(CopyId::Kind::kExecute, p, depth[w], k)});
        }
        for (int w : ancestors[v])
            for (int u : ancestors[v])
                if (game.arena.has_edge(w, u))
                    node.pairs.insert(
                        {color_id(CopyId::Kind::kExecute, game.arena.owner[w], depth[w], k),
                         color_id(CopyId::Kind::kChoose, game.arena.owner[u], depth[u], k)});
        node.pairs.insert({color_id(CopyId::Kind::kChoose, game.arena.owner[v], depth[v], k),
                           color_id(CopyId::Kind::kChoose, game.arena.owner[v], depth[v], k)});
    }

    // Levels 2..k+1: drag childless groups up and merge each forest vertex at
    // the level matching its depth, with a same-color clique joining the
    // choose copies of the merged vertex across its groups.
    for (int l = 2; l <= k + 1; ++l) {
        int x = k - l + 1;
        for (int v = 0; v < n; ++v) {
            if (childless[v] && depth[v] <= x)
                tm.nodes[node_id(l, v)].children.push_back(node_id(l - 1, v));
            if (depth[v] == x) {
                auto& node = tm.nodes[node_id(l, v)];
                for (int w = 0; w < n; ++w)
                    if (forest.parent[w] == v) node.children.push_back(node_id(l - 1, w));
                node.pairs.insert({color_id(CopyId::Kind::kChoose, game.arena.owner[v], x, k),
                                   color_id(CopyId::Kind::kChoose, game.arena.owner[v], x, k)});
            }
        }
    }

    // Joining node over all forest roots.
    auto& join = tm.nodes[node_id(k + 2, 0)];
    for (int v = 0; v < n; ++v)
        if (depth[v] == 0) join.children.push_back(node_id(k + 1, v));

    validate_tm(tm);
    auto induced = induce_arena(tm);
    result.reduced.arena.succ = induced.first.succ;
    return result;
}

WinnerPartition map_winners(const ReductionResult& result, const WinnerPartition& reduced_winners) {
    if (reduced_winners.winner.size() != result.copies.size())
        throw std::invalid_argument("map_winners: winner vector does not cover the reduced game");
    int n = static_cast<int>(result.original_owner.size());
    WinnerPartition out;
    out.winner.assign(n, Player::O);
    std::vector<char> all_won(n, 1), any_won(n, 0);
    for (size_t i = 0; i < result.copies.size(); ++i) {
        const CopyId& c = result.copies[i];
        if (c.kind != CopyId::Kind::kChoose) continue;
        if (reduced_winners.winner[i] == Player::E)
            any_won[c.original] = 1;
        else
            all_won[c.original] = 0;
    }
    for (int v = 0; v < n; ++v)
        out.winner[v] = (result.original_owner[v] == Player::E ? any_won[v] : all_won[v])
                            ? Player::E
                            : Player::O;
    return out;
}

WinnerPartition solve_treedepth(const ParityGame& game, const EliminationForest& forest) {
    ReductionResult result = reduce(game, forest);
    return map_winners(result, solve_scw(result.reduced, result.tm));
}

WinnerPartition solve_treedepth(const ParityGame& game) {
    auto forest = find_forest(game.arena, tree_depth(game.arena));
    if (!forest) throw std::invalid_argument("solve_treedepth: no elimination forest found");
    return solve_treedepth(game, *forest);
}

}  // namespace pgtd
