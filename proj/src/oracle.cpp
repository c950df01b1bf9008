#include "pgtd/oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace pgtd {

namespace {

using VertexSet = std::vector<char>;

// Attractor of `target` for player p within `active`; the usual convention
// makes a vertex with no active successors attracted when its owner is the
// opponent (being stuck there loses for the owner).
VertexSet attractor(const Arena& arena, const std::vector<std::vector<int>>& pred, Player p,
                    const VertexSet& active, VertexSet target) {
    int n = arena.size();
    std::vector<int> out_count(n, 0);
    for (int v = 0; v < n; ++v) {
        if (!active[v]) continue;
        for (int w : arena.succ[v])
            if (active[w]) ++out_count[v];
    }
    std::deque<int> work;
    for (int v = 0; v < n; ++v) {
        target[v] = target[v] && active[v];
        if (target[v]) work.push_back(v);
        if (active[v] && !target[v] && arena.owner[v] != p && out_count[v] == 0) {
            target[v] = 1;
            work.push_back(v);
        }
    }
    while (!work.empty()) {
        int w = work.front();
        work.pop_front();
        for (int v : pred[w]) {
            if (!active[v] || target[v]) continue;
            if (arena.owner[v] == p) {
                target[v] = 1;
                work.push_back(v);
            } else if (--out_count[v] == 0) {
                target[v] = 1;
                work.push_back(v);
            }
        }
    }
    return target;
}

void zielonka(const ParityGame& game, const std::vector<std::vector<int>>& pred,
              const VertexSet& active, std::vector<Player>& winner) {
    int n = game.size();
    int top = -1;
    for (int v = 0; v < n; ++v)
        if (active[v]) top = std::max(top, game.rank[v]);
    if (top < 0) return;
    Player p = top % 2 == 0 ? Player::E : Player::O;
    VertexSet rank_set(n, 0);
    for (int v = 0; v < n; ++v) rank_set[v] = active[v] && game.rank[v] == top;
    VertexSet z = attractor(game.arena, pred, p, active, rank_set);

    VertexSet rest = active;
    for (int v = 0; v < n; ++v) rest[v] = rest[v] && !z[v];
    zielonka(game, pred, rest, winner);

    VertexSet opp_region(n, 0);
    bool opp_nonempty = false;
    for (int v = 0; v < n; ++v) {
        opp_region[v] = rest[v] && winner[v] == opponent(p);
        opp_nonempty = opp_nonempty || opp_region[v];
    }
    if (!opp_nonempty) {
        for (int v = 0; v < n; ++v)
            if (active[v]) winner[v] = p;
        return;
    }
    VertexSet b = attractor(game.arena, pred, opponent(p), active, opp_region);
    VertexSet rest2 = active;
    for (int v = 0; v < n; ++v) rest2[v] = rest2[v] && !b[v];
    zielonka(game, pred, rest2, winner);
    for (int v = 0; v < n; ++v)
        if (active[v] && b[v]) winner[v] = opponent(p);
}

}  // namespace

WinnerPartition solve_zielonka(const ParityGame& game) {
    // Dead ends are routed to sinks so the recursion runs on a total game:
    // a stuck E-vertex loses for E, a stuck O-vertex wins for E.
    ParityGame aug = game;
    int n = game.size();
    int sink_win = -1, sink_lose = -1;
    for (int v = 0; v < n; ++v) {
        if (!aug.arena.succ[v].empty()) continue;
        int* sink = aug.arena.owner[v] == Player::E ? &sink_lose : &sink_win;
        if (*sink < 0) {
            *sink = aug.size();
            aug.arena.owner.push_back(Player::O);
            aug.arena.succ.push_back({*sink});
            aug.rank.push_back(sink == &sink_lose ? 1 : 0);
        }
        aug.arena.succ[v].push_back(*sink);
    }
    int m = aug.size();
    std::vector<std::vector<int>> pred(m);
    for (int v = 0; v < m; ++v)
        for (int w : aug.arena.succ[v]) pred[w].push_back(v);
    std::vector<Player> winner(m, Player::E);
    zielonka(aug, pred, VertexSet(m, 1), winner);
    winner.resize(n);
    return WinnerPartition{std::move(winner)};
}

Enforcement enforcement_of(const ParityGame& game, const Coloring& coloring,
                           const PositionalStopStrategy& strategy, int v) {
    validate_coloring(game.arena, coloring);
    int n = game.size();
    int d = game.max_rank() + 1;
    // Reachability over (vertex, max rank so far).
    std::vector<char> seen(static_cast<size_t>(n) * d, 0);
    auto at = [&](int w, int m) -> std::vector<char>::reference { return seen[w * d + m]; };
    std::deque<std::pair<int, int>> work;
    at(v, game.rank[v]) = 1;
    work.push_back({v, game.rank[v]});
    while (!work.empty()) {
        auto [w, m] = work.front();
        work.pop_front();
        if (game.arena.owner[w] == Player::E) {
            int mv = strategy.move.at(w);
            if (mv == PositionalStopStrategy::kStop) continue;
            int m2 = std::max(m, game.rank[mv]);
            if (!at(mv, m2)) {
                at(mv, m2) = 1;
                work.push_back({mv, m2});
            }
        } else {
            for (int u : game.arena.succ[w]) {
                int m2 = std::max(m, game.rank[u]);
                if (!at(u, m2)) {
                    at(u, m2) = 1;
                    work.push_back({u, m2});
                }
            }
        }
    }
    Enforcement result(coloring.num_colors());
    for (int w = 0; w < n; ++w) {
        if (game.arena.owner[w] == Player::E && !strategy.stops_at(w)) continue;
        for (int m = 0; m < d; ++m) {
            if (!at(w, m)) continue;
            int c = coloring.color[w];
            if (!result.defined(c) || rank_precedes(m, result.value(c))) result.assign(c, m);
        }
    }
    return result;
}

bool is_safe(const ParityGame& game, const PositionalStopStrategy& strategy, int v) {
    int n = game.size();
    auto moves = [&](int w) -> std::vector<int> {
        if (game.arena.owner[w] == Player::O) return game.arena.succ[w];
        int mv = strategy.move.at(w);
        if (mv == PositionalStopStrategy::kStop) return {};
        return {mv};
    };
    std::vector<char> reach(n, 0);
    std::deque<int> work{v};
    reach[v] = 1;
    while (!work.empty()) {
        int w = work.front();
        work.pop_front();
        for (int u : moves(w))
            if (!reach[u]) {
                reach[u] = 1;
                work.push_back(u);
            }
    }
    // Losing iff some reachable cycle has odd maximum rank: for each odd r,
    // look for a cycle through a rank-r vertex among ranks <= r.
    for (int start = 0; start < n; ++start) {
        if (!reach[start] || game.rank[start] % 2 == 0) continue;
        int r = game.rank[start];
        std::vector<char> seen(n, 0);
        std::deque<int> bfs;
        for (int u : moves(start))
            if (reach[u] && game.rank[u] <= r && !seen[u]) {
                seen[u] = 1;
                bfs.push_back(u);
            }
        while (!bfs.empty()) {
            int w = bfs.front();
            bfs.pop_front();
            if (w == start) return false;
            for (int u : moves(w))
                if (reach[u] && game.rank[u] <= r && !seen[u]) {
                    seen[u] = 1;
                    bfs.push_back(u);
                }
        }
    }
    return true;
}

std::vector<PositionalStopStrategy> enumerate_positional_stop_strategies(const ParityGame& game) {
    std::vector<int> e_vertices;
    uint64_t total = 1;
    for (int v = 0; v < game.size(); ++v) {
        if (game.arena.owner[v] != Player::E) continue;
        e_vertices.push_back(v);
        total *= game.arena.succ[v].size() + 1;
        if (total > 1000000)
            throw std::invalid_argument("strategy enumeration exceeds 10^6 combinations");
    }
    std::vector<PositionalStopStrategy> out;
    out.reserve(total);
    std::vector<size_t> odo(e_vertices.size(), 0);
    for (uint64_t i = 0; i < total; ++i) {
        PositionalStopStrategy s;
        for (size_t j = 0; j < e_vertices.size(); ++j) {
            int v = e_vertices[j];
            const auto& succ = game.arena.succ[v];
            s.move[v] = odo[j] < succ.size() ? succ[odo[j]] : PositionalStopStrategy::kStop;
        }
        out.push_back(std::move(s));
        for (size_t j = e_vertices.size(); j-- > 0;) {
            if (++odo[j] <= game.arena.succ[e_vertices[j]].size()) break;
            odo[j] = 0;
        }
    }
    return out;
}

EnforcementSet reference_valid_floor(const ParityGame& game, const Coloring& coloring, int v,
                                     const EnfParams& params) {
    std::vector<Enforcement> seeds;
    for (const auto& strategy : enumerate_positional_stop_strategies(game))
        if (is_safe(game, strategy, v)) seeds.push_back(enforcement_of(game, coloring, strategy, v));
    return EnforcementSet::up_closure(seeds, params);
}

}  // namespace pgtd
