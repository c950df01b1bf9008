#include "pgtd/scw.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgtd {

namespace {

enum class Filter { All, SDefined, SEvenOrUndef };

bool passes(const Enforcement& p, int s, Filter f) {
    switch (f) {
        case Filter::All:
            return true;
        case Filter::SDefined:
            return p.defined(s);
        case Filter::SEvenOrUndef:
            return !p.defined(s) || p.value(s) % 2 == 0;
    }
    return false;
}

/// Minimal elements of {P in set : filter(P)}. For an up-closed set this is
/// exactly the members with no single-digit step-down inside the filtered set
/// (a smaller member can always be reached digit by digit, adjusting the
/// filtered digit first).
std::vector<Enforcement> minimal_members(const EnforcementSet& set, int s, Filter f) {
    const EnfParams& params = set.params();
    uint64_t size = params.universe_size();
    std::vector<Enforcement> out;
    for (uint64_t i = 0; i < size; ++i) {
        if (!set.contains_index(i)) continue;
        Enforcement p = enf_from_index(i, params);
        if (!passes(p, s, f)) continue;
        bool minimal = true;
        for (int c = 0; c < params.k && minimal; ++c) {
            if (!p.defined(c)) continue;
            Enforcement q = p;
            q.clear(c);
            if (passes(q, c == s ? s : -1, c == s ? f : Filter::All) && set.contains(q)) {
                minimal = false;
                break;
            }
            for (int r = 0; r < params.d; ++r) {
                if (!rank_precedes(p.value(c), r)) continue;
                q.assign(c, r);
                if ((c != s || passes(q, s, f)) && set.contains(q)) {
                    minimal = false;
                    break;
                }
            }
        }
        if (minimal) out.push_back(std::move(p));
    }
    return out;
}

Enforcement without(Enforcement p, int c) {
    p.clear(c);
    return p;
}

void check_color_pair(const Coloring& coloring, int s, int t, Player side, const char* op) {
    if (s < 0 || t < 0 || s >= coloring.num_colors() || t >= coloring.num_colors())
        throw std::invalid_argument(std::string(op) + ": color out of range");
    if (coloring.palette[s] != side)
        throw std::invalid_argument(std::string(op) + ": source color belongs to the other player");
}

void check_state(const SolverState& state, const Coloring& coloring) {
    if (state.num_vertices() != static_cast<int>(coloring.color.size()))
        throw std::invalid_argument("solver state and coloring disagree on vertex count");
}

}  // namespace

SolverState init_sets(const ParityGame& game, const TreeModel& tm, int d) {
    validate_tm(tm);
    EnfParams params{d, static_cast<int>(tm.palette.size())};
    params.universe_size();
    SolverState state(game.size(), params);
    for (const auto& [v, c] : tm.leaf_color) {
        if (v >= game.size()) throw std::invalid_argument("init_sets: leaf id outside game");
        int r = game.rank[v];
        if (r >= d)
            throw std::invalid_argument("init_sets: rank " + std::to_string(r) +
                                        " not below bound " + std::to_string(d));
        Enforcement seed(params.k);
        seed.assign(c, r);
        state.sets[v] = EnforcementSet::up_closure({seed}, params);
        state.present[v] = 1;
    }
    return state;
}

SolverState restrict_to(const SolverState& state, const std::vector<int>& vertices) {
    SolverState out(state.num_vertices(), state.params);
    for (int v : vertices) {
        if (!state.present[v])
            throw std::invalid_argument("restrict_to: vertex " + std::to_string(v) + " not present");
        out.present[v] = 1;
        out.sets[v] = state.sets[v];
    }
    return out;
}

SolverState update_E(const SolverState& state, const Coloring& coloring, int s, int t) {
    check_color_pair(coloring, s, t, Player::E, "update_E");
    check_state(state, coloring);
    const EnfParams& params = state.params;

    EnforcementSet move(params);
    for (int w = 0; w < state.num_vertices(); ++w)
        if (state.present[w] && coloring.color[w] == t) move.union_with(state.sets[w]);

    // LOOPED from the full MOVE set: P without s such that P(s) is even.
    std::vector<Enforcement> looped;
    uint64_t size = params.universe_size();
    for (uint64_t i = 0; i < size; ++i) {
        if (!move.contains_index(i)) continue;
        Enforcement p = enf_from_index(i, params);
        if (p.defined(s) && p.value(s) % 2 == 0) looped.push_back(without(p, s));
    }
    EnforcementSet opt_up = EnforcementSet::up_closure(looped, params);
    opt_up.union_with(move);
    // The new sets are up-closures of merges, and merging is monotone in both
    // arguments, so generators of Up(OPT) stand in for all of OPT.
    std::vector<Enforcement> opt_gen = minimal_members(opt_up, 0, Filter::All);

    SolverState out = state;
    for (int v = 0; v < state.num_vertices(); ++v) {
        if (!state.present[v]) continue;
        std::vector<Enforcement> merges;
        for (const Enforcement& q : minimal_members(state.sets[v], s, Filter::SDefined))
            for (const Enforcement& r : opt_gen)
                merges.push_back(enf_merge(Player::E, q, s, r));
        out.sets[v].union_with(EnforcementSet::up_closure(merges, params));
    }
    return out;
}

SolverState update_O(const SolverState& state, const Coloring& coloring, int s, int t) {
    check_color_pair(coloring, s, t, Player::O, "update_O");
    check_state(state, coloring);
    const EnfParams& params = state.params;

    std::vector<int> tverts;
    for (int w = 0; w < state.num_vertices(); ++w)
        if (state.present[w] && coloring.color[w] == t) tverts.push_back(w);
    if (tverts.empty()) return state;

    std::vector<std::vector<Enforcement>> responses;
    for (int w : tverts) responses.push_back(minimal_members(state.sets[w], s, Filter::SEvenOrUndef));

    SolverState out = state;
    for (int v = 0; v < state.num_vertices(); ++v) {
        if (!state.present[v]) continue;
        // First disjunct: P survives iff some member without s sits below it.
        // Since the old set is up-closed that member can be taken to be P
        // itself with s cleared. Members defined at s are only re-admitted
        // through the merge disjunct below.
        EnforcementSet nv(params);
        for (uint64_t i = 0; i < params.universe_size(); ++i) {
            Enforcement p = enf_from_index(i, params);
            p.clear(s);
            if (state.sets[v].contains(p)) nv.set_index(i);
        }
        // Minimal Q suffice: merging is monotone in Q, so any enforcement
        // admitted by some Q is admitted by a minimal one below it.
        for (const Enforcement& q : minimal_members(state.sets[v], s, Filter::SDefined)) {
            EnforcementSet cand = EnforcementSet::up_closure({q}, params);
            for (const auto& resp : responses) {
                if (resp.empty()) {
                    cand = EnforcementSet(params);
                    break;
                }
                std::vector<Enforcement> merges;
                merges.reserve(resp.size());
                for (const Enforcement& r : resp) merges.push_back(enf_merge(Player::O, q, s, r));
                cand.intersect_with(EnforcementSet::up_closure(merges, params));
                if (cand.empty()) break;
            }
            nv.union_with(cand);
        }
        out.sets[v] = nv;
    }
    return out;
}

namespace {

SolverState union_children(const std::vector<SolverState>& children) {
    if (children.empty()) throw std::invalid_argument("process_node: no child states");
    SolverState out = children.front();
    for (size_t i = 1; i < children.size(); ++i) {
        const SolverState& child = children[i];
        if (!(child.params == out.params) || child.num_vertices() != out.num_vertices())
            throw std::invalid_argument("process_node: child states over different universes");
        for (int v = 0; v < out.num_vertices(); ++v) {
            if (!child.present[v]) continue;
            if (out.present[v])
                throw std::invalid_argument("process_node: vertex " + std::to_string(v) +
                                            " present in two children");
            out.present[v] = 1;
            out.sets[v] = child.sets[v];
        }
    }
    return out;
}

SolverState apply_pairs(SolverState state, const std::vector<std::pair<int, int>>& ordered_pairs,
                        const Coloring& coloring, Arena* subgame, const ParityGame* game,
                        const ScwObserver& observer) {
    for (const auto& [s, t] : ordered_pairs) {
        state = coloring.palette[s] == Player::E ? update_E(state, coloring, s, t)
                                                 : update_O(state, coloring, s, t);
        if (subgame) {
            for (int v = 0; v < state.num_vertices(); ++v) {
                if (!state.present[v] || coloring.color[v] != s) continue;
                for (int w = 0; w < state.num_vertices(); ++w)
                    if (state.present[w] && coloring.color[w] == t) subgame->add_edge(v, w);
            }
            if (observer) observer(state, ParityGame{*subgame, game->rank});
        }
    }
    return state;
}

}  // namespace

SolverState process_node_ordered(const std::vector<SolverState>& children,
                                 const std::vector<std::pair<int, int>>& ordered_pairs,
                                 const Coloring& coloring) {
    return apply_pairs(union_children(children), ordered_pairs, coloring, nullptr, nullptr, {});
}

SolverState process_node(const std::vector<SolverState>& children,
                         const std::set<std::pair<int, int>>& pairs, const Coloring& coloring) {
    return process_node_ordered(children, {pairs.begin(), pairs.end()}, coloring);
}

WinnerPartition extract_winners(const SolverState& state, const std::vector<Player>& palette) {
    WinnerPartition out;
    out.winner.assign(state.num_vertices(), Player::O);
    for (int v = 0; v < state.num_vertices(); ++v)
        for (const Enforcement& p : minimal_members(state.sets[v], 0, Filter::All)) {
            bool e_free = true;
            for (int c = 0; c < p.num_colors(); ++c)
                if (p.defined(c) && palette[c] == Player::E) e_free = false;
            if (e_free) {
                out.winner[v] = Player::E;
                break;
            }
        }
    return out;
}

namespace {

void check_induces(const ParityGame& game, const TreeModel& tm, Coloring& coloring_out) {
    validate_tm(tm);
    auto [arena, coloring] = induce_arena(tm);
    if (!(arena == game.arena))
        throw std::invalid_argument("tree-model does not induce the game's arena");
    coloring_out = std::move(coloring);
}

// Dense sets pay for full universe scans per update; past this size the
// antichain engine wins on the structured instances we see in practice.
constexpr uint64_t kDenseDispatch = uint64_t{1} << 14;

uint64_t safe_universe(int d, int k) {
    uint64_t size = 1;
    for (int i = 0; i < k; ++i) {
        size *= static_cast<uint64_t>(d) + 1;
        if (size > kDenseDispatch) return kDenseDispatch + 1;
    }
    return size;
}

}  // namespace

WinnerPartition solve_scw(const ParityGame& game, const TreeModel& tm, const ScwObserver& observer) {
    Coloring coloring;
    check_induces(game, tm, coloring);
    ParityGame normalized = normalize_ranks(game);
    int d = std::max(1, normalized.max_rank() + 1);
    SolverState base = init_sets(normalized, tm, d);

    Arena subgame;
    subgame.owner = game.arena.owner;
    subgame.succ.assign(game.size(), {});

    auto solve_node = [&](auto&& self, int node) -> SolverState {
        if (tm.leaf_color.count(node)) {
            SolverState leaf = restrict_to(base, {node});
            if (observer) observer(leaf, ParityGame{subgame, normalized.rank});
            return leaf;
        }
        const auto& tn = tm.nodes.at(node);
        std::vector<SolverState> children;
        for (int child : tn.children) children.push_back(self(self, child));
        return apply_pairs(union_children(children), {tn.pairs.begin(), tn.pairs.end()}, coloring,
                           &subgame, &normalized, observer);
    };
    SolverState final_state =
        tm.height == 0 ? restrict_to(base, {tm.root()}) : solve_node(solve_node, tm.root());
    return extract_winners(final_state, tm.palette);
}

WinnerPartition solve_scw(const ParityGame& game, const TreeModel& tm) {
    ParityGame normalized = normalize_ranks(game);
    int d = std::max(1, normalized.max_rank() + 1);
    if (safe_universe(d, static_cast<int>(tm.palette.size())) <= kDenseDispatch)
        return solve_scw(game, tm, ScwObserver{});
    return solve_scw_antichain(game, tm);
}

AntiSolverState anti_init_sets(const ParityGame& game, const TreeModel& tm, int d) {
    validate_tm(tm);
    EnfParams params{d, static_cast<int>(tm.palette.size())};
    if (params.d < 1 || params.k < 1) throw std::invalid_argument("need d >= 1, k >= 1");
    AntiSolverState state(game.size(), params);
    for (const auto& [v, c] : tm.leaf_color) {
        if (v >= game.size()) throw std::invalid_argument("anti_init_sets: leaf id outside game");
        int r = game.rank[v];
        if (r >= d)
            throw std::invalid_argument("anti_init_sets: rank " + std::to_string(r) +
                                        " not below bound " + std::to_string(d));
        Enforcement seed(params.k);
        seed.assign(c, r);
        state.anti[v] = {seed};
        state.present[v] = 1;
    }
    return state;
}

namespace {

/// Generators of {Q in Up(anti) : s in Dom(Q)}: an antichain element either
/// already defines s or must be extended at s with every possible rank.
std::vector<Enforcement> gen_with_s(const std::vector<Enforcement>& anti, int s, int d) {
    std::vector<Enforcement> out;
    for (const Enforcement& a : anti) {
        if (a.defined(s)) {
            out.push_back(a);
        } else {
            for (int r = 0; r < d; ++r) {
                Enforcement q = a;
                q.assign(s, r);
                out.push_back(std::move(q));
            }
        }
    }
    return prune_antichain(std::move(out));
}

}  // namespace

AntiSolverState anti_update_E(const AntiSolverState& state, const Coloring& coloring, int s, int t) {
    check_color_pair(coloring, s, t, Player::E, "anti_update_E");
    const EnfParams& params = state.params;

    std::vector<Enforcement> move;
    for (int w = 0; w < state.num_vertices(); ++w)
        if (state.present[w] && coloring.color[w] == t)
            move.insert(move.end(), state.anti[w].begin(), state.anti[w].end());
    move = prune_antichain(std::move(move));

    // Generators of Up(MOVE + LOOPED). A minimal mover with an odd value at s
    // yields no looped generator: no even value precedes an odd one, so
    // nothing below it in MOVE has an even value at s either.
    std::vector<Enforcement> opt = move;
    for (const Enforcement& a : move)
        if (a.defined(s) && a.value(s) % 2 == 0) opt.push_back(without(a, s));
    opt = prune_antichain(std::move(opt));

    AntiSolverState out = state;
    for (int v = 0; v < state.num_vertices(); ++v) {
        if (!state.present[v]) continue;
        std::vector<Enforcement> next = state.anti[v];
        for (const Enforcement& q : gen_with_s(state.anti[v], s, params.d))
            for (const Enforcement& r : opt) next.push_back(enf_merge(Player::E, q, s, r));
        out.anti[v] = prune_antichain(std::move(next));
    }
    return out;
}

AntiSolverState anti_update_O(const AntiSolverState& state, const Coloring& coloring, int s, int t) {
    check_color_pair(coloring, s, t, Player::O, "anti_update_O");

    std::vector<int> tverts;
    for (int w = 0; w < state.num_vertices(); ++w)
        if (state.present[w] && coloring.color[w] == t) tverts.push_back(w);
    if (tverts.empty()) return state;

    std::vector<std::vector<Enforcement>> responses;
    for (int w : tverts) {
        std::vector<Enforcement> good;
        for (const Enforcement& a : state.anti[w])
            if (!a.defined(s) || a.value(s) % 2 == 0) good.push_back(a);
        responses.push_back(std::move(good));
    }

    AntiSolverState out = state;
    for (int v = 0; v < state.num_vertices(); ++v) {
        if (!state.present[v]) continue;
        // Elements without s survive; elements defined at s are only
        // re-admitted through the merge disjunct.
        std::vector<Enforcement> next;
        for (const Enforcement& a : state.anti[v])
            if (!a.defined(s)) next.push_back(a);
        for (const Enforcement& q : state.anti[v]) {
            if (!q.defined(s)) continue;
            // Intersection of upward cones via pairwise joins (enf_union is
            // the least upper bound in the enforcement order).
            std::vector<Enforcement> cand = {q};
            for (const auto& resp : responses) {
                if (resp.empty()) {
                    cand.clear();
                    break;
                }
                std::vector<Enforcement> joined;
                for (const Enforcement& c : cand)
                    for (const Enforcement& r : resp)
                        joined.push_back(enf_union(c, enf_merge(Player::O, q, s, r)));
                cand = prune_antichain(std::move(joined));
            }
            next.insert(next.end(), cand.begin(), cand.end());
        }
        out.anti[v] = prune_antichain(std::move(next));
    }
    return out;
}

namespace {

AntiSolverState anti_union_children(const std::vector<AntiSolverState>& children) {
    if (children.empty()) throw std::invalid_argument("anti_process_node: no child states");
    AntiSolverState out = children.front();
    for (size_t i = 1; i < children.size(); ++i) {
        const AntiSolverState& child = children[i];
        if (!(child.params == out.params) || child.num_vertices() != out.num_vertices())
            throw std::invalid_argument("anti_process_node: child states over different universes");
        for (int v = 0; v < out.num_vertices(); ++v) {
            if (!child.present[v]) continue;
            if (out.present[v])
                throw std::invalid_argument("anti_process_node: vertex " + std::to_string(v) +
                                            " present in two children");
            out.present[v] = 1;
            out.anti[v] = child.anti[v];
        }
    }
    return out;
}

}  // namespace

AntiSolverState anti_process_node(const std::vector<AntiSolverState>& children,
                                  const std::set<std::pair<int, int>>& pairs,
                                  const Coloring& coloring) {
    AntiSolverState state = anti_union_children(children);
    for (const auto& [s, t] : pairs)
        state = coloring.palette[s] == Player::E ? anti_update_E(state, coloring, s, t)
                                                 : anti_update_O(state, coloring, s, t);
    return state;
}

WinnerPartition anti_extract_winners(const AntiSolverState& state,
                                     const std::vector<Player>& palette) {
    WinnerPartition out;
    out.winner.assign(state.num_vertices(), Player::O);
    for (int v = 0; v < state.num_vertices(); ++v)
        for (const Enforcement& p : state.anti[v]) {
            bool e_free = true;
            for (int c = 0; c < p.num_colors(); ++c)
                if (p.defined(c) && palette[c] == Player::E) e_free = false;
            if (e_free) {
                out.winner[v] = Player::E;
                break;
            }
        }
    return out;
}

WinnerPartition solve_scw_antichain(const ParityGame& game, const TreeModel& tm) {
    Coloring coloring;
    check_induces(game, tm, coloring);
    ParityGame normalized = normalize_ranks(game);
    int d = std::max(1, normalized.max_rank() + 1);
    AntiSolverState base = anti_init_sets(normalized, tm, d);

    auto solve_node = [&](auto&& self, int node) -> AntiSolverState {
        if (tm.leaf_color.count(node)) {
            AntiSolverState leaf(base.num_vertices(), base.params);
            leaf.present[node] = 1;
            leaf.anti[node] = base.anti[node];
            return leaf;
        }
        const auto& tn = tm.nodes.at(node);
        std::vector<AntiSolverState> children;
        for (int child : tn.children) children.push_back(self(self, child));
        AntiSolverState state = anti_union_children(children);
        for (const auto& [s, t] : tn.pairs)
            state = coloring.palette[s] == Player::E ? anti_update_E(state, coloring, s, t)
                                                     : anti_update_O(state, coloring, s, t);
        return state;
    };
    AntiSolverState final_state = [&] {
        if (tm.height > 0) return solve_node(solve_node, tm.root());
        AntiSolverState leaf(base.num_vertices(), base.params);
        leaf.present[tm.root()] = 1;
        leaf.anti[tm.root()] = base.anti[tm.root()];
        return leaf;
    }();
    return anti_extract_winners(final_state, tm.palette);
}

}  // namespace pgtd
