// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pgtd/circuit.hpp"
#include "pgtd/cli.hpp"
#include "pgtd/core.hpp"
#include "pgtd/enforcement.hpp"
#include "pgtd/generate.hpp"
#include "pgtd/oracle.hpp"
#include "pgtd/reduction.hpp"
#include "pgtd/scw.hpp"
#include "pgtd/treedepth.hpp"
#include "pgtd/treemodel.hpp"
#include "testutil.hpp"

using namespace pgtd;

namespace {

bool golden_enforcements() {
    ParityGame g = testutil::example_game();
    Coloring coloring = testutil::example_coloring();
    PositionalStopStrategy rho;
    rho.move = {{0, 1}, {3, PositionalStopStrategy::kStop}};
    auto want = [](std::vector<std::pair<int, int>> entries) {
        Enforcement p(3);
        for (auto [c, r] : entries) p.assign(c, r);
        return p;
    };
    return enforcement_of(g, coloring, rho, 0) == want({{1, 2}, {2, 2}}) &&
           enforcement_of(g, coloring, rho, 1) == want({{1, 2}, {2, 2}}) &&
           enforcement_of(g, coloring, rho, 2) == want({{1, 0}, {2, 1}}) &&
           enforcement_of(g, coloring, rho, 3) == want({{2, 1}});
}

bool golden_induction() {
    for (Player p : {Player::E, Player::O}) {
        auto [arena, coloring] = induce_arena(testutil::induction_model(p));
        if (!(arena == testutil::induction_arena(p))) return false;
        if (coloring.color != std::vector<int>{0, 2, 1, 1}) return false;
        if (!validate_forest(arena, testutil::induction_forest()).ok) return false;
    }
    return true;
}

bool scw_agreement() {
    std::mt19937 rng(2023);
    for (int i = 0; i < 1000; ++i) {
        int leaves = 1 + rand_below(rng, 10);
        int height = leaves == 1 ? rand_below(rng, 4) : 1 + rand_below(rng, 3);
        TreeModel tm = random_tree_model(rng, leaves, 1 + rand_below(rng, 3), height);
        ParityGame game = random_game_for(rng, tm, 1 + rand_below(rng, 4));
        if (!(solve_scw(game, tm) == solve_zielonka(game))) return false;
    }
    return true;
}

bool treedepth_agreement() {
    std::mt19937 rng(2027);
    for (int i = 0; i < 500; ++i) {
        int n = 1 + rand_below(rng, 7);
        EliminationForest forest = random_forest(rng, n, rand_below(rng, 4));
        ParityGame game = random_game_on_forest(rng, forest, 1 + rand_below(rng, 4), 45);
        if (!(solve_treedepth(game, forest) == solve_zielonka(game))) return false;
    }
    return true;
}

// Every safe stop strategy's summary must already sit in the computed set of
// every intermediate subgame, exhaustively over all small rank assignments.
bool intermediate_completeness() {
    std::vector<TreeModel> models = {testutil::induction_model(Player::E),
                                     testutil::induction_model(Player::O),
                                     testutil::example_game_model()};
    bool ok = true;
    for (const TreeModel& tm : models) {
        auto [arena, coloring] = induce_arena(tm);
        int n = arena.size();
        std::vector<int> rank(n, 0);
        while (true) {
            ParityGame game;
            game.arena = arena;
            game.rank = rank;
            solve_scw(game, tm, [&](const SolverState& state, const ParityGame& sub) {
                for (int v = 0; v < state.num_vertices(); ++v) {
                    if (!state.present[v]) continue;
                    EnforcementSet floor =
                        reference_valid_floor(sub, coloring, v, state.params);
                    EnforcementSet both = floor;
                    both.intersect_with(state.sets[v]);
                    if (!(both == floor)) ok = false;
                }
            });
            if (!ok) return false;
            int j = 0;
            while (j < n && ++rank[j] == 3) rank[j++] = 0;
            if (j == n) break;
        }
    }
    return ok;
}

bool algebra_laws() {
    // The rank order, stated independently: odd ranks descending, then even
    // ranks ascending.
    auto precedes = [](int r, int s) {
        if (r % 2 == 1) return s % 2 == 0 || s < r;
        return s % 2 == 0 && r < s;
    };
    for (int r = 0; r < 1024; ++r)
        for (int s = 0; s < 1024; ++s) {
            if (rank_precedes(r, s) != (r != s && precedes(r, s))) return false;
            if (rank_precedes(r, s) + rank_precedes(s, r) + (r == s) != 1) return false;
        }
    for (int r = 0; r < 64; ++r)
        for (int s = 0; s < 64; ++s)
            for (int t = 0; t < 64; ++t)
                if (rank_precedes(r, s) && rank_precedes(s, t) && !rank_precedes(r, t))
                    return false;

    for (int d = 1; d <= 3; ++d)
        for (int k = 1; k <= 2; ++k) {
            EnfParams params{d, k};
            std::vector<Enforcement> all;
            for (uint64_t i = 0; i < params.universe_size(); ++i)
                all.push_back(enf_from_index(i, params));
            for (const auto& p : all) {
                if (!enf_leq(p, p)) return false;
                for (const auto& q : all) {
                    if (enf_leq(p, q) && enf_leq(q, p) && !(p == q)) return false;
                    for (const auto& r : all)
                        if (enf_leq(p, q) && enf_leq(q, r) && !enf_leq(p, r)) return false;
                }
            }
            for (const auto& p : all)
                for (const auto& p2 : all) {
                    if (!enf_leq(p, p2)) continue;
                    for (const auto& q : all)
                        for (const auto& q2 : all) {
                            if (!enf_leq(q, q2)) continue;
                            for (int c = 0; c < k; ++c)
                                for (Player side : {Player::E, Player::O})
                                    if (!enf_leq(enf_merge(side, p, c, q),
                                                 enf_merge(side, p2, c, q2)))
                                        return false;
                        }
                }
        }
    return true;
}

bool circuit_witness() {
    std::mt19937 rng(2029);
    for (int n : {4, 5}) {
        BitLayout layout{n, 2, 2};
        Circuit circuit = emit_scw_circuit(n, 2, 2);
        for (int i = 0; i < 50; ++i) {
            TreeModel tm = random_tree_model(rng, n, 2, 2);
            ParityGame game = random_game_for(rng, tm, 2);
            std::vector<uint8_t> bits = encode_input(game, tm, layout);
            std::vector<uint8_t> values = eval_circuit(circuit, bits);
            if (values[circuit.output("valid")] != 1) return false;
            WinnerPartition expected = solve_scw(game, tm);
            for (int v = 0; v < n; ++v)
                if ((values[circuit.output("winner[" + std::to_string(v) + "]")] == 1) !=
                    (expected.winner[v] == Player::E))
                    return false;
        }
    }
    return emit_scw_circuit(4, 2, 2).depth() == emit_scw_circuit(8, 2, 2).depth();
}

bool path_bound() {
    std::mt19937 rng(2039);
    for (int i = 0; i < 200; ++i) {
        int n = 1 + rand_below(rng, 10);
        EliminationForest forest = random_forest(rng, n, rand_below(rng, 3));
        ParityGame game = random_game_on_forest(rng, forest, 1, 50);
        if (!validate_forest(game.arena, forest).ok) return false;
        int k = forest.height();
        if (testutil::longest_simple_path(game.arena) > (1 << (k + 1)) - 2) return false;
    }
    return true;
}

bool treedepth_values() {
    Arena single;
    single.owner = {Player::E};
    single.succ.resize(1);
    if (tree_depth(single) != 0) return false;
    for (int n = 2; n <= 6; ++n) {
        Arena complete;
        complete.owner.assign(n, Player::E);
        complete.succ.resize(n);
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w)
                if (v != w) complete.add_edge(v, w);
        if (tree_depth(complete) != n - 1) return false;
    }
    std::mt19937 rng(2053);
    for (int i = 0; i < 12; ++i) {
        ParityGame g = random_game(rng, 1 + rand_below(rng, 6), 1, 40);
        if (tree_depth(g.arena) != testutil::brute_force_tree_depth(g.arena)) return false;
    }
    return true;
}

bool cli_determinism() {
    std::string game =
        testutil::write_temp("accept.pg", serialize_pg(testutil::example_game()));
    std::string tm = testutil::write_temp("accept.tm",
                                          serialize_tm(testutil::example_game_model()));
    std::string induct =
        testutil::write_temp("accept_induct.tm", serialize_tm(testutil::induction_model(Player::O)));
    std::string forest =
        testutil::write_temp("accept.ef", serialize_forest(testutil::induction_forest()));
    std::string game_forest;
    {
        std::ostringstream out, err;
        if (run_cli({"forest", game}, out, err) != 0) return false;
        game_forest = testutil::write_temp("accept_game.ef", out.str());
    }
    std::string circuit;
    {
        std::ostringstream out, err;
        if (run_cli({"emit-circuit", "--n", "4", "--d", "2", "--k", "1"}, out, err) != 0)
            return false;
        circuit = testutil::write_temp("accept.circ", out.str());
    }
    std::vector<std::vector<std::string>> commands = {
        {"solve", game, "--method", "zielonka"},
        {"solve", game, "--method", "scw", "--treemodel", tm},
        {"solve", game, "--method", "treedepth", "--forest", game_forest},
        {"solve", game, "--method", "auto"},
        {"treedepth", game},
        {"forest", game},
        {"reduce", game, "--forest", game_forest},
        {"induce", induct},
        {"validate", game},
        {"validate", tm},
        {"validate", forest},
        {"emit-circuit", "--n", "4", "--d", "2", "--k", "1"},
        {"eval-circuit", circuit, "--bits", std::string(BitLayout{4, 2, 1}.num_bits(), '0')},
        {"selftest", "--seed", "7", "--rounds", "10"},
    };
    for (const auto& args : commands) {
        std::ostringstream out1, err1, out2, err2;
        int s1 = run_cli(args, out1, err1);
        int s2 = run_cli(args, out2, err2);
        if (s1 != 0 || s2 != 0) return false;
        if (out1.str() != out2.str() || err1.str() != err2.str()) return false;
    }
    return true;
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<bool()> body;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "golden enforcement values", 1, golden_enforcements},
        {2, "golden induced arena and forest", 1, golden_induction},
        {3, "tree-model solver agreement", 120, scw_agreement},
        {4, "tree-depth solver agreement", 120, treedepth_agreement},
        {5, "intermediate set completeness", 300, intermediate_completeness},
        {6, "order and merge laws", 60, algebra_laws},
        {7, "circuit agreement and depth stability", 300, circuit_witness},
        {8, "simple path bound", 60, path_bound},
        {9, "tree-depth values", 60, treedepth_values},
        {10, "deterministic command output", 120, cli_determinism},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.body();
        } catch (const std::exception& e) {
            std::fprintf(stderr, "criterion %d threw: %s\n", c.id, e.what());
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > c.budget_seconds) ok = false;
        std::printf("criterion %2d %-38s %s (%.2fs)\n", c.id, c.name, ok ? "PASS" : "FAIL",
                    elapsed);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
