#include "doctest.h"
#include "pgtd/generate.hpp"
#include "pgtd/oracle.hpp"
#include "pgtd/reduction.hpp"
#include "testutil.hpp"

using namespace pgtd;

TEST_SUITE_BEGIN("reduction");

TEST_CASE("a self-loop expands into the worked two-copy game") {
    ParityGame g;
    g.arena.owner = {Player::E};
    g.arena.succ.resize(1);
    g.rank = {0};
    g.arena.add_edge(0, 0);
    EliminationForest forest;
    forest.parent = {EliminationForest::kNone};

    ReductionResult r = reduce(g, forest);
    REQUIRE(r.copies.size() == 2);
    int choose = r.copy_vertex(CopyId::Kind::kChoose, 0, 0);
    int execute = r.copy_vertex(CopyId::Kind::kExecute, 0, 0);
    CHECK(r.reduced.rank[choose] == 1);
    CHECK(r.reduced.rank[execute] == 2);
    CHECK(r.reduced.arena.has_edge(choose, execute));
    CHECK(r.reduced.arena.has_edge(execute, choose));
    CHECK(r.reduced.arena.has_edge(choose, choose));
    CHECK(!r.reduced.arena.has_edge(execute, execute));
    CHECK(r.palette_size() == 4);
    CHECK(r.tm.height == 2);

    WinnerPartition reduced_w = solve_zielonka(r.reduced);
    CHECK(reduced_w.winner[choose] == Player::E);
    CHECK(reduced_w.winner[execute] == Player::E);
    CHECK(map_winners(r, reduced_w).winner[0] == Player::E);
}

TEST_CASE("a rank-0 O-vertex self-loop stays won by E") {
    ParityGame g;
    g.arena.owner = {Player::O};
    g.arena.succ.resize(1);
    g.rank = {0};
    g.arena.add_edge(0, 0);
    EliminationForest forest;
    forest.parent = {EliminationForest::kNone};
    CHECK(solve_treedepth(g, forest).winner[0] == Player::E);
}

TEST_CASE("the reduction's structure follows the construction") {
    std::mt19937 rng(101);
    for (int i = 0; i < 30; ++i) {
        int n = 1 + rand_below(rng, 6);
        EliminationForest forest = random_forest(rng, n, rand_below(rng, 3));
        ParityGame g = random_game_on_forest(rng, forest, 1 + rand_below(rng, 4), 45);
        ReductionResult r = reduce(g, forest);
        int k = forest.height();

        CHECK(r.forest_height == k);
        CHECK(r.palette_size() == 4 * (k + 1));
        CHECK(static_cast<int>(r.copies.size()) <= 2 * n * n);
        CHECK(r.tm.height == k + 2);
        CHECK_NOTHROW(validate_tm(r.tm));
        CHECK(induce_arena(r.tm).first == r.reduced.arena);
        CHECK(r.reduced.max_rank() <= g.max_rank() + 2);

        std::vector<int> depth = forest.depths();
        for (size_t c = 0; c < r.copies.size(); ++c) {
            const CopyId& copy = r.copies[c];
            CHECK(forest.is_ancestor(copy.original, copy.group));
            CHECK(r.reduced.arena.owner[c] == g.arena.owner[copy.original]);
            if (copy.kind == CopyId::Kind::kExecute) {
                CHECK(r.reduced.rank[c] == g.rank[copy.original] + 2);
                CHECK(r.reduced.rank[c] % 2 == g.rank[copy.original] % 2);
            } else {
                CHECK(r.reduced.rank[c] ==
                      (g.arena.owner[copy.original] == Player::E ? 1 : 0));
            }
        }
        for (int v = 0; v < n; ++v) {
            bool has_choose = false;
            for (const CopyId& copy : r.copies)
                if (copy.kind == CopyId::Kind::kChoose && copy.original == v) has_choose = true;
            CHECK(has_choose);
        }
    }
}

TEST_CASE("map_winners quantifies per the owner") {
    ReductionResult r;
    r.original_owner = {Player::O};
    r.copies = {{CopyId::Kind::kChoose, 0, 0}, {CopyId::Kind::kChoose, 0, 1}};
    WinnerPartition mixed{{Player::E, Player::O}};
    CHECK(map_winners(r, mixed).winner[0] == Player::O);
    WinnerPartition both{{Player::E, Player::E}};
    CHECK(map_winners(r, both).winner[0] == Player::E);

    r.original_owner = {Player::E};
    CHECK(map_winners(r, mixed).winner[0] == Player::E);
}

TEST_CASE("solve_treedepth matches the oracle on the example game") {
    ParityGame g = testutil::example_game();
    WinnerPartition w = solve_treedepth(g);
    CHECK(w == solve_zielonka(g));
    for (Player p : w.winner) CHECK(p == Player::O);
}

TEST_CASE("solve_treedepth agrees with the oracle on random forests") {
    std::mt19937 rng(103);
    for (int i = 0; i < 80; ++i) {
        int n = 1 + rand_below(rng, 6);
        EliminationForest forest = random_forest(rng, n, rand_below(rng, 3));
        ParityGame g = random_game_on_forest(rng, forest, 1 + rand_below(rng, 4), 45);
        CHECK(solve_treedepth(g, forest) == solve_zielonka(g));
    }
}

TEST_CASE("solve_treedepth agrees on every edge subset of a fixed chain") {
    EliminationForest forest;
    forest.parent = {EliminationForest::kNone, 0, 1};
    std::vector<std::pair<int, int>> candidates;
    for (int v = 0; v < 3; ++v)
        for (int w = 0; w < 3; ++w) candidates.emplace_back(v, w);

    for (int owners = 0; owners < 8; owners += 3)
        for (int mask = 0; mask < (1 << 9); ++mask) {
            ParityGame g;
            for (int v = 0; v < 3; ++v)
                g.arena.owner.push_back(owners >> v & 1 ? Player::O : Player::E);
            g.arena.succ.resize(3);
            g.rank = {1, 0, 2};
            for (int b = 0; b < 9; ++b)
                if (mask >> b & 1) g.arena.add_edge(candidates[b].first, candidates[b].second);
            CHECK(solve_treedepth(g, forest) == solve_zielonka(g));
        }
}

TEST_CASE("reduce rejects an invalid forest") {
    ParityGame g;
    g.arena.owner = {Player::E, Player::E};
    g.arena.succ.resize(2);
    g.rank = {0, 0};
    g.arena.add_edge(0, 1);
    EliminationForest siblings;
    siblings.parent = {EliminationForest::kNone, EliminationForest::kNone};
    // Two roots with an edge between them: invalid.
    CHECK_THROWS(reduce(g, siblings));
}

TEST_SUITE_END();
