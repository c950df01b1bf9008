#include <algorithm>

#include "doctest.h"
#include "pgtd/generate.hpp"
#include "pgtd/treemodel.hpp"
#include "testutil.hpp"

using namespace pgtd;

TEST_SUITE_BEGIN("treemodel");

TEST_CASE("a single leaf is a height-zero model") {
    TreeModel tm = parse_tm("treemodel 1 0;\ncolor 0 O;\nleaf 0 0;\n");
    CHECK(tm.num_leaves() == 1);
    CHECK(tm.root() == 0);
    auto [arena, coloring] = induce_arena(tm);
    CHECK(arena.size() == 1);
    CHECK(arena.succ[0].empty());
    CHECK(coloring.color[0] == 0);
}

TEST_CASE("parse and serialize round-trip the worked model") {
    TreeModel tm = testutil::induction_model(Player::E);
    std::string text = serialize_tm(tm);
    CHECK(parse_tm(text) == tm);
    CHECK(serialize_tm(parse_tm(text)) == text);
}

TEST_CASE("validation names leveling and root violations") {
    TreeModel bad = testutil::induction_model(Player::E);
    bad.nodes[4].level = 2;  // level-2 node with level-0 children
    CHECK_THROWS_WITH_AS(validate_tm(bad), doctest::Contains("level"), std::invalid_argument);

    TreeModel orphan = testutil::induction_model(Player::E);
    orphan.nodes[6].children = {4};  // node 5 loses its parent
    CHECK_THROWS_AS(validate_tm(orphan), std::invalid_argument);

    TreeModel badcolor = testutil::induction_model(Player::E);
    badcolor.leaf_color[0] = 7;
    CHECK_THROWS_AS(validate_tm(badcolor), std::invalid_argument);
}

TEST_CASE("induce_arena reproduces the worked example edge set") {
    for (Player p : {Player::E, Player::O}) {
        auto [arena, coloring] = induce_arena(testutil::induction_model(p));
        CHECK(arena == testutil::induction_arena(p));
        CHECK(coloring.color == std::vector<int>{0, 2, 1, 1});
    }
}

TEST_CASE("a same-color pair spans all four edge combinations") {
    TreeModel tm;
    tm.height = 1;
    tm.palette = {Player::E};
    tm.leaf_color = {{0, 0}, {1, 0}};
    tm.nodes[2] = {1, {0, 1}, {{0, 0}}};
    auto [arena, coloring] = induce_arena(tm);
    CHECK(arena.edges() ==
          std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("a same-color pair over a single leaf adds a self-loop") {
    TreeModel tm;
    tm.height = 1;
    tm.palette = {Player::O};
    tm.leaf_color = {{0, 0}};
    tm.nodes[1] = {1, {0}, {{0, 0}}};
    auto [arena, coloring] = induce_arena(tm);
    CHECK(arena.has_edge(0, 0));
}

TEST_CASE("pad_to_height keeps the induced arena") {
    TreeModel tm = testutil::induction_model(Player::O);
    CHECK(pad_to_height(tm, 2) == tm);
    TreeModel tall = pad_to_height(tm, 5);
    CHECK(tall.height == 5);
    CHECK_NOTHROW(validate_tm(tall));
    CHECK(induce_arena(tall).first == testutil::induction_arena(Player::O));
    CHECK_THROWS(pad_to_height(tm, 1));
}

TEST_CASE("induce_arena ignores children order") {
    std::mt19937 rng(17);
    for (int i = 0; i < 30; ++i) {
        TreeModel tm = random_tree_model(rng, 2 + rand_below(rng, 6), 1 + rand_below(rng, 3),
                                         1 + rand_below(rng, 3));
        TreeModel shuffled = tm;
        for (auto& [id, node] : shuffled.nodes)
            std::reverse(node.children.begin(), node.children.end());
        CHECK(induce_arena(shuffled).first == induce_arena(tm).first);
    }
}

TEST_CASE("random models validate and round-trip") {
    std::mt19937 rng(29);
    for (int i = 0; i < 40; ++i) {
        TreeModel tm = random_tree_model(rng, 1 + rand_below(rng, 8), 1 + rand_below(rng, 4),
                                         1 + rand_below(rng, 4));
        CHECK_NOTHROW(validate_tm(tm));
        CHECK(parse_tm(serialize_tm(tm)) == tm);
    }
}

TEST_CASE("subtree_leaves collects exactly the covered vertices") {
    TreeModel tm = testutil::induction_model(Player::E);
    CHECK(subtree_leaves(tm, 4) == std::vector<int>{0, 3});
    CHECK(subtree_leaves(tm, 5) == std::vector<int>{1, 2});
    CHECK(subtree_leaves(tm, 6) == std::vector<int>{0, 1, 2, 3});
    CHECK(subtree_leaves(tm, 0) == std::vector<int>{0});
}

TEST_SUITE_END();
