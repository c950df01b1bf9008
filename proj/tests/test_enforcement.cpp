#include <algorithm>

#include "doctest.h"
#include "pgtd/enforcement.hpp"
#include "pgtd/generate.hpp"
#include "testutil.hpp"

using namespace pgtd;

namespace {

Enforcement make(int k, std::vector<std::pair<int, int>> entries) {
    Enforcement p(k);
    for (auto [c, r] : entries) p.assign(c, r);
    return p;
}

std::vector<Enforcement> universe(const EnfParams& params) {
    std::vector<Enforcement> all;
    for (uint64_t i = 0; i < params.universe_size(); ++i)
        all.push_back(enf_from_index(i, params));
    return all;
}

}  // namespace

TEST_SUITE_BEGIN("enforcement");

TEST_CASE("rank order runs odd-descending then even-ascending") {
    std::vector<int> chain = {5, 3, 1, 0, 2, 4, 6};
    for (size_t i = 0; i < chain.size(); ++i)
        for (size_t j = 0; j < chain.size(); ++j) {
            CHECK(rank_precedes(chain[i], chain[j]) == (i < j));
            CHECK(rank_preceq(chain[i], chain[j]) == (i <= j));
        }
}

TEST_CASE("rank order is a strict total order") {
    for (int p = 0; p < 64; ++p)
        for (int q = 0; q < 64; ++q) {
            int ways = rank_precedes(p, q) + rank_precedes(q, p) + (p == q);
            CHECK(ways == 1);
            for (int r = 0; r < 64; ++r)
                if (rank_precedes(p, q) && rank_precedes(q, r)) CHECK(rank_precedes(p, r));
        }
}

TEST_CASE("natural max respects the rank order") {
    for (int p = 0; p < 16; ++p)
        for (int p2 = 0; p2 < 16; ++p2)
            for (int q = 0; q < 16; ++q)
                for (int q2 = 0; q2 < 16; ++q2)
                    if (rank_preceq(p, p2) && rank_preceq(q, q2))
                        CHECK(rank_preceq(std::max(p, q), std::max(p2, q2)));
}

TEST_CASE("enf_leq is a partial order") {
    EnfParams params{3, 2};
    auto all = universe(params);
    for (const auto& p : all) {
        CHECK(enf_leq(p, p));
        for (const auto& q : all) {
            if (enf_leq(p, q) && enf_leq(q, p)) CHECK(p == q);
            for (const auto& r : all)
                if (enf_leq(p, q) && enf_leq(q, r)) CHECK(enf_leq(p, r));
        }
    }
}

TEST_CASE("enf_leq means larger domain and worse values") {
    CHECK(enf_leq(make(2, {}), make(2, {{0, 1}})));
    CHECK(enf_leq(make(2, {{0, 2}}), make(2, {{0, 0}})));   // 0 precedes 2
    CHECK(!enf_leq(make(2, {{0, 0}}), make(2, {{0, 2}})));
    CHECK(!enf_leq(make(2, {{0, 0}}), make(2, {{1, 0}})));  // incomparable domains
}

TEST_CASE("enf_union picks pointwise worst-case minima") {
    Enforcement empty(2);
    CHECK(enf_union(make(2, {{0, 1}}), empty) == make(2, {{0, 1}}));
    CHECK(enf_union(empty, make(2, {{0, 1}})) == make(2, {{0, 1}}));
    CHECK(enf_union(make(2, {{0, 3}}), make(2, {{0, 4}})) == make(2, {{0, 3}}));
    CHECK(enf_union(make(2, {{0, 0}}), make(2, {{1, 1}})) == make(2, {{0, 0}, {1, 1}}));
}

TEST_CASE("enf_union is the least upper bound under enf_leq") {
    EnfParams params{3, 2};
    auto all = universe(params);
    for (const auto& p : all)
        for (const auto& q : all) {
            Enforcement j = enf_union(p, q);
            CHECK(enf_leq(p, j));
            CHECK(enf_leq(q, j));
            for (const auto& r : all)
                if (enf_leq(p, r) && enf_leq(q, r)) CHECK(enf_leq(j, r));
        }
}

TEST_CASE("enf_lift maxes defined values against the new rank") {
    CHECK(enf_lift(make(2, {{0, 1}, {1, 3}}), 2) == make(2, {{0, 2}, {1, 3}}));
    CHECK(enf_lift(Enforcement(2), 5) == Enforcement(2));
}

TEST_CASE("enf_loop drops even stop entries at an E-color") {
    std::vector<Player> palette = {Player::E, Player::O};
    CHECK(enf_loop(make(2, {{0, 2}, {1, 1}}), 0, palette) == make(2, {{1, 1}}));
    CHECK(enf_loop(make(2, {{1, 1}}), 0, palette) == make(2, {{1, 1}}));       // absent: identity
    CHECK(!enf_loop(make(2, {{0, 1}}), 0, palette).has_value());               // odd value
    CHECK(!enf_loop(make(2, {{1, 0}}), 1, palette).has_value());               // O-color
}

TEST_CASE("enf_merge follows its three cases") {
    CHECK(enf_merge(Player::E, make(4, {{1, 3}}), 0, make(4, {{0, 0}})) == make(4, {{1, 3}}));
    CHECK(enf_merge(Player::E, make(4, {{0, 2}, {1, 3}}), 0, make(4, {{1, 4}})) ==
          make(4, {{1, 3}}));
    CHECK(enf_merge(Player::O, make(4, {{0, 1}}), 0, make(4, {{0, 0}})) == make(4, {{0, 1}}));
}

TEST_CASE("enf_merge is monotone in both arguments") {
    EnfParams params{2, 2};
    auto all = universe(params);
    for (const auto& p : all)
        for (const auto& p2 : all) {
            if (!enf_leq(p, p2)) continue;
            for (const auto& q : all)
                for (const auto& q2 : all) {
                    if (!enf_leq(q, q2)) continue;
                    for (int c = 0; c < 2; ++c)
                        for (Player side : {Player::E, Player::O})
                            CHECK(enf_leq(enf_merge(side, p, c, q), enf_merge(side, p2, c, q2)));
                }
        }
}

TEST_CASE("index round-trips and the universe guard holds") {
    EnfParams params{3, 3};
    for (uint64_t i = 0; i < params.universe_size(); ++i)
        CHECK(enf_index(enf_from_index(i, params), params) == i);
    CHECK(EnfParams{3, 10}.universe_size() == 1048576);
    CHECK_THROWS(EnfParams{3, 11}.universe_size());
}

TEST_CASE("up_closure matches direct enumeration") {
    EnfParams params{2, 2};
    EnforcementSet empty = EnforcementSet::up_closure({}, params);
    CHECK(empty.count() == 0);

    EnforcementSet up = EnforcementSet::up_closure({make(2, {{0, 0}})}, params);
    CHECK(up.count() == 6);
    for (const auto& q : universe(params))
        CHECK(up.contains(q) == enf_leq(make(2, {{0, 0}}), q));
}

TEST_CASE("up_closure is idempotent and monotone in seeds") {
    std::mt19937 rng(3);
    EnfParams params{3, 2};
    for (int i = 0; i < 30; ++i) {
        EnforcementSet a = testutil::random_up_set(rng, params, 2);
        CHECK(a.is_up_closed());
        EnforcementSet again = EnforcementSet::up_closure(a.members(), params);
        CHECK(again == a);
        EnforcementSet b = a;
        b.insert_up(enf_from_index(rand_below(rng, 16), params));
        for (const auto& p : a.members()) CHECK(b.contains(p));
    }
}

TEST_CASE("set operations agree with member-level set algebra") {
    std::mt19937 rng(5);
    EnfParams params{3, 2};
    for (int i = 0; i < 30; ++i) {
        EnforcementSet a = testutil::random_up_set(rng, params, 2);
        EnforcementSet b = testutil::random_up_set(rng, params, 2);
        EnforcementSet u = a;
        u.union_with(b);
        EnforcementSet x = a;
        x.intersect_with(b);
        for (const auto& p : universe(params)) {
            CHECK(u.contains(p) == (a.contains(p) || b.contains(p)));
            CHECK(x.contains(p) == (a.contains(p) && b.contains(p)));
        }
        CHECK(u.is_up_closed());
        CHECK(x.is_up_closed());
    }
}

TEST_CASE("minimal elements regenerate the set") {
    std::mt19937 rng(9);
    EnfParams params{3, 3};
    for (int i = 0; i < 20; ++i) {
        EnforcementSet a = testutil::random_up_set(rng, params, 3);
        auto mins = a.minimal_elements();
        CHECK(EnforcementSet::up_closure(mins, params) == a);
        for (const auto& p : mins)
            for (const auto& q : mins)
                if (p != q) CHECK(!enf_leq(p, q));
        auto pruned = prune_antichain(a.members());
        std::sort(pruned.begin(), pruned.end());
        std::sort(mins.begin(), mins.end());
        CHECK(pruned == mins);
    }
}

TEST_SUITE_END();
