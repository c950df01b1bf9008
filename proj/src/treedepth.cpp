#include "pgtd/treedepth.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pgtd {

std::vector<int> EliminationForest::depths() const {
    int n = size();
    std::vector<int> depth(n, -1);
    for (int v = 0; v < n; ++v) {
        if (depth[v] >= 0) continue;
        // Walk up to a root or an already-resolved vertex, then unwind.
        std::vector<int> chain;
        int w = v;
        while (w != kNone && depth[w] < 0) {
            chain.push_back(w);
            w = parent[w];
            if (static_cast<int>(chain.size()) > n)
                throw std::invalid_argument("elimination forest contains a parent cycle");
            if (w != kNone && (w < 0 || w >= n))
                throw std::invalid_argument("elimination forest parent out of range");
        }
        int base = w == kNone ? -1 : depth[w];
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++base;
    }
    return depth;
}

int EliminationForest::height() const {
    int h = 0;
    for (int d : depths()) h = std::max(h, d);
    return h;
}

bool EliminationForest::is_ancestor(int anc, int v) const {
    int guard = size();
    while (v != kNone) {
        if (v == anc) return true;
        v = parent[v];
        if (--guard < 0) throw std::invalid_argument("elimination forest contains a parent cycle");
    }
    return false;
}

ForestDiagnostics validate_forest(const Arena& arena, const EliminationForest& forest) {
    if (forest.size() != arena.size())
        return {false, "forest covers " + std::to_string(forest.size()) + " vertices, arena has " +
                           std::to_string(arena.size())};
    for (int v = 0; v < forest.size(); ++v)
        if (forest.parent[v] != EliminationForest::kNone &&
            (forest.parent[v] < 0 || forest.parent[v] >= forest.size()))
            return {false, "parent of " + std::to_string(v) + " out of range"};
    try {
        forest.depths();
    } catch (const std::invalid_argument&) {
        return {false, "cycle in the parent relation"};
    }
    for (const auto& [v, w] : arena.edges())
        if (!forest.is_ancestor(v, w) && !forest.is_ancestor(w, v))
            return {false, "edge " + std::to_string(v) + "-" + std::to_string(w) +
                               " joins unrelated vertices"};
    return {true, ""};
}

namespace {

constexpr int kMaxTreeDepthVertices = 20;

struct SubsetSolver {
    std::vector<uint32_t> adj;
    std::unordered_map<uint32_t, int> memo;

    explicit SubsetSolver(const Arena& arena) {
        int n = arena.size();
        if (n > kMaxTreeDepthVertices)
            throw std::invalid_argument("tree_depth: more than 20 vertices");
        adj.assign(n, 0);
        for (const auto& [v, w] : arena.edges()) {
            if (v == w) continue;
            adj[v] |= uint32_t{1} << w;
            adj[w] |= uint32_t{1} << v;
        }
    }

    uint32_t component(uint32_t mask, int start) const {
        uint32_t comp = uint32_t{1} << start, frontier = comp;
        while (frontier) {
            uint32_t next = 0;
            while (frontier) {
                int v = std::countr_zero(frontier);
                frontier &= frontier - 1;
                next |= adj[v] & mask & ~comp;
            }
            comp |= next;
            frontier = next;
        }
        return comp;
    }

    int depth(uint32_t mask) {
        if (mask == 0) return -1;
        if ((mask & (mask - 1)) == 0) return 0;
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        uint32_t comp = component(mask, std::countr_zero(mask));
        int result;
        if (comp != mask) {
            result = std::max(depth(comp), depth(mask & ~comp));
        } else {
            result = kMaxTreeDepthVertices + 1;
            for (uint32_t rest = mask; rest;) {
                int v = std::countr_zero(rest);
                rest &= rest - 1;
                result = std::min(result, 1 + depth(mask & ~(uint32_t{1} << v)));
            }
        }
        memo[mask] = result;
        return result;
    }

    /// Maximum over the components of mask (depth() of a disconnected mask).
    int budget_needed(uint32_t mask) { return depth(mask); }
};

}  // namespace

int tree_depth(const Arena& arena) {
    if (arena.size() == 0) return 0;
    SubsetSolver solver(arena);
    uint32_t all = arena.size() == 32 ? ~uint32_t{0} : (uint32_t{1} << arena.size()) - 1;
    return solver.depth(all);
}

std::optional<EliminationForest> find_forest(const Arena& arena, int k) {
    int n = arena.size();
    if (n == 0) return EliminationForest{};
    SubsetSolver solver(arena);
    EliminationForest forest;
    forest.parent.assign(n, EliminationForest::kNone);

    // Peels one root per connected component, lowest id first.
    auto build = [&](auto&& self, uint32_t mask, int budget, int above) -> bool {
        while (mask) {
            uint32_t comp = solver.component(mask, std::countr_zero(mask));
            mask &= ~comp;
            bool placed = false;
            for (uint32_t rest = comp; rest && !placed;) {
                int v = std::countr_zero(rest);
                rest &= rest - 1;
                uint32_t remainder = comp & ~(uint32_t{1} << v);
                if (solver.budget_needed(remainder) <= budget - 1) {
                    forest.parent[v] = above;
                    if (!self(self, remainder, budget - 1, v)) return false;
                    placed = true;
                }
            }
            if (!placed) return false;
        }
        return true;
    };
    uint32_t all = n == 32 ? ~uint32_t{0} : (uint32_t{1} << n) - 1;
    if (solver.budget_needed(all) > k) return std::nullopt;
    if (!build(build, all, k, EliminationForest::kNone)) return std::nullopt;
    return forest;
}

EliminationForest parse_forest(std::istream& in) {
    std::map<int, int> parents;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        auto semi = raw.find(';');
        if (semi != std::string::npos) raw.erase(semi);
        std::istringstream ls(raw);
        int v, p;
        if (!(ls >> v)) continue;
        if (!(ls >> p) || v < 0 || p < -1) throw ParseError(lineno, "malformed forest line");
        if (parents.count(v)) throw ParseError(lineno, "duplicate vertex " + std::to_string(v));
        parents[v] = p;
    }
    EliminationForest forest;
    forest.parent.assign(parents.size(), EliminationForest::kNone);
    for (const auto& [v, p] : parents) {
        if (v >= static_cast<int>(parents.size()))
            throw ParseError(lineno, "vertex ids must be dense 0..n-1");
        forest.parent[v] = p;
    }
    for (int p : forest.parent)
        if (p != EliminationForest::kNone && p >= forest.size())
            throw ParseError(lineno, "parent refers to an unknown vertex");
    return forest;
}

EliminationForest parse_forest(const std::string& text) {
    std::istringstream in(text);
    return parse_forest(in);
}

std::string serialize_forest(const EliminationForest& forest) {
    std::ostringstream out;
    for (int v = 0; v < forest.size(); ++v) out << v << ' ' << forest.parent[v] << ";\n";
    return out.str();
}

}  // namespace pgtd
