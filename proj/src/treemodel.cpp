#include "pgtd/treemodel.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pgtd {

namespace {

std::string strip(std::string line) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto semi = line.find(';');
    if (semi != std::string::npos) line.erase(semi);
    return line;
}

}  // namespace

int TreeModel::root() const {
    if (height == 0) {
        if (leaf_color.size() != 1)
            throw std::invalid_argument("height-0 tree-model must have exactly one leaf");
        return leaf_color.begin()->first;
    }
    for (const auto& [id, node] : nodes)
        if (node.level == height) return id;
    throw std::invalid_argument("tree-model has no root node");
}

void validate_tm(const TreeModel& tm) {
    if (tm.height < 0) throw std::invalid_argument("negative height");
    for (const auto& [leaf, color] : tm.leaf_color) {
        if (color < 0 || color >= static_cast<int>(tm.palette.size()))
            throw std::invalid_argument("leaf " + std::to_string(leaf) + ": unknown color");
        if (tm.nodes.count(leaf))
            throw std::invalid_argument("id " + std::to_string(leaf) + " is both leaf and node");
    }
    if (tm.height == 0) {
        if (tm.leaf_color.size() != 1 || !tm.nodes.empty())
            throw std::invalid_argument("height 0 requires a single leaf and no internal nodes");
        return;
    }
    int roots = 0;
    std::map<int, int> parent_count;
    for (const auto& [id, node] : tm.nodes) {
        if (node.level < 1 || node.level > tm.height)
            throw std::invalid_argument("node " + std::to_string(id) + ": leveling (level " +
                                        std::to_string(node.level) + " outside 1.." +
                                        std::to_string(tm.height) + ")");
        if (node.level == tm.height) ++roots;
        for (int child : node.children) {
            int child_level;
            if (tm.leaf_color.count(child))
                child_level = 0;
            else if (auto it = tm.nodes.find(child); it != tm.nodes.end())
                child_level = it->second.level;
            else
                throw std::invalid_argument("node " + std::to_string(id) + ": unknown child " +
                                            std::to_string(child));
            if (child_level != node.level - 1)
                throw std::invalid_argument("node " + std::to_string(id) +
                                            ": leveling (child " + std::to_string(child) +
                                            " not one level below)");
            ++parent_count[child];
        }
        for (const auto& [c, cc] : node.pairs)
            if (c < 0 || cc < 0 || c >= static_cast<int>(tm.palette.size()) ||
                cc >= static_cast<int>(tm.palette.size()))
                throw std::invalid_argument("node " + std::to_string(id) + ": unknown color in pair");
    }
    if (roots != 1) throw std::invalid_argument("multiple roots (or none) at the top level");
    for (const auto& [leaf, color] : tm.leaf_color)
        if (parent_count[leaf] != 1)
            throw std::invalid_argument("leaf " + std::to_string(leaf) + " must have exactly one parent");
    for (const auto& [id, node] : tm.nodes) {
        int expected = node.level == tm.height ? 0 : 1;
        if (parent_count[id] != expected)
            throw std::invalid_argument("node " + std::to_string(id) +
                                        (expected ? " must have exactly one parent"
                                                  : " is a root but has a parent"));
    }
}

TreeModel parse_tm(std::istream& in) {
    TreeModel tm;
    std::string raw;
    int lineno = 0;
    bool saw_header = false;
    int num_colors = 0;
    std::map<int, Player> colors;
    while (std::getline(in, raw)) {
        ++lineno;
        std::istringstream ls(strip(raw));
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "treemodel") {
            if (!(ls >> num_colors >> tm.height) || num_colors < 1 || tm.height < 0)
                throw ParseError(lineno, "malformed treemodel header");
            saw_header = true;
        } else if (!saw_header) {
            throw ParseError(lineno, "expected 'treemodel' header first");
        } else if (kind == "color") {
            int id;
            std::string side;
            if (!(ls >> id >> side) || id < 0 || id >= num_colors || (side != "E" && side != "O"))
                throw ParseError(lineno, "malformed color line");
            colors[id] = side == "E" ? Player::E : Player::O;
        } else if (kind == "leaf") {
            int id, color;
            if (!(ls >> id >> color) || id < 0)
                throw ParseError(lineno, "malformed leaf line");
            if (tm.leaf_color.count(id)) throw ParseError(lineno, "duplicate leaf id");
            tm.leaf_color[id] = color;
        } else if (kind == "node") {
            int id, level;
            if (!(ls >> id >> level) || id < 0)
                throw ParseError(lineno, "malformed node line");
            if (tm.nodes.count(id)) throw ParseError(lineno, "duplicate node id");
            TreeModel::Node node;
            node.level = level;
            std::string field;
            if (ls >> field) {
                std::istringstream cs(field);
                std::string item;
                while (std::getline(cs, item, ','))
                    node.children.push_back(std::stoi(item));
            }
            tm.nodes[id] = std::move(node);
        } else if (kind == "pair") {
            int id, c, cc;
            if (!(ls >> id >> c >> cc)) throw ParseError(lineno, "malformed pair line");
            auto it = tm.nodes.find(id);
            if (it == tm.nodes.end()) throw ParseError(lineno, "pair on unknown node");
            it->second.pairs.insert({c, cc});
        } else {
            throw ParseError(lineno, "unknown directive '" + kind + "'");
        }
    }
    if (!saw_header) throw ParseError(lineno, "missing treemodel header");
    tm.palette.resize(num_colors, Player::O);
    for (const auto& [id, player] : colors) tm.palette[id] = player;
    try {
        validate_tm(tm);
    } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
    }
    return tm;
}

TreeModel parse_tm(const std::string& text) {
    std::istringstream in(text);
    return parse_tm(in);
}

std::string serialize_tm(const TreeModel& tm) {
    std::ostringstream out;
    out << "treemodel " << tm.palette.size() << ' ' << tm.height << ";\n";
    for (size_t c = 0; c < tm.palette.size(); ++c)
        out << "color " << c << ' ' << player_char(tm.palette[c]) << ";\n";
    for (const auto& [leaf, color] : tm.leaf_color) out << "leaf " << leaf << ' ' << color << ";\n";
    for (const auto& [id, node] : tm.nodes) {
        out << "node " << id << ' ' << node.level;
        auto children = node.children;
        std::sort(children.begin(), children.end());
        for (size_t i = 0; i < children.size(); ++i)
            out << (i == 0 ? " " : ",") << children[i];
        out << ";\n";
    }
    for (const auto& [id, node] : tm.nodes)
        for (const auto& [c, cc] : node.pairs)
            out << "pair " << id << ' ' << c << ' ' << cc << ";\n";
    return out.str();
}

std::vector<int> subtree_leaves(const TreeModel& tm, int node) {
    if (tm.leaf_color.count(node)) return {node};
    std::vector<int> out;
    for (int child : tm.nodes.at(node).children) {
        auto sub = subtree_leaves(tm, child);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<Arena, Coloring> induce_arena(const TreeModel& tm) {
    validate_tm(tm);
    int n = tm.num_leaves();
    for (const auto& [leaf, color] : tm.leaf_color)
        if (leaf >= n)
            throw std::invalid_argument("induce_arena: leaf ids must be dense 0..n-1");
    Arena arena;
    arena.owner.resize(n);
    arena.succ.resize(n);
    Coloring coloring;
    coloring.palette = tm.palette;
    coloring.color.resize(n);
    for (const auto& [leaf, color] : tm.leaf_color) {
        coloring.color[leaf] = color;
        arena.owner[leaf] = tm.palette[color];
    }
    for (const auto& [id, node] : tm.nodes) {
        if (node.pairs.empty()) continue;
        auto leaves = subtree_leaves(tm, id);
        std::map<int, std::vector<int>> by_color;
        for (int leaf : leaves) by_color[tm.leaf_color.at(leaf)].push_back(leaf);
        for (const auto& [c, cc] : node.pairs) {
            auto from = by_color.find(c);
            auto to = by_color.find(cc);
            if (from == by_color.end() || to == by_color.end()) continue;
            for (int v : from->second)
                for (int w : to->second) arena.add_edge(v, w);
        }
    }
    return {arena, coloring};
}

TreeModel pad_to_height(const TreeModel& tm, int h) {
    validate_tm(tm);
    if (h < tm.height)
        throw std::invalid_argument("pad_to_height: target below current height");
    if (h == tm.height) return tm;
    TreeModel out = tm;
    int next_id = 0;
    for (const auto& [leaf, color] : tm.leaf_color) next_id = std::max(next_id, leaf + 1);
    for (const auto& [id, node] : tm.nodes) next_id = std::max(next_id, id + 1);
    int below = out.root();
    for (int level = tm.height + 1; level <= h; ++level) {
        TreeModel::Node node;
        node.level = level;
        node.children = {below};
        out.nodes[next_id] = std::move(node);
        below = next_id++;
    }
    out.height = h;
    return out;
}

}  // namespace pgtd
