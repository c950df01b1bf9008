#include "pgtd/core.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <sstream>

namespace pgtd {

namespace {

constexpr int kMaxRank = std::numeric_limits<uint16_t>::max();

// Splits off an optional trailing quoted name and the terminating ';'.
std::string strip_line(std::string line) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto quote = line.find('"');
    if (quote != std::string::npos) line.erase(quote);
    auto semi = line.find(';');
    if (semi != std::string::npos) line.erase(semi);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
        line.pop_back();
    return line;
}

}  // namespace

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

bool Arena::has_edge(int v, int w) const {
    const auto& s = succ[v];
    return std::binary_search(s.begin(), s.end(), w);
}

void Arena::add_edge(int v, int w) {
    auto& s = succ[v];
    auto it = std::lower_bound(s.begin(), s.end(), w);
    if (it == s.end() || *it != w) s.insert(it, w);
}

std::vector<std::pair<int, int>> Arena::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < size(); ++v)
        for (int w : succ[v]) out.emplace_back(v, w);
    return out;
}

int ParityGame::max_rank() const {
    int m = 0;
    for (int r : rank) m = std::max(m, r);
    return m;
}

ParityGame parse_pg(std::istream& in) {
    struct Row {
        int rank;
        Player owner;
        std::vector<int> succ;
        int line;
    };
    std::map<int, Row> rows;
    std::string raw;
    int lineno = 0;
    bool saw_header = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip_line(raw);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "parity") {
            if (saw_header || !rows.empty())
                throw ParseError(lineno, "malformed header: 'parity' not at start");
            long max_id;
            if (!(ls >> max_id) || max_id < 0)
                throw ParseError(lineno, "malformed header");
            saw_header = true;
            continue;
        }
        Row row;
        row.line = lineno;
        int id;
        long rank, owner;
        {
            std::istringstream vs(line);
            if (!(vs >> id >> rank >> owner) || id < 0)
                throw ParseError(lineno, "malformed vertex line");
            if (rank < 0) throw ParseError(lineno, "negative rank");
            if (rank > kMaxRank) throw ParseError(lineno, "rank exceeds 16-bit bound");
            if (owner != 0 && owner != 1) throw ParseError(lineno, "owner must be 0 or 1");
            row.rank = static_cast<int>(rank);
            row.owner = owner == 0 ? Player::E : Player::O;
            std::string succ_field;
            if (vs >> succ_field) {
                std::string item;
                std::istringstream ss(succ_field);
                while (std::getline(ss, item, ',')) {
                    int w;
                    auto res = std::from_chars(item.data(), item.data() + item.size(), w);
                    if (res.ec != std::errc() || res.ptr != item.data() + item.size() || w < 0)
                        throw ParseError(lineno, "malformed successor list");
                    row.succ.push_back(w);
                }
            }
        }
        if (rows.count(id)) throw ParseError(lineno, "duplicate vertex id " + std::to_string(id));
        rows.emplace(id, std::move(row));
    }
    if (rows.empty()) throw ParseError(lineno, "no vertices");
    int n = rows.rbegin()->first + 1;
    if (static_cast<int>(rows.size()) != n)
        throw ParseError(lineno, "vertex ids are not dense (missing ids below " +
                                     std::to_string(n - 1) + ")");
    ParityGame game;
    game.arena.owner.resize(n);
    game.arena.succ.resize(n);
    game.rank.resize(n);
    for (auto& [id, row] : rows) {
        for (int w : row.succ)
            if (w >= n)
                throw ParseError(row.line, "unknown successor " + std::to_string(w));
        std::sort(row.succ.begin(), row.succ.end());
        row.succ.erase(std::unique(row.succ.begin(), row.succ.end()), row.succ.end());
        game.arena.owner[id] = row.owner;
        game.arena.succ[id] = std::move(row.succ);
        game.rank[id] = row.rank;
    }
    return game;
}

ParityGame parse_pg(const std::string& text) {
    std::istringstream in(text);
    return parse_pg(in);
}

std::string serialize_pg(const ParityGame& game) {
    std::ostringstream out;
    int n = game.size();
    out << "parity " << (n - 1) << ";\n";
    for (int v = 0; v < n; ++v) {
        out << v << ' ' << game.rank[v] << ' ' << (game.arena.owner[v] == Player::E ? 0 : 1);
        const auto& s = game.arena.succ[v];
        for (size_t i = 0; i < s.size(); ++i) out << (i == 0 ? " " : ",") << s[i];
        out << ";\n";
    }
    return out.str();
}

ParityGame normalize_ranks(const ParityGame& game) {
    std::map<int, int> remap;
    for (int r : game.rank) remap[r] = -1;
    int prev = -1;
    for (auto& [old_rank, new_rank] : remap) {
        int candidate = prev + 1;
        if (candidate % 2 != old_rank % 2) ++candidate;
        new_rank = candidate;
        prev = candidate;
    }
    ParityGame out = game;
    for (int& r : out.rank) r = remap[r];
    return out;
}

void validate_coloring(const Arena& arena, const Coloring& coloring) {
    if (static_cast<int>(coloring.color.size()) != arena.size())
        throw std::invalid_argument("coloring does not cover all vertices");
    for (int v = 0; v < arena.size(); ++v) {
        int c = coloring.color[v];
        if (c < 0 || c >= coloring.num_colors())
            throw std::invalid_argument("vertex " + std::to_string(v) + " has unknown color");
        if (coloring.palette[c] != arena.owner[v])
            throw std::invalid_argument("vertex " + std::to_string(v) +
                                        " colored from the wrong side of the palette");
    }
}

}  // namespace pgtd
