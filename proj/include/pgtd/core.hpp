#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pgtd {

enum class Player : uint8_t { E = 0, O = 1 };

inline Player opponent(Player p) { return p == Player::E ? Player::O : Player::E; }
inline char player_char(Player p) { return p == Player::E ? 'E' : 'O'; }

/// Directed game graph with per-vertex ownership. Vertices are dense ids
/// 0..n-1, successor lists are kept sorted and duplicate-free.
struct Arena {
    std::vector<Player> owner;
    std::vector<std::vector<int>> succ;

    int size() const { return static_cast<int>(owner.size()); }
    bool has_edge(int v, int w) const;
    void add_edge(int v, int w);
    std::vector<std::pair<int, int>> edges() const;
    bool operator==(const Arena&) const = default;
};

struct ParityGame {
    Arena arena;
    std::vector<int> rank;

    int size() const { return arena.size(); }
    int max_rank() const;
    bool operator==(const ParityGame&) const = default;
};

/// Player-aware coloring: palette maps color ids to the side they belong to,
/// and every vertex must carry a color from its owner's side.
struct Coloring {
    std::vector<Player> palette;
    std::vector<int> color;

    int num_colors() const { return static_cast<int>(palette.size()); }
    bool operator==(const Coloring&) const = default;
};

struct WinnerPartition {
    std::vector<Player> winner;
    bool operator==(const WinnerPartition&) const = default;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& what);
    int line() const { return line_; }

  private:
    int line_;
};

/// Reads the PGSolver text format: optional "parity <max-id>;" header, then
/// "<id> <rank> <owner> <succ,...> ["name"];" per vertex. Owner 0 is player E,
/// 1 is player O. '#' starts a comment, an absent successor field means a
/// dead end. Vertex ids must be dense.
ParityGame parse_pg(std::istream& in);
ParityGame parse_pg(const std::string& text);

/// Canonical form: header, vertices ascending, successors ascending.
std::string serialize_pg(const ParityGame& game);

/// Remaps distinct ranks order- and parity-preservingly into
/// {0,...,2*#distinct-1}: each distinct rank, taken ascending, gets the
/// smallest value above the previous assignment that matches its parity.
ParityGame normalize_ranks(const ParityGame& game);

void validate_coloring(const Arena& arena, const Coloring& coloring);

}  // namespace pgtd
