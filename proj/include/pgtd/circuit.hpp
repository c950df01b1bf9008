#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pgtd/core.hpp"
#include "pgtd/treemodel.hpp"

namespace pgtd {

enum class GateKind : uint8_t { kInput, kConst0, kConst1, kNot, kAnd, kOr };

/// Boolean circuit as a DAG of unbounded fan-in gates. Gates are added in
/// topological order (inputs must have smaller ids); wires are stored in one
/// shared arena to keep large emitted circuits compact.
class Circuit {
  public:
    int add_input();
    int add_const(bool value);
    int add_not(int input);
    int add_and(const std::vector<int>& inputs);
    int add_or(const std::vector<int>& inputs);

    int num_gates() const { return static_cast<int>(kinds_.size()); }
    int num_inputs() const { return num_inputs_; }
    GateKind kind(int gate) const { return kinds_[gate]; }
    std::pair<const int32_t*, const int32_t*> fanin(int gate) const;

    void mark_output(int gate, const std::string& label);
    const std::vector<std::pair<std::string, int>>& outputs() const { return outputs_; }
    /// First output gate with the given label; -1 if absent.
    int output(const std::string& label) const;

    /// Longest path counting every non-input gate on it.
    int depth() const;

  private:
    int add_gate(GateKind kind, const std::vector<int>& inputs);
    std::vector<GateKind> kinds_;
    std::vector<uint32_t> offsets_ = {0};
    std::vector<int32_t> wires_;
    std::vector<std::pair<std::string, int>> outputs_;
    int num_inputs_ = 0;
};

/// Values of all gates for the given input bits, in gate id order.
std::vector<uint8_t> eval_circuit(const Circuit& circuit, const std::vector<uint8_t>& bits);

/// Text format: "gate <id> <AND|OR|NOT|INPUT|CONST0|CONST1> [<in>,...];"
/// lines in id order, then "output <id> <label>;" lines.
Circuit parse_circuit(std::istream& in);
Circuit parse_circuit(const std::string& text);
std::string serialize_circuit(const Circuit& circuit);

/// Input bit positions for the solver circuit family: per-vertex color and
/// rank one-hots, the color-to-player map, and the embedded-tree child and
/// pair-set bits for k levels of n node slots.
struct BitLayout {
    int n = 0;
    int d = 0;
    int k = 0;

    int num_bits() const { return n * (k + d) + k + k * n * (n + k * k); }
    int color(int v, int c) const { return v * (k + d) + c; }
    int vrank(int v, int r) const { return v * (k + d) + k + r; }
    int ecolor(int c) const { return n * (k + d) + c; }
    int tcc(int level, int slot, int child) const {
        return n * (k + d) + k + ((level - 1) * n + slot) * (n + k * k) + child;
    }
    int tcs(int level, int slot, int s, int t) const {
        return n * (k + d) + k + ((level - 1) * n + slot) * (n + k * k) + n + s * k + t;
    }
};

/// Emits the full solver circuit for n-vertex games with ranks below d over
/// height-k tree-models with k colors. Outputs: "winner[v]" per vertex (E
/// wins iff true, meaningful only when "valid" is true) and "valid" (input
/// encoding well-formed). Depth depends on k only. Guard: (d+1)^k <= 4096.
Circuit emit_scw_circuit(int n, int d, int k);

/// Encodes a game and a tree-model of height exactly k with exactly k colors
/// into the layout's bit vector.
std::vector<uint8_t> encode_input(const ParityGame& game, const TreeModel& tm,
                                  const BitLayout& layout);

/// Inverse of encode_input up to node slot numbering.
struct DecodedInput {
    std::vector<int> rank;
    TreeModel tm;
};
DecodedInput decode_input(const std::vector<uint8_t>& bits, const BitLayout& layout);

/// Host-side mirror of the circuit's validation output.
bool encoding_valid(const std::vector<uint8_t>& bits, const BitLayout& layout);

}  // namespace pgtd
