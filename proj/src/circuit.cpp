#include "pgtd/circuit.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "pgtd/enforcement.hpp"

namespace pgtd {

int Circuit::add_gate(GateKind kind, const std::vector<int>& inputs) {
    int id = num_gates();
    for (int in : inputs)
        if (in < 0 || in >= id)
            throw std::invalid_argument("gate input must refer to an earlier gate");
    kinds_.push_back(kind);
    wires_.insert(wires_.end(), inputs.begin(), inputs.end());
    offsets_.push_back(static_cast<uint32_t>(wires_.size()));
    return id;
}

int Circuit::add_input() {
    if (num_gates() != num_inputs_)
        throw std::invalid_argument("inputs must be added before other gates");
    ++num_inputs_;
    return add_gate(GateKind::kInput, {});
}

int Circuit::add_const(bool value) {
    return add_gate(value ? GateKind::kConst1 : GateKind::kConst0, {});
}

int Circuit::add_not(int input) { return add_gate(GateKind::kNot, {input}); }

int Circuit::add_and(const std::vector<int>& inputs) { return add_gate(GateKind::kAnd, inputs); }

int Circuit::add_or(const std::vector<int>& inputs) { return add_gate(GateKind::kOr, inputs); }

std::pair<const int32_t*, const int32_t*> Circuit::fanin(int gate) const {
    return {wires_.data() + offsets_[gate], wires_.data() + offsets_[gate + 1]};
}

void Circuit::mark_output(int gate, const std::string& label) {
    if (gate < 0 || gate >= num_gates()) throw std::invalid_argument("output gate out of range");
    outputs_.push_back({label, gate});
}

int Circuit::output(const std::string& label) const {
    for (const auto& [name, gate] : outputs_)
        if (name == label) return gate;
    return -1;
}

int Circuit::depth() const {
    std::vector<int> level(num_gates(), 0);
    int best = 0;
    for (int g = 0; g < num_gates(); ++g) {
        int in_max = 0;
        auto [begin, end] = fanin(g);
        for (const int32_t* it = begin; it != end; ++it) in_max = std::max(in_max, level[*it]);
        level[g] = in_max + (kinds_[g] == GateKind::kInput ? 0 : 1);
        best = std::max(best, level[g]);
    }
    return best;
}

std::vector<uint8_t> eval_circuit(const Circuit& circuit, const std::vector<uint8_t>& bits) {
    if (static_cast<int>(bits.size()) != circuit.num_inputs())
        throw std::invalid_argument("eval_circuit: expected " +
                                    std::to_string(circuit.num_inputs()) + " input bits, got " +
                                    std::to_string(bits.size()));
    std::vector<uint8_t> value(circuit.num_gates(), 0);
    for (int g = 0; g < circuit.num_gates(); ++g) {
        auto [begin, end] = circuit.fanin(g);
        switch (circuit.kind(g)) {
            case GateKind::kInput:
                value[g] = bits[g] ? 1 : 0;
                break;
            case GateKind::kConst0:
                value[g] = 0;
                break;
            case GateKind::kConst1:
                value[g] = 1;
                break;
            case GateKind::kNot:
                value[g] = !value[*begin];
                break;
            case GateKind::kAnd: {
                uint8_t acc = 1;
                for (const int32_t* it = begin; it != end && acc; ++it) acc = value[*it];
                value[g] = acc;
                break;
            }
            case GateKind::kOr: {
                uint8_t acc = 0;
                for (const int32_t* it = begin; it != end && !acc; ++it) acc = value[*it];
                value[g] = acc;
                break;
            }
        }
    }
    return value;
}

namespace {

const char* kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::kInput: return "INPUT";
        case GateKind::kConst0: return "CONST0";
        case GateKind::kConst1: return "CONST1";
        case GateKind::kNot: return "NOT";
        case GateKind::kAnd: return "AND";
        case GateKind::kOr: return "OR";
    }
    return "?";
}

}  // namespace

Circuit parse_circuit(std::istream& in) {
    Circuit c;
    std::string raw;
    int lineno = 0;
    int expected = 0;
    std::vector<std::pair<int, std::string>> outputs;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        auto semi = raw.find(';');
        if (semi != std::string::npos) raw.erase(semi);
        std::istringstream ls(raw);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "gate") {
            int id;
            std::string kind, field;
            if (!(ls >> id >> kind)) throw ParseError(lineno, "malformed gate line");
            if (id != expected++) throw ParseError(lineno, "gate ids must be dense and ascending");
            std::vector<int> inputs;
            if (ls >> field) {
                std::istringstream fs(field);
                std::string item;
                while (std::getline(fs, item, ',')) inputs.push_back(std::stoi(item));
            }
            try {
                if (kind == "INPUT") {
                    if (!inputs.empty()) throw std::invalid_argument("INPUT takes no inputs");
                    c.add_input();
                } else if (kind == "CONST0" || kind == "CONST1") {
                    if (!inputs.empty()) throw std::invalid_argument("CONST takes no inputs");
                    c.add_const(kind == "CONST1");
                } else if (kind == "NOT") {
                    if (inputs.size() != 1) throw std::invalid_argument("NOT takes one input");
                    c.add_not(inputs[0]);
                } else if (kind == "AND") {
                    c.add_and(inputs);
                } else if (kind == "OR") {
                    c.add_or(inputs);
                } else {
                    throw std::invalid_argument("unknown gate kind '" + kind + "'");
                }
            } catch (const std::invalid_argument& e) {
                throw ParseError(lineno, e.what());
            }
        } else if (head == "output") {
            int id;
            std::string label;
            if (!(ls >> id >> label)) throw ParseError(lineno, "malformed output line");
            outputs.push_back({id, label});
        } else {
            throw ParseError(lineno, "unknown directive '" + head + "'");
        }
    }
    for (const auto& [id, label] : outputs) {
        if (id < 0 || id >= c.num_gates()) throw ParseError(lineno, "output gate out of range");
        c.mark_output(id, label);
    }
    return c;
}

Circuit parse_circuit(const std::string& text) {
    std::istringstream in(text);
    return parse_circuit(in);
}

std::string serialize_circuit(const Circuit& circuit) {
    std::ostringstream out;
    for (int g = 0; g < circuit.num_gates(); ++g) {
        out << "gate " << g << ' ' << kind_name(circuit.kind(g));
        auto [begin, end] = circuit.fanin(g);
        for (const int32_t* it = begin; it != end; ++it)
            out << (it == begin ? " " : ",") << *it;
        out << ";\n";
    }
    for (const auto& [label, gate] : circuit.outputs()) out << "output " << gate << ' ' << label << ";\n";
    return out.str();
}

namespace {

constexpr uint64_t kEmitGuard = 4096;

struct Emitter {
    int n, d, k;
    EnfParams params;
    int U;
    BitLayout layout;
    Circuit c;
    int c0 = -1, c1 = -1;
    std::vector<Enforcement> enf;
    std::vector<std::vector<int>> down;  // down[p]: all q with enf[q] [= enf[p]
    std::vector<int> not_ecolor;

    struct Pack {
        std::vector<std::vector<int>> enf;  // [vertex][enforcement] gate ids
        std::vector<int> used;              // [vertex]
    };

    Emitter(int n_, int d_, int k_) : n(n_), d(d_), k(k_), params{d_, k_} {
        uint64_t size = 1;
        for (int i = 0; i < k; ++i) {
            size *= static_cast<uint64_t>(d) + 1;
            if (size > kEmitGuard)
                throw std::invalid_argument("emit_scw_circuit: (d+1)^k exceeds 4096");
        }
        if (n < 2 || d < 2 || k < 1)
            throw std::invalid_argument("emit_scw_circuit: need n, d > 1 and k > 0");
        U = static_cast<int>(size);
        layout = BitLayout{n, d, k};
        for (int p = 0; p < U; ++p) enf.push_back(enf_from_index(p, params));
        down.resize(U);
        for (int p = 0; p < U; ++p)
            for (int q = 0; q < U; ++q)
                if (enf_leq(enf[q], enf[p])) down[p].push_back(q);
    }

    int idx(const Enforcement& p) const { return static_cast<int>(enf_index(p, params)); }

    Pack initialize(int v) {
        Pack pack;
        pack.used.assign(n, c0);
        pack.used[v] = c1;
        pack.enf.assign(n, std::vector<int>(U, c0));
        for (int p = 0; p < U; ++p) {
            std::vector<int> terms;
            for (int col = 0; col < k; ++col) {
                if (!enf[p].defined(col)) continue;
                for (int r = 0; r < d; ++r)
                    if (rank_preceq(enf[p].value(col), r))
                        terms.push_back(c.add_and({layout.color(v, col), layout.vrank(v, r)}));
            }
            pack.enf[v][p] = terms.empty() ? c0 : c.add_or(terms);
        }
        return pack;
    }

    std::vector<int> update_e(const Pack& in, int s, int t) {
        // merge with s treated as an E-color, for every pair of enforcements
        std::vector<std::vector<int>> merged(U, std::vector<int>(U));
        for (int q = 0; q < U; ++q)
            for (int r = 0; r < U; ++r)
                merged[q][r] = idx(enf_merge(Player::E, enf[q], s, enf[r]));
        std::vector<std::vector<int>> pairs_below(U);
        for (int q = 0; q < U; ++q)
            for (int r = 0; r < U; ++r)
                for (int p = 0; p < U; ++p)
                    if (enf_leq(enf[merged[q][r]], enf[p])) pairs_below[p].push_back(q * U + r);

        std::vector<int> move(U), opt(U);
        for (int p = 0; p < U; ++p) {
            std::vector<int> terms;
            for (int w = 0; w < n; ++w)
                terms.push_back(c.add_and({in.used[w], layout.color(w, t), in.enf[w][p]}));
            move[p] = c.add_or(terms);
        }
        for (int p = 0; p < U; ++p) {
            int looped;
            if (enf[p].defined(s)) {
                looped = c0;
            } else {
                std::vector<int> terms;
                for (int r = 0; r < d; r += 2) {
                    Enforcement q = enf[p];
                    q.assign(s, r);
                    terms.push_back(move[idx(q)]);
                }
                looped = c.add_or(terms);
            }
            opt[p] = c.add_or({move[p], looped});
        }

        std::vector<int> out(n * U);
        for (int v = 0; v < n; ++v) {
            std::vector<std::vector<int>> pair_and(U, std::vector<int>(U));
            for (int q = 0; q < U; ++q)
                for (int r = 0; r < U; ++r) pair_and[q][r] = c.add_and({in.enf[v][q], opt[r]});
            for (int p = 0; p < U; ++p) {
                std::vector<int> closure;
                for (int q : down[p]) closure.push_back(in.enf[v][q]);
                std::vector<int> merge_terms;
                for (int qr : pairs_below[p]) merge_terms.push_back(pair_and[qr / U][qr % U]);
                int body = c.add_or({c.add_or(closure), c.add_or(merge_terms)});
                out[v * U + p] = c.add_and({in.used[v], body});
            }
        }
        return out;
    }

    std::vector<int> update_o(const Pack& in, int s, int t) {
        // merge with s treated as an O-color
        std::vector<std::vector<int>> merged(U, std::vector<int>(U));
        for (int q = 0; q < U; ++q)
            for (int r = 0; r < U; ++r)
                merged[q][r] = idx(enf_merge(Player::O, enf[q], s, enf[r]));
        std::vector<char> even_or_undef(U);
        for (int r = 0; r < U; ++r)
            even_or_undef[r] = !enf[r].defined(s) || enf[r].value(s) % 2 == 0;

        std::vector<int> not_used(n), not_color(n);
        for (int w = 0; w < n; ++w) {
            not_used[w] = c.add_not(in.used[w]);
            not_color[w] = c.add_not(layout.color(w, t));
        }

        // any_good[q][p]: some even-or-undefined response of every t-vertex
        // keeps the merged enforcement below p.
        std::vector<std::vector<int>> any_good(U, std::vector<int>(U, -1));
        for (int p = 0; p < U; ++p)
            for (int q : down[p]) {
                std::vector<int> responses;
                for (int r = 0; r < U; ++r)
                    if (even_or_undef[r] && enf_leq(enf[merged[q][r]], enf[p])) responses.push_back(r);
                std::vector<int> per_w;
                for (int w = 0; w < n; ++w) {
                    std::vector<int> terms = {not_used[w], not_color[w]};
                    for (int r : responses) terms.push_back(in.enf[w][r]);
                    per_w.push_back(c.add_or(terms));
                }
                any_good[q][p] = c.add_and(per_w);
            }

        std::vector<int> out(n * U);
        for (int v = 0; v < n; ++v)
            for (int p = 0; p < U; ++p) {
                std::vector<int> terms;
                for (int q : down[p]) {
                    int no_pair = enf[q].defined(s) ? c0 : c1;
                    terms.push_back(
                        c.add_and({in.enf[v][q], c.add_or({no_pair, any_good[q][p]})}));
                }
                out[v * U + p] = c.add_and({in.used[v], c.add_or(terms)});
            }
        return out;
    }

    Pack conditional_update(const Pack& in, int s, int t, int cond) {
        std::vector<int> out_e = update_e(in, s, t);
        std::vector<int> out_o = update_o(in, s, t);
        int ecolor = layout.ecolor(s);
        int not_e = c.add_not(ecolor);
        int not_cond = c.add_not(cond);
        Pack next;
        next.used = in.used;
        next.enf.assign(n, std::vector<int>(U));
        for (int v = 0; v < n; ++v)
            for (int p = 0; p < U; ++p) {
                int updated = c.add_or({c.add_and({out_e[v * U + p], ecolor}),
                                        c.add_and({out_o[v * U + p], not_e})});
                next.enf[v][p] = c.add_or(
                    {c.add_and({updated, cond}), c.add_and({in.enf[v][p], not_cond})});
            }
        return next;
    }

    Pack process(const std::vector<Pack>& below, int level, int slot) {
        // Choose: disjoint union of the child subtrees selected by TCC.
        Pack pack;
        pack.enf.assign(n, std::vector<int>(U));
        pack.used.assign(n, 0);
        for (int v = 0; v < n; ++v) {
            std::vector<int> used_terms;
            for (int j = 0; j < n; ++j)
                used_terms.push_back(c.add_and({below[j].used[v], layout.tcc(level, slot, j)}));
            pack.used[v] = c.add_or(used_terms);
            for (int p = 0; p < U; ++p) {
                std::vector<int> terms;
                for (int j = 0; j < n; ++j)
                    terms.push_back(c.add_and({below[j].enf[v][p], layout.tcc(level, slot, j)}));
                pack.enf[v][p] = c.add_or(terms);
            }
        }
        for (int s = 0; s < k; ++s)
            for (int t = 0; t < k; ++t)
                pack = conditional_update(pack, s, t, layout.tcs(level, slot, s, t));
        return pack;
    }

    int exactly_one(const std::vector<int>& bits) {
        std::vector<int> clashes;
        for (size_t i = 0; i < bits.size(); ++i)
            for (size_t j = i + 1; j < bits.size(); ++j)
                clashes.push_back(c.add_and({bits[i], bits[j]}));
        return c.add_and({c.add_or(bits), c.add_not(c.add_or(clashes))});
    }

    int at_most_one(const std::vector<int>& bits) {
        std::vector<int> clashes;
        for (size_t i = 0; i < bits.size(); ++i)
            for (size_t j = i + 1; j < bits.size(); ++j)
                clashes.push_back(c.add_and({bits[i], bits[j]}));
        return c.add_not(c.add_or(clashes));
    }

    int implies(int a, int b) { return c.add_or({c.add_not(a), b}); }

    int validation() {
        std::vector<int> checks;
        for (int v = 0; v < n; ++v) {
            std::vector<int> colors, ranks;
            for (int col = 0; col < k; ++col) colors.push_back(layout.color(v, col));
            for (int r = 0; r < d; ++r) ranks.push_back(layout.vrank(v, r));
            checks.push_back(exactly_one(colors));
            checks.push_back(exactly_one(ranks));
        }
        auto children_of = [&](int level, int slot) {
            std::vector<int> bits;
            for (int j = 0; j < n; ++j) bits.push_back(layout.tcc(level, slot, j));
            return bits;
        };
        auto parents_of = [&](int level_above, int node) {
            std::vector<int> bits;
            for (int i = 0; i < n; ++i) bits.push_back(layout.tcc(level_above, i, node));
            return bits;
        };
        for (int l = 1; l <= k; ++l)
            for (int j = 0; j < n; ++j) checks.push_back(at_most_one(parents_of(l, j)));
        for (int j = 0; j < n; ++j) checks.push_back(c.add_or(parents_of(1, j)));
        for (int l = 1; l < k; ++l)
            for (int i = 0; i < n; ++i) {
                int has_child = c.add_or(children_of(l, i));
                int has_parent = c.add_or(parents_of(l + 1, i));
                checks.push_back(implies(has_child, has_parent));
                checks.push_back(implies(has_parent, has_child));
            }
        std::vector<int> top;
        for (int i = 0; i < n; ++i) top.push_back(c.add_or(children_of(k, i)));
        checks.push_back(exactly_one(top));
        return c.add_and(checks);
    }

    Circuit emit() {
        for (int b = 0; b < layout.num_bits(); ++b) c.add_input();
        c0 = c.add_const(false);
        c1 = c.add_const(true);

        std::vector<Pack> layer;
        for (int v = 0; v < n; ++v) layer.push_back(initialize(v));
        for (int l = 1; l <= k; ++l) {
            std::vector<Pack> next;
            for (int i = 0; i < n; ++i) next.push_back(process(layer, l, i));
            layer = std::move(next);
        }

        for (int col = 0; col < k; ++col) not_ecolor.push_back(c.add_not(layout.ecolor(col)));
        for (int v = 0; v < n; ++v) {
            std::vector<int> terms;
            for (int p = 0; p < U; ++p) {
                std::vector<int> gathered;
                for (int i = 0; i < n; ++i) gathered.push_back(layer[i].enf[v][p]);
                std::vector<int> witness = {c.add_or(gathered)};
                for (int col = 0; col < k; ++col)
                    if (enf[p].defined(col)) witness.push_back(not_ecolor[col]);
                terms.push_back(c.add_and(witness));
            }
            c.mark_output(c.add_or(terms), "winner[" + std::to_string(v) + "]");
        }
        c.mark_output(validation(), "valid");
        return std::move(c);
    }
};

}  // namespace

Circuit emit_scw_circuit(int n, int d, int k) { return Emitter(n, d, k).emit(); }

namespace {

void layout_slots(const TreeModel& tm, const BitLayout& layout,
                  std::vector<std::map<int, int>>& slot_of) {
    slot_of.assign(layout.k + 1, {});
    for (const auto& [id, node] : tm.nodes) {
        auto& slots = slot_of[node.level];
        int slot = static_cast<int>(slots.size());
        if (slot >= layout.n)
            throw std::invalid_argument("tree-model has more than n nodes on one level");
        slots[id] = slot;  // std::map iterates ids ascending, so slots follow id order
    }
}

}  // namespace

std::vector<uint8_t> encode_input(const ParityGame& game, const TreeModel& tm,
                                  const BitLayout& layout) {
    validate_tm(tm);
    if (tm.height != layout.k)
        throw std::invalid_argument("encode_input: tree-model height must be exactly k");
    if (static_cast<int>(tm.palette.size()) != layout.k)
        throw std::invalid_argument("encode_input: palette must have exactly k colors");
    if (game.size() != layout.n || tm.num_leaves() != layout.n)
        throw std::invalid_argument("encode_input: vertex count must be exactly n");
    for (const auto& [leaf, color] : tm.leaf_color)
        if (leaf < 0 || leaf >= layout.n)
            throw std::invalid_argument("encode_input: leaf ids must be dense 0..n-1");
    std::vector<std::map<int, int>> slot_of;
    layout_slots(tm, layout, slot_of);

    std::vector<uint8_t> bits(layout.num_bits(), 0);
    for (const auto& [leaf, color] : tm.leaf_color) {
        bits[layout.color(leaf, color)] = 1;
        int r = game.rank[leaf];
        if (r < 0 || r >= layout.d)
            throw std::invalid_argument("encode_input: rank out of range");
        bits[layout.vrank(leaf, r)] = 1;
    }
    for (int c = 0; c < layout.k; ++c)
        if (tm.palette[c] == Player::E) bits[layout.ecolor(c)] = 1;
    for (const auto& [id, node] : tm.nodes) {
        int slot = slot_of[node.level].at(id);
        for (int child : node.children) {
            int child_slot = node.level == 1 ? child : slot_of[node.level - 1].at(child);
            bits[layout.tcc(node.level, slot, child_slot)] = 1;
        }
        for (const auto& [s, t] : node.pairs) bits[layout.tcs(node.level, slot, s, t)] = 1;
    }
    return bits;
}

DecodedInput decode_input(const std::vector<uint8_t>& bits, const BitLayout& layout) {
    if (static_cast<int>(bits.size()) != layout.num_bits())
        throw std::invalid_argument("decode_input: bit vector length mismatch");
    DecodedInput out;
    out.tm.height = layout.k;
    out.tm.palette.resize(layout.k);
    for (int c = 0; c < layout.k; ++c)
        out.tm.palette[c] = bits[layout.ecolor(c)] ? Player::E : Player::O;
    out.rank.assign(layout.n, -1);
    for (int v = 0; v < layout.n; ++v) {
        int color = -1, rank = -1;
        for (int c = 0; c < layout.k; ++c)
            if (bits[layout.color(v, c)]) {
                if (color >= 0) throw std::invalid_argument("decode_input: color not one-hot");
                color = c;
            }
        for (int r = 0; r < layout.d; ++r)
            if (bits[layout.vrank(v, r)]) {
                if (rank >= 0) throw std::invalid_argument("decode_input: rank not one-hot");
                rank = r;
            }
        if (color < 0 || rank < 0)
            throw std::invalid_argument("decode_input: missing color or rank");
        out.tm.leaf_color[v] = color;
        out.rank[v] = rank;
    }
    for (int l = 1; l <= layout.k; ++l)
        for (int i = 0; i < layout.n; ++i) {
            TreeModel::Node node;
            node.level = l;
            for (int j = 0; j < layout.n; ++j)
                if (bits[layout.tcc(l, i, j)])
                    node.children.push_back(l == 1 ? j : layout.n + (l - 2) * layout.n + j);
            if (node.children.empty()) continue;
            for (int s = 0; s < layout.k; ++s)
                for (int t = 0; t < layout.k; ++t)
                    if (bits[layout.tcs(l, i, s, t)]) node.pairs.insert({s, t});
            out.tm.nodes[layout.n + (l - 1) * layout.n + i] = std::move(node);
        }
    validate_tm(out.tm);
    return out;
}

bool encoding_valid(const std::vector<uint8_t>& bits, const BitLayout& layout) {
    if (static_cast<int>(bits.size()) != layout.num_bits()) return false;
    auto one_hot = [&](auto bit_at, int count) {
        int set = 0;
        for (int i = 0; i < count; ++i) set += bits[bit_at(i)] ? 1 : 0;
        return set == 1;
    };
    for (int v = 0; v < layout.n; ++v) {
        if (!one_hot([&](int c) { return layout.color(v, c); }, layout.k)) return false;
        if (!one_hot([&](int r) { return layout.vrank(v, r); }, layout.d)) return false;
    }
    auto parent_count = [&](int level_above, int node) {
        int found = 0;
        for (int i = 0; i < layout.n; ++i) found += bits[layout.tcc(level_above, i, node)] ? 1 : 0;
        return found;
    };
    auto has_child = [&](int level, int slot) {
        for (int j = 0; j < layout.n; ++j)
            if (bits[layout.tcc(level, slot, j)]) return true;
        return false;
    };
    for (int l = 1; l <= layout.k; ++l)
        for (int j = 0; j < layout.n; ++j)
            if (parent_count(l, j) > 1) return false;
    for (int j = 0; j < layout.n; ++j)
        if (parent_count(1, j) != 1) return false;
    for (int l = 1; l < layout.k; ++l)
        for (int i = 0; i < layout.n; ++i)
            if (has_child(l, i) != (parent_count(l + 1, i) > 0)) return false;
    int top = 0;
    for (int i = 0; i < layout.n; ++i) top += has_child(layout.k, i) ? 1 : 0;
    return top == 1;
}

}  // namespace pgtd
