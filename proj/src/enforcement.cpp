#include "pgtd/enforcement.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pgtd {

namespace {

constexpr uint64_t kMaxUniverse = uint64_t{1} << 20;

int64_t signed_rank(int p) { return p % 2 == 0 ? p : -static_cast<int64_t>(p); }

}  // namespace

bool Enforcement::empty_domain() const {
    for (uint8_t d : digits_)
        if (d != kUndef) return false;
    return true;
}

int Enforcement::domain_size() const {
    int n = 0;
    for (uint8_t d : digits_)
        if (d != kUndef) ++n;
    return n;
}

bool rank_precedes(int p, int q) { return signed_rank(p) < signed_rank(q); }

bool rank_preceq(int p, int q) { return p == q || rank_precedes(p, q); }

bool enf_leq(const Enforcement& p, const Enforcement& q) {
    if (p.num_colors() != q.num_colors())
        throw std::invalid_argument("enf_leq: mismatched palettes");
    for (int c = 0; c < p.num_colors(); ++c) {
        if (!p.defined(c)) continue;
        if (!q.defined(c) || !rank_preceq(q.value(c), p.value(c))) return false;
    }
    return true;
}

std::optional<Enforcement> enf_loop(const Enforcement& p, int c,
                                    const std::vector<Player>& palette) {
    if (palette.at(c) != Player::E) return std::nullopt;
    if (!p.defined(c)) return p;
    if (p.value(c) % 2 == 0) {
        Enforcement out = p;
        out.clear(c);
        return out;
    }
    return std::nullopt;
}

Enforcement enf_lift(const Enforcement& q, int r) {
    Enforcement out = q;
    for (int c = 0; c < q.num_colors(); ++c)
        if (q.defined(c)) out.assign(c, std::max(q.value(c), r));
    return out;
}

Enforcement enf_union(const Enforcement& p, const Enforcement& q) {
    Enforcement out(p.num_colors());
    for (int c = 0; c < p.num_colors(); ++c) {
        if (p.defined(c) && q.defined(c))
            out.assign(c, rank_preceq(p.value(c), q.value(c)) ? p.value(c) : q.value(c));
        else if (p.defined(c))
            out.assign(c, p.value(c));
        else if (q.defined(c))
            out.assign(c, q.value(c));
    }
    return out;
}

Enforcement enf_merge(Player side, const Enforcement& p, int c, const Enforcement& q) {
    if (!p.defined(c)) return p;
    int r = p.value(c);
    Enforcement left = p;
    if (side == Player::E) left.clear(c);
    return enf_union(left, enf_lift(q, r));
}

std::string to_string(const Enforcement& p) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (int c = 0; c < p.num_colors(); ++c) {
        if (!p.defined(c)) continue;
        if (!first) out << ", ";
        first = false;
        out << 'c' << c << "|->" << p.value(c);
    }
    out << '}';
    return out.str();
}

uint64_t EnfParams::universe_size() const {
    if (d < 1 || k < 1) throw std::invalid_argument("EnfParams: need d >= 1, k >= 1");
    uint64_t size = 1;
    for (int i = 0; i < k; ++i) {
        size *= static_cast<uint64_t>(d) + 1;
        if (size > kMaxUniverse)
            throw std::invalid_argument("enforcement universe (d+1)^k exceeds 2^20");
    }
    return size;
}

uint64_t enf_index(const Enforcement& p, const EnfParams& params) {
    if (p.num_colors() != params.k)
        throw std::invalid_argument("enf_index: palette size mismatch");
    uint64_t index = 0;
    for (int c = params.k - 1; c >= 0; --c) {
        int digit = p.defined(c) ? p.value(c) : params.d;
        if (digit > params.d) throw std::invalid_argument("enf_index: rank out of range");
        index = index * (params.d + 1) + digit;
    }
    return index;
}

Enforcement enf_from_index(uint64_t index, const EnfParams& params) {
    Enforcement p(params.k);
    for (int c = 0; c < params.k; ++c) {
        int digit = static_cast<int>(index % (params.d + 1));
        index /= params.d + 1;
        if (digit != params.d) p.assign(c, digit);
    }
    return p;
}

EnforcementSet::EnforcementSet(const EnfParams& params) : params_(params) {
    bits_.assign((params.universe_size() + 63) / 64, 0);
}

EnforcementSet EnforcementSet::up_closure(const std::vector<Enforcement>& seeds,
                                          const EnfParams& params) {
    EnforcementSet set(params);
    for (const auto& seed : seeds) set.set_bit(enf_index(seed, params));
    close_upward(set);
    return set;
}

bool EnforcementSet::contains(const Enforcement& p) const {
    return get_bit(enf_index(p, params_));
}

bool EnforcementSet::contains_index(uint64_t index) const { return get_bit(index); }

uint64_t EnforcementSet::count() const {
    uint64_t n = 0;
    for (uint64_t word : bits_) n += __builtin_popcountll(word);
    return n;
}

bool EnforcementSet::empty() const {
    for (uint64_t word : bits_)
        if (word) return false;
    return true;
}

void EnforcementSet::insert_up(const Enforcement& p) {
    set_bit(enf_index(p, params_));
    close_upward(*this);
}

void EnforcementSet::union_with(const EnforcementSet& other) {
    if (!(params_ == other.params_))
        throw std::invalid_argument("EnforcementSet union: parameter mismatch");
    for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
}

void EnforcementSet::intersect_with(const EnforcementSet& other) {
    if (!(params_ == other.params_))
        throw std::invalid_argument("EnforcementSet intersection: parameter mismatch");
    for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= other.bits_[i];
}

std::vector<Enforcement> EnforcementSet::members() const {
    std::vector<Enforcement> out;
    uint64_t size = params_.universe_size();
    for (uint64_t i = 0; i < size; ++i)
        if (get_bit(i)) out.push_back(enf_from_index(i, params_));
    return out;
}

std::vector<Enforcement> EnforcementSet::minimal_elements() const {
    return prune_antichain(members());
}

bool EnforcementSet::is_up_closed() const {
    // Every one-step enlargement of a member must again be a member.
    uint64_t size = params_.universe_size();
    for (uint64_t i = 0; i < size; ++i) {
        if (!get_bit(i)) continue;
        Enforcement p = enf_from_index(i, params_);
        for (int c = 0; c < params_.k; ++c) {
            if (!p.defined(c)) {
                for (int r = 0; r < params_.d; ++r) {
                    Enforcement q = p;
                    q.assign(c, r);
                    if (!get_bit(enf_index(q, params_))) return false;
                }
            } else {
                for (int r = 0; r < params_.d; ++r) {
                    if (!rank_preceq(r, p.value(c))) continue;
                    Enforcement q = p;
                    q.assign(c, r);
                    if (!get_bit(enf_index(q, params_))) return false;
                }
            }
        }
    }
    return true;
}

void close_upward(EnforcementSet& set) {
    // Per color the digit order is a chain: undefined at the bottom, then the
    // values from the rank order's top downwards. Closing the product order is
    // one cumulative-or sweep along that chain per color.
    const EnfParams& params = set.params_;
    std::vector<int> chain = {params.d};
    for (int r = 0; r < params.d; ++r) chain.push_back(r);
    std::sort(chain.begin() + 1, chain.end(),
              [](int a, int b) { return rank_precedes(b, a); });

    uint64_t stride = 1;
    for (int c = 0; c < params.k; ++c) {
        uint64_t block = stride * (params.d + 1);
        uint64_t size = params.universe_size();
        for (uint64_t base = 0; base < size; base += block)
            for (uint64_t off = 0; off < stride; ++off)
                for (int j = 1; j <= params.d; ++j) {
                    uint64_t prev = base + chain[j - 1] * stride + off;
                    if (set.get_bit(prev)) set.set_bit(base + chain[j] * stride + off);
                }
        stride = block;
    }
}

std::vector<Enforcement> prune_antichain(std::vector<Enforcement> candidates) {
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<Enforcement> out;
    for (size_t i = 0; i < candidates.size(); ++i) {
        bool minimal = true;
        for (size_t j = 0; j < candidates.size() && minimal; ++j) {
            if (i == j) continue;
            if (enf_leq(candidates[j], candidates[i]) && !(candidates[i] == candidates[j]))
                minimal = false;
        }
        if (minimal) out.push_back(candidates[i]);
    }
    return out;
}

}  // namespace pgtd
