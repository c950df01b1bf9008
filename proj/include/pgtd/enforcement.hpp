#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgtd/core.hpp"

namespace pgtd {

/// Partial map from color ids to ranks. Undefined colors carry the sentinel
/// digit; together with a rank bound d this gives the canonical mixed-radix
/// index (digit d meaning "undefined").
class Enforcement {
  public:
    static constexpr uint8_t kUndef = 0xFF;

    Enforcement() = default;
    explicit Enforcement(int num_colors) : digits_(num_colors, kUndef) {}

    int num_colors() const { return static_cast<int>(digits_.size()); }
    bool defined(int c) const { return digits_[c] != kUndef; }
    int value(int c) const { return digits_[c]; }
    void assign(int c, int r) { digits_[c] = static_cast<uint8_t>(r); }
    void clear(int c) { digits_[c] = kUndef; }
    bool empty_domain() const;
    int domain_size() const;

    bool operator==(const Enforcement&) const = default;
    bool operator<(const Enforcement& other) const { return digits_ < other.digits_; }

  private:
    std::vector<uint8_t> digits_;
};

/// p strictly precedes q in ... < 5 < 3 < 1 < 0 < 2 < 4 < ...
/// (smaller is worse for player E).
bool rank_precedes(int p, int q);
bool rank_preceq(int p, int q);

/// P [= Q: Dom(P) is contained in Dom(Q) and Q(a) precedes-or-equals P(a)
/// on Dom(P). Larger means worse arrival scenarios.
bool enf_leq(const Enforcement& p, const Enforcement& q);

/// Reroutes STOP decisions at color c back to the start vertex. Defined only
/// when c belongs to player E and P(c) is absent or even.
std::optional<Enforcement> enf_loop(const Enforcement& p, int c, const std::vector<Player>& palette);

/// Pointwise natural-order max with r over Dom(Q).
Enforcement enf_lift(const Enforcement& q, int r);

/// Pointwise preceq-minimum; an undefined argument yields the defined one.
Enforcement enf_union(const Enforcement& p, const Enforcement& q);

/// Strategy composition step: switch to the strategy behind Q upon reaching
/// (side O) or stopping at (side E) color c. `side` is the player the color c
/// is treated as belonging to.
Enforcement enf_merge(Player side, const Enforcement& p, int c, const Enforcement& q);

/// Debug rendering {colorName|->rank, ...}; not a persistence format.
std::string to_string(const Enforcement& p);

/// Rank bound and palette size of an enforcement universe of (d+1)^k points.
struct EnfParams {
    int d = 1;
    int k = 1;

    /// (d+1)^k, guarded against desk-scale overflow.
    uint64_t universe_size() const;
    bool operator==(const EnfParams&) const = default;
};

uint64_t enf_index(const Enforcement& p, const EnfParams& params);
Enforcement enf_from_index(uint64_t index, const EnfParams& params);

/// Up-closed set of enforcements stored as a dense bit vector over the
/// (d+1)^k mixed-radix indices. Constructors enforce up-closure.
class EnforcementSet {
  public:
    explicit EnforcementSet(const EnfParams& params);

    static EnforcementSet up_closure(const std::vector<Enforcement>& seeds,
                                     const EnfParams& params);

    const EnfParams& params() const { return params_; }
    bool contains(const Enforcement& p) const;
    bool contains_index(uint64_t index) const;
    uint64_t count() const;
    bool empty() const;

    /// Inserts the upward cone of p.
    void insert_up(const Enforcement& p);
    /// Raw single-index insert; the caller must keep the set up-closed.
    void set_index(uint64_t i) { set_bit(i); }
    void union_with(const EnforcementSet& other);
    void intersect_with(const EnforcementSet& other);

    bool is_up_closed() const;
    std::vector<Enforcement> members() const;
    /// Members with no strictly [=-smaller member.
    std::vector<Enforcement> minimal_elements() const;

    bool operator==(const EnforcementSet&) const = default;

  private:
    friend void close_upward(EnforcementSet& set);
    EnfParams params_;
    std::vector<uint64_t> bits_;
    void set_bit(uint64_t i) { bits_[i >> 6] |= uint64_t{1} << (i & 63); }
    bool get_bit(uint64_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }
};

/// Closes a raw member set upward under [= in place.
void close_upward(EnforcementSet& set);

/// Removes non-minimal elements (and duplicates) from a candidate antichain.
std::vector<Enforcement> prune_antichain(std::vector<Enforcement> candidates);

}  // namespace pgtd
