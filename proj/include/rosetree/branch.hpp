#pragma once

#include <optional>
#include <string>

#include "rosetree/node.hpp"
#include "rosetree/rational.hpp"

namespace rosetree {

// An eventually periodic infinite 0/1 sequence: prefix followed by the period
// repeated forever.  Construction normalizes to the canonical form: the period
// is primitive (not a power of a shorter word) and the prefix is the shortest
// possible (its last bit never matches the last period bit, otherwise the
// boundary could rotate left).  Two branches are equal iff their canonical
// forms coincide.
class Branch {
  public:
    // period must be nonempty
    Branch(Node prefix, Node period);

    // "prefix*period", e.g. "01*0" or "*10"
    static Branch parse(const std::string& text);

    const Node& prefix_word() const { return prefix_; }
    const Node& period_word() const { return period_; }

    uint8_t bit(std::size_t i) const;
    Node prefix(std::size_t len) const;        // initial segment as a Node

    bool eventually_zero() const;
    bool eventually_one() const;
    bool eventually_constant() const { return eventually_zero() || eventually_one(); }
    // positions i with bit(i) == b, in increasing order (count of them)
    std::vector<std::size_t> positions_of(uint8_t b, std::size_t count) const;

    // value under the binary identification sum bit(i) / 2^(i+1)
    Rat value() const;

    bool operator==(const Branch& o) const;
    bool operator!=(const Branch& o) const { return !(*this == o); }
    bool operator<(const Branch& o) const;   // container ordering on canonical text

    std::string str() const;

  private:
    Node prefix_;
    Node period_;
};

// -1, 0, +1 by first disagreement; total because branches are infinite
int branch_cmp(const Branch& a, const Branch& b);

inline bool lex_less(const Branch& a, const Branch& b) { return branch_cmp(a, b) < 0; }
inline bool lex_leq(const Branch& a, const Branch& b) { return branch_cmp(a, b) <= 0; }

// longest common initial segment; errors when the branches are equal
Node meet(const Branch& a, const Branch& b);

// t is an initial segment of the branch
bool is_initial_segment(const Node& t, const Branch& b);

// Mixed lex order between a node and a branch; errors when the node is an
// initial segment of the branch (they are comparable, not lex-ordered).
bool lex_less(const Node& t, const Branch& b);
bool lex_less(const Branch& b, const Node& t);

// the all-b branch
Branch constant_branch(uint8_t b);
// t followed by b repeated forever
Branch node_then_constant(const Node& t, uint8_t b);

} // namespace rosetree
