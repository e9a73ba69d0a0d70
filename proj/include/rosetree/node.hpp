#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "rosetree/errors.hpp"

namespace rosetree {

// A finite 0/1 sequence, i.e. a node of the full dyadic tree.  The empty
// sequence is the root.  Values are immutable once built; every operation
// returns a fresh Node.
class Node {
  public:
    Node() = default;
    explicit Node(std::vector<uint8_t> bits);

    // Parses a string of '0'/'1' characters; "" is the root.
    static Node parse(const std::string& text);

    std::size_t length() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    uint8_t bit(std::size_t i) const;
    const std::vector<uint8_t>& bits() const { return bits_; }

    Node prefix(std::size_t len) const;        // initial segment of given length
    Node append(uint8_t bit) const;
    Node concat(const Node& tail) const;

    bool operator==(const Node& o) const { return bits_ == o.bits_; }
    bool operator!=(const Node& o) const { return bits_ != o.bits_; }
    // container ordering only (length, then bitwise); not the lex order below
    bool operator<(const Node& o) const;

    std::string str() const;                   // "" for the root

  private:
    std::vector<uint8_t> bits_;
};

// s is an initial segment of t (allowing s == t)
bool is_initial_segment(const Node& s, const Node& t);
// strict version: s is a proper initial segment of t
bool extends(const Node& t, const Node& s);

// longest common initial segment
Node meet(const Node& a, const Node& b);

// Order by first disagreement: a comes first when it continues with 0 where b
// continues with 1.  Undefined — and an error — when one node is an initial
// segment of the other (distinct nodes only; equal inputs also error).
bool lex_less(const Node& a, const Node& b);

// Level-then-lex position of the node in the full dyadic tree: the root is 0,
// level n occupies [2^n - 1, 2^(n+1) - 2] in lex order.
uint64_t canonical_index(const Node& t);

} // namespace rosetree
