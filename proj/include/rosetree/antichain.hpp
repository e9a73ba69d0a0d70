#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rosetree/node.hpp"
#include "rosetree/subtree.hpp"

namespace rosetree {

// Relative view of a tree: the full dyadic tree by default, or an explicit
// node set carrying its own lengths and meets.
class TreeView {
  public:
    TreeView() = default;
    explicit TreeView(const std::vector<Node>* nodes) : nodes_(nodes) {}

    bool full() const { return nodes_ == nullptr; }
    std::size_t len(const Node& t) const {
        return nodes_ ? relative_length(t, *nodes_) : t.length();
    }
    Node meet_in(const Node& a, const Node& b) const {
        return nodes_ ? relative_meet(a, b, *nodes_) : meet(a, b);
    }

  private:
    const std::vector<Node>* nodes_ = nullptr;
};

enum class AntichainKind { Increasing, Decreasing, Neither };

std::string antichain_kind_str(AntichainKind k);

// Monotone means: relative lengths strictly increase, later pairs never meet
// below an earlier node's level, and the lex direction is uniform (increasing
// antichains run left to right, decreasing ones right to left).
AntichainKind classify_antichain(const std::vector<Node>& seq, const TreeView& T = {});

// Longest monotone subsequence, in listed order.  Exhaustive below 16
// elements, a search pipeline above.  kind is Neither only when not even a
// two-element monotone subsequence exists.
struct MonotoneExtraction {
    AntichainKind kind = AntichainKind::Neither;
    std::vector<std::size_t> indices; // positions in the input
    std::vector<Node> nodes;
};

MonotoneExtraction extract_monotone(const std::vector<Node>& seq, const TreeView& T = {});

// Longest prefix of the limit branch determined by a monotone antichain.
// With two elements only their meet is forced.  From three on, the meet
// condition on the triple (last-1, last, next) pins the limit to agree with
// the last element through the second-to-last element's level.
struct AntichainLimit {
    Node prefix;
    AntichainKind kind;
};

AntichainLimit antichain_limit(const std::vector<Node>& seq, const TreeView& T = {});

// Skew subtree with one splitting node per level, kept as lex-sorted level
// lists; level n holds exactly n+1 nodes.  In the increasing kind the
// splitting node is the lex-maximum of its level, in the decreasing kind the
// lex-minimum.
struct SkewSubtree {
    bool increasing = true;
    std::vector<std::vector<Node>> levels;

    void validate(const TreeView& T = {}) const; // throws when malformed
    std::vector<Node> node_set() const;
    std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
};

// second-from-top element of each level >= 1; an increasing antichain for
// increasing subtrees
std::vector<Node> phi(const SkewSubtree& S);
// second-from-bottom element of each level >= 1; a decreasing antichain for
// decreasing subtrees
std::vector<Node> psi(const SkewSubtree& S);

// Rebuild a subtree from a monotone antichain so that phi (resp. psi) returns
// the sequence again except for its final term.  Free extension choices take
// the lex-least admissible node.
SkewSubtree inverse_phi(const std::vector<Node>& seq);
SkewSubtree inverse_psi(const std::vector<Node>& seq);

} // namespace rosetree
