#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rosetree/branch.hpp"
#include "rosetree/node.hpp"

namespace rosetree {

class ExplicitSubtree;

// Finite recipe for a level-regular dyadic subtree: a root plus per-level word
// pairs.  The image of t~0 appends the level's 0-word to the image of t, and
// likewise for 1.  Words of one pair share a length, the 0-word starts with 0
// and the 1-word with 1, which makes the map preserve both extension and lex
// order.  The pair list is used cyclically, so images of arbitrarily deep
// nodes — and of eventually periodic branches — are defined.
class SubtreeGenerator {
  public:
    SubtreeGenerator(Node root, std::vector<std::pair<Node, Node>> pairs);

    // first line "root=<bits>", then one "<w0>,<w1>" line per level
    static SubtreeGenerator parse(const std::string& text);

    const Node& root() const { return root_; }
    const std::vector<std::pair<Node, Node>>& level_pairs() const { return pairs_; }
    const std::pair<Node, Node>& pair_at(std::size_t level) const {
        return pairs_[level % pairs_.size()];
    }

    Node apply(const Node& t) const;
    Branch image_branch(const Branch& sigma) const;
    ExplicitSubtree materialize(std::size_t depth) const;

    std::string str() const;

  private:
    Node root_;
    std::vector<std::pair<Node, Node>> pairs_;
};

// A finite dyadic-subtree table: every node of the full tree up to some depth
// mapped to its image.  This is the common currency for validation, relative
// operations and composition; generators materialize into it.
class ExplicitSubtree {
  public:
    explicit ExplicitSubtree(std::map<Node, Node> table);

    // lines "<domain-bits> -> <image-bits>"; empty domain side is the root
    static ExplicitSubtree parse(const std::string& text);

    std::size_t depth() const { return depth_; }
    const std::map<Node, Node>& table() const { return table_; }
    Node apply(const Node& t) const;               // errors when t is absent
    bool in_image(const Node& s) const;
    std::vector<Node> image() const;               // all image nodes

    // level alignment plus extension- and lex-order preservation, checked
    // over every pair in the table; returns the first reason when not regular
    bool is_regular_dyadic(std::string* why = nullptr) const;
    void validate_regular_dyadic() const;          // throws with the reason

    std::string str() const;

  private:
    std::map<Node, Node> table_;
    std::size_t depth_ = 0;
};

// t |-> outer(inner(t)); inner's images must stay within outer's table depth
ExplicitSubtree compose(const ExplicitSubtree& inner, const ExplicitSubtree& outer);

// Relative operations against an arbitrary finite node set T (viewed as a
// subtree of the full dyadic tree).
std::size_t relative_length(const Node& t, const std::vector<Node>& T);
// the deepest member of T that is an initial segment of both arguments
Node relative_meet(const Node& a, const Node& b, const std::vector<Node>& T);

// Successor-count code of a pruned skew tree: per relative level, in lex
// order, how many immediate successors each node has (1 or 2, at most one 2
// per level).  Two trees with equal codes are order-isomorphic for extension
// and lex order at once.
struct SkewCode {
    std::vector<std::vector<int>> levels;

    bool operator==(const SkewCode& o) const { return levels == o.levels; }
    std::string str() const; // "(2); (1,1); ..."
};

SkewCode skew_code(const std::vector<Node>& tree);

} // namespace rosetree
