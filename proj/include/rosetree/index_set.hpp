#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rosetree/branch.hpp"
#include "rosetree/node.hpp"

namespace rosetree {

enum class TriBool { No, Yes, Unknown };

std::string tribool_str(TriBool v);

enum class ShapeKind { Chain, IncrAntichain, DecrAntichain };

std::string shape_kind_str(ShapeKind k);

// One infinite convergence shape: the full chain of initial segments of the
// branch, or the canonical monotone antichain converging to it from the left
// (increasing) or from the right (decreasing).
struct ShapeComponent {
    ShapeKind kind;
    Branch branch;

    bool operator==(const ShapeComponent& o) const {
        return kind == o.kind && branch == o.branch;
    }
};

// nodes of the canonical monotone antichain toward the branch: offshoots
// (sigma|m)~0 at the first `count` positions m with sigma(m)=1 when left,
// mirrored when right
std::vector<Node> monotone_antichain_nodes(const Branch& sigma, bool left, std::size_t count);

// A set of dyadic-tree nodes used to index a function family.  Either a
// symbolic union of infinite shapes plus finitely many extra nodes, or an
// explicit finite node list with a depth bound.  Symbolic sets admit exact
// convergence answers; explicit lists are judged three-valued.
class IndexSet {
  public:
    static IndexSet symbolic(std::vector<ShapeComponent> components,
                             std::vector<Node> extras = {});
    static IndexSet explicit_list(std::vector<Node> nodes, std::size_t depth_bound);

    // entries separated by ';' or newlines: "chain <branch>", "incr <branch>",
    // "decr <branch>", "node <bits>".  A set with only node entries is an
    // explicit list (depth bound defaults to the longest node).
    static IndexSet parse(const std::string& text,
                          std::optional<std::size_t> explicit_depth = std::nullopt);

    bool is_symbolic() const { return symbolic_; }
    const std::vector<ShapeComponent>& components() const { return components_; }
    const std::vector<Node>& extras() const { return extras_; }
    const std::vector<Node>& explicit_nodes() const { return extras_; }
    std::size_t depth_bound() const { return depth_bound_; }

    // all nodes of the set with length <= depth, ordered by canonical_index,
    // duplicates (shape overlaps) removed
    std::vector<Node> enumerate(std::size_t depth) const;

    std::string str() const;

    bool operator==(const IndexSet& o) const;

  private:
    IndexSet() = default;
    bool symbolic_ = false;
    std::vector<ShapeComponent> components_;
    std::vector<Node> extras_; // finite extras when symbolic, the list when explicit
    std::size_t depth_bound_ = 0;
};

// nodes contributed by one shape up to the length bound
std::vector<Node> enumerate_component(const ShapeComponent& c, std::size_t depth);

// How the set sits against branch limits.  For symbolic sets every field is
// exact; explicit lists may leave fields Unknown.
struct ConvergenceProfile {
    std::optional<Branch> target;  // common limit of all infinite shapes, if one exists
    TriBool has_chain = TriBool::Unknown;          // infinitely many nodes on the target chain
    TriBool has_left = TriBool::Unknown;           // an infinite part strictly lex-below the target
    TriBool has_right = TriBool::Unknown;          // an infinite part strictly lex-above the target
    TriBool orthogonal_to_all = TriBool::Unknown;  // meets every chain finitely
    TriBool multi_target = TriBool::Unknown;       // infinite parts with two distinct limits
};

ConvergenceProfile profile(const IndexSet& set);

// Does the set converge to sigma (every cylinder around sigma eventually
// swallows it)?  Exact for symbolic sets; bounded-depth judgement otherwise.
TriBool converges_to(const IndexSet& set, const Branch& sigma, std::size_t depth);

} // namespace rosetree
