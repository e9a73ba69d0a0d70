#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "rosetree/index_set.hpp"
#include "rosetree/prototypes.hpp"
#include "rosetree/subtree.hpp"

namespace rosetree {

// Answers membership questions for one indexed family.
using FamilyOracle = std::function<MembershipResult(const IndexSet&)>;

FamilyOracle prototype_oracle(int id);

// Outcome of comparing two families.  A distinction records the first
// battery element whose convergence class differs, with both verdicts.
struct EquivalenceVerdict {
    bool equivalent = true;
    std::optional<IndexSet> witness;
    Verdict left = Verdict::Unknown;
    Verdict right = Verdict::Unknown;
    std::size_t witness_index = 0;
};

// Families are compared by convergence class alone: along each index set of
// the battery either both subfamilies settle pointwise or both fail to.
// Limits themselves may legitimately differ between equivalent families.
// Throws oracle_unknown_error when either oracle cannot decide an element.
EquivalenceVerdict equivalent(const FamilyOracle& left, const FamilyOracle& right,
                              const std::vector<IndexSet>& battery);

// Rename an index set along a subtree embedding: chains follow the image
// branch, antichain shapes keep their side toward it, listed nodes map
// pointwise.
IndexSet transport(const IndexSet& L, const SubtreeGenerator& S);

// Shape templates over a pool of branches: each single shape, the two- and
// three-way same-branch unions, all cross-branch pairs, plus copies of
// everything with finite noise attached.  Pool branches must be distinct
// and use both bits infinitely often.
std::vector<IndexSet> standard_battery(const std::vector<Branch>& pool);

// The comparison criterion presupposes each family member is isolated among
// the limits of the others; that cannot be checked through the oracle
// interface, so reports carry it as a standing assumption.
inline constexpr const char* kIsolationAssumption =
    "family members assumed isolated within the family closure";

} // namespace rosetree
