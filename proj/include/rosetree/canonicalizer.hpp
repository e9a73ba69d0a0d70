#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rosetree/branch.hpp"
#include "rosetree/node.hpp"
#include "rosetree/prototypes.hpp"
#include "rosetree/rational.hpp"

namespace rosetree {

// Evaluates one family member at one point of the (two-copy) target space.
using FamilyEvaluator = std::function<Rat(const Node&, const Point&)>;

FamilyEvaluator prototype_evaluator(int id);

enum class Side { Left, Right };

// Offshoot nodes marking where the branch takes the bit the side flips:
// left offshoots (sigma|m)^0 where sigma(m)=1, right offshoots (sigma|m)^1
// where sigma(m)=0, positions ascending from m=1.  Throws side_unavailable
// when the period never shows the needed bit.
std::vector<Node> canonical_monotone_antichain(const Branch& sigma, Side side,
                                               std::size_t count);

// Settled values of a family along the level chain of sigma (g0) and along
// its two canonical antichains (gplus / gminus), one entry per grid point.
// Residuals bound how much the inspected tail still moved; an exactly
// extrapolated tail reports zero.  A missing side copies the chain vector.
struct LimitTriple {
    Branch sigma = Branch(Node(), Node::parse("0"));
    std::vector<Rat> g0, gplus, gminus;
    Rat r0 = 0, rplus = 0, rminus = 0;
    bool left_ok = true, right_ok = true;
};

LimitTriple limit_triple(const FamilyEvaluator& fam, const Branch& sigma,
                         const std::vector<Point>& points,
                         std::pair<std::size_t, std::size_t> window, const Rat& tol);

// Which of the three vector equalities held at every sample, plus the two
// cross-sample facts the decision tree needs.
struct EqualityPattern {
    bool g0_varies = false;      // chain limits differ between samples
    bool eq_chain_plus = false;  // g0 == g+ at every sample
    bool eq_chain_minus = false; // g0 == g- at every sample
    bool eq_plus_minus = false;  // g+ == g- at every sample
    bool gpm_constant = false;   // one fixed vector serves every g+ and g-
};

std::string pattern_str(const EqualityPattern& p);

struct Classification {
    bool conclusive = false;
    int id = 0;
    EqualityPattern pattern;
    std::vector<LimitTriple> triples;
    std::size_t transport_used = 0;
    std::string note; // filled when inconclusive
};

// Decide which prototype a black-box family follows by comparing its limit
// triples across >= 3 sample branches.  The caller's grid is extended with
// every sample branch and its image under the canonical embedding, since
// one-sided thresholds differ only at the embedded branch itself; a family
// reached through some further transport needs its own threshold branches
// present in `grid`.  Disagreeing or unsettled samples are retried through
// up to `subtree_budget` deterministic subtree transports before giving up.
// A retry composes a fresh transport onto the family, so any caller-supplied
// threshold branches stop matching it: a conclusive answer with
// transport_used > 0 is only guaranteed for families that needed no grid
// augmentation in the first place.  (The evidence available here cannot
// distinguish "raw family that settles after a transport" from "hidden
// transport whose thresholds just left the grid" — both look identical
// pointwise, so the caveat is inherent, not an implementation gap.)
Classification classify(const FamilyEvaluator& fam, const std::vector<Branch>& sigma_samples,
                        const std::vector<Branch>& grid,
                        std::pair<std::size_t, std::size_t> window, const Rat& tol,
                        std::size_t subtree_budget);

} // namespace rosetree
