#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rosetree/branch.hpp"
#include "rosetree/index_set.hpp"
#include "rosetree/node.hpp"
#include "rosetree/rational.hpp"
#include "rosetree/subtree.hpp"

namespace rosetree {

// Evaluation point: a branch of the full tree, tagged with the copy (1 or 2)
// for families living on two disjoint copies of the Cantor set.  Single-copy
// functions ignore the tag.
struct Point {
    int copy = 1;
    Branch tau;
};

// The padded subtree routing families 2, 3, 4 and 7: root at the empty node,
// every level splits by the words 001 / 101.  Since each word contains both
// bits, distinct image nodes have distinct 0-fills and 1-fills, and the
// padding bit pattern makes s~0^inf approach the image branch through s from
// the left and s~1^inf from the right.
const SubtreeGenerator& q_subtree();

// A pointwise limit (or a family member) in closed form.  Evaluation at any
// point is an exact rational; equality is semantic, via normal().
class LimitFunction {
  public:
    enum class Kind {
        Zero,             // constant 0
        Dirac,            // 1 exactly at sigma
        XPlus,            // 1 iff sigma lex-<= tau
        XMinus,           // 1 iff sigma lex-< tau
        ConstReal,        // constant, the binary value of sigma
        ScaledIndicator,  // 1/(|t|+1) on the cylinder above t
        Indicator,        // 1 on the cylinder above t
        Pair,             // one function per copy
        Member,           // the id-th family at node t
    };

    static LimitFunction zero();
    static LimitFunction dirac(Branch sigma);
    static LimitFunction xplus(Branch sigma);
    static LimitFunction xminus(Branch sigma);
    static LimitFunction const_real(Branch sigma);
    static LimitFunction scaled_indicator(Node t);
    static LimitFunction indicator(Node t);
    static LimitFunction pair(LimitFunction first, LimitFunction second);
    static LimitFunction member(int id, Node t);

    Kind kind() const { return kind_; }
    const Branch& sigma() const;  // Dirac / XPlus / XMinus / ConstReal
    const Node& node() const;     // ScaledIndicator / Indicator / Member
    int member_id() const;        // Member
    const LimitFunction& first() const;   // Pair
    const LimitFunction& second() const;  // Pair

    Rat eval(const Point& p) const;
    Rat eval(const Branch& tau) const { return eval(Point{1, tau}); }

    // Canonical form: collapses every identification the binary-value and
    // lex conventions create (empty / full threshold sets, adjacent binary
    // expansions, constant 0 and 1, equal components of a pair, and family
    // members expanded to their closed forms).
    LimitFunction normal() const;

    bool operator==(const LimitFunction& o) const;
    bool operator!=(const LimitFunction& o) const { return !(*this == o); }

    std::string str() const;

  private:
    LimitFunction() = default;
    Kind kind_ = Kind::Zero;
    std::optional<Branch> sigma_;
    std::optional<Node> node_;
    int id_ = 0;
    std::vector<LimitFunction> kids_;  // two entries when Pair

    bool same_shape(const LimitFunction& o) const;
};

// d^i_t at p.  Families 2,3,4,7 route t through the padded subtree.
Rat family_eval(int id, const Node& t, const Point& p);
Rat family_eval(int id, const Node& t, const Branch& tau);

enum class Verdict { Convergent, Divergent, Unknown };

std::string verdict_str(Verdict v);

// Two disjoint parts of the index set whose tails settle on different limits.
struct DivergenceWitness {
    IndexSet part_a;
    IndexSet part_b;
    LimitFunction limit_a;
    LimitFunction limit_b;
};

struct MembershipResult {
    Verdict verdict = Verdict::Unknown;
    std::optional<LimitFunction> limit;       // when Convergent
    std::optional<DivergenceWitness> witness;  // when Divergent
};

// Pointwise limit of the id-th family along one infinite shape.
LimitFunction component_limit(int id, const ShapeComponent& c);

// Does (d^id_t) for t in L converge pointwise?  Symbolic sets are decided
// exactly: the family converges along each infinite shape, so the union
// converges precisely when all the shape limits agree.  Explicit lists are
// judged three-valued from their profile.
MembershipResult family_membership(int id, const IndexSet& L);

// Numeric cross-check: evaluates the family over a grid of points and
// estimates tail limits from the values alone.  The grid is augmented with
// the branches the set converges toward, their subtree images, and pairwise
// separator branches, so that disagreements have somewhere to show up.
struct NumericResult {
    Verdict verdict = Verdict::Unknown;
    std::vector<Point> points;  // augmented grid actually evaluated
    std::vector<Rat> limits;    // per point, when Convergent
    std::optional<std::size_t> witness;  // index into points, when Divergent
    Rat witness_gap = 0;
};

NumericResult numeric_convergence(int id, const IndexSet& L, const std::vector<Branch>& grid,
                                  std::size_t depth, const Rat& tol);

// prefix in {e, 0, 1, 01, 10} x period in {0, 1, 01}, deduplicated under the
// canonical form (10 distinct branches).
std::vector<Branch> default_grid();

// Nested-thirds interval family: a_e=0, b_e=1, the 0-child keeps the left
// third, the 1-child the right third.  Width at depth n is exactly 3^-n.
std::map<Node, std::pair<Rat, Rat>> helly_intervals(std::size_t depth);

// Step function of the interval at t: 1 right of it, 1/2 on it, 0 left of it.
// Requires 0 <= x <= 1.
Rat helly_eval(const Node& t, const Rat& x);

} // namespace rosetree
