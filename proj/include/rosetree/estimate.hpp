#pragma once

#include <cstddef>
#include <vector>

#include "rosetree/rational.hpp"

namespace rosetree {

// Exact tail analysis of a rational sequence.  Recognizes the decay patterns
// the node families actually produce -- eventually constant values, harmonic
// decay (affine reciprocals), block-geometric decay with a short residue
// period -- and falls back to a Cauchy bound at the given tolerance.
struct TailEstimate {
    enum class State { Limit, Oscillates, Unknown };
    State state = State::Unknown;
    Rat limit = 0;     // when state == Limit
    Rat residual = 0;  // 0 when the limit is exact
    bool exact = false;
    Rat alt = 0;  // a second recurring value, when state == Oscillates
};

// Largest residue period tried by the block-geometric detector.  Sequences
// driven by a longer period come back Unknown instead of wrong.
inline constexpr std::size_t kMaxResiduePeriod = 4;

TailEstimate estimate_tail(const std::vector<Rat>& values, const Rat& tol);

} // namespace rosetree
