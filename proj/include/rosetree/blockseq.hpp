#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rosetree/node.hpp"

namespace rosetree {

// A strictly increasing finite sequence of naturals, read both as a sequence
// and as a finite set.  The empty sequence stands for the tree root only;
// every block of a block sequence is nonempty.
class FinSeq {
  public:
    FinSeq() = default;
    explicit FinSeq(std::vector<unsigned> values);  // must be strictly increasing

    // comma-separated naturals, "0,2,5"; empty text is the empty sequence
    static FinSeq parse(const std::string& text);

    const std::vector<unsigned>& values() const { return values_; }
    bool empty() const { return values_.empty(); }
    std::size_t size() const { return values_.size(); }
    unsigned front() const;
    unsigned back() const;

    // concatenation with a wholly greater sequence; anything else is an error
    FinSeq unite(const FinSeq& later) const;

    bool prefix_of(const FinSeq& other) const;  // non-strict

    bool operator==(const FinSeq& o) const { return values_ == o.values_; }
    bool operator!=(const FinSeq& o) const { return !(*this == o); }
    bool operator<(const FinSeq& o) const { return values_ < o.values_; }  // container order

    std::string str() const;

  private:
    std::vector<unsigned> values_;
};

// A finite block sequence: nonempty increasing sequences with each block
// entirely below the next.  Prefixes of a block sequence are block sequences.
class BlockSeq {
  public:
    BlockSeq() = default;
    explicit BlockSeq(std::vector<FinSeq> blocks);

    // one FinSeq per line; blank lines ignored
    static BlockSeq parse(const std::string& text);
    static BlockSeq singletons(std::size_t count);  // blocks {0}, {1}, ..., {count-1}

    const std::vector<FinSeq>& blocks() const { return blocks_; }
    std::size_t size() const { return blocks_.size(); }
    const FinSeq& block(std::size_t n) const;
    BlockSeq prefix(std::size_t count) const;

    std::string str() const;

  private:
    std::vector<FinSeq> blocks_;
};

// The unique index set F with s equal to the union of the blocks b_n, n in F,
// if one exists.  Blockness makes the decomposition unique.
std::optional<std::vector<std::size_t>> span_member(const BlockSeq& b, const FinSeq& s);

// i_n = b_0 u ... u b_n, one term per block: the chain the block sequence spans.
std::vector<FinSeq> chain_map(const BlockSeq& b);

// i_{3n} u b_{3n+2}: an antichain converging to the union branch; emitting
// k+1 terms takes 3k+3 blocks.
std::vector<FinSeq> antichain_map(const BlockSeq& b);

// The dyadic family over b: beta_e = (), beta_(0) = (b0,b1,b2), beta_(1) =
// (b0,b2); a child of s appends three or two further blocks after the last
// used index when s ends with 0, four or three when s ends with 1.  Keeps
// |beta_s| = 0 mod 3 after a 0 and = 2 mod 3 after a 1, which is what parks
// the union of beta_{s~1} on an antichain-map term of every extension.
std::vector<FinSeq> beta(const Node& s, const BlockSeq& b);

// union of the beta blocks, the empty sequence for the root
FinSeq beta_union(const Node& s, const BlockSeq& b);

// Checks that the union of beta_{s~1} is an antichain-map term of block
// sequences starting with beta_{s~0}: the canonical single-block extension
// plus `samples` seeded random extensions by small unions with gaps.
bool verify_c3(const Node& s, const BlockSeq& b, std::size_t samples);

// Longest-common-proper-prefix fan test: reports the stem and the entries
// right after it when those strictly increase in listed order.
std::optional<std::pair<FinSeq, std::vector<unsigned>>> is_fan(
    const std::vector<FinSeq>& seq);

// Minimal length-n witnesses t_0..t_k with every member extending some t_i:
// exactly the distinct length-n prefixes.  Absent when a member is shorter
// than n and so cannot extend any witness.
std::optional<std::vector<FinSeq>> dominated(const std::vector<FinSeq>& members,
                                             std::size_t n);

} // namespace rosetree
