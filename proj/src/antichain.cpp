#include "rosetree/antichain.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "rosetree/errors.hpp"

namespace rosetree {

std::string antichain_kind_str(AntichainKind k) {
    switch (k) {
    case AntichainKind::Increasing: return "increasing";
    case AntichainKind::Decreasing: return "decreasing";
    case AntichainKind::Neither: return "neither";
    }
    return "?";
}

namespace {

void require_antichain(const std::vector<Node>& seq) {
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] == seq[j] || is_initial_segment(seq[i], seq[j]) ||
                is_initial_segment(seq[j], seq[i]))
                throw not_antichain_error("elements " + std::to_string(i) + " and " +
                                          std::to_string(j) + " are comparable");
}

// Pair tables for one sequence: relative lengths, meet lengths, lex direction.
struct PairData {
    std::vector<std::size_t> len;
    std::vector<std::vector<std::size_t>> meet_len;
    std::vector<std::vector<bool>> lex_lt; // lex_lt[i][j] <=> seq[i] before seq[j]

    PairData(const std::vector<Node>& seq, const TreeView& T) {
        const std::size_t n = seq.size();
        len.resize(n);
        for (std::size_t i = 0; i < n; ++i) len[i] = T.len(seq[i]);
        meet_len.assign(n, std::vector<std::size_t>(n, 0));
        lex_lt.assign(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                std::size_t m = T.len(T.meet_in(seq[i], seq[j]));
                meet_len[i][j] = meet_len[j][i] = m;
                bool lt = lex_less(seq[i], seq[j]);
                lex_lt[i][j] = lt;
                lex_lt[j][i] = !lt;
            }
    }
};

// Monotonicity of the subsequence picked by `idx` (listed order).
AntichainKind classify_indices(const PairData& pd, const std::vector<std::size_t>& idx) {
    const std::size_t k = idx.size();
    bool incr = true, decr = true;
    for (std::size_t a = 0; a + 1 < k; ++a) {
        if (pd.len[idx[a]] >= pd.len[idx[a + 1]]) return AntichainKind::Neither;
        for (std::size_t b = a + 1; b < k; ++b) {
            if (pd.lex_lt[idx[a]][idx[b]]) decr = false;
            else incr = false;
        }
    }
    for (std::size_t a = 0; a + 2 < k; ++a)
        for (std::size_t b = a + 1; b + 1 < k; ++b)
            for (std::size_t c = b + 1; c < k; ++c)
                if (pd.len[idx[a]] > pd.meet_len[idx[b]][idx[c]]) return AntichainKind::Neither;
    if (incr) return AntichainKind::Increasing;
    if (decr) return AntichainKind::Decreasing;
    return AntichainKind::Neither;
}

} // namespace

AntichainKind classify_antichain(const std::vector<Node>& seq, const TreeView& T) {
    if (seq.size() < 2) throw too_short_error("need at least 2 antichain elements");
    require_antichain(seq);
    PairData pd(seq, T);
    std::vector<std::size_t> all(seq.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return classify_indices(pd, all);
}

namespace {

bool subseq_monotone(const PairData& pd, const std::vector<std::size_t>& idx) {
    return idx.size() < 2 || classify_indices(pd, idx) != AntichainKind::Neither;
}

std::vector<std::size_t> mask_indices(std::uint32_t mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; mask; ++i, mask >>= 1)
        if (mask & 1u) idx.push_back(i);
    return idx;
}

std::vector<std::size_t> extract_exhaustive(const PairData& pd, std::size_t n) {
    std::vector<std::size_t> best{0};
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (std::popcount(mask) <= (int)best.size()) continue;
        std::vector<std::size_t> idx = mask_indices(mask);
        if (subseq_monotone(pd, idx)) best = std::move(idx);
    }
    return best;
}

// Left-to-right filter: keep an element when it preserves monotonicity with
// everything kept so far.
std::vector<std::size_t> greedy_filter(const PairData& pd, const std::vector<std::size_t>& cand) {
    std::vector<std::size_t> kept;
    for (std::size_t i : cand) {
        kept.push_back(i);
        if (!subseq_monotone(pd, kept)) kept.pop_back();
    }
    return kept;
}

// Longest subsequence with strictly increasing lengths and a fixed lex
// direction; the level-meet condition is restored by the caller's filter.
std::vector<std::size_t> lis_by_direction(const PairData& pd, std::size_t n, bool incr) {
    std::vector<std::size_t> bestlen(n, 1), prev(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            bool ok = pd.len[i] < pd.len[j] && (incr ? pd.lex_lt[i][j] : pd.lex_lt[j][i]);
            if (ok && bestlen[i] + 1 > bestlen[j]) {
                bestlen[j] = bestlen[i] + 1;
                prev[j] = i;
            }
        }
    std::size_t end = 0;
    for (std::size_t j = 0; j < n; ++j)
        if (bestlen[j] > bestlen[end]) end = j;
    std::vector<std::size_t> idx;
    for (std::size_t j = end; j != n; j = prev[j]) idx.push_back(j);
    std::reverse(idx.begin(), idx.end());
    return idx;
}

std::vector<std::size_t> extract_pipeline(const PairData& pd, std::size_t n) {
    std::vector<std::size_t> best{0};
    auto consider = [&](std::vector<std::size_t> idx) {
        if (idx.size() > best.size()) best = std::move(idx);
    };
    consider(greedy_filter(pd, lis_by_direction(pd, n, true)));
    consider(greedy_filter(pd, lis_by_direction(pd, n, false)));

    // Quadruple sweep: any valid 4-subset, greedily extended to the right,
    // then refiltered over the whole sequence ordered around it.
    std::size_t budget = 512;
    for (std::size_t a = 0; a < n && budget; ++a)
        for (std::size_t b = a + 1; b < n && budget; ++b)
            for (std::size_t c = b + 1; c < n && budget; ++c)
                for (std::size_t d = c + 1; d < n && budget; ++d) {
                    std::vector<std::size_t> idx{a, b, c, d};
                    if (!subseq_monotone(pd, idx)) continue;
                    --budget;
                    for (std::size_t e = d + 1; e < n; ++e) {
                        idx.push_back(e);
                        if (!subseq_monotone(pd, idx)) idx.pop_back();
                    }
                    consider(std::move(idx));
                }
    return best;
}

} // namespace

MonotoneExtraction extract_monotone(const std::vector<Node>& seq, const TreeView& T) {
    if (seq.size() < 3) throw too_short_error("need at least 3 antichain elements");
    require_antichain(seq);
    PairData pd(seq, T);
    const std::size_t n = seq.size();
    std::vector<std::size_t> best =
        n <= 15 ? extract_exhaustive(pd, n) : extract_pipeline(pd, n);
    if (best.size() < 2) {
        // any incomparable pair with distinct lengths is monotone
        for (std::size_t i = 0; i < n && best.size() < 2; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (pd.len[i] < pd.len[j]) {
                    best = {i, j};
                    break;
                }
    }
    MonotoneExtraction out;
    out.indices = best;
    for (std::size_t i : best) out.nodes.push_back(seq[i]);
    out.kind = best.size() >= 2 ? classify_indices(pd, best) : AntichainKind::Neither;
    return out;
}

AntichainLimit antichain_limit(const std::vector<Node>& seq, const TreeView& T) {
    AntichainKind kind = classify_antichain(seq, T);
    if (kind == AntichainKind::Neither)
        throw not_monotone_error("limit requires a monotone antichain");
    const Node& last = seq.back();
    if (seq.size() == 2) return AntichainLimit{T.meet_in(seq[0], last), kind};
    // Any continuation meets the last element at or above the second-to-last
    // level, so the limit runs along the last element down to that level.
    std::size_t want = T.len(seq[seq.size() - 2]);
    if (T.full()) return AntichainLimit{last.prefix(want), kind};
    // relative case: the ancestor of `last` inside T at relative length `want`
    Node at = last;
    for (std::size_t l = 0; l <= last.length(); ++l) {
        Node cand = last.prefix(l);
        try {
            if (T.len(cand) == want) {
                at = cand;
                break;
            }
        } catch (const not_in_subtree_error&) { // prefix not a member of T
        }
    }
    return AntichainLimit{at, kind};
}

void SkewSubtree::validate(const TreeView& T) const {
    if (levels.empty()) throw not_skew_error("no levels");
    for (std::size_t n = 0; n < levels.size(); ++n) {
        const auto& lv = levels[n];
        if (lv.size() != n + 1)
            throw not_skew_error("level " + std::to_string(n) + " has " +
                                 std::to_string(lv.size()) + " nodes, expected " +
                                 std::to_string(n + 1));
        std::size_t want = T.len(lv[0]);
        if (n > 0 && want <= T.len(levels[n - 1][0]))
            throw not_skew_error("levels must strictly deepen");
        for (const Node& t : lv)
            if (T.len(t) != want) throw not_skew_error("level " + std::to_string(n) +
                                                       " is not length aligned");
        for (std::size_t i = 0; i + 1 < lv.size(); ++i) {
            bool sorted = false;
            try {
                sorted = lex_less(lv[i], lv[i + 1]);
            } catch (const comparable_nodes_error&) {
                throw not_skew_error("level " + std::to_string(n) + " holds comparable nodes");
            }
            if (!sorted) throw not_skew_error("level " + std::to_string(n) + " not sorted");
        }
    }
    for (std::size_t n = 0; n + 1 < levels.size(); ++n) {
        std::vector<std::size_t> children(levels[n].size(), 0);
        for (const Node& child : levels[n + 1]) {
            std::size_t parent = levels[n].size();
            for (std::size_t i = 0; i < levels[n].size(); ++i)
                if (is_initial_segment(levels[n][i], child)) parent = i;
            if (parent == levels[n].size())
                throw not_skew_error("node " + child.str() + " has no parent in level " +
                                     std::to_string(n));
            ++children[parent];
        }
        std::size_t split = levels[n].size();
        for (std::size_t i = 0; i < children.size(); ++i) {
            if (children[i] == 0) throw not_skew_error("unextended node at level " +
                                                       std::to_string(n));
            if (children[i] > 2) throw not_skew_error("node splits more than once");
            if (children[i] == 2) {
                if (split != levels[n].size())
                    throw not_skew_error("two splitting nodes at level " + std::to_string(n));
                split = i;
            }
        }
        if (split == levels[n].size())
            throw not_skew_error("no splitting node at level " + std::to_string(n));
        std::size_t want = increasing ? levels[n].size() - 1 : 0;
        if (split != want)
            throw not_skew_error(std::string("splitting node must be the lex ") +
                                 (increasing ? "maximum" : "minimum"));
    }
}

std::vector<Node> SkewSubtree::node_set() const {
    std::vector<Node> out;
    for (const auto& lv : levels) out.insert(out.end(), lv.begin(), lv.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Node> phi(const SkewSubtree& S) {
    if (!S.increasing) throw not_skew_error("phi reads increasing subtrees");
    S.validate();
    std::vector<Node> out;
    for (std::size_t n = 1; n < S.levels.size(); ++n)
        out.push_back(S.levels[n][n - 1]); // second from the top
    return out;
}

std::vector<Node> psi(const SkewSubtree& S) {
    if (S.increasing) throw not_skew_error("psi reads decreasing subtrees");
    S.validate();
    std::vector<Node> out;
    for (std::size_t n = 1; n < S.levels.size(); ++n)
        out.push_back(S.levels[n][1]); // second from the bottom
    return out;
}

namespace {

SkewSubtree rebuild_from_antichain(const std::vector<Node>& seq, bool increasing) {
    if (seq.size() < 3) throw too_short_error("need at least 3 antichain elements");
    AntichainKind want = increasing ? AntichainKind::Increasing : AntichainKind::Decreasing;
    if (classify_antichain(seq) != want)
        throw not_monotone_error(std::string("sequence is not an ") +
                                 (increasing ? "increasing" : "decreasing") + " antichain");

    // c_n' = the ancestor of t_n at the previous term's length: it sits below
    // the meet of t_{n-1} and t_n, extends the previous splitting node, and
    // carries the next split.
    const std::size_t N = seq.size();
    std::vector<Node> carry(N); // carry[n] valid for n >= 1
    for (std::size_t n = 1; n < N; ++n) carry[n] = seq[n].prefix(seq[n - 1].length());

    SkewSubtree S;
    S.increasing = increasing;
    S.levels.push_back({meet(seq[0], seq[1])});
    for (std::size_t n = 1; n < N; ++n) {
        const std::vector<Node>& prev = S.levels.back();
        std::vector<Node> lv;
        const std::size_t target = seq[n - 1].length();
        // everything except the old splitting node extends straight down
        for (std::size_t i = 0; i < prev.size(); ++i) {
            bool old_split = increasing ? (i + 1 == prev.size()) : (i == 0);
            if (old_split) continue;
            Node t = prev[i];
            while (t.length() < target) t = t.append(increasing ? 0 : 1);
            lv.push_back(t);
        }
        lv.push_back(seq[n - 1]);
        lv.push_back(carry[n]);
        std::sort(lv.begin(), lv.end(),
                  [](const Node& a, const Node& b) { return lex_less(a, b); });
        S.levels.push_back(std::move(lv));
    }
    S.validate();
    return S;
}

} // namespace

SkewSubtree inverse_phi(const std::vector<Node>& seq) { return rebuild_from_antichain(seq, true); }

SkewSubtree inverse_psi(const std::vector<Node>& seq) { return rebuild_from_antichain(seq, false); }

} // namespace rosetree
