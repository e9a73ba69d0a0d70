#include "rosetree/index_set.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace rosetree {

std::string tribool_str(TriBool v) {
    switch (v) {
        case TriBool::No: return "no";
        case TriBool::Yes: return "yes";
        default: return "unknown";
    }
}

std::string shape_kind_str(ShapeKind k) {
    switch (k) {
        case ShapeKind::Chain: return "chain";
        case ShapeKind::IncrAntichain: return "incr";
        default: return "decr";
    }
}

std::vector<Node> monotone_antichain_nodes(const Branch& sigma, bool left, std::size_t count) {
    // left offshoots replace a 1 by 0, so they sit lex-below sigma; mirrored
    // on the right.  Markers start at position 1: earlier offshoots would sit
    // directly under the root and carry no meet information.
    uint8_t marker = left ? 1 : 0;
    bool in_period = false;
    for (std::size_t i = 0; i < sigma.period_word().length(); ++i)
        if (sigma.period_word().bit(i) == marker) in_period = true;
    if (!in_period)
        throw side_unavailable_error(std::string("period of ") + sigma.str() + " has no " +
                                     (left ? "1" : "0"));
    std::vector<Node> out;
    out.reserve(count);
    std::size_t limit = sigma.prefix_word().length() +
                        sigma.period_word().length() * (count + 2) + 1;
    for (std::size_t m = 1; m < limit && out.size() < count; ++m)
        if (sigma.bit(m) == marker) out.push_back(sigma.prefix(m).append(left ? 0 : 1));
    return out;
}

IndexSet IndexSet::symbolic(std::vector<ShapeComponent> components, std::vector<Node> extras) {
    IndexSet s;
    s.symbolic_ = true;
    for (const auto& c : components) {
        bool dup = false;
        for (const auto& d : s.components_)
            if (c == d) dup = true;
        if (!dup) s.components_.push_back(c);
    }
    s.extras_ = std::move(extras);
    return s;
}

IndexSet IndexSet::explicit_list(std::vector<Node> nodes, std::size_t depth_bound) {
    IndexSet s;
    s.symbolic_ = false;
    s.extras_ = std::move(nodes);
    s.depth_bound_ = depth_bound;
    return s;
}

IndexSet IndexSet::parse(const std::string& text, std::optional<std::size_t> explicit_depth) {
    std::vector<ShapeComponent> comps;
    std::vector<Node> nodes;
    std::string entry;
    std::string normalized = text;
    std::replace(normalized.begin(), normalized.end(), '\n', ';');
    std::stringstream ss(normalized);
    while (std::getline(ss, entry, ';')) {
        // trim
        auto b = entry.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = entry.find_last_not_of(" \t\r");
        entry = entry.substr(b, e - b + 1);
        auto sp = entry.find_first_of(" \t");
        std::string head = sp == std::string::npos ? entry : entry.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : entry.substr(sp + 1);
        auto rb = rest.find_first_not_of(" \t");
        rest = rb == std::string::npos ? "" : rest.substr(rb);
        if (head == "chain")
            comps.push_back({ShapeKind::Chain, Branch::parse(rest)});
        else if (head == "incr")
            comps.push_back({ShapeKind::IncrAntichain, Branch::parse(rest)});
        else if (head == "decr")
            comps.push_back({ShapeKind::DecrAntichain, Branch::parse(rest)});
        else if (head == "node")
            nodes.push_back(Node::parse(rest));
        else
            throw parse_error("bad index-set entry: " + entry);
    }
    if (comps.empty() && !explicit_depth.has_value() && nodes.empty())
        throw parse_error("empty index set");
    if (comps.empty()) {
        std::size_t depth = 0;
        for (const auto& n : nodes) depth = std::max(depth, n.length());
        return explicit_list(std::move(nodes), explicit_depth.value_or(depth));
    }
    return symbolic(std::move(comps), std::move(nodes));
}

std::vector<Node> enumerate_component(const ShapeComponent& c, std::size_t depth) {
    std::vector<Node> out;
    if (c.kind == ShapeKind::Chain) {
        for (std::size_t n = 0; n <= depth; ++n) out.push_back(c.branch.prefix(n));
        return out;
    }
    bool left = c.kind == ShapeKind::IncrAntichain;
    uint8_t marker = left ? 1 : 0;
    for (std::size_t m = 1; m + 1 <= depth; ++m) // markers start at 1, as in
        if (c.branch.bit(m) == marker)           // the canonical antichain
            out.push_back(c.branch.prefix(m).append(left ? 0 : 1));
    return out;
}

std::vector<Node> IndexSet::enumerate(std::size_t depth) const {
    std::set<Node> seen;
    std::vector<Node> out;
    auto push = [&](const Node& n) {
        if (n.length() <= depth && seen.insert(n).second) out.push_back(n);
    };
    for (const auto& c : components_)
        for (const auto& n : enumerate_component(c, depth)) push(n);
    for (const auto& n : extras_) push(n);
    std::sort(out.begin(), out.end(), [](const Node& a, const Node& b) {
        return canonical_index(a) < canonical_index(b);
    });
    return out;
}

std::string IndexSet::str() const {
    std::string s;
    for (const auto& c : components_) {
        if (!s.empty()) s += "; ";
        s += shape_kind_str(c.kind) + " " + c.branch.str();
    }
    for (const auto& n : extras_) {
        if (!s.empty()) s += "; ";
        s += "node " + n.str();
    }
    return s;
}

bool IndexSet::operator==(const IndexSet& o) const {
    return symbolic_ == o.symbolic_ && components_ == o.components_ && extras_ == o.extras_ &&
           (symbolic_ || depth_bound_ == o.depth_bound_);
}

namespace {

TriBool tb(bool v) { return v ? TriBool::Yes : TriBool::No; }

ConvergenceProfile profile_symbolic(const IndexSet& set) {
    ConvergenceProfile p;
    const auto& cs = set.components();
    if (cs.empty()) {
        // purely finite: trivially orthogonal, no infinite part at all
        p.target = std::nullopt;
        p.has_chain = p.has_left = p.has_right = p.multi_target = TriBool::No;
        p.orthogonal_to_all = TriBool::Yes;
        return p;
    }
    bool common = true;
    for (const auto& c : cs)
        if (c.branch != cs.front().branch) common = false;
    bool chain = false, left = false, right = false;
    for (const auto& c : cs) {
        chain |= c.kind == ShapeKind::Chain;
        left |= c.kind == ShapeKind::IncrAntichain;
        right |= c.kind == ShapeKind::DecrAntichain;
    }
    if (common) p.target = cs.front().branch;
    p.multi_target = tb(!common);
    p.has_chain = tb(chain);
    p.has_left = tb(left);
    p.has_right = tb(right);
    p.orthogonal_to_all = tb(!chain);
    return p;
}

// persistent violations threshold for explicit lists: a couple of stragglers
// near the boundary are tolerated, three or more long violators refute
constexpr std::size_t kViolationThreshold = 3;

ConvergenceProfile profile_explicit(const IndexSet& set) {
    ConvergenceProfile p;
    const auto& nodes = set.explicit_nodes();
    std::size_t depth = set.depth_bound();
    if (nodes.empty()) {
        p.has_chain = p.has_left = p.has_right = p.multi_target = TriBool::No;
        p.orthogonal_to_all = TriBool::Yes;
        return p;
    }
    // longest chain inside the list decides orthogonality
    std::size_t best_chain = 0;
    for (const auto& a : nodes) {
        std::size_t len = 0;
        for (const auto& b : nodes)
            if (is_initial_segment(b, a)) ++len;
        best_chain = std::max(best_chain, len);
    }
    if (best_chain >= std::max<std::size_t>(4, depth / 2)) {
        p.orthogonal_to_all = TriBool::No;
        p.has_chain = TriBool::Yes;
    } else if (best_chain <= 2) {
        p.orthogonal_to_all = TriBool::Yes;
        p.has_chain = TriBool::No;
    }
    // candidate target: continue the deepest node along its minimal period,
    // so periodic spines are recovered exactly
    const Node* deepest = &nodes.front();
    for (const auto& n : nodes)
        if (n.length() > deepest->length()) deepest = &n;
    if (deepest->length() == 0) return p;
    const auto& bits = deepest->bits();
    std::size_t len = bits.size();
    std::vector<std::size_t> fail(len, 0);
    for (std::size_t i = 1; i < len; ++i) {
        std::size_t k = fail[i - 1];
        while (k > 0 && bits[i] != bits[k]) k = fail[k - 1];
        if (bits[i] == bits[k]) ++k;
        fail[i] = k;
    }
    std::size_t period = len - fail[len - 1];
    Branch cand{*deepest, Node(std::vector<uint8_t>(bits.end() - period, bits.end()))};
    if (converges_to(set, cand, depth) == TriBool::Yes) {
        p.target = cand;
        p.multi_target = TriBool::No;
        std::size_t n_left = 0, n_right = 0;
        for (const auto& n : nodes) {
            if (is_initial_segment(n, cand)) continue;
            if (lex_less(n, cand))
                ++n_left;
            else
                ++n_right;
        }
        p.has_left = n_left >= kViolationThreshold ? TriBool::Yes : TriBool::Unknown;
        p.has_right = n_right >= kViolationThreshold ? TriBool::Yes : TriBool::Unknown;
    }
    return p;
}

} // namespace

ConvergenceProfile profile(const IndexSet& set) {
    return set.is_symbolic() ? profile_symbolic(set) : profile_explicit(set);
}

TriBool converges_to(const IndexSet& set, const Branch& sigma, std::size_t depth) {
    if (set.is_symbolic()) {
        if (set.components().empty()) return TriBool::Unknown;
        for (const auto& c : set.components())
            if (c.branch != sigma) return TriBool::No;
        return TriBool::Yes;
    }
    const auto& nodes = set.explicit_nodes();
    if (nodes.empty()) return TriBool::Unknown;
    std::size_t max_len = 0;
    for (const auto& n : nodes) max_len = std::max(max_len, n.length());
    bool unknown = false;
    for (std::size_t k = 1; k <= depth; ++k) {
        Node sk = sigma.prefix(k);
        std::size_t long_violators = 0, compliant = 0;
        for (const auto& n : nodes) {
            if (is_initial_segment(sk, n))
                ++compliant;
            else if (n.length() >= k)
                ++long_violators;
        }
        if (long_violators >= kViolationThreshold) return TriBool::No;
        if (compliant == 0) unknown = true;
    }
    if (unknown || max_len < depth) return TriBool::Unknown;
    return TriBool::Yes;
}

} // namespace rosetree
