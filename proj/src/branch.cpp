#include "rosetree/branch.hpp"

#include <algorithm>
#include <numeric>

namespace rosetree {

namespace {

// smallest w with word = w^k; standard failure-function construction
std::vector<uint8_t> primitive_root(const std::vector<uint8_t>& word) {
    std::size_t n = word.size();
    std::vector<std::size_t> fail(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t j = fail[i - 1];
        while (j > 0 && word[i] != word[j]) j = fail[j - 1];
        if (word[i] == word[j]) ++j;
        fail[i] = j;
    }
    std::size_t p = n - fail[n - 1];
    if (n % p == 0) return std::vector<uint8_t>(word.begin(), word.begin() + static_cast<long>(p));
    return word;
}

} // namespace

Branch::Branch(Node prefix, Node period) {
    if (period.empty()) throw domain_error("branch period must be nonempty");
    std::vector<uint8_t> p = prefix.bits();
    std::vector<uint8_t> w = primitive_root(period.bits());
    // absorb prefix bits that agree with the rotated period boundary
    while (!p.empty() && p.back() == w.back()) {
        p.pop_back();
        std::rotate(w.rbegin(), w.rbegin() + 1, w.rend());
    }
    prefix_ = Node(std::move(p));
    period_ = Node(std::move(w));
}

Branch Branch::parse(const std::string& text) {
    auto star = text.find('*');
    if (star == std::string::npos) throw parse_error("branch text needs '*': " + text);
    Node pre = Node::parse(text.substr(0, star));
    Node per = Node::parse(text.substr(star + 1));
    if (per.empty()) throw parse_error("branch period empty: " + text);
    return Branch(pre, per);
}

uint8_t Branch::bit(std::size_t i) const {
    if (i < prefix_.length()) return prefix_.bits()[i];
    return period_.bits()[(i - prefix_.length()) % period_.length()];
}

Node Branch::prefix(std::size_t len) const {
    std::vector<uint8_t> b(len);
    for (std::size_t i = 0; i < len; ++i) b[i] = bit(i);
    return Node(std::move(b));
}

bool Branch::eventually_zero() const {
    return period_.length() == 1 && period_.bits()[0] == 0;
}

bool Branch::eventually_one() const {
    return period_.length() == 1 && period_.bits()[0] == 1;
}

std::vector<std::size_t> Branch::positions_of(uint8_t b, std::size_t count) const {
    bool period_has = false;
    for (uint8_t x : period_.bits())
        if (x == b) period_has = true;
    std::size_t limit =
        prefix_.length() + period_.length() * (period_has ? count + 1 : 1);
    std::vector<std::size_t> out;
    out.reserve(count);
    for (std::size_t i = 0; i < limit && out.size() < count; ++i)
        if (bit(i) == b) out.push_back(i);
    if (out.size() < count)
        throw side_unavailable_error("branch " + str() + " has too few '" +
                                     std::to_string(int(b)) + "' bits");
    return out;
}

Rat Branch::value() const {
    // prefix part plus the periodic tail: tail value = v / (2^m - 1) scaled
    Rat v = 0;
    for (std::size_t i = 0; i < prefix_.length(); ++i)
        if (prefix_.bits()[i]) v += Rat(1, pow2(static_cast<unsigned>(i + 1)));
    BigInt pv = 0;
    for (uint8_t b : period_.bits()) pv = (pv << 1) | b;
    std::size_t m = period_.length();
    Rat tail(pv, pow2(static_cast<unsigned>(m)) - 1);
    tail /= Rat(pow2(static_cast<unsigned>(prefix_.length())));
    return v + tail;
}

bool Branch::operator==(const Branch& o) const {
    return prefix_ == o.prefix_ && period_ == o.period_;
}

bool Branch::operator<(const Branch& o) const {
    if (prefix_ == o.prefix_) return period_ < o.period_;
    return prefix_ < o.prefix_;
}

std::string Branch::str() const { return prefix_.str() + "*" + period_.str(); }

int branch_cmp(const Branch& a, const Branch& b) {
    std::size_t n0 = std::max(a.prefix_word().length(), b.prefix_word().length());
    std::size_t l = std::lcm(a.period_word().length(), b.period_word().length());
    for (std::size_t i = 0; i < n0 + l; ++i) {
        uint8_t x = a.bit(i), y = b.bit(i);
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

Node meet(const Branch& a, const Branch& b) {
    std::size_t n0 = std::max(a.prefix_word().length(), b.prefix_word().length());
    std::size_t l = std::lcm(a.period_word().length(), b.period_word().length());
    for (std::size_t i = 0; i < n0 + l; ++i)
        if (a.bit(i) != b.bit(i)) return a.prefix(i);
    throw domain_error("meet undefined for equal branches");
}

bool is_initial_segment(const Node& t, const Branch& b) {
    for (std::size_t i = 0; i < t.length(); ++i)
        if (t.bits()[i] != b.bit(i)) return false;
    return true;
}

bool lex_less(const Node& t, const Branch& b) {
    for (std::size_t i = 0; i < t.length(); ++i) {
        if (t.bits()[i] != b.bit(i)) return t.bits()[i] == 0;
    }
    throw comparable_nodes_error("lex order undefined: node '" + t.str() +
                                 "' is an initial segment of branch " + b.str());
}

bool lex_less(const Branch& b, const Node& t) {
    for (std::size_t i = 0; i < t.length(); ++i) {
        if (t.bits()[i] != b.bit(i)) return b.bit(i) == 0;
    }
    throw comparable_nodes_error("lex order undefined: node '" + t.str() +
                                 "' is an initial segment of branch " + b.str());
}

Branch constant_branch(uint8_t b) {
    return Branch(Node(), Node(std::vector<uint8_t>{b}));
}

Branch node_then_constant(const Node& t, uint8_t b) {
    return Branch(t, Node(std::vector<uint8_t>{b}));
}

} // namespace rosetree
