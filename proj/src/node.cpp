#include "rosetree/node.hpp"

#include <algorithm>

namespace rosetree {

Node::Node(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
    for (uint8_t b : bits_)
        if (b > 1) throw domain_error("node bit out of range");
}

Node Node::parse(const std::string& text) {
    std::vector<uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c == '0')
            bits.push_back(0);
        else if (c == '1')
            bits.push_back(1);
        else
            throw parse_error(std::string("bad node character '") + c + "'");
    }
    return Node(std::move(bits));
}

uint8_t Node::bit(std::size_t i) const {
    if (i >= bits_.size()) throw out_of_range_error("node bit index out of range");
    return bits_[i];
}

Node Node::prefix(std::size_t len) const {
    if (len > bits_.size()) throw out_of_range_error("prefix longer than node");
    return Node(std::vector<uint8_t>(bits_.begin(), bits_.begin() + static_cast<long>(len)));
}

Node Node::append(uint8_t bit) const {
    std::vector<uint8_t> b = bits_;
    b.push_back(bit);
    return Node(std::move(b));
}

Node Node::concat(const Node& tail) const {
    std::vector<uint8_t> b = bits_;
    b.insert(b.end(), tail.bits_.begin(), tail.bits_.end());
    return Node(std::move(b));
}

bool Node::operator<(const Node& o) const {
    if (bits_.size() != o.bits_.size()) return bits_.size() < o.bits_.size();
    return bits_ < o.bits_;
}

std::string Node::str() const {
    std::string s;
    s.reserve(bits_.size());
    for (uint8_t b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

bool is_initial_segment(const Node& s, const Node& t) {
    if (s.length() > t.length()) return false;
    return std::equal(s.bits().begin(), s.bits().end(), t.bits().begin());
}

bool extends(const Node& t, const Node& s) {
    return s.length() < t.length() && is_initial_segment(s, t);
}

Node meet(const Node& a, const Node& b) {
    std::size_t n = std::min(a.length(), b.length());
    std::size_t i = 0;
    while (i < n && a.bits()[i] == b.bits()[i]) ++i;
    return a.prefix(i);
}

bool lex_less(const Node& a, const Node& b) {
    std::size_t n = std::min(a.length(), b.length());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.bits()[i] != b.bits()[i]) return a.bits()[i] == 0;
    }
    throw comparable_nodes_error("lex order undefined: '" + a.str() + "' and '" + b.str() +
                                 "' are comparable under extension");
}

uint64_t canonical_index(const Node& t) {
    if (t.length() > 62) throw out_of_range_error("canonical_index limited to length 62");
    uint64_t value = 0;
    for (uint8_t b : t.bits()) value = (value << 1) | b;
    return (uint64_t(1) << t.length()) - 1 + value;
}

} // namespace rosetree
