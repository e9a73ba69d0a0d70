#include "rosetree/subtree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rosetree {

SubtreeGenerator::SubtreeGenerator(Node root, std::vector<std::pair<Node, Node>> pairs)
    : root_(std::move(root)), pairs_(std::move(pairs)) {
    if (pairs_.empty()) throw invalid_generator_error("generator needs at least one word pair");
    for (const auto& [w0, w1] : pairs_) {
        if (w0.empty() || w0.length() != w1.length())
            throw invalid_generator_error("generator words must be nonempty and equal length");
        if (w0.bits()[0] != 0 || w1.bits()[0] != 1)
            throw invalid_generator_error("generator 0-word must start 0 and 1-word start 1");
    }
}

SubtreeGenerator SubtreeGenerator::parse(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    Node root;
    std::vector<std::pair<Node, Node>> pairs;
    bool have_root = false;
    while (std::getline(ss, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (!have_root) {
            if (line.rfind("root=", 0) != 0) throw parse_error("generator must begin 'root=...'");
            root = Node::parse(line.substr(5));
            have_root = true;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) throw parse_error("generator line needs 'w0,w1': " + line);
        pairs.emplace_back(Node::parse(line.substr(0, comma)), Node::parse(line.substr(comma + 1)));
    }
    if (!have_root) throw parse_error("generator missing root line");
    return SubtreeGenerator(std::move(root), std::move(pairs));
}

Node SubtreeGenerator::apply(const Node& t) const {
    Node out = root_;
    for (std::size_t i = 0; i < t.length(); ++i) {
        const auto& p = pair_at(i);
        out = out.concat(t.bits()[i] ? p.second : p.first);
    }
    return out;
}

Branch SubtreeGenerator::image_branch(const Branch& sigma) const {
    // the level/bit state repeats with period lcm(|period|, #pairs) once the
    // prefix is consumed
    std::size_t start = sigma.prefix_word().length();
    std::size_t m = std::lcm(sigma.period_word().length(), pairs_.size());
    Node pre = apply(sigma.prefix(start));
    Node per;
    for (std::size_t i = start; i < start + m; ++i) {
        const auto& p = pair_at(i);
        per = per.concat(sigma.bit(i) ? p.second : p.first);
    }
    return Branch(pre, per);
}

ExplicitSubtree SubtreeGenerator::materialize(std::size_t depth) const {
    std::map<Node, Node> table;
    std::vector<Node> frontier{Node()};
    table[Node()] = root_;
    for (std::size_t level = 0; level < depth; ++level) {
        std::vector<Node> next;
        const auto& p = pair_at(level);
        for (const auto& t : frontier) {
            Node img = table.at(t);
            Node t0 = t.append(0), t1 = t.append(1);
            table[t0] = img.concat(p.first);
            table[t1] = img.concat(p.second);
            next.push_back(t0);
            next.push_back(t1);
        }
        frontier = std::move(next);
    }
    return ExplicitSubtree(std::move(table));
}

std::string SubtreeGenerator::str() const {
    std::string s = "root=" + root_.str() + "\n";
    for (const auto& [w0, w1] : pairs_) s += w0.str() + "," + w1.str() + "\n";
    return s;
}

ExplicitSubtree::ExplicitSubtree(std::map<Node, Node> table) : table_(std::move(table)) {
    if (table_.empty()) throw domain_error("empty subtree table");
    for (const auto& [dom, img] : table_) depth_ = std::max(depth_, dom.length());
    // the domain must be the full dyadic tree up to the depth
    for (const auto& [dom, img] : table_) {
        (void)img;
        if (!dom.empty() && table_.find(dom.prefix(dom.length() - 1)) == table_.end())
            throw domain_error("subtree table domain not closed under initial segments");
    }
    std::size_t expect = (std::size_t(1) << (depth_ + 1)) - 1;
    if (table_.size() != expect)
        throw domain_error("subtree table domain must cover every node up to its depth");
}

ExplicitSubtree ExplicitSubtree::parse(const std::string& text) {
    std::map<Node, Node> table;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto arrow = line.find("->");
        if (arrow == std::string::npos) throw parse_error("subtree line needs '->': " + line);
        auto strip = [](std::string s) {
            auto x = s.find_first_not_of(" \t\r");
            if (x == std::string::npos) return std::string();
            auto y = s.find_last_not_of(" \t\r");
            return s.substr(x, y - x + 1);
        };
        Node dom = Node::parse(strip(line.substr(0, arrow)));
        Node img = Node::parse(strip(line.substr(arrow + 2)));
        if (!table.emplace(dom, img).second)
            throw parse_error("duplicate subtree domain node: " + dom.str());
    }
    return ExplicitSubtree(std::move(table));
}

Node ExplicitSubtree::apply(const Node& t) const {
    auto it = table_.find(t);
    if (it == table_.end())
        throw not_in_subtree_error("node '" + t.str() + "' beyond subtree depth " +
                                   std::to_string(depth_));
    return it->second;
}

bool ExplicitSubtree::in_image(const Node& s) const {
    for (const auto& [dom, img] : table_) {
        (void)dom;
        if (img == s) return true;
    }
    return false;
}

std::vector<Node> ExplicitSubtree::image() const {
    std::vector<Node> out;
    out.reserve(table_.size());
    for (const auto& [dom, img] : table_) {
        (void)dom;
        out.push_back(img);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool ExplicitSubtree::is_regular_dyadic(std::string* why) const {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    // injectivity and level alignment
    std::map<std::size_t, std::size_t> level_len;
    std::map<Node, Node> inverse;
    for (const auto& [dom, img] : table_) {
        if (!inverse.emplace(img, dom).second) return fail("image repeats node " + img.str());
        auto [it, fresh] = level_len.emplace(dom.length(), img.length());
        if (!fresh && it->second != img.length())
            return fail("level " + std::to_string(dom.length()) + " images differ in length");
    }
    std::size_t prev = 0;
    bool first = true;
    for (const auto& [lvl, len] : level_len) {
        (void)lvl;
        if (!first && len <= prev) return fail("image levels fail to deepen");
        prev = len;
        first = false;
    }
    // order preservation, both directions
    for (const auto& [d1, i1] : table_) {
        for (const auto& [d2, i2] : table_) {
            if (d1 == d2) continue;
            bool dom_ext = extends(d2, d1);
            bool img_ext = extends(i2, i1);
            if (dom_ext != img_ext)
                return fail("extension order broken at " + d1.str() + ", " + d2.str());
            if (!dom_ext && !extends(d1, d2)) {
                if (lex_less(d1, d2) != lex_less(i1, i2))
                    return fail("lex order broken at " + d1.str() + ", " + d2.str());
            }
        }
    }
    return true;
}

void ExplicitSubtree::validate_regular_dyadic() const {
    std::string why;
    if (!is_regular_dyadic(&why)) throw domain_error("not a regular dyadic subtree: " + why);
}

std::string ExplicitSubtree::str() const {
    std::string s;
    for (const auto& [dom, img] : table_) s += dom.str() + " -> " + img.str() + "\n";
    return s;
}

ExplicitSubtree compose(const ExplicitSubtree& inner, const ExplicitSubtree& outer) {
    std::map<Node, Node> table;
    for (const auto& [dom, img] : inner.table()) {
        if (img.length() > outer.depth())
            throw depth_mismatch_error("inner image '" + img.str() + "' exceeds outer depth " +
                                       std::to_string(outer.depth()));
        table[dom] = outer.apply(img);
    }
    return ExplicitSubtree(std::move(table));
}

std::size_t relative_length(const Node& t, const std::vector<Node>& T) {
    bool member = false;
    std::size_t count = 0;
    for (const auto& s : T) {
        if (s == t) member = true;
        else if (extends(t, s)) ++count;
    }
    if (!member) throw not_in_subtree_error("node '" + t.str() + "' not in subtree");
    return count;
}

Node relative_meet(const Node& a, const Node& b, const std::vector<Node>& T) {
    Node m = meet(a, b);
    const Node* best = nullptr;
    for (const auto& s : T)
        if (is_initial_segment(s, m) && (!best || s.length() > best->length())) best = &s;
    if (!best) throw not_in_subtree_error("no subtree node below the meet of '" + a.str() +
                                          "' and '" + b.str() + "'");
    return *best;
}

std::string SkewCode::str() const {
    std::string s;
    for (const auto& lvl : levels) {
        if (!s.empty()) s += "; ";
        s += "(";
        for (std::size_t i = 0; i < lvl.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(lvl[i]);
        }
        s += ")";
    }
    return s;
}

SkewCode skew_code(const std::vector<Node>& tree) {
    if (tree.empty()) throw not_skew_error("empty tree has no code");
    std::vector<std::vector<Node>> levels;
    for (const auto& t : tree) {
        std::size_t l = relative_length(t, tree);
        if (levels.size() <= l) levels.resize(l + 1);
        levels[l].push_back(t);
    }
    if (levels[0].size() != 1) throw not_skew_error("tree is not uniquely rooted");
    SkewCode code;
    for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
        auto& lvl = levels[l];
        std::sort(lvl.begin(), lvl.end(),
                  [](const Node& a, const Node& b) { return lex_less(a, b); });
        std::vector<int> entry;
        int twos = 0;
        for (const auto& t : lvl) {
            int succ = 0;
            for (const auto& s : levels[l + 1])
                if (extends(s, t)) ++succ;
            if (succ < 1 || succ > 2)
                throw not_skew_error("node '" + t.str() + "' has " + std::to_string(succ) +
                                     " immediate successors");
            if (succ == 2) ++twos;
            entry.push_back(succ);
        }
        if (twos > 1) throw not_skew_error("level " + std::to_string(l) + " splits twice");
        code.levels.push_back(std::move(entry));
    }
    return code;
}

} // namespace rosetree
