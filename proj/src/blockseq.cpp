#include "rosetree/blockseq.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "rosetree/errors.hpp"

namespace rosetree {

FinSeq::FinSeq(std::vector<unsigned> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i + 1 < values_.size(); ++i)
        if (values_[i] >= values_[i + 1])
            throw domain_error("sequence " + str() + " is not strictly increasing");
}

FinSeq FinSeq::parse(const std::string& text) {
    std::vector<unsigned> vals;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        std::size_t a = item.find_first_not_of(" \t");
        if (a == std::string::npos) {
            if (vals.empty() && in.eof()) break;  // wholly blank text
            throw parse_error("empty entry in sequence \"" + text + "\"");
        }
        std::size_t b = item.find_last_not_of(" \t");
        std::string tok = item.substr(a, b - a + 1);
        if (tok.find_first_not_of("0123456789") != std::string::npos)
            throw parse_error("bad natural \"" + tok + "\" in sequence");
        vals.push_back(static_cast<unsigned>(std::stoul(tok)));
    }
    return FinSeq(std::move(vals));
}

unsigned FinSeq::front() const {
    if (values_.empty()) throw domain_error("empty sequence has no first entry");
    return values_.front();
}

unsigned FinSeq::back() const {
    if (values_.empty()) throw domain_error("empty sequence has no last entry");
    return values_.back();
}

FinSeq FinSeq::unite(const FinSeq& later) const {
    if (values_.empty()) return later;
    if (later.empty()) return *this;
    if (back() >= later.front())
        throw domain_error("cannot unite " + str() + " with non-greater " + later.str());
    std::vector<unsigned> vals = values_;
    vals.insert(vals.end(), later.values_.begin(), later.values_.end());
    return FinSeq(std::move(vals));
}

bool FinSeq::prefix_of(const FinSeq& other) const {
    if (size() > other.size()) return false;
    return std::equal(values_.begin(), values_.end(), other.values_.begin());
}

std::string FinSeq::str() const {
    std::string out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values_[i]);
    }
    return out;
}

BlockSeq::BlockSeq(std::vector<FinSeq> blocks) : blocks_(std::move(blocks)) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].empty()) throw domain_error("block " + std::to_string(i) + " is empty");
        if (i + 1 < blocks_.size() && blocks_[i].back() >= blocks_[i + 1].front())
            throw domain_error("block " + blocks_[i].str() + " is not below " +
                               blocks_[i + 1].str());
    }
}

BlockSeq BlockSeq::parse(const std::string& text) {
    std::vector<FinSeq> blocks;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        blocks.push_back(FinSeq::parse(line));
    }
    return BlockSeq(std::move(blocks));
}

BlockSeq BlockSeq::singletons(std::size_t count) {
    std::vector<FinSeq> blocks;
    blocks.reserve(count);
    for (std::size_t n = 0; n < count; ++n)
        blocks.push_back(FinSeq({static_cast<unsigned>(n)}));
    return BlockSeq(std::move(blocks));
}

const FinSeq& BlockSeq::block(std::size_t n) const {
    if (n >= blocks_.size())
        throw too_few_blocks_error("block " + std::to_string(n) + " of " +
                                   std::to_string(blocks_.size()) + " requested");
    return blocks_[n];
}

BlockSeq BlockSeq::prefix(std::size_t count) const {
    if (count > blocks_.size()) count = blocks_.size();
    return BlockSeq(std::vector<FinSeq>(blocks_.begin(), blocks_.begin() + count));
}

std::string BlockSeq::str() const {
    std::string out;
    for (const FinSeq& b : blocks_) {
        out += b.str();
        out += '\n';
    }
    return out;
}

std::optional<std::vector<std::size_t>> span_member(const BlockSeq& b, const FinSeq& s) {
    std::vector<std::size_t> used;
    const std::vector<unsigned>& v = s.values();
    std::size_t at = 0;
    while (at < v.size()) {
        // blockness: at most one block starts with v[at]
        std::size_t hit = b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b.block(i).front() == v[at]) {
                hit = i;
                break;
            }
        if (hit == b.size()) return std::nullopt;
        const std::vector<unsigned>& w = b.block(hit).values();
        if (at + w.size() > v.size() ||
            !std::equal(w.begin(), w.end(), v.begin() + static_cast<std::ptrdiff_t>(at)))
            return std::nullopt;
        if (!used.empty() && hit <= used.back()) return std::nullopt;
        used.push_back(hit);
        at += w.size();
    }
    return used;
}

std::vector<FinSeq> chain_map(const BlockSeq& b) {
    std::vector<FinSeq> out;
    FinSeq run;
    for (std::size_t n = 0; n < b.size(); ++n) {
        run = run.unite(b.block(n));
        out.push_back(run);
    }
    return out;
}

std::vector<FinSeq> antichain_map(const BlockSeq& b) {
    if (b.size() < 3)
        throw too_few_blocks_error("antichain map needs three blocks, got " +
                                   std::to_string(b.size()));
    std::vector<FinSeq> chain = chain_map(b);
    std::vector<FinSeq> out;
    for (std::size_t n = 0; 3 * n + 2 < b.size(); ++n)
        out.push_back(chain[3 * n].unite(b.block(3 * n + 2)));
    return out;
}

namespace {

// block indices of beta_s; the appended pattern depends on the parent's
// last letter, the child letter picks the wide or the gapped variant
std::vector<std::size_t> beta_indices(const Node& s, const BlockSeq& b) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.length(); ++i) {
        uint8_t c = s.bit(i);
        std::vector<std::size_t> add;
        if (i == 0) {
            add = c == 0 ? std::vector<std::size_t>{0, 1, 2} : std::vector<std::size_t>{0, 2};
        } else {
            std::size_t n = idx.back();
            if (s.bit(i - 1) == 0)
                add = c == 0 ? std::vector<std::size_t>{n + 1, n + 2, n + 3}
                             : std::vector<std::size_t>{n + 1, n + 3};
            else
                add = c == 0 ? std::vector<std::size_t>{n + 1, n + 2, n + 3, n + 4}
                             : std::vector<std::size_t>{n + 1, n + 2, n + 4};
        }
        idx.insert(idx.end(), add.begin(), add.end());
    }
    if (!idx.empty() && idx.back() >= b.size())
        throw too_few_blocks_error("beta at " + (s.empty() ? std::string("root") : s.str()) +
                                   " needs block " + std::to_string(idx.back()));
    return idx;
}

} // namespace

std::vector<FinSeq> beta(const Node& s, const BlockSeq& b) {
    std::vector<FinSeq> out;
    for (std::size_t i : beta_indices(s, b)) out.push_back(b.block(i));
    return out;
}

FinSeq beta_union(const Node& s, const BlockSeq& b) {
    FinSeq u;
    for (const FinSeq& t : beta(s, b)) u = u.unite(t);
    return u;
}

bool verify_c3(const Node& s, const BlockSeq& b, std::size_t samples) {
    std::vector<std::size_t> base = beta_indices(s.append(0), b);
    FinSeq target = beta_union(s.append(1), b);

    // one extension per sample; sample 0 is the canonical one by single blocks
    for (std::size_t round = 0; round <= samples; ++round) {
        std::vector<FinSeq> c;
        for (std::size_t i : base) c.push_back(b.block(i));

        std::size_t next = base.back() + 1;
        if (round == 0) {
            for (std::size_t j = next; j < b.size(); ++j) c.push_back(b.block(j));
        } else {
            std::uint64_t seed = 0x51bdce57u + round;
            for (uint8_t bit : s.bits()) seed = seed * 2 + bit + 1;
            std::mt19937_64 rng(seed);
            std::size_t j = next;
            while (j < b.size() && c.size() < base.size() + 9) {
                j += rng() % 3;  // leave a gap before the next union
                FinSeq blk;
                std::size_t take = 1 + rng() % 3;
                while (take-- > 0 && j < b.size()) {
                    blk = blk.unite(b.block(j));
                    j += 1 + rng() % 2;  // gaps inside the union are fine too
                }
                if (!blk.empty()) c.push_back(blk);
            }
        }
        std::vector<FinSeq> terms = antichain_map(BlockSeq(c));
        if (std::find(terms.begin(), terms.end(), target) == terms.end()) return false;
    }
    return true;
}

std::optional<std::pair<FinSeq, std::vector<unsigned>>> is_fan(
    const std::vector<FinSeq>& seq) {
    if (seq.empty()) return std::nullopt;
    std::size_t stem = seq[0].size();
    for (const FinSeq& t : seq) {
        std::size_t k = 0;
        while (k < stem && k < t.size() && t.values()[k] == seq[0].values()[k]) ++k;
        stem = k;
    }
    // the stem must be proper for every member, so a full-length member
    // shortens it (and then at least two members agree right after it)
    for (const FinSeq& t : seq)
        if (t.size() == stem) {
            if (stem == 0) return std::nullopt;
            --stem;
            break;
        }
    std::vector<unsigned> entries;
    for (const FinSeq& t : seq) {
        unsigned e = t.values()[stem];
        if (!entries.empty() && entries.back() >= e) return std::nullopt;
        entries.push_back(e);
    }
    return std::make_pair(
        FinSeq(std::vector<unsigned>(seq[0].values().begin(),
                                     seq[0].values().begin() + static_cast<std::ptrdiff_t>(stem))),
        entries);
}

std::optional<std::vector<FinSeq>> dominated(const std::vector<FinSeq>& members,
                                             std::size_t n) {
    std::vector<FinSeq> out;
    for (const FinSeq& m : members) {
        if (m.size() < n) return std::nullopt;
        FinSeq head(std::vector<unsigned>(m.values().begin(),
                                          m.values().begin() + static_cast<std::ptrdiff_t>(n)));
        if (std::find(out.begin(), out.end(), head) == out.end()) out.push_back(head);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace rosetree
