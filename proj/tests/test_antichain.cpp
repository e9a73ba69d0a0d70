#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rosetree/antichain.hpp"
#include "rosetree/index_set.hpp"
#include "support/gen.hpp"

using namespace rosetree;

namespace {

std::vector<Node> nodes(std::initializer_list<const char*> ts) {
    std::vector<Node> out;
    for (const char* t : ts) out.push_back(Node::parse(t));
    return out;
}

// independent oracle: longest subsequence that classify_antichain accepts
std::size_t brute_best_length(const std::vector<Node>& seq, const TreeView& T = {}) {
    const std::size_t n = seq.size();
    std::size_t best = 1;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<Node> sub;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) sub.push_back(seq[i]);
        if (sub.size() <= best || sub.size() < 2) continue;
        if (classify_antichain(sub, T) != AntichainKind::Neither) best = sub.size();
    }
    return best;
}

} // namespace

TEST_CASE("classification of the canonical examples") {
    CHECK(classify_antichain(nodes({"10", "110", "1110"})) == AntichainKind::Increasing);
    CHECK(classify_antichain(nodes({"01", "001", "0001"})) == AntichainKind::Decreasing);
    CHECK(classify_antichain(nodes({"01", "10", "110"})) == AntichainKind::Neither);
    // meets too shallow: lengths and lex fine, but |t0| > |t1 meet t2|
    CHECK(classify_antichain(nodes({"01", "100", "1100"})) == AntichainKind::Neither);
    // listed order matters
    CHECK(classify_antichain(nodes({"110", "10", "1110"})) == AntichainKind::Neither);
    CHECK_THROWS_AS(classify_antichain(nodes({"01", "010", "0001"})), not_antichain_error);
    CHECK_THROWS_AS(classify_antichain(nodes({"01"})), too_short_error);
}

TEST_CASE("canonical antichains classify with their declared side") {
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 60; ++it) {
        Branch sigma = gen::random_two_sided_branch(rng, 3, 4);
        for (bool left : {true, false}) {
            auto seq = monotone_antichain_nodes(sigma, left, 6);
            CHECK(classify_antichain(seq) ==
                  (left ? AntichainKind::Increasing : AntichainKind::Decreasing));
        }
    }
}

TEST_CASE("hereditariness: subsequences keep the classification") {
    std::mt19937_64 rng(5150);
    for (int it = 0; it < 25; ++it) {
        Branch sigma = gen::random_two_sided_branch(rng, 2, 3);
        bool left = rng() % 2;
        auto seq = monotone_antichain_nodes(sigma, left, 6);
        AntichainKind kind = classify_antichain(seq);
        for (std::uint32_t mask = 1; mask < (1u << 6); ++mask) {
            if (std::popcount(mask) < 2) continue;
            std::vector<Node> sub;
            for (std::size_t i = 0; i < 6; ++i)
                if (mask & (1u << i)) sub.push_back(seq[i]);
            CHECK(classify_antichain(sub) == kind);
        }
    }
}

TEST_CASE("successive meets form a chain and triples share meets") {
    std::mt19937_64 rng(31337);
    for (int it = 0; it < 40; ++it) {
        Branch sigma = gen::random_two_sided_branch(rng, 2, 3);
        bool left = rng() % 2;
        auto t = monotone_antichain_nodes(sigma, left, 7);
        for (std::size_t n = 0; n + 2 < t.size(); ++n)
            CHECK(is_initial_segment(meet(t[n], t[n + 1]), meet(t[n + 1], t[n + 2])));
        // meets with any two later elements coincide
        for (std::size_t n = 0; n < t.size(); ++n)
            for (std::size_t m = n + 1; m < t.size(); ++m)
                for (std::size_t l = m + 1; l < t.size(); ++l)
                    CHECK(meet(t[n], t[m]) == meet(t[n], t[l]));
    }
}

TEST_CASE("coherence across regular dyadic subtrees") {
    std::mt19937_64 rng(404);
    int done = 0;
    while (done < 40) {
        SubtreeGenerator g = gen::random_generator(rng);
        ExplicitSubtree m = g.materialize(7);
        std::vector<Node> image = m.image();
        TreeView view(&image);
        Branch sigma = gen::random_two_sided_branch(rng, 2, 3);
        bool left = rng() % 2;
        auto domain_seq = monotone_antichain_nodes(sigma, left, 5);
        if (domain_seq.back().length() > 7) continue;
        std::vector<Node> image_seq;
        for (const auto& t : domain_seq) image_seq.push_back(m.apply(t));
        CHECK(classify_antichain(image_seq, view) == classify_antichain(domain_seq));
        ++done;
    }
}

TEST_CASE("extraction on the interleaved example") {
    auto seq = nodes({"01", "10", "001", "110", "0001", "1110"});
    MonotoneExtraction got = extract_monotone(seq);
    CHECK(got.nodes.size() == 3);
    CHECK(got.kind != AntichainKind::Neither);
    CHECK(classify_antichain(got.nodes) == got.kind);
    CHECK(brute_best_length(seq) == 3);
}

TEST_CASE("monotone input comes back whole") {
    auto seq = nodes({"10", "110", "1110", "11110"});
    MonotoneExtraction got = extract_monotone(seq);
    CHECK(got.nodes == seq);
    CHECK(got.kind == AntichainKind::Increasing);
    CHECK_THROWS_AS(extract_monotone(nodes({"10", "110"})), too_short_error);
}

TEST_CASE("extraction matches the brute force oracle on small inputs") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 120; ++it) {
        auto seq = gen::random_antichain(rng, 3 + rng() % 8, 10);
        if (seq.size() < 3) continue;
        MonotoneExtraction got = extract_monotone(seq);
        if (got.nodes.size() >= 2)
            CHECK(classify_antichain(got.nodes) == got.kind);
        CHECK(got.nodes.size() == brute_best_length(seq));
    }
}

TEST_CASE("large extraction stays valid and substantial") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 25; ++it) {
        auto seq = gen::random_antichain(rng, 30, 15);
        REQUIRE(seq.size() == 30);
        MonotoneExtraction got = extract_monotone(seq);
        CHECK(got.nodes.size() >= 4);
        CHECK(classify_antichain(got.nodes) == got.kind);
        // indices must pick out the nodes in listed order
        for (std::size_t k = 0; k < got.indices.size(); ++k)
            CHECK(seq[got.indices[k]] == got.nodes[k]);
    }
}

TEST_CASE("limit prefixes") {
    AntichainLimit l = antichain_limit(nodes({"10", "110", "1110"}));
    CHECK(l.prefix == Node::parse("111"));
    CHECK(l.kind == AntichainKind::Increasing);
    l = antichain_limit(nodes({"01", "001", "0001"}));
    CHECK(l.prefix == Node::parse("000"));
    CHECK(l.kind == AntichainKind::Decreasing);
    l = antichain_limit(nodes({"10", "110"}));
    CHECK(l.prefix == Node::parse("1"));
    CHECK_THROWS_AS(antichain_limit(nodes({"01", "10", "110"})), not_monotone_error);
}

TEST_CASE("limits of canonical antichains run along the spine") {
    std::mt19937_64 rng(606);
    for (int it = 0; it < 60; ++it) {
        Branch sigma = gen::random_two_sided_branch(rng, 3, 4);
        bool left = rng() % 2;
        auto seq = monotone_antichain_nodes(sigma, left, 6);
        AntichainLimit l = antichain_limit(seq);
        CHECK(is_initial_segment(l.prefix, sigma));
        CHECK(l.prefix.length() >= seq[seq.size() - 2].length());
    }
}

TEST_CASE("skew subtree validation and the projections") {
    SkewSubtree S;
    S.increasing = true;
    S.levels = {nodes({"1"}), nodes({"10", "11"}), nodes({"100", "110", "111"})};
    S.validate();
    CHECK(phi(S) == nodes({"10", "110"}));
    CHECK(classify_antichain(phi(S)) == AntichainKind::Increasing);
    CHECK_THROWS_AS(psi(S), not_skew_error); // wrong kind

    SkewSubtree D;
    D.increasing = false;
    D.levels = {nodes({"0"}), nodes({"00", "01"}), nodes({"000", "001", "011"})};
    D.validate();
    CHECK(psi(D) == nodes({"01", "001"}));
    CHECK(classify_antichain(psi(D)) == AntichainKind::Decreasing);

    // split must sit at the lex extreme
    SkewSubtree bad;
    bad.increasing = true;
    bad.levels = {nodes({"0"}), nodes({"00", "01"}), nodes({"000", "001", "011"})};
    CHECK_THROWS_AS(bad.validate(), not_skew_error);

    // two splitting nodes on one level
    SkewSubtree wide;
    wide.increasing = true;
    wide.levels = {nodes({""}), nodes({"0", "1"}), nodes({"00", "01", "10", "11"})};
    CHECK_THROWS_AS(wide.validate(), not_skew_error);
}

TEST_CASE("inverse construction on the worked example") {
    SkewSubtree S = inverse_phi(nodes({"10", "110", "1110"}));
    REQUIRE(S.levels.size() == 3);
    CHECK(S.levels[0] == nodes({"1"}));
    CHECK(S.levels[1] == nodes({"10", "11"}));
    CHECK(S.levels[2] == nodes({"100", "110", "111"}));
    CHECK(phi(S) == nodes({"10", "110"}));
    CHECK_THROWS_AS(inverse_phi(nodes({"01", "001", "0001"})), not_monotone_error);
    CHECK_THROWS_AS(inverse_phi(nodes({"10", "110"})), too_short_error);
}

TEST_CASE("round trips through random canonical antichains") {
    std::mt19937_64 rng(808);
    for (int it = 0; it < 50; ++it) {
        Branch sigma = gen::random_two_sided_branch(rng, 2, 3);
        auto incr_seq = monotone_antichain_nodes(sigma, true, 6);
        SkewSubtree S = inverse_phi(incr_seq);
        auto back = phi(S);
        REQUIRE(back.size() == incr_seq.size() - 1);
        for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i] == incr_seq[i]);

        auto decr_seq = monotone_antichain_nodes(sigma, false, 6);
        SkewSubtree D = inverse_psi(decr_seq);
        auto dback = psi(D);
        REQUIRE(dback.size() == decr_seq.size() - 1);
        for (std::size_t i = 0; i < dback.size(); ++i) CHECK(dback[i] == decr_seq[i]);
    }
}

TEST_CASE("skew codes of rebuilt subtrees end levels with a split") {
    SkewSubtree S = inverse_phi(nodes({"10", "110", "1110", "11110"}));
    SkewCode code = skew_code(S.node_set());
    for (const auto& level : code.levels) CHECK(level.back() == 2);
}
