#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rosetree/subtree.hpp"
#include "support/gen.hpp"

using namespace rosetree;

namespace {

SubtreeGenerator identity_gen() {
    return SubtreeGenerator{Node(), {{Node::parse("0"), Node::parse("1")}}};
}

SubtreeGenerator pad01_gen() {
    return SubtreeGenerator{Node(), {{Node::parse("001"), Node::parse("101")}}};
}

} // namespace

TEST_CASE("generator invariants") {
    CHECK_THROWS_AS(SubtreeGenerator(Node(), {}), invalid_generator_error);
    CHECK_THROWS_AS(SubtreeGenerator(Node(), {{Node::parse("10"), Node::parse("01")}}),
                    invalid_generator_error);
    CHECK_THROWS_AS(SubtreeGenerator(Node(), {{Node::parse("0"), Node::parse("10")}}),
                    invalid_generator_error);
    CHECK_THROWS_AS(SubtreeGenerator(Node(), {{Node(), Node()}}), invalid_generator_error);
    CHECK_NOTHROW(SubtreeGenerator(Node(), {{Node::parse("01"), Node::parse("10")}}));
}

TEST_CASE("identity generator materializes the identity") {
    ExplicitSubtree m = identity_gen().materialize(2);
    CHECK(m.depth() == 2);
    CHECK(m.table().size() == 7);
    for (const auto& [t, img] : m.table()) CHECK(t == img);
    CHECK(m.is_regular_dyadic());
}

TEST_CASE("padded generator at depth 1") {
    ExplicitSubtree m = pad01_gen().materialize(1);
    CHECK(m.apply(Node()) == Node());
    CHECK(m.apply(Node::parse("0")) == Node::parse("001"));
    CHECK(m.apply(Node::parse("1")) == Node::parse("101"));
    CHECK_THROWS_AS(m.apply(Node::parse("00")), not_in_subtree_error);
}

TEST_CASE("generator apply matches materialized table") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 40; ++it) {
        SubtreeGenerator g = gen::random_generator(rng);
        ExplicitSubtree m = g.materialize(4);
        for (const auto& [t, img] : m.table()) CHECK(g.apply(t) == img);
        CHECK(m.is_regular_dyadic());
    }
}

TEST_CASE("regularity validation rejects broken mappings") {
    // unequal image lengths
    std::map<Node, Node> bad1{{Node(), Node()},
                              {Node::parse("0"), Node::parse("00")},
                              {Node::parse("1"), Node::parse("1")}};
    std::string why;
    CHECK(!ExplicitSubtree(bad1).is_regular_dyadic(&why));
    CHECK(!why.empty());
    // lex order reversed
    std::map<Node, Node> bad2{{Node(), Node()},
                              {Node::parse("0"), Node::parse("10")},
                              {Node::parse("1"), Node::parse("01")}};
    CHECK(!ExplicitSubtree(bad2).is_regular_dyadic());
    CHECK_THROWS_AS(ExplicitSubtree(bad2).validate_regular_dyadic(), domain_error);
    // extension broken: image of child does not extend image of parent
    std::map<Node, Node> bad3{{Node(), Node::parse("1")},
                              {Node::parse("0"), Node::parse("00")},
                              {Node::parse("1"), Node::parse("11")}};
    CHECK(!ExplicitSubtree(bad3).is_regular_dyadic());
}

TEST_CASE("compose with identity is a unit") {
    SubtreeGenerator g = pad01_gen();
    ExplicitSubtree m = g.materialize(2);
    ExplicitSubtree id2 = identity_gen().materialize(2);
    ExplicitSubtree id6 = identity_gen().materialize(6);
    CHECK(compose(id2, m).table() == m.table());
    CHECK(compose(m, id6).table() == m.table());
}

TEST_CASE("composition doubles the padded generator") {
    SubtreeGenerator g = pad01_gen();
    ExplicitSubtree twice = compose(g.materialize(2), g.materialize(6));
    SubtreeGenerator doubled{
        Node(), {{Node::parse("001001101"), Node::parse("101001101")}}};
    CHECK(twice.table() == doubled.materialize(2).table());
    CHECK(twice.is_regular_dyadic());
    // depth shortfall is an error
    CHECK_THROWS_AS(compose(g.materialize(2), g.materialize(5)), depth_mismatch_error);
}

TEST_CASE("compose is associative") {
    std::mt19937_64 rng(88);
    for (int it = 0; it < 10; ++it) {
        SubtreeGenerator a = gen::random_generator(rng, 2, 2, 1);
        SubtreeGenerator b = gen::random_generator(rng, 2, 2, 1);
        SubtreeGenerator c = gen::random_generator(rng, 2, 2, 1);
        ExplicitSubtree ma = a.materialize(2);
        std::size_t bd = 0, cd = 0;
        for (const auto& [t, img] : ma.table()) bd = std::max(bd, img.length());
        ExplicitSubtree mb = b.materialize(bd);
        for (const auto& [t, img] : mb.table()) cd = std::max(cd, img.length());
        ExplicitSubtree mc = c.materialize(cd);
        ExplicitSubtree left = compose(compose(ma, mb), mc);
        ExplicitSubtree right = compose(ma, compose(mb, mc));
        CHECK(left.table() == right.table());
    }
}

TEST_CASE("relative operations") {
    ExplicitSubtree m = pad01_gen().materialize(2);
    std::vector<Node> image = m.image();
    // identity tree: relative equals absolute
    ExplicitSubtree id = identity_gen().materialize(3);
    std::vector<Node> full = id.image();
    CHECK(relative_length(Node::parse("011"), full) == 3);
    CHECK(relative_meet(Node::parse("010"), Node::parse("0110"), full) == Node::parse("01"));

    CHECK(relative_meet(m.apply(Node::parse("00")), m.apply(Node::parse("01")), image) ==
          m.apply(Node::parse("0")));
    CHECK(relative_length(m.apply(Node::parse("11")), image) == 2);
    CHECK_THROWS_AS(relative_length(Node::parse("01"), image), not_in_subtree_error);
}

TEST_CASE("relative meet sits below the plain meet") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 30; ++it) {
        SubtreeGenerator g = gen::random_generator(rng);
        ExplicitSubtree m = g.materialize(4);
        std::vector<Node> image = m.image();
        for (int k = 0; k < 20; ++k) {
            Node a = m.apply(gen::random_node(rng, 4));
            Node b = m.apply(gen::random_node(rng, 4));
            Node rm = relative_meet(a, b, image);
            CHECK(is_initial_segment(rm, meet(a, b)));
        }
    }
}

TEST_CASE("relative length counts strict predecessors, preserved by images") {
    std::mt19937_64 rng(53);
    for (int it = 0; it < 30; ++it) {
        SubtreeGenerator g = gen::random_generator(rng);
        ExplicitSubtree m = g.materialize(4);
        std::vector<Node> image = m.image();
        for (const auto& [t, img] : m.table())
            CHECK(relative_length(img, image) == t.length());
    }
}

TEST_CASE("skew codes") {
    // single chain: every entry (1)
    std::vector<Node> chain{Node(), Node::parse("0"), Node::parse("01"), Node::parse("010"),
                            Node::parse("0100")};
    SkewCode c = skew_code(chain);
    CHECK(c.levels == std::vector<std::vector<int>>{{1}, {1}, {1}, {1}});
    CHECK(c.str() == "(1); (1); (1); (1)");

    // root splits, then two chains
    std::vector<Node> vee{Node(), Node::parse("0"), Node::parse("1"), Node::parse("00"),
                          Node::parse("11")};
    CHECK(skew_code(vee).levels == std::vector<std::vector<int>>{{2}, {1, 1}});

    // not skew: both level-1 nodes split
    std::vector<Node> wide{Node(),           Node::parse("0"),  Node::parse("1"),
                           Node::parse("00"), Node::parse("01"), Node::parse("10"),
                           Node::parse("11")};
    CHECK_THROWS_AS(skew_code(wide), not_skew_error);

    // two roots
    std::vector<Node> forest{Node::parse("0"), Node::parse("1")};
    CHECK_THROWS_AS(skew_code(forest), not_skew_error);
}

TEST_CASE("equal codes give order isomorphic trees") {
    // both trees: one split per level at the lex-max node, code (2); (1,2)
    std::vector<Node> a{Node(),           Node::parse("0"),   Node::parse("1"),
                        Node::parse("00"), Node::parse("10"), Node::parse("11")};
    std::vector<Node> b{Node::parse("1"),   Node::parse("10"),   Node::parse("11"),
                        Node::parse("100"), Node::parse("110"), Node::parse("111")};
    CHECK(skew_code(a) == skew_code(b));
    // build the level-wise lex matching and check both orders transfer
    auto by_level = [](const std::vector<Node>& t) {
        std::vector<std::vector<Node>> lv;
        for (const auto& n : t) {
            std::size_t l = relative_length(n, t);
            if (lv.size() <= l) lv.resize(l + 1);
            lv[l].push_back(n);
        }
        for (auto& one : lv)
            std::sort(one.begin(), one.end(),
                      [](const Node& x, const Node& y) { return lex_less(x, y); });
        return lv;
    };
    auto la = by_level(a), lb = by_level(b);
    REQUIRE(la.size() == lb.size());
    std::map<Node, Node> match;
    for (std::size_t l = 0; l < la.size(); ++l) {
        REQUIRE(la[l].size() == lb[l].size());
        for (std::size_t i = 0; i < la[l].size(); ++i) match[la[l][i]] = lb[l][i];
    }
    for (const auto& x : a)
        for (const auto& y : a) {
            if (x == y) continue;
            bool ext = is_initial_segment(x, y);
            CHECK(ext == is_initial_segment(match[x], match[y]));
            if (!ext && !is_initial_segment(y, x))
                CHECK(lex_less(x, y) == lex_less(match[x], match[y]));
        }
}

TEST_CASE("generator text round trip") {
    SubtreeGenerator g = pad01_gen();
    CHECK(SubtreeGenerator::parse(g.str()).str() == g.str());
    std::mt19937_64 rng(5);
    for (int it = 0; it < 50; ++it) {
        SubtreeGenerator r = gen::random_generator(rng);
        CHECK(SubtreeGenerator::parse(r.str()).str() == r.str());
    }
    CHECK_THROWS_AS(SubtreeGenerator::parse("root=01"), invalid_generator_error);
    CHECK_THROWS_AS(SubtreeGenerator::parse("001,101"), parse_error);
}

TEST_CASE("explicit subtree text round trip") {
    ExplicitSubtree m = pad01_gen().materialize(2);
    ExplicitSubtree back = ExplicitSubtree::parse(m.str());
    CHECK(back.table() == m.table());
    CHECK_THROWS_AS(ExplicitSubtree::parse("0 -> 00"), domain_error); // no root
}

TEST_CASE("image branch of a generator") {
    SubtreeGenerator g = pad01_gen();
    // the all-zero branch maps to repetitions of 001
    CHECK(g.image_branch(Branch::parse("*0")) == Branch::parse("*001"));
    CHECK(g.image_branch(Branch::parse("*1")) == Branch::parse("*101"));
    // image of sigma through the padded tree never goes eventually constant
    std::mt19937_64 rng(66);
    for (int it = 0; it < 60; ++it) {
        Branch sigma = gen::random_branch(rng, 3, 3);
        Branch img = g.image_branch(sigma);
        CHECK(!img.eventually_constant());
        // prefix consistency: materialized images are initial segments
        ExplicitSubtree m = g.materialize(5);
        for (std::size_t l = 0; l <= 5; ++l)
            CHECK(is_initial_segment(m.apply(sigma.prefix(l)), img));
    }
}

TEST_CASE("image branches preserve strict lex order") {
    std::mt19937_64 rng(91);
    for (int it = 0; it < 60; ++it) {
        SubtreeGenerator g = gen::random_generator(rng);
        Branch s1 = gen::random_branch(rng, 3, 3);
        Branch s2 = gen::random_branch(rng, 3, 3);
        if (s1 == s2) continue;
        int c = branch_cmp(s1, s2);
        int ci = branch_cmp(g.image_branch(s1), g.image_branch(s2));
        CHECK(c == ci);
    }
}
