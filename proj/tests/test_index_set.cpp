#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rosetree/index_set.hpp"

using namespace rosetree;

namespace {

ShapeComponent chain(const std::string& b) {
    return ShapeComponent{ShapeKind::Chain, Branch::parse(b)};
}
ShapeComponent incr(const std::string& b) {
    return ShapeComponent{ShapeKind::IncrAntichain, Branch::parse(b)};
}
ShapeComponent decr(const std::string& b) {
    return ShapeComponent{ShapeKind::DecrAntichain, Branch::parse(b)};
}

std::vector<Node> nodes(std::initializer_list<const char*> ts) {
    std::vector<Node> out;
    for (const char* t : ts) out.push_back(Node::parse(t));
    return out;
}

} // namespace

TEST_CASE("canonical monotone antichains") {
    CHECK(monotone_antichain_nodes(Branch::parse("*1"), true, 3) ==
          nodes({"10", "110", "1110"}));
    CHECK(monotone_antichain_nodes(Branch::parse("*0"), false, 3) ==
          nodes({"01", "001", "0001"}));
    CHECK(monotone_antichain_nodes(Branch::parse("*01"), true, 3) ==
          nodes({"00", "0100", "010100"}));
    CHECK(monotone_antichain_nodes(Branch::parse("*01"), false, 3) ==
          nodes({"011", "01011", "0101011"}));
    // the needed bit must occur in the period, not just the prefix
    CHECK_THROWS_AS(monotone_antichain_nodes(Branch::parse("1*0"), true, 2),
                    side_unavailable_error);
    CHECK_THROWS_AS(monotone_antichain_nodes(Branch::parse("*1"), false, 2),
                    side_unavailable_error);
}

TEST_CASE("offshoots never touch the spine") {
    for (const char* s : {"*01", "*10", "*011", "1*10", "01*001"}) {
        Branch sigma = Branch::parse(s);
        for (bool left : {true, false}) {
            auto ts = monotone_antichain_nodes(sigma, left, 6);
            REQUIRE(ts.size() == 6);
            for (const auto& t : ts) {
                CHECK(!is_initial_segment(t, sigma));
                CHECK(lex_less(t, sigma) == left);
            }
            for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
                CHECK(ts[i].length() < ts[i + 1].length());
                CHECK(lex_less(ts[i], ts[i + 1]) == left);
            }
        }
    }
}

TEST_CASE("symbolic sets parse and print") {
    IndexSet s = IndexSet::parse("chain *01; incr *10; node 010");
    CHECK(s.is_symbolic());
    CHECK(s.components().size() == 2);
    CHECK(s.extras().size() == 1);
    CHECK(s.str() == "chain *01; incr *10; node 010");
    CHECK(IndexSet::parse(s.str()) == s);

    IndexSet dup = IndexSet::symbolic({chain("*01"), chain("0*10")});
    CHECK(dup.components().size() == 1); // same canonical branch

    CHECK_THROWS_AS(IndexSet::parse("spiral *01"), parse_error);
    CHECK_THROWS_AS(IndexSet::parse("chain 01"), parse_error);
}

TEST_CASE("explicit sets parse with a depth bound") {
    IndexSet e = IndexSet::parse("node 0; node 10; node 110");
    CHECK(!e.is_symbolic());
    CHECK(e.explicit_nodes().size() == 3);
    CHECK(e.depth_bound() == 3);
    IndexSet e2 = IndexSet::parse("node 0", 9);
    CHECK(e2.depth_bound() == 9);
}

TEST_CASE("enumeration in canonical order") {
    IndexSet s = IndexSet::symbolic({chain("*01")});
    CHECK(s.enumerate(4) == nodes({"", "0", "01", "010", "0101"}));

    IndexSet u = IndexSet::symbolic({chain("*01"), incr("*01")});
    // offshoots 00 and 0100 interleave into the chain by level-then-lex order
    CHECK(u.enumerate(4) == nodes({"", "0", "00", "01", "010", "0100", "0101"}));

    IndexSet withextra = IndexSet::symbolic({chain("*1")}, nodes({"01"}));
    CHECK(withextra.enumerate(2) == nodes({"", "1", "01", "11"}));

    // duplicates across components collapse
    IndexSet two = IndexSet::symbolic({chain("*0"), chain("*01")});
    auto e = two.enumerate(3);
    CHECK(e == nodes({"", "0", "00", "01", "000", "010"}));
}

TEST_CASE("profiles of symbolic shapes") {
    ConvergenceProfile p = profile(IndexSet::symbolic({chain("*01")}));
    REQUIRE(p.target.has_value());
    CHECK(*p.target == Branch::parse("*01"));
    CHECK(p.has_chain == TriBool::Yes);
    CHECK(p.has_left == TriBool::No);
    CHECK(p.has_right == TriBool::No);
    CHECK(p.orthogonal_to_all == TriBool::No);
    CHECK(p.multi_target == TriBool::No);

    p = profile(IndexSet::symbolic({incr("*01")}));
    REQUIRE(p.target.has_value());
    CHECK(p.has_chain == TriBool::No);
    CHECK(p.has_left == TriBool::Yes);
    CHECK(p.orthogonal_to_all == TriBool::Yes);

    p = profile(IndexSet::symbolic({chain("*01"), decr("*01")}));
    CHECK(p.has_chain == TriBool::Yes);
    CHECK(p.has_right == TriBool::Yes);
    CHECK(p.orthogonal_to_all == TriBool::No);

    p = profile(IndexSet::symbolic({chain("*01"), chain("*10")}));
    CHECK(!p.target.has_value());
    CHECK(p.multi_target == TriBool::Yes);

    p = profile(IndexSet::symbolic({incr("*01"), decr("*10")}));
    CHECK(p.multi_target == TriBool::Yes);
    CHECK(p.orthogonal_to_all == TriBool::Yes); // no chain component at all
}

TEST_CASE("explicit convergence judgement") {
    std::vector<Node> on_chain, left_off, mixed;
    Branch one = Branch::parse("*1");
    for (std::size_t n = 0; n <= 10; ++n) on_chain.push_back(one.prefix(n));
    for (std::size_t n = 0; n <= 10; ++n) left_off.push_back(one.prefix(n).append(0));
    for (std::size_t n = 1; n <= 10; ++n) {
        mixed.push_back(Branch::parse("*0").prefix(n).append(1));
        mixed.push_back(one.prefix(n).append(0));
    }
    CHECK(converges_to(IndexSet::explicit_list(on_chain, 10), one, 10) == TriBool::Yes);
    CHECK(converges_to(IndexSet::explicit_list(left_off, 10), one, 10) == TriBool::Yes);
    CHECK(converges_to(IndexSet::explicit_list(mixed, 10), one, 10) == TriBool::No);
    // short data stays inconclusive
    CHECK(converges_to(IndexSet::explicit_list(nodes({"1", "11"}), 10), one, 10) ==
          TriBool::Unknown);
    // symbolic: exact by component inspection
    CHECK(converges_to(IndexSet::symbolic({chain("*1"), incr("*1")}), one, 5) == TriBool::Yes);
    CHECK(converges_to(IndexSet::symbolic({chain("*1"), incr("*0")}), one, 5) == TriBool::No);
}

TEST_CASE("explicit profile recovers an obvious chain") {
    std::vector<Node> on_chain;
    Branch sigma = Branch::parse("*10");
    for (std::size_t n = 0; n <= 12; ++n) on_chain.push_back(sigma.prefix(n));
    ConvergenceProfile p = profile(IndexSet::explicit_list(on_chain, 12));
    CHECK(p.has_chain == TriBool::Yes);
    CHECK(p.orthogonal_to_all == TriBool::No);
    REQUIRE(p.target.has_value());
    CHECK(*p.target == sigma);
}
