#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <utility>

#include "rosetree/antichain.hpp"
#include "rosetree/canonicalizer.hpp"
#include "rosetree/errors.hpp"

using namespace rosetree;

namespace {

Branch B(const char* s) { return Branch::parse(s); }
Node N(const char* s) { return Node::parse(s); }

const Rat kTol(1, 1000000000);
const std::pair<std::size_t, std::size_t> kWin{4, 12};

// grid with the threshold branches a classification run would inject itself
std::vector<Point> both_copies(std::vector<Branch> branches) {
    std::vector<Point> out;
    for (const Branch& b : branches) {
        out.push_back({1, b});
        out.push_back({2, b});
    }
    return out;
}

std::vector<Branch> grid_for(const Branch& sigma) {
    std::vector<Branch> g = default_grid();
    for (const Branch& extra : {sigma, q_subtree().image_branch(sigma)})
        if (std::find(g.begin(), g.end(), extra) == g.end()) g.push_back(extra);
    return g;
}

} // namespace

TEST_CASE("canonical antichain walks sit on the offshoot positions") {
    CHECK(canonical_monotone_antichain(B("*1"), Side::Left, 3) ==
          std::vector<Node>{N("10"), N("110"), N("1110")});
    CHECK(canonical_monotone_antichain(B("*0"), Side::Right, 3) ==
          std::vector<Node>{N("01"), N("001"), N("0001")});
    CHECK(canonical_monotone_antichain(B("*01"), Side::Left, 3) ==
          std::vector<Node>{N("00"), N("0100"), N("010100")});
    CHECK(canonical_monotone_antichain(B("*01"), Side::Right, 3) ==
          std::vector<Node>{N("011"), N("01011"), N("0101011")});
    CHECK_THROWS_AS(canonical_monotone_antichain(B("*1"), Side::Right, 2),
                    side_unavailable_error);
    CHECK_THROWS_AS(canonical_monotone_antichain(B("0*0"), Side::Left, 2),
                    side_unavailable_error);

    // left walks increase toward the branch, right walks decrease
    for (const char* s : {"*01", "*0011", "1*10"}) {
        auto left = canonical_monotone_antichain(B(s), Side::Left, 6);
        auto right = canonical_monotone_antichain(B(s), Side::Right, 6);
        CHECK(classify_antichain(left) == AntichainKind::Increasing);
        CHECK(classify_antichain(right) == AntichainKind::Decreasing);
    }
}

TEST_CASE("limit triples match the closed-form walk limits exactly") {
    const Branch sigma = B("*01");
    const std::vector<Point> points = both_copies(grid_for(sigma));

    for (int id = 1; id <= 7; ++id) {
        CAPTURE(id);
        LimitTriple T = limit_triple(prototype_evaluator(id), sigma, points, kWin, kTol);
        CHECK(T.left_ok);
        CHECK(T.right_ok);
        CHECK(T.r0 == 0);
        CHECK(T.rplus == 0);
        CHECK(T.rminus == 0);

        LimitFunction l0 = component_limit(id, {ShapeKind::Chain, sigma});
        LimitFunction lp = component_limit(id, {ShapeKind::IncrAntichain, sigma});
        LimitFunction lm = component_limit(id, {ShapeKind::DecrAntichain, sigma});
        for (std::size_t k = 0; k < points.size(); ++k) {
            CAPTURE(k);
            CHECK(T.g0[k] == l0.eval(points[k]));
            CHECK(T.gplus[k] == lp.eval(points[k]));
            CHECK(T.gminus[k] == lm.eval(points[k]));
        }
    }
}

TEST_CASE("a one-sided branch folds the missing walk onto the chain") {
    const std::vector<Point> points = both_copies({B("*1"), B("*0"), B("*01")});

    LimitTriple T = limit_triple(prototype_evaluator(5), B("*1"), points, kWin, kTol);
    CHECK(T.left_ok);
    CHECK_FALSE(T.right_ok);
    CHECK(T.gminus == T.g0);
    CHECK(T.rminus == T.r0);
    CHECK(T.gplus != T.g0);  // the honest left walk still collapses to zero

    T = limit_triple(prototype_evaluator(5), B("1*0"), points, kWin, kTol);
    CHECK_FALSE(T.left_ok);
    CHECK(T.right_ok);
    CHECK(T.gplus == T.g0);
}

TEST_CASE("classification recovers each family from raw evaluations") {
    const std::vector<Branch> samples = {B("*01"), B("*10"), B("*0011")};
    const std::vector<Branch> grid = default_grid();

    for (int id = 1; id <= 7; ++id) {
        CAPTURE(id);
        Classification c = classify(prototype_evaluator(id), samples, grid, kWin, kTol, 2);
        REQUIRE(c.conclusive);
        CHECK(c.id == id);
        CHECK(c.transport_used == 0);
        CHECK(c.triples.size() == samples.size());
        CHECK(c.note.empty());
        CHECK_FALSE(pattern_str(c.pattern).empty());

        const EqualityPattern& p = c.pattern;
        switch (id) {
        case 1:
            CHECK((p.eq_chain_plus && p.eq_chain_minus && p.eq_plus_minus));
            CHECK_FALSE(p.g0_varies);
            break;
        case 2:
            CHECK((p.eq_chain_plus && p.eq_chain_minus && p.eq_plus_minus));
            CHECK(p.g0_varies);
            break;
        case 3:
            CHECK(p.eq_chain_plus);
            CHECK_FALSE(p.eq_chain_minus);
            CHECK_FALSE(p.eq_plus_minus);
            break;
        case 4:
            CHECK(p.eq_chain_minus);
            CHECK_FALSE(p.eq_chain_plus);
            CHECK_FALSE(p.eq_plus_minus);
            break;
        case 5:
            CHECK(p.eq_plus_minus);
            CHECK_FALSE(p.eq_chain_plus);
            CHECK(p.gpm_constant);
            CHECK(p.g0_varies);
            break;
        case 6:
            CHECK(p.eq_plus_minus);
            CHECK_FALSE(p.eq_chain_plus);
            CHECK_FALSE(p.gpm_constant);
            break;
        case 7:
            CHECK_FALSE(p.eq_chain_plus);
            CHECK_FALSE(p.eq_chain_minus);
            CHECK_FALSE(p.eq_plus_minus);
            break;
        }
    }
}

TEST_CASE("classification follows a family moved along an embedding") {
    const std::vector<Branch> samples = {B("*01"), B("*10"), B("*0011")};
    const std::vector<SubtreeGenerator> moves = {
        q_subtree(),
        SubtreeGenerator(Node(), {{N("00"), N("10")}}),
    };

    for (const SubtreeGenerator& S : moves) {
        std::vector<Branch> grid = default_grid();
        for (const Branch& s : samples) {
            grid.push_back(S.image_branch(s));
            grid.push_back(q_subtree().image_branch(S.image_branch(s)));
        }
        for (int id = 1; id <= 7; ++id) {
            CAPTURE(id);
            FamilyEvaluator fam = prototype_evaluator(id);
            FamilyEvaluator moved = [fam, &S](const Node& t, const Point& p) {
                return fam(S.apply(t), p);
            };
            Classification c = classify(moved, samples, grid, kWin, kTol, 2);
            REQUIRE(c.conclusive);
            CHECK(c.id == id);
            CHECK(c.transport_used == 0);
        }
    }
}

TEST_CASE("classification reports when runs never settle") {
    // ones-count parity flickers along every chain and keeps flickering under
    // any uniform-word embedding, so every transport attempt fails too
    FamilyEvaluator flicker = [](const Node& t, const Point&) {
        std::size_t ones = 0;
        for (uint8_t b : t.bits()) ones += b;
        return Rat(ones % 2);
    };
    Classification c =
        classify(flicker, {B("*01"), B("*10"), B("*0011")}, default_grid(), kWin, kTol, 2);
    CHECK_FALSE(c.conclusive);
    CHECK(c.id == 0);
    CHECK(c.transport_used == 2);
    CHECK_FALSE(c.note.empty());
}

TEST_CASE("classification validates its inputs") {
    const std::vector<Branch> samples = {B("*01"), B("*10"), B("*0011")};
    const std::vector<Branch> grid = default_grid();
    FamilyEvaluator fam = prototype_evaluator(1);

    CHECK_THROWS_AS(classify(fam, samples, grid, {4, 7}, kTol, 2), too_short_error);
    CHECK_THROWS_AS(classify(fam, {B("*01"), B("*10")}, grid, kWin, kTol, 2),
                    pool_too_small_error);
    // 0*10 and *01 name the same branch, so the pool is really two elements
    CHECK_THROWS_AS(classify(fam, {B("*01"), B("*10"), B("0*10")}, grid, kWin, kTol, 2),
                    pool_too_small_error);
    CHECK_THROWS_AS(classify(fam, {B("*01"), B("*10"), B("*1")}, grid, kWin, kTol, 2),
                    side_unavailable_error);
    CHECK_THROWS_AS(classify(fam, samples, {}, kWin, kTol, 2), domain_error);

    CHECK_THROWS_AS(limit_triple(fam, B("*01"), {}, kWin, kTol), domain_error);
    CHECK_THROWS_AS(limit_triple(fam, B("*01"), both_copies({B("*0")}), {4, 7}, kTol),
                    too_short_error);
    CHECK_THROWS_AS(prototype_evaluator(0), out_of_range_error);
    CHECK_THROWS_AS(prototype_evaluator(8), out_of_range_error);

    // the wrapper really is the family
    CHECK(prototype_evaluator(2)(N("01"), Point{1, B("*0")}) ==
          family_eval(2, N("01"), Point{1, B("*0")}));
}
