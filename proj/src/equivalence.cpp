#include "rosetree/equivalence.hpp"

#include <algorithm>
#include <string>

#include "rosetree/errors.hpp"

namespace rosetree {

FamilyOracle prototype_oracle(int id) {
    if (id < 1 || id > 7)
        throw out_of_range_error("family id " + std::to_string(id) + " out of range");
    return [id](const IndexSet& L) { return family_membership(id, L); };
}

EquivalenceVerdict equivalent(const FamilyOracle& left, const FamilyOracle& right,
                              const std::vector<IndexSet>& battery) {
    if (battery.empty()) throw domain_error("equivalence battery is empty");
    for (std::size_t i = 0; i < battery.size(); ++i) {
        MembershipResult a = left(battery[i]);
        MembershipResult b = right(battery[i]);
        if (a.verdict == Verdict::Unknown || b.verdict == Verdict::Unknown)
            throw oracle_unknown_error("battery element " + std::to_string(i) + " (" +
                                       battery[i].str() + ") undecided");
        if (a.verdict != b.verdict) {
            EquivalenceVerdict v;
            v.equivalent = false;
            v.witness = battery[i];
            v.left = a.verdict;
            v.right = b.verdict;
            v.witness_index = i;
            return v;
        }
    }
    return {};
}

IndexSet transport(const IndexSet& L, const SubtreeGenerator& S) {
    if (L.is_symbolic()) {
        std::vector<ShapeComponent> cs;
        for (const ShapeComponent& c : L.components())
            cs.push_back({c.kind, S.image_branch(c.branch)});
        std::vector<Node> ex;
        for (const Node& t : L.extras()) ex.push_back(S.apply(t));
        return IndexSet::symbolic(std::move(cs), std::move(ex));
    }
    std::vector<Node> ns;
    std::size_t depth = std::max<std::size_t>(L.depth_bound(), 1);
    for (const Node& t : L.explicit_nodes()) {
        ns.push_back(S.apply(t));
        depth = std::max(depth, ns.back().length());
    }
    return IndexSet::explicit_list(std::move(ns), depth);
}

std::vector<IndexSet> standard_battery(const std::vector<Branch>& pool) {
    std::vector<Branch> ps;
    for (const Branch& b : pool)
        if (std::find(ps.begin(), ps.end(), b) == ps.end()) ps.push_back(b);
    if (ps.size() < 2)
        throw pool_too_small_error("battery pool needs two distinct branches, got " +
                                   std::to_string(ps.size()));
    for (const Branch& b : ps)
        if (b.eventually_constant())
            throw side_unavailable_error("battery pool branch " + b.str() +
                                         " does not use both bits infinitely often");

    auto C = [](const Branch& b) { return ShapeComponent{ShapeKind::Chain, b}; };
    auto I = [](const Branch& b) { return ShapeComponent{ShapeKind::IncrAntichain, b}; };
    auto D = [](const Branch& b) { return ShapeComponent{ShapeKind::DecrAntichain, b}; };
    auto sym = [](std::vector<ShapeComponent> cs) { return IndexSet::symbolic(std::move(cs)); };

    std::vector<IndexSet> base;
    for (const Branch& s : ps) {
        base.push_back(sym({C(s)}));
        base.push_back(sym({I(s)}));
        base.push_back(sym({D(s)}));
        base.push_back(sym({C(s), I(s)}));
        base.push_back(sym({C(s), D(s)}));
        base.push_back(sym({I(s), D(s)}));
        base.push_back(sym({C(s), I(s), D(s)}));
    }
    // Cross-branch chain pairs first: they are the earliest battery elements
    // able to separate a constant-limit family from a branch-tracking one.
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            base.push_back(sym({C(ps[i]), C(ps[j])}));
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = 0; j < ps.size(); ++j)
            if (i != j) base.push_back(sym({I(ps[i]), D(ps[j])}));
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = 0; j < ps.size(); ++j)
            if (i != j) base.push_back(sym({C(ps[i]), I(ps[j])}));
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = 0; j < ps.size(); ++j)
            if (i != j) base.push_back(sym({C(ps[i]), D(ps[j])}));
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            base.push_back(sym({I(ps[i]), I(ps[j])}));
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            base.push_back(sym({D(ps[i]), D(ps[j])}));

    std::vector<IndexSet> out = base;
    // Finitely many stray indices never change a convergence class; battery
    // copies with noise keep the oracles honest about that.
    const std::vector<std::vector<Node>> noises = {
        {Node::parse("0"), Node::parse("10")},
        {Node::parse("1"), Node::parse("01"), Node::parse("110")},
    };
    for (const auto& noise : noises)
        for (const IndexSet& L : base) out.push_back(IndexSet::symbolic(L.components(), noise));
    return out;
}

} // namespace rosetree
