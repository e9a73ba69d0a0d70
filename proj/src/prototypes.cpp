#include "rosetree/prototypes.hpp"

#include <algorithm>
#include <stdexcept>

#include "rosetree/errors.hpp"
#include "rosetree/estimate.hpp"

namespace rosetree {

const SubtreeGenerator& q_subtree() {
    static const SubtreeGenerator q{Node(), {{Node::parse("001"), Node::parse("101")}}};
    return q;
}

// ---------------------------------------------------------------- LimitFunction

LimitFunction LimitFunction::zero() {
    LimitFunction f;
    f.kind_ = Kind::Zero;
    return f;
}

LimitFunction LimitFunction::dirac(Branch sigma) {
    LimitFunction f;
    f.kind_ = Kind::Dirac;
    f.sigma_ = std::move(sigma);
    return f;
}

LimitFunction LimitFunction::xplus(Branch sigma) {
    LimitFunction f;
    f.kind_ = Kind::XPlus;
    f.sigma_ = std::move(sigma);
    return f;
}

LimitFunction LimitFunction::xminus(Branch sigma) {
    LimitFunction f;
    f.kind_ = Kind::XMinus;
    f.sigma_ = std::move(sigma);
    return f;
}

LimitFunction LimitFunction::const_real(Branch sigma) {
    LimitFunction f;
    f.kind_ = Kind::ConstReal;
    f.sigma_ = std::move(sigma);
    return f;
}

LimitFunction LimitFunction::scaled_indicator(Node t) {
    LimitFunction f;
    f.kind_ = Kind::ScaledIndicator;
    f.node_ = std::move(t);
    return f;
}

LimitFunction LimitFunction::indicator(Node t) {
    LimitFunction f;
    f.kind_ = Kind::Indicator;
    f.node_ = std::move(t);
    return f;
}

LimitFunction LimitFunction::pair(LimitFunction first, LimitFunction second) {
    LimitFunction f;
    f.kind_ = Kind::Pair;
    f.kids_.push_back(std::move(first));
    f.kids_.push_back(std::move(second));
    return f;
}

LimitFunction LimitFunction::member(int id, Node t) {
    if (id < 1 || id > 7) throw out_of_range_error("family id must be in 1..7");
    LimitFunction f;
    f.kind_ = Kind::Member;
    f.id_ = id;
    f.node_ = std::move(t);
    return f;
}

const Branch& LimitFunction::sigma() const {
    if (!sigma_) throw std::logic_error("variant has no branch parameter");
    return *sigma_;
}

const Node& LimitFunction::node() const {
    if (!node_) throw std::logic_error("variant has no node parameter");
    return *node_;
}

int LimitFunction::member_id() const {
    if (kind_ != Kind::Member) throw std::logic_error("not a family member");
    return id_;
}

const LimitFunction& LimitFunction::first() const {
    if (kind_ != Kind::Pair) throw std::logic_error("not a pair");
    return kids_[0];
}

const LimitFunction& LimitFunction::second() const {
    if (kind_ != Kind::Pair) throw std::logic_error("not a pair");
    return kids_[1];
}

Rat LimitFunction::eval(const Point& p) const {
    switch (kind_) {
        case Kind::Zero:
            return 0;
        case Kind::Dirac:
            return p.tau == *sigma_ ? 1 : 0;
        case Kind::XPlus:
            return (p.tau == *sigma_ || lex_less(*sigma_, p.tau)) ? 1 : 0;
        case Kind::XMinus:
            return lex_less(*sigma_, p.tau) ? 1 : 0;
        case Kind::ConstReal:
            return sigma_->value();
        case Kind::ScaledIndicator:
            return is_initial_segment(*node_, p.tau)
                       ? Rat(1) / Rat(static_cast<int>(node_->length()) + 1)
                       : Rat(0);
        case Kind::Indicator:
            return is_initial_segment(*node_, p.tau) ? 1 : 0;
        case Kind::Pair:
            return kids_[p.copy == 2 ? 1 : 0].eval(p);
        case Kind::Member:
            return family_eval(id_, *node_, p);
    }
    return 0;
}

namespace {

// w01^inf and w10^inf share their binary value and sit adjacent in lex
// order; the canonical representative is the eventually-zero expansion.
Branch upper_expansion(const Branch& s) {
    auto bits = s.prefix_word().bits();
    bits.back() = 1;
    return Branch{Node(bits), Node(std::vector<uint8_t>{0})};
}

} // namespace

LimitFunction LimitFunction::normal() const {
    switch (kind_) {
        case Kind::Member: {
            const Node& t = *node_;
            const SubtreeGenerator& q = q_subtree();
            switch (id_) {
                case 1:
                    return scaled_indicator(t).normal();
                case 2:
                    return const_real(node_then_constant(q.apply(t), 0)).normal();
                case 3:
                    return xplus(node_then_constant(q.apply(t), 0)).normal();
                case 4:
                    return xminus(node_then_constant(q.apply(t), 1)).normal();
                case 5:
                    return indicator(t).normal();
                case 6:
                    return pair(indicator(t), const_real(node_then_constant(t, 0))).normal();
                default:
                    return pair(indicator(q.apply(t)), xplus(node_then_constant(q.apply(t), 0)))
                        .normal();
            }
        }
        case Kind::Pair: {
            LimitFunction a = kids_[0].normal();
            LimitFunction b = kids_[1].normal();
            if (a.same_shape(b)) return a;  // identical on both copies
            return pair(std::move(a), std::move(b));
        }
        case Kind::XMinus: {
            const Branch& s = *sigma_;
            if (s == constant_branch(1)) return zero();  // nothing above the top branch
            if (s.eventually_one()) return xplus(upper_expansion(s)).normal();
            return *this;
        }
        case Kind::XPlus: {
            const Branch& s = *sigma_;
            if (s == constant_branch(1)) return dirac(s);  // only the top branch remains
            if (s.eventually_zero()) {
                const auto& bits = s.prefix_word().bits();
                if (std::all_of(bits.begin(), bits.end(), [](uint8_t b) { return b == 1; }))
                    return indicator(s.prefix_word());  // upper set of 1^m 0^inf is a cylinder
            }
            return *this;
        }
        case Kind::ConstReal: {
            const Branch& s = *sigma_;
            if (s == constant_branch(0)) return zero();
            if (s == constant_branch(1)) return indicator(Node());
            if (s.eventually_one()) return const_real(upper_expansion(s));
            return *this;
        }
        case Kind::ScaledIndicator:
            if (node_->length() == 0) return indicator(Node());
            return *this;
        default:
            return *this;
    }
}

bool LimitFunction::same_shape(const LimitFunction& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case Kind::Zero:
            return true;
        case Kind::Dirac:
        case Kind::XPlus:
        case Kind::XMinus:
        case Kind::ConstReal:
            return *sigma_ == *o.sigma_;
        case Kind::ScaledIndicator:
        case Kind::Indicator:
            return *node_ == *o.node_;
        case Kind::Member:
            return id_ == o.id_ && *node_ == *o.node_;
        case Kind::Pair:
            return kids_[0].same_shape(o.kids_[0]) && kids_[1].same_shape(o.kids_[1]);
    }
    return false;
}

bool LimitFunction::operator==(const LimitFunction& o) const {
    return normal().same_shape(o.normal());
}

std::string LimitFunction::str() const {
    switch (kind_) {
        case Kind::Zero:
            return "Zero";
        case Kind::Dirac:
            return "dirac(" + sigma_->str() + ")";
        case Kind::XPlus:
            return "x+(" + sigma_->str() + ")";
        case Kind::XMinus:
            return "x-(" + sigma_->str() + ")";
        case Kind::ConstReal:
            return "const(" + sigma_->str() + ")";
        case Kind::ScaledIndicator:
            return "scale(" + node_->str() + ")";
        case Kind::Indicator:
            return "v(" + node_->str() + ")";
        case Kind::Pair:
            return "(" + kids_[0].str() + ", " + kids_[1].str() + ")";
        case Kind::Member:
            return "d" + std::to_string(id_) + "(" + node_->str() + ")";
    }
    return "";
}

// ---------------------------------------------------------------- evaluation

Rat family_eval(int id, const Node& t, const Point& p) {
    const SubtreeGenerator& q = q_subtree();
    switch (id) {
        case 1:
            return is_initial_segment(t, p.tau)
                       ? Rat(1) / Rat(static_cast<int>(t.length()) + 1)
                       : Rat(0);
        case 2:
            return node_then_constant(q.apply(t), 0).value();
        case 3: {
            Branch s = node_then_constant(q.apply(t), 0);
            return (s == p.tau || lex_less(s, p.tau)) ? 1 : 0;
        }
        case 4:
            return lex_less(node_then_constant(q.apply(t), 1), p.tau) ? 1 : 0;
        case 5:
            return is_initial_segment(t, p.tau) ? 1 : 0;
        case 6:
            if (p.copy == 2) return node_then_constant(t, 0).value();
            return is_initial_segment(t, p.tau) ? 1 : 0;
        case 7: {
            Node s = q.apply(t);
            if (p.copy == 2) {
                Branch b = node_then_constant(s, 0);
                return (b == p.tau || lex_less(b, p.tau)) ? 1 : 0;
            }
            return is_initial_segment(s, p.tau) ? 1 : 0;
        }
        default:
            throw out_of_range_error("family id must be in 1..7");
    }
}

Rat family_eval(int id, const Node& t, const Branch& tau) {
    return family_eval(id, t, Point{1, tau});
}

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Convergent:
            return "Convergent";
        case Verdict::Divergent:
            return "Divergent";
        case Verdict::Unknown:
            return "Unknown";
    }
    return "";
}

// ---------------------------------------------------------------- membership

LimitFunction component_limit(int id, const ShapeComponent& c) {
    const Branch& s = c.branch;
    bool chain = c.kind == ShapeKind::Chain;
    bool left = c.kind == ShapeKind::IncrAntichain;
    const SubtreeGenerator& q = q_subtree();
    switch (id) {
        case 1:
            return LimitFunction::zero();
        case 2:
            return LimitFunction::const_real(q.image_branch(s)).normal();
        case 3: {
            Branch img = q.image_branch(s);
            // chains and left offshoots approach the image branch from the
            // left, so the threshold closes at it; right offshoots keep it out
            return (chain || left ? LimitFunction::xplus(img) : LimitFunction::xminus(img))
                .normal();
        }
        case 4: {
            Branch img = q.image_branch(s);
            return (left ? LimitFunction::xplus(img) : LimitFunction::xminus(img)).normal();
        }
        case 5:
            return chain ? LimitFunction::dirac(s) : LimitFunction::zero();
        case 6:
            return LimitFunction::pair(chain ? LimitFunction::dirac(s) : LimitFunction::zero(),
                                       LimitFunction::const_real(s))
                .normal();
        case 7: {
            Branch img = q.image_branch(s);
            LimitFunction second =
                chain || left ? LimitFunction::xplus(img) : LimitFunction::xminus(img);
            return LimitFunction::pair(chain ? LimitFunction::dirac(img) : LimitFunction::zero(),
                                       std::move(second))
                .normal();
        }
        default:
            throw out_of_range_error("family id must be in 1..7");
    }
}

namespace {

bool yes(TriBool v) { return v == TriBool::Yes; }

MembershipResult convergent(LimitFunction f) {
    MembershipResult r;
    r.verdict = Verdict::Convergent;
    r.limit = std::move(f);
    return r;
}

MembershipResult divergent(IndexSet a, IndexSet b, LimitFunction la, LimitFunction lb) {
    MembershipResult r;
    r.verdict = Verdict::Divergent;
    r.witness = DivergenceWitness{std::move(a), std::move(b), std::move(la), std::move(lb)};
    return r;
}

// Three-way split of an explicit list against a candidate limit branch.
struct ExplicitSplit {
    std::vector<Node> on, lower, upper;
};

ExplicitSplit split_against(const IndexSet& L, const Branch& cand) {
    ExplicitSplit s;
    for (const Node& n : L.explicit_nodes()) {
        if (is_initial_segment(n, cand))
            s.on.push_back(n);
        else if (lex_less(n, cand))
            s.lower.push_back(n);
        else
            s.upper.push_back(n);
    }
    return s;
}

MembershipResult explicit_membership(int id, const IndexSet& L) {
    ConvergenceProfile p = profile(L);
    MembershipResult unknown;
    const SubtreeGenerator& q = q_subtree();
    auto part = [&](std::vector<Node> nodes) {
        return IndexSet::explicit_list(std::move(nodes), L.depth_bound());
    };
    auto merged = [](std::vector<Node> a, const std::vector<Node>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    switch (id) {
        case 2:
            if (p.target)
                return convergent(
                    LimitFunction::const_real(q.image_branch(*p.target)).normal());
            return unknown;
        case 3: {
            if (!p.target) return unknown;
            if (yes(p.has_right) && (yes(p.has_chain) || yes(p.has_left))) {
                ExplicitSplit s = split_against(L, *p.target);
                Branch img = q.image_branch(*p.target);
                return divergent(part(merged(s.on, s.lower)), part(s.upper),
                                 LimitFunction::xplus(img).normal(),
                                 LimitFunction::xminus(img).normal());
            }
            return unknown;
        }
        case 4: {
            if (!p.target) return unknown;
            if (yes(p.has_left) && (yes(p.has_chain) || yes(p.has_right))) {
                ExplicitSplit s = split_against(L, *p.target);
                Branch img = q.image_branch(*p.target);
                return divergent(part(merged(s.on, s.upper)), part(s.lower),
                                 LimitFunction::xminus(img).normal(),
                                 LimitFunction::xplus(img).normal());
            }
            return unknown;
        }
        case 5: {
            if (yes(p.orthogonal_to_all)) return convergent(LimitFunction::zero());
            if (p.target && yes(p.has_chain) && (yes(p.has_left) || yes(p.has_right))) {
                ExplicitSplit s = split_against(L, *p.target);
                return divergent(part(s.on), part(merged(s.lower, s.upper)),
                                 LimitFunction::dirac(*p.target), LimitFunction::zero());
            }
            return unknown;
        }
        case 6: {
            if (p.target && yes(p.orthogonal_to_all))
                return convergent(LimitFunction::pair(LimitFunction::zero(),
                                                      LimitFunction::const_real(*p.target))
                                      .normal());
            if (p.target && yes(p.has_chain) && (yes(p.has_left) || yes(p.has_right))) {
                ExplicitSplit s = split_against(L, *p.target);
                LimitFunction cr = LimitFunction::const_real(*p.target);
                return divergent(
                    part(s.on), part(merged(s.lower, s.upper)),
                    LimitFunction::pair(LimitFunction::dirac(*p.target), cr).normal(),
                    LimitFunction::pair(LimitFunction::zero(), cr).normal());
            }
            return unknown;
        }
        case 7: {
            if (!p.target) return unknown;
            Branch img = q.image_branch(*p.target);
            LimitFunction low = LimitFunction::pair(LimitFunction::zero(),
                                                    LimitFunction::xplus(img))
                                    .normal();
            LimitFunction high = LimitFunction::pair(LimitFunction::zero(),
                                                     LimitFunction::xminus(img))
                                     .normal();
            LimitFunction on = LimitFunction::pair(LimitFunction::dirac(img),
                                                   LimitFunction::xplus(img))
                                   .normal();
            ExplicitSplit s = split_against(L, *p.target);
            if (yes(p.has_left) && yes(p.has_right))
                return divergent(part(s.lower), part(s.upper), low, high);
            if (yes(p.has_chain) && yes(p.has_left))
                return divergent(part(s.on), part(s.lower), on, low);
            if (yes(p.has_chain) && yes(p.has_right))
                return divergent(part(s.on), part(s.upper), on, high);
            return unknown;
        }
        default:
            return unknown;
    }
}

} // namespace

MembershipResult family_membership(int id, const IndexSet& L) {
    if (id < 1 || id > 7) throw out_of_range_error("family id must be in 1..7");
    bool finite_only = L.is_symbolic() ? L.components().empty() : L.explicit_nodes().empty();
    if (finite_only) return MembershipResult{};  // no tail to judge
    if (id == 1) return convergent(LimitFunction::zero());
    if (!L.is_symbolic()) return explicit_membership(id, L);

    const auto& cs = L.components();
    std::vector<LimitFunction> lims;
    lims.reserve(cs.size());
    for (const auto& c : cs) lims.push_back(component_limit(id, c));
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j)
            if (lims[i] != lims[j])
                return divergent(IndexSet::symbolic({cs[i]}), IndexSet::symbolic({cs[j]}),
                                 lims[i], lims[j]);
    return convergent(lims.front());
}

// ---------------------------------------------------------------- numeric oracle

std::vector<Branch> default_grid() {
    std::vector<Branch> out;
    for (const char* pre : {"", "0", "1", "01", "10"}) {
        for (const char* per : {"0", "1", "01"}) {
            Branch b{Node::parse(pre), Node::parse(per)};
            if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
        }
    }
    return out;
}

NumericResult numeric_convergence(int id, const IndexSet& L, const std::vector<Branch>& grid,
                                  std::size_t depth, const Rat& tol) {
    if (id < 1 || id > 7) throw out_of_range_error("family id must be in 1..7");
    std::vector<Node> everything = L.enumerate(depth);
    if (everything.empty())
        throw empty_enumeration_error("index set contributes no nodes at this depth");

    std::vector<Branch> bs = grid;
    auto add = [&](const Branch& b) {
        if (std::find(bs.begin(), bs.end(), b) == bs.end()) bs.push_back(b);
    };
    const SubtreeGenerator& q = q_subtree();
    bool structured = L.is_symbolic() && !L.components().empty();
    if (structured) {
        for (const auto& c : L.components()) {
            add(c.branch);
            add(q.image_branch(c.branch));
        }
        const auto& cs = L.components();
        for (std::size_t i = 0; i < cs.size(); ++i) {
            for (std::size_t j = i + 1; j < cs.size(); ++j) {
                if (cs[i].branch == cs[j].branch) continue;
                Node m = meet(cs[i].branch, cs[j].branch);
                Branch lo = node_then_constant(m.append(0), 1);
                Branch hi = node_then_constant(m.append(1), 0);
                add(lo);
                add(hi);
                add(q.image_branch(lo));
                add(q.image_branch(hi));
            }
        }
    }

    NumericResult res;
    for (const Branch& b : bs) {
        res.points.push_back(Point{1, b});
        if (id == 6 || id == 7) res.points.push_back(Point{2, b});
    }

    bool any_unknown = false;
    std::vector<Rat> limits;
    for (std::size_t pi = 0; pi < res.points.size(); ++pi) {
        const Point& p = res.points[pi];
        auto diverge_here = [&](const Rat& gap) {
            res.verdict = Verdict::Divergent;
            res.witness = pi;
            res.witness_gap = gap;
            res.limits.clear();
            return res;
        };
        if (structured) {
            std::vector<std::pair<Rat, bool>> comp_limits;  // value, exact
            bool point_unknown = false;
            for (const auto& c : L.components()) {
                std::vector<Rat> vals;
                for (const Node& t : enumerate_component(c, depth))
                    vals.push_back(family_eval(id, t, p));
                TailEstimate est = estimate_tail(vals, tol);
                if (est.state == TailEstimate::State::Oscillates)
                    return diverge_here(rat_abs(est.limit - est.alt));
                if (est.state == TailEstimate::State::Unknown) {
                    point_unknown = true;
                    break;
                }
                comp_limits.emplace_back(est.limit, est.exact);
            }
            if (point_unknown) {
                any_unknown = true;
                limits.push_back(0);
                continue;
            }
            for (std::size_t i = 0; i < comp_limits.size(); ++i) {
                for (std::size_t j = i + 1; j < comp_limits.size(); ++j) {
                    Rat gap = rat_abs(comp_limits[i].first - comp_limits[j].first);
                    bool both_exact = comp_limits[i].second && comp_limits[j].second;
                    if ((both_exact && gap != 0) || gap > tol) return diverge_here(gap);
                }
            }
            limits.push_back(comp_limits.front().first);
        } else {
            std::vector<Rat> vals;
            for (const Node& t : everything) vals.push_back(family_eval(id, t, p));
            TailEstimate est = estimate_tail(vals, tol);
            if (est.state == TailEstimate::State::Oscillates)
                return diverge_here(rat_abs(est.limit - est.alt));
            if (est.state == TailEstimate::State::Unknown) {
                any_unknown = true;
                limits.push_back(0);
                continue;
            }
            limits.push_back(est.limit);
        }
    }
    if (any_unknown) {
        res.verdict = Verdict::Unknown;
        return res;
    }
    res.verdict = Verdict::Convergent;
    res.limits = std::move(limits);
    return res;
}

// ---------------------------------------------------------------- Helly space

std::map<Node, std::pair<Rat, Rat>> helly_intervals(std::size_t depth) {
    std::map<Node, std::pair<Rat, Rat>> out;
    out[Node()] = {Rat(0), Rat(1)};
    std::vector<Node> frontier{Node()};
    for (std::size_t level = 0; level < depth; ++level) {
        std::vector<Node> next;
        for (const Node& t : frontier) {
            auto [a, b] = out[t];
            Rat w = (b - a) / 3;
            out[t.append(0)] = {a, a + w};
            out[t.append(1)] = {b - w, b};
            next.push_back(t.append(0));
            next.push_back(t.append(1));
        }
        frontier = std::move(next);
    }
    return out;
}

Rat helly_eval(const Node& t, const Rat& x) {
    if (x < 0 || x > 1) throw out_of_range_error("helly functions live on [0,1]");
    Rat a = 0, b = 1;
    for (uint8_t bit : t.bits()) {
        Rat w = (b - a) / 3;
        if (bit == 0)
            b = a + w;
        else
            a = b - w;
    }
    if (x > b) return 1;
    if (x < a) return 0;
    return Rat(1) / 2;
}

} // namespace rosetree
