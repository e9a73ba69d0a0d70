#include "rosetree/canonicalizer.hpp"

#include <algorithm>
#include <cstdint>

#include "rosetree/errors.hpp"
#include "rosetree/estimate.hpp"
#include "rosetree/index_set.hpp"
#include "rosetree/subtree.hpp"

namespace rosetree {

FamilyEvaluator prototype_evaluator(int id) {
    if (id < 1 || id > 7)
        throw out_of_range_error("family id " + std::to_string(id) + " out of range");
    return [id](const Node& t, const Point& p) { return family_eval(id, t, p); };
}

std::vector<Node> canonical_monotone_antichain(const Branch& sigma, Side side,
                                               std::size_t count) {
    return monotone_antichain_nodes(sigma, side == Side::Left, count);
}

namespace {

// settled value of the family along one walk, one entry per point
std::vector<Rat> settle(const FamilyEvaluator& fam, const std::vector<Node>& walk,
                        const std::vector<Point>& points, const Rat& tol, Rat* residual) {
    std::vector<Rat> out;
    Rat worst = 0;
    for (const Point& p : points) {
        std::vector<Rat> vals;
        vals.reserve(walk.size());
        for (const Node& t : walk) vals.push_back(fam(t, p));
        TailEstimate e = estimate_tail(vals, tol);
        if (e.state != TailEstimate::State::Limit)
            throw not_cauchy_error("family does not settle along the inspected window");
        if (!e.exact && e.residual > tol)
            throw not_cauchy_error("tail residual above tolerance");
        if (!e.exact) worst = std::max(worst, e.residual);
        out.push_back(e.limit);
    }
    *residual = worst;
    return out;
}

bool close(const std::vector<Rat>& a, const std::vector<Rat>& b, const Rat& tol) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (rat_abs(a[i] - b[i]) > tol) return false;
    return true;
}

// deterministic single-pair embeddings used when a run needs a fresh start
SubtreeGenerator retry_generator(std::size_t attempt) {
    std::size_t len = 1 + (attempt - 1) % 3;
    std::uint64_t h = attempt * 0x9e3779b97f4a7c15ull;
    std::vector<std::uint8_t> w0{0}, w1{1};
    for (std::size_t i = 0; i + 1 < len; ++i) {
        w0.push_back(static_cast<std::uint8_t>((h >> i) & 1));
        w1.push_back(static_cast<std::uint8_t>((h >> i) & 1));
    }
    return SubtreeGenerator(Node(), {{Node(w0), Node(w1)}});
}

} // namespace

LimitTriple limit_triple(const FamilyEvaluator& fam, const Branch& sigma,
                         const std::vector<Point>& points,
                         std::pair<std::size_t, std::size_t> window, const Rat& tol) {
    if (points.empty()) throw domain_error("limit_triple needs a nonempty point grid");
    if (window.second < window.first + 4)
        throw too_short_error("depth window shorter than four steps");

    LimitTriple T;
    T.sigma = sigma;
    std::size_t len = window.second - window.first + 1;

    std::vector<Node> chain;
    for (std::size_t n = window.first; n <= window.second; ++n)
        chain.push_back(sigma.prefix(n));
    T.g0 = settle(fam, chain, points, tol, &T.r0);

    T.left_ok = !sigma.eventually_zero();
    T.right_ok = !sigma.eventually_one();
    if (T.left_ok) {
        T.gplus = settle(fam, canonical_monotone_antichain(sigma, Side::Left, len), points,
                         tol, &T.rplus);
    } else {
        T.gplus = T.g0;
        T.rplus = T.r0;
    }
    if (T.right_ok) {
        T.gminus = settle(fam, canonical_monotone_antichain(sigma, Side::Right, len), points,
                          tol, &T.rminus);
    } else {
        T.gminus = T.g0;
        T.rminus = T.r0;
    }
    return T;
}

std::string pattern_str(const EqualityPattern& p) {
    std::string s = p.g0_varies ? "g0 varying" : "g0 constant";
    s += p.eq_chain_plus ? ", g0=g+" : ", g0!=g+";
    s += p.eq_chain_minus ? ", g0=g-" : ", g0!=g-";
    s += p.eq_plus_minus ? ", g+=g-" : ", g+!=g-";
    if (p.gpm_constant) s += ", sides pinned";
    return s;
}

Classification classify(const FamilyEvaluator& fam, const std::vector<Branch>& sigma_samples,
                        const std::vector<Branch>& grid,
                        std::pair<std::size_t, std::size_t> window, const Rat& tol,
                        std::size_t subtree_budget) {
    std::vector<Branch> ss;
    for (const Branch& s : sigma_samples)
        if (std::find(ss.begin(), ss.end(), s) == ss.end()) ss.push_back(s);
    if (ss.size() < 3)
        throw pool_too_small_error("classification needs three distinct sample branches");
    for (const Branch& s : ss)
        if (s.eventually_constant())
            throw side_unavailable_error("sample branch " + s.str() + " is one-sided");
    if (window.second < window.first + 4)
        throw too_short_error("depth window shorter than four steps");
    if (grid.empty()) throw domain_error("classification needs a nonempty grid");

    Classification out;
    out.transport_used = subtree_budget;

    for (std::size_t attempt = 0; attempt <= subtree_budget; ++attempt) {
        FamilyEvaluator f = fam;
        std::vector<Branch> branches = grid;
        auto add = [&branches](const Branch& b) {
            if (std::find(branches.begin(), branches.end(), b) == branches.end())
                branches.push_back(b);
        };
        if (attempt > 0) {
            SubtreeGenerator S = retry_generator(attempt);
            f = [fam, S](const Node& t, const Point& p) { return fam(S.apply(t), p); };
            for (const Branch& s : ss) {
                add(S.image_branch(s));
                add(q_subtree().image_branch(S.image_branch(s)));
            }
        }
        for (const Branch& s : ss) {
            add(s);
            add(q_subtree().image_branch(s));
        }
        std::vector<Point> points;
        for (const Branch& b : branches) {
            points.push_back({1, b});
            points.push_back({2, b});
        }

        std::vector<LimitTriple> triples;
        bool settled = true;
        for (const Branch& s : ss) {
            try {
                triples.push_back(limit_triple(f, s, points, window, tol));
            } catch (const not_cauchy_error& e) {
                out.note = "sample " + s.str() + ": " + e.what();
                out.triples = triples;
                settled = false;
                break;
            }
        }
        if (!settled) continue;
        out.triples = triples;

        bool first = true, unanimous = true;
        bool ep = false, em = false, pm = false;
        for (const LimitTriple& T : triples) {
            bool tep = close(T.g0, T.gplus, tol);
            bool tem = close(T.g0, T.gminus, tol);
            bool tpm = close(T.gplus, T.gminus, tol);
            if (first) {
                ep = tep;
                em = tem;
                pm = tpm;
                first = false;
            } else if (tep != ep || tem != em || tpm != pm) {
                unanimous = false;
                break;
            }
        }
        if (!unanimous) {
            out.note = "equality pattern disagrees between samples";
            continue;
        }

        EqualityPattern pat;
        pat.eq_chain_plus = ep;
        pat.eq_chain_minus = em;
        pat.eq_plus_minus = pm;
        for (std::size_t i = 0; i < triples.size(); ++i)
            for (std::size_t j = i + 1; j < triples.size(); ++j)
                if (!close(triples[i].g0, triples[j].g0, tol)) pat.g0_varies = true;
        pat.gpm_constant = true;
        for (const LimitTriple& T : triples)
            if (!close(T.gplus, triples[0].gplus, tol) ||
                !close(T.gminus, triples[0].gplus, tol))
                pat.gpm_constant = false;

        int id = 0;
        if (ep && em && pm) {
            id = pat.g0_varies ? 2 : 1;
        } else if (pm && !ep && !em) {
            // a fixed side vector distinct from the varying chain limits marks
            // the collapsing family; a moving one marks the duplicate
            if (pat.gpm_constant && pat.g0_varies)
                id = 5;
            else if (!pat.gpm_constant)
                id = 6;
        } else if (ep && !em && !pm) {
            id = 3;
        } else if (em && !ep && !pm) {
            id = 4;
        } else if (!ep && !em && !pm) {
            id = 7;
        }
        if (id == 0) {
            out.note = "equality pattern matches no prototype";
            continue;
        }

        out.conclusive = true;
        out.id = id;
        out.pattern = pat;
        out.transport_used = attempt;
        out.note.clear();
        return out;
    }
    return out;
}

} // namespace rosetree
