// Command-line front end: tree calculations, subtree embeddings, antichain
// tools, the seven function families, classification, equivalence and block
// sequences.  Plain text by default, a full JSON report with --json.
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rosetree/antichain.hpp"
#include "rosetree/blockseq.hpp"
#include "rosetree/canonicalizer.hpp"
#include "rosetree/equivalence.hpp"
#include "rosetree/errors.hpp"
#include "rosetree/estimate.hpp"
#include "rosetree/prototypes.hpp"
#include "rosetree/subtree.hpp"

using namespace rosetree;
using json = nlohmann::ordered_json;

namespace {

bool g_json = false;

// exit-4 signal: the classification report is already written
struct inconclusive_exit {};

void emit(const std::string& command, const json& inputs, const json& result,
          const json& diagnostics, std::string text) {
    if (g_json) {
        json rep;
        rep["command"] = command;
        rep["inputs"] = inputs.is_null() ? json::object() : inputs;
        rep["result"] = result.is_null() ? json::object() : result;
        rep["diagnostics"] = diagnostics.is_null() ? json::object() : diagnostics;
        std::cout << rep.dump(2) << "\n";
        return;
    }
    while (!text.empty() && text.back() == '\n') text.pop_back();
    std::cout << text << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot read file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

Point parse_point(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) return {1, Branch::parse(text)};
    int copy = 0;
    try {
        copy = std::stoi(text.substr(0, colon));
    } catch (const std::exception&) {
        throw parse_error("point copy must be 1 or 2 in \"" + text + "\"");
    }
    if (copy != 1 && copy != 2) throw parse_error("point copy must be 1 or 2");
    return {copy, Branch::parse(text.substr(colon + 1))};
}

std::string point_str(const Point& p) {
    return (p.copy == 2 ? "2:" : "") + p.tau.str();
}

std::vector<Branch> parse_branches(const std::string& text) {
    std::vector<Branch> out;
    for (const std::string& s : split(text, ','))
        if (!s.empty()) out.push_back(Branch::parse(s));
    return out;
}

std::vector<Node> parse_nodes(const std::vector<std::string>& args) {
    std::vector<Node> out;
    out.reserve(args.size());
    for (const std::string& s : args) out.push_back(Node::parse(s));
    return out;
}

// node text with a visible root marker, used in files and tables
std::string node_mark(const Node& t) { return t.empty() ? "e" : t.str(); }
Node parse_mark(const std::string& s) { return s == "e" ? Node() : Node::parse(s); }

unsigned long to_ulong(const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw parse_error("expected a number, got \"" + text + "\"");
    return std::stoul(text);
}

std::pair<std::size_t, std::size_t> parse_window(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 2) throw parse_error("window must be \"n0,n1\"");
    return {to_ulong(parts[0]), to_ulong(parts[1])};
}

std::vector<Node> load_node_lines(const std::string& path) {
    std::vector<Node> out;
    std::istringstream in(read_file(path));
    std::string tok;
    while (in >> tok) out.push_back(parse_mark(tok));
    return out;
}

std::string join_nodes(const std::vector<Node>& nodes) {
    std::string out;
    for (const Node& n : nodes) {
        if (!out.empty()) out += ' ';
        out += node_mark(n);
    }
    return out;
}

json nodes_json(const std::vector<Node>& nodes) {
    json a = json::array();
    for (const Node& n : nodes) a.push_back(n.str());
    return a;
}

// ------------------------------------------------------------ skew tree files

SkewSubtree parse_skew(const std::string& text) {
    SkewSubtree S;
    bool first = true;
    for (const std::string& line : split(text, '\n')) {
        std::istringstream in(line);
        std::string tok;
        if (first) {
            in >> tok;
            if (tok == "increasing")
                S.increasing = true;
            else if (tok == "decreasing")
                S.increasing = false;
            else
                throw parse_error("skew tree file must start 'increasing' or 'decreasing'");
            first = false;
            continue;
        }
        std::vector<Node> level;
        while (in >> tok) level.push_back(parse_mark(tok));
        if (!level.empty()) S.levels.push_back(std::move(level));
    }
    if (first) throw parse_error("empty skew tree file");
    return S;
}

std::string format_skew(const SkewSubtree& S) {
    std::string out = S.increasing ? "increasing\n" : "decreasing\n";
    for (const auto& level : S.levels) {
        out += join_nodes(level);
        out += '\n';
    }
    return out;
}

// --------------------------------------------------------------- family specs

// Family expressions: proto:<id>, v, x+, x-, const:<rat>, scale(E),
// pair(E;F), sums and differences.  v is the binary value of the node,
// x+ / x- are the thresholds of its 0- and 1-fills.
struct FamilyParser {
    std::string text;
    std::size_t at = 0;

    explicit FamilyParser(std::string t) : text(std::move(t)) {}

    void skip() {
        while (at < text.size() && text[at] == ' ') ++at;
    }

    bool eat(const std::string& word) {
        skip();
        if (text.compare(at, word.size(), word) != 0) return false;
        at += word.size();
        return true;
    }

    std::string until_any(const std::string& stops) {
        std::size_t start = at;
        while (at < text.size() && stops.find(text[at]) == std::string::npos) ++at;
        return text.substr(start, at - start);
    }

    FamilyEvaluator parse() {
        FamilyEvaluator e = expr();
        skip();
        if (at != text.size())
            throw parse_error("trailing family text \"" + text.substr(at) + "\"");
        return e;
    }

    FamilyEvaluator expr() {
        FamilyEvaluator acc = term();
        for (;;) {
            skip();
            if (at < text.size() && (text[at] == '+' || text[at] == '-')) {
                bool plus = text[at] == '+';
                ++at;
                FamilyEvaluator rhs = term();
                FamilyEvaluator lhs = acc;
                acc = [lhs, rhs, plus](const Node& t, const Point& p) {
                    return plus ? lhs(t, p) + rhs(t, p) : Rat(lhs(t, p) - rhs(t, p));
                };
            } else {
                return acc;
            }
        }
    }

    FamilyEvaluator term() {
        skip();
        if (eat("proto:")) {
            int id = static_cast<int>(to_ulong(until_any("+- );")));
            return prototype_evaluator(id);
        }
        if (eat("const:")) {
            Rat r = rat_parse(until_any("+- );"));
            return [r](const Node&, const Point&) { return r; };
        }
        if (eat("scale(")) {
            FamilyEvaluator inner = expr();
            if (!eat(")")) throw parse_error("scale( without )");
            return [inner](const Node& t, const Point& p) {
                return Rat(inner(t, p) / Rat(static_cast<int>(t.length()) + 1));
            };
        }
        if (eat("pair(")) {
            FamilyEvaluator first = expr();
            if (!eat(";")) throw parse_error("pair needs two ;-separated parts");
            FamilyEvaluator second = expr();
            if (!eat(")")) throw parse_error("pair( without )");
            return [first, second](const Node& t, const Point& p) {
                return p.copy == 2 ? second(t, p) : first(t, p);
            };
        }
        if (eat("(")) {
            FamilyEvaluator inner = expr();
            if (!eat(")")) throw parse_error("( without )");
            return inner;
        }
        if (eat("x+")) {
            return [](const Node& t, const Point& p) {
                Branch fill(t, Node::parse("0"));
                return Rat(lex_less(p.tau, fill) ? 0 : 1);
            };
        }
        if (eat("x-")) {
            return [](const Node& t, const Point& p) {
                Branch fill(t, Node::parse("1"));
                return Rat(lex_less(fill, p.tau) ? 1 : 0);
            };
        }
        if (eat("v")) {
            return [](const Node& t, const Point&) {
                return Branch(t, Node::parse("0")).value();
            };
        }
        throw parse_error("unreadable family term at \"" + text.substr(at) + "\"");
    }
};

FamilyEvaluator parse_family(const std::string& spec) { return FamilyParser(spec).parse(); }

std::optional<int> builtin_proto_id(const std::string& spec) {
    if (spec.rfind("proto:", 0) != 0) return std::nullopt;
    std::string num = spec.substr(6);
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
        return std::nullopt;
    return std::stoi(num);
}

// --------------------------------------------- numeric oracle for expressions

// Membership judged from evaluations alone: settle the family along every
// infinite shape of the set over an augmented grid and compare the limits.
FamilyOracle numeric_family_oracle(FamilyEvaluator fam,
                                   std::pair<std::size_t, std::size_t> window, Rat tol) {
    return [fam, window, tol](const IndexSet& L) -> MembershipResult {
        MembershipResult out;
        if (!L.is_symbolic() || L.components().empty()) return out;  // Unknown

        std::vector<Branch> branches = default_grid();
        auto add = [&branches](const Branch& b) {
            if (std::find(branches.begin(), branches.end(), b) == branches.end())
                branches.push_back(b);
        };
        for (const ShapeComponent& c : L.components()) {
            add(c.branch);
            add(q_subtree().image_branch(c.branch));
        }
        std::vector<Point> points;
        for (const Branch& b : branches) {
            points.push_back({1, b});
            points.push_back({2, b});
        }

        std::size_t count = window.second - window.first + 1;
        std::vector<std::vector<Rat>> limits;
        for (const ShapeComponent& c : L.components()) {
            std::vector<Node> walk;
            if (c.kind == ShapeKind::Chain) {
                for (std::size_t n = window.first; n <= window.second; ++n)
                    walk.push_back(c.branch.prefix(n));
            } else {
                walk = monotone_antichain_nodes(c.branch,
                                                c.kind == ShapeKind::IncrAntichain, count);
            }
            std::vector<Rat> lim;
            for (const Point& p : points) {
                std::vector<Rat> vals;
                for (const Node& t : walk) vals.push_back(fam(t, p));
                TailEstimate e = estimate_tail(vals, tol);
                if (e.state != TailEstimate::State::Limit) return out;  // Unknown
                lim.push_back(e.limit);
            }
            limits.push_back(std::move(lim));
        }

        for (std::size_t i = 0; i < limits.size(); ++i)
            for (std::size_t j = i + 1; j < limits.size(); ++j)
                for (std::size_t k = 0; k < points.size(); ++k)
                    if (rat_abs(limits[i][k] - limits[j][k]) > tol) {
                        out.verdict = Verdict::Divergent;
                        return out;
                    }
        out.verdict = Verdict::Convergent;
        return out;
    };
}

// oracle for a family spec: exact for (possibly transported) prototypes,
// numeric for expression families
FamilyOracle spec_oracle(const std::string& spec, const std::string& transport_file,
                         std::pair<std::size_t, std::size_t> window, const Rat& tol) {
    std::optional<SubtreeGenerator> S;
    if (!transport_file.empty()) S = SubtreeGenerator::parse(read_file(transport_file));
    if (auto id = builtin_proto_id(spec)) {
        FamilyOracle base = prototype_oracle(*id);
        if (!S) return base;
        SubtreeGenerator gen = *S;
        return [base, gen](const IndexSet& L) { return base(transport(L, gen)); };
    }
    FamilyEvaluator fam = parse_family(spec);
    if (S) {
        SubtreeGenerator gen = *S;
        FamilyEvaluator inner = fam;
        fam = [inner, gen](const Node& t, const Point& p) { return inner(gen.apply(t), p); };
    }
    return numeric_family_oracle(fam, window, tol);
}

std::string tri(TriBool v) { return tribool_str(v); }

std::vector<FinSeq> load_finseq_lines(const std::string& path) {
    std::vector<FinSeq> out;
    for (std::string line : split(read_file(path), '\n')) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        out.push_back(FinSeq::parse(line));
    }
    return out;
}

std::string finseqs_text(const std::vector<FinSeq>& seqs) {
    std::string out;
    for (const FinSeq& s : seqs) {
        if (!out.empty()) out += " | ";
        out += s.str();
    }
    return out;
}

json finseqs_json(const std::vector<FinSeq>& seqs) {
    json a = json::array();
    for (const FinSeq& s : seqs) a.push_back(s.str());
    return a;
}

// ----------------------------------------------------------------- tree group

void setup_tree(CLI::App& app) {
    CLI::App* tree = app.add_subcommand("tree", "nodes, branches and their orders");
    tree->require_subcommand(1);

    {
        auto args = std::make_shared<std::vector<std::string>>();
        CLI::App* c = tree->add_subcommand("meet", "longest common prefix of two nodes");
        c->add_option("nodes", *args, "two nodes as 0/1 strings")->expected(2);
        c->callback([args] {
            Node a = Node::parse((*args)[0]), b = Node::parse((*args)[1]);
            Node m = meet(a, b);
            emit("tree meet", {{"a", a.str()}, {"b", b.str()}}, {{"meet", m.str()}}, {},
                 m.str());
        });
    }
    {
        auto args = std::make_shared<std::vector<std::string>>();
        CLI::App* c = tree->add_subcommand("lex", "order two incomparable nodes or branches");
        c->add_option("values", *args, "nodes (0/1 strings) or branches (with '*')")
            ->expected(2);
        c->callback([args] {
            const std::string &xs = (*args)[0], &ys = (*args)[1];
            bool xb = xs.find('*') != std::string::npos;
            bool yb = ys.find('*') != std::string::npos;
            bool less;
            if (xb && yb)
                less = lex_less(Branch::parse(xs), Branch::parse(ys));
            else if (xb)
                less = lex_less(Branch::parse(xs), Node::parse(ys));
            else if (yb)
                less = lex_less(Node::parse(xs), Branch::parse(ys));
            else
                less = lex_less(Node::parse(xs), Node::parse(ys));
            emit("tree lex", {{"x", xs}, {"y", ys}}, {{"less", less}}, {},
                 less ? "true" : "false");
        });
    }
    {
        auto arg = std::make_shared<std::string>();
        CLI::App* c = tree->add_subcommand("index", "position in the level enumeration");
        c->add_option("node", *arg, "node as a 0/1 string");
        c->callback([arg] {
            Node t = Node::parse(*arg);
            uint64_t idx = canonical_index(t);
            emit("tree index", {{"node", t.str()}}, {{"index", idx}}, {},
                 std::to_string(idx));
        });
    }
    {
        auto args = std::make_shared<std::vector<std::string>>();
        auto sigma = std::make_shared<std::string>();
        auto depth = std::make_shared<std::size_t>(12);
        CLI::App* c = tree->add_subcommand("converges", "does a node list converge to a branch");
        c->add_option("nodes", *args, "explicit node list");
        c->add_option("--sigma", *sigma, "target branch")->required();
        c->add_option("--depth", *depth, "depth bound (default 12)");
        c->callback([args, sigma, depth] {
            IndexSet L = IndexSet::explicit_list(parse_nodes(*args), *depth);
            TriBool v = converges_to(L, Branch::parse(*sigma), *depth);
            emit("tree converges",
                 {{"nodes", nodes_json(L.explicit_nodes())},
                  {"sigma", *sigma},
                  {"depth", *depth}},
                 {{"verdict", tri(v)}}, {}, tri(v));
        });
    }
    {
        auto spec = std::make_shared<std::string>();
        CLI::App* c = tree->add_subcommand("profile", "convergence profile of an index set");
        c->add_option("--set", *spec, "index set: \"chain *1; incr *0; node 010\"")
            ->required();
        c->callback([spec] {
            IndexSet L = IndexSet::parse(*spec);
            ConvergenceProfile p = profile(L);
            std::string target = p.target ? p.target->str() : "none";
            std::string text = "target=" + target + " chain=" + tri(p.has_chain) +
                               " left=" + tri(p.has_left) + " right=" + tri(p.has_right) +
                               " orthogonal=" + tri(p.orthogonal_to_all) +
                               " multi=" + tri(p.multi_target);
            emit("tree profile", {{"set", L.str()}},
                 {{"target", target},
                  {"chain", tri(p.has_chain)},
                  {"left", tri(p.has_left)},
                  {"right", tri(p.has_right)},
                  {"orthogonal", tri(p.orthogonal_to_all)},
                  {"multi", tri(p.multi_target)}},
                 {}, text);
        });
    }
}

// -------------------------------------------------------------- subtree group

void setup_subtree(CLI::App& app) {
    CLI::App* sub = app.add_subcommand("subtree", "regular dyadic subtrees and embeddings");
    sub->require_subcommand(1);

    {
        auto gen = std::make_shared<std::string>();
        auto node = std::make_shared<std::string>();
        CLI::App* c = sub->add_subcommand("apply", "image of a node under a generator");
        c->add_option("--gen", *gen, "generator file")->required();
        c->add_option("node", *node, "node as a 0/1 string");
        c->callback([gen, node] {
            SubtreeGenerator S = SubtreeGenerator::parse(read_file(*gen));
            Node img = S.apply(Node::parse(*node));
            emit("subtree apply", {{"gen", *gen}, {"node", *node}},
                 {{"image", img.str()}}, {}, img.str());
        });
    }
    {
        auto gen = std::make_shared<std::string>();
        auto branch = std::make_shared<std::string>();
        CLI::App* c = sub->add_subcommand("image", "image of a branch under a generator");
        c->add_option("--gen", *gen, "generator file")->required();
        c->add_option("branch", *branch, "branch as prefix*period");
        c->callback([gen, branch] {
            SubtreeGenerator S = SubtreeGenerator::parse(read_file(*gen));
            Branch img = S.image_branch(Branch::parse(*branch));
            emit("subtree image", {{"gen", *gen}, {"branch", *branch}},
                 {{"image", img.str()}}, {}, img.str());
        });
    }
    {
        auto gen = std::make_shared<std::string>();
        auto depth = std::make_shared<std::size_t>(4);
        CLI::App* c = sub->add_subcommand("materialize", "expand a generator into a table");
        c->add_option("--gen", *gen, "generator file")->required();
        c->add_option("--depth", *depth, "table depth (default 4)");
        c->callback([gen, depth] {
            ExplicitSubtree m = SubtreeGenerator::parse(read_file(*gen)).materialize(*depth);
            emit("subtree materialize", {{"gen", *gen}, {"depth", *depth}},
                 {{"table", m.str()}}, {}, m.str());
        });
    }
    {
        auto gen = std::make_shared<std::string>();
        auto table = std::make_shared<std::string>();
        auto depth = std::make_shared<std::size_t>(4);
        CLI::App* c = sub->add_subcommand("validate", "check a table is regular dyadic");
        c->add_option("--gen", *gen, "generator file to materialize");
        c->add_option("--table", *table, "explicit table file");
        c->add_option("--depth", *depth, "depth when materializing (default 4)");
        c->callback([gen, table, depth] {
            if (gen->empty() == table->empty())
                throw parse_error("give exactly one of --gen and --table");
            ExplicitSubtree m =
                table->empty()
                    ? SubtreeGenerator::parse(read_file(*gen)).materialize(*depth)
                    : ExplicitSubtree::parse(read_file(*table));
            std::string why;
            bool ok = m.is_regular_dyadic(&why);
            emit("subtree validate", {{"gen", *gen}, {"table", *table}},
                 {{"regular", ok}, {"reason", why}}, {},
                 ok ? "regular" : "not regular: " + why);
        });
    }
    {
        auto inner = std::make_shared<std::string>();
        auto outer = std::make_shared<std::string>();
        CLI::App* c = sub->add_subcommand("compose", "outer after inner, as tables");
        c->add_option("--inner", *inner, "inner table file")->required();
        c->add_option("--outer", *outer, "outer table file")->required();
        c->callback([inner, outer] {
            ExplicitSubtree t = compose(ExplicitSubtree::parse(read_file(*inner)),
                                        ExplicitSubtree::parse(read_file(*outer)));
            emit("subtree compose", {{"inner", *inner}, {"outer", *outer}},
                 {{"table", t.str()}}, {}, t.str());
        });
    }
    {
        auto tree = std::make_shared<std::string>();
        auto node = std::make_shared<std::string>();
        CLI::App* c = sub->add_subcommand("rel-length", "length relative to a node set");
        c->add_option("--tree", *tree, "file with one node per line")->required();
        c->add_option("node", *node, "node as a 0/1 string");
        c->callback([tree, node] {
            std::vector<Node> T = load_node_lines(*tree);
            std::size_t len = relative_length(Node::parse(*node), T);
            emit("subtree rel-length", {{"tree", *tree}, {"node", *node}},
                 {{"length", len}}, {}, std::to_string(len));
        });
    }
    {
        auto tree = std::make_shared<std::string>();
        auto args = std::make_shared<std::vector<std::string>>();
        CLI::App* c = sub->add_subcommand("rel-meet", "deepest common member below both");
        c->add_option("--tree", *tree, "file with one node per line")->required();
        c->add_option("nodes", *args, "two nodes")->expected(2);
        c->callback([tree, args] {
            std::vector<Node> T = load_node_lines(*tree);
            Node m = relative_meet(Node::parse((*args)[0]), Node::parse((*args)[1]), T);
            emit("subtree rel-meet", {{"tree", *tree}, {"nodes", json{(*args)[0], (*args)[1]}}},
                 {{"meet", m.str()}}, {}, m.str());
        });
    }
    {
        auto tree = std::make_shared<std::string>();
        CLI::App* c = sub->add_subcommand("skew-code", "successor-count code of a skew tree");
        c->add_option("--tree", *tree, "file with one node per line")->required();
        c->callback([tree] {
            SkewCode code = skew_code(load_node_lines(*tree));
            emit("subtree skew-code", {{"tree", *tree}}, {{"code", code.str()}}, {},
                 code.str());
        });
    }
}

// ------------------------------------------------------------ antichain group

void setup_antichain(CLI::App& app) {
    CLI::App* anti = app.add_subcommand("antichain", "monotone antichains and skew subtrees");
    anti->require_subcommand(1);

    auto with_tree = [](CLI::App* c, std::shared_ptr<std::string> tree) {
        c->add_option("--tree", *tree, "relative node set file (default: full tree)");
    };

    {
        auto args = std::make_shared<std::vector<std::string>>();
        auto tree = std::make_shared<std::string>();
        CLI::App* c = anti->add_subcommand("classify", "Increasing, Decreasing or Neither");
        c->add_option("nodes", *args, "antichain in listed order");
        with_tree(c, tree);
        c->callback([args, tree] {
            std::vector<Node> seq = parse_nodes(*args);
            std::vector<Node> T;
            if (!tree->empty()) T = load_node_lines(*tree);
            AntichainKind k = classify_antichain(seq, tree->empty() ? TreeView() : TreeView(&T));
            emit("antichain classify", {{"nodes", nodes_json(seq)}, {"tree", *tree}},
                 {{"kind", antichain_kind_str(k)}}, {}, antichain_kind_str(k));
        });
    }
    {
        auto args = std::make_shared<std::vector<std::string>>();
        auto tree = std::make_shared<std::string>();
        CLI::App* c = anti->add_subcommand("extract", "longest monotone subsequence");
        c->add_option("nodes", *args, "antichain in listed order");
        with_tree(c, tree);
        c->callback([args, tree] {
            std::vector<Node> seq = parse_nodes(*args);
            std::vector<Node> T;
            if (!tree->empty()) T = load_node_lines(*tree);
            MonotoneExtraction m =
                extract_monotone(seq, tree->empty() ? TreeView() : TreeView(&T));
            json idx = json::array();
            for (std::size_t i : m.indices) idx.push_back(i);
            emit("antichain extract", {{"nodes", nodes_json(seq)}, {"tree", *tree}},
                 {{"kind", antichain_kind_str(m.kind)},
                  {"indices", idx},
                  {"nodes", nodes_json(m.nodes)}},
                 {}, antichain_kind_str(m.kind) + ": " + join_nodes(m.nodes));
        });
    }
    {
        auto args = std::make_shared<std::vector<std::string>>();
        auto tree = std::make_shared<std::string>();
        CLI::App* c = anti->add_subcommand("limit", "forced prefix of the limit branch");
        c->add_option("nodes", *args, "monotone antichain in listed order");
        with_tree(c, tree);
        c->callback([args, tree] {
            std::vector<Node> seq = parse_nodes(*args);
            std::vector<Node> T;
            if (!tree->empty()) T = load_node_lines(*tree);
            AntichainLimit lim =
                antichain_limit(seq, tree->empty() ? TreeView() : TreeView(&T));
            emit("antichain limit", {{"nodes", nodes_json(seq)}, {"tree", *tree}},
                 {{"prefix", lim.prefix.str()}, {"kind", antichain_kind_str(lim.kind)}}, {},
                 node_mark(lim.prefix) + " " + antichain_kind_str(lim.kind));
        });
    }
    {
        auto sigma = std::make_shared<std::string>();
        auto side = std::make_shared<std::string>("left");
        auto count = std::make_shared<std::size_t>(5);
        CLI::App* c = anti->add_subcommand("canonical", "offshoot walk toward a branch");
        c->add_option("--sigma", *sigma, "target branch")->required();
        c->add_option("--side", *side, "left or right (default left)");
        c->add_option("--count", *count, "how many nodes (default 5)");
        c->callback([sigma, side, count] {
            if (*side != "left" && *side != "right")
                throw parse_error("--side must be left or right");
            std::vector<Node> walk = canonical_monotone_antichain(
                Branch::parse(*sigma), *side == "left" ? Side::Left : Side::Right, *count);
            emit("antichain canonical",
                 {{"sigma", *sigma}, {"side", *side}, {"count", *count}},
                 {{"nodes", nodes_json(walk)}}, {}, join_nodes(walk));
        });
    }
    {
        auto tree = std::make_shared<std::string>();
        CLI::App* c = anti->add_subcommand("phi", "increasing projection of a skew subtree");
        c->add_option("--skew", *tree, "skew subtree file")->required();
        c->callback([tree] {
            std::vector<Node> seq = phi(parse_skew(read_file(*tree)));
            emit("antichain phi", {{"skew", *tree}}, {{"nodes", nodes_json(seq)}}, {},
                 join_nodes(seq));
        });
    }
    {
        auto tree = std::make_shared<std::string>();
        CLI::App* c = anti->add_subcommand("psi", "decreasing projection of a skew subtree");
        c->add_option("--skew", *tree, "skew subtree file")->required();
        c->callback([tree] {
            std::vector<Node> seq = psi(parse_skew(read_file(*tree)));
            emit("antichain psi", {{"skew", *tree}}, {{"nodes", nodes_json(seq)}}, {},
                 join_nodes(seq));
        });
    }
    {
        auto args = std::make_shared<std::vector<std::string>>();
        CLI::App* c = anti->add_subcommand("inverse-phi", "rebuild a subtree from an increasing antichain");
        c->add_option("nodes", *args, "increasing antichain");
        c->callback([args] {
            SkewSubtree S = inverse_phi(parse_nodes(*args));
            emit("antichain inverse-phi", {{"nodes", json(*args)}},
                 {{"skew", format_skew(S)}}, {}, format_skew(S));
        });
    }
    {
        auto args = std::make_shared<std::vector<std::string>>();
        CLI::App* c = anti->add_subcommand("inverse-psi", "rebuild a subtree from a decreasing antichain");
        c->add_option("nodes", *args, "decreasing antichain");
        c->callback([args] {
            SkewSubtree S = inverse_psi(parse_nodes(*args));
            emit("antichain inverse-psi", {{"nodes", json(*args)}},
                 {{"skew", format_skew(S)}}, {}, format_skew(S));
        });
    }
}

// ---------------------------------------------------------------- proto group

void setup_proto(CLI::App& app) {
    CLI::App* proto = app.add_subcommand("proto", "the seven function families");
    proto->require_subcommand(1);

    {
        auto id = std::make_shared<int>(1);
        auto t = std::make_shared<std::string>();
        auto point = std::make_shared<std::string>();
        CLI::App* c = proto->add_subcommand("eval", "family member value at a point");
        c->add_option("id", *id, "family id 1..7")->required();
        c->add_option("--t", *t, "member node as a 0/1 string");
        c->add_option("--point", *point, "point \"[copy:]branch\"")->required();
        c->callback([id, t, point] {
            Point p = parse_point(*point);
            Rat v = family_eval(*id, Node::parse(*t), p);
            emit("proto eval", {{"id", *id}, {"t", *t}, {"point", point_str(p)}},
                 {{"value", rat_str(v)}}, {}, rat_str(v));
        });
    }
    {
        auto id = std::make_shared<int>(1);
        auto spec = std::make_shared<std::string>();
        auto file = std::make_shared<std::string>();
        CLI::App* c = proto->add_subcommand("member", "does the family converge along a set");
        c->add_option("id", *id, "family id 1..7")->required();
        c->add_option("--set", *spec, "inline index set");
        c->add_option("--file", *file, "index set file");
        c->callback([id, spec, file] {
            if (spec->empty() == file->empty())
                throw parse_error("give exactly one of --set and --file");
            IndexSet L = IndexSet::parse(spec->empty() ? read_file(*file) : *spec);
            MembershipResult r = family_membership(*id, L);
            std::string text = verdict_str(r.verdict);
            json result{{"verdict", verdict_str(r.verdict)}};
            json diag;
            if (r.limit) {
                result["limit"] = r.limit->str();
                text += " " + r.limit->str();
            }
            if (r.witness) {
                diag["part_a"] = r.witness->part_a.str();
                diag["part_b"] = r.witness->part_b.str();
                diag["limit_a"] = r.witness->limit_a.str();
                diag["limit_b"] = r.witness->limit_b.str();
                text += ": " + r.witness->limit_a.str() + " vs " + r.witness->limit_b.str();
            }
            emit("proto member", {{"id", *id}, {"set", L.str()}}, result, diag, text);
        });
    }
    {
        auto id = std::make_shared<int>(1);
        auto spec = std::make_shared<std::string>();
        auto depth = std::make_shared<std::size_t>(12);
        auto tol = std::make_shared<std::string>("1/1000000000");
        auto grid = std::make_shared<std::string>();
        CLI::App* c = proto->add_subcommand("numeric", "convergence judged from values only");
        c->add_option("id", *id, "family id 1..7")->required();
        c->add_option("--set", *spec, "inline index set")->required();
        c->add_option("--depth", *depth, "walk depth (default 12)");
        c->add_option("--tol", *tol, "tolerance (default 1/1000000000)");
        c->add_option("--grid", *grid, "comma-separated branches (default: builtin grid)");
        c->callback([id, spec, depth, tol, grid] {
            IndexSet L = IndexSet::parse(*spec);
            std::vector<Branch> g = grid->empty() ? default_grid() : parse_branches(*grid);
            NumericResult r = numeric_convergence(*id, L, g, *depth, rat_parse(*tol));
            std::string text = verdict_str(r.verdict);
            json diag{{"points", r.points.size()}};
            if (r.witness) {
                text += " @ " + point_str(r.points[*r.witness]);
                diag["witness_point"] = point_str(r.points[*r.witness]);
                diag["witness_gap"] = rat_str(r.witness_gap);
            }
            emit("proto numeric", {{"id", *id}, {"set", L.str()}, {"depth", *depth}},
                 {{"verdict", verdict_str(r.verdict)}}, diag, text);
        });
    }
    {
        auto depth = std::make_shared<std::size_t>(3);
        auto t = std::make_shared<std::string>("unset");
        auto x = std::make_shared<std::string>();
        CLI::App* c = proto->add_subcommand("helly", "nested thirds intervals and their steps");
        c->add_option("--depth", *depth, "table depth (default 3)");
        c->add_option("--t", *t, "step node (eval mode)");
        c->add_option("--x", *x, "evaluation point p/q in [0,1] (eval mode)");
        c->callback([depth, t, x] {
            if (!x->empty()) {
                if (*t == "unset") throw parse_error("eval mode needs --t and --x");
                Rat v = helly_eval(Node::parse(*t == "e" ? "" : *t), rat_parse(*x));
                emit("proto helly", {{"t", *t}, {"x", *x}}, {{"value", rat_str(v)}}, {},
                     rat_str(v));
                return;
            }
            auto table = helly_intervals(*depth);
            std::string text;
            json rows = json::array();
            for (const auto& [node, iv] : table) {
                text += node_mark(node) + ": [" + rat_str(iv.first) + ", " +
                        rat_str(iv.second) + "]\n";
                rows.push_back({{"t", node.str()},
                                {"lo", rat_str(iv.first)},
                                {"hi", rat_str(iv.second)}});
            }
            emit("proto helly", {{"depth", *depth}}, {{"intervals", rows}}, {}, text);
        });
    }
}

// ------------------------------------------------------- classify and equiv

void setup_classify(CLI::App& app) {
    auto family = std::make_shared<std::string>();
    auto transport_file = std::make_shared<std::string>();
    auto samples = std::make_shared<std::string>("*01,*10,*0011");
    auto grid = std::make_shared<std::string>();
    auto window = std::make_shared<std::string>("4,12");
    auto tol = std::make_shared<std::string>("1/1000000000");
    auto budget = std::make_shared<std::size_t>(2);

    CLI::App* c = app.add_subcommand("classify", "name the family behind an evaluator");
    c->footer(
        "Family expressions build evaluators (t, point) -> rational:\n"
        "  proto:<id>   builtin family 1..7\n"
        "  v            binary value of t (t padded with zeros)\n"
        "  x+           1 unless the point lies lex-below t~000...\n"
        "  x-           1 when the point lies lex-above t~111...\n"
        "  const:<p/q>  constant\n"
        "  scale(E)     E divided by |t|+1\n"
        "  pair(E;F)    E on copy 1, F on copy 2\n"
        "  E+F, E-F     pointwise sum and difference\n"
        "Example: scale(x+ - x-) is the width-scaled cylinder indicator.");
    c->add_option("--family", *family,
                  "family spec: proto:<id> or an expression over v, x+, x-, "
                  "const:<rat>, scale(), pair(;)")
        ->required();
    c->add_option("--transport", *transport_file, "generator file the family was moved along");
    c->add_option("--samples", *samples, "comma-separated sample branches");
    c->add_option("--grid", *grid, "comma-separated grid branches (default: builtin grid)");
    c->add_option("--window", *window, "depth window n0,n1 (default 4,12)");
    c->add_option("--tol", *tol, "tolerance (default 1/1000000000)");
    c->add_option("--budget", *budget, "transport retries before giving up (default 2)");

    c->callback([family, transport_file, samples, grid, window, tol, budget] {
        FamilyEvaluator fam = parse_family(*family);
        std::vector<Branch> sig = parse_branches(*samples);
        std::vector<Branch> g = grid->empty() ? default_grid() : parse_branches(*grid);
        if (!transport_file->empty()) {
            SubtreeGenerator S = SubtreeGenerator::parse(read_file(*transport_file));
            FamilyEvaluator inner = fam;
            fam = [inner, S](const Node& t, const Point& p) { return inner(S.apply(t), p); };
            // a moved family hides its thresholds at moved branches; hand the
            // classifier the images it cannot guess
            for (const Branch& s : sig) {
                Branch img = S.image_branch(s);
                g.push_back(img);
                g.push_back(q_subtree().image_branch(img));
            }
        }
        Classification r =
            classify(fam, sig, g, parse_window(*window), rat_parse(*tol), *budget);

        json cert;
        cert["id"] = r.id;
        cert["pattern"] = r.conclusive ? pattern_str(r.pattern) : std::string();
        json sigmas = json::array(), residuals = json::array();
        for (const LimitTriple& T : r.triples) {
            sigmas.push_back(T.sigma.str());
            residuals.push_back(
                json{rat_str(T.r0), rat_str(T.rplus), rat_str(T.rminus)});
        }
        cert["sigmas"] = sigmas;
        cert["residuals"] = residuals;
        cert["transport_used"] = r.transport_used;
        if (!r.conclusive) cert["note"] = r.note;

        emit("classify",
             {{"family", *family}, {"transport", *transport_file}, {"window", *window}},
             cert, {}, cert.dump());
        if (!r.conclusive) throw inconclusive_exit{};
    });
}

void setup_equiv(CLI::App& app) {
    auto specs = std::make_shared<std::vector<std::string>>();
    auto ta = std::make_shared<std::string>();
    auto tb = std::make_shared<std::string>();
    auto pool = std::make_shared<std::string>("*01,*10");
    auto battery_file = std::make_shared<std::string>();
    auto window = std::make_shared<std::string>("4,12");
    auto tol = std::make_shared<std::string>("1/1000000000");

    CLI::App* c = app.add_subcommand("equiv", "compare two families over a battery of sets");
    c->add_option("families", *specs, "two family specs")->expected(2);
    c->add_option("--transport-a", *ta, "generator file moving the first family");
    c->add_option("--transport-b", *tb, "generator file moving the second family");
    c->add_option("--pool", *pool, "branch pool for the standard battery (default *01,*10)");
    c->add_option("--battery", *battery_file, "file with one index set per line");
    c->add_option("--window", *window, "depth window for numeric oracles (default 4,12)");
    c->add_option("--tol", *tol, "tolerance for numeric oracles (default 1/1000000000)");

    c->callback([specs, ta, tb, pool, battery_file, window, tol] {
        auto win = parse_window(*window);
        Rat eps = rat_parse(*tol);
        FamilyOracle left = spec_oracle((*specs)[0], *ta, win, eps);
        FamilyOracle right = spec_oracle((*specs)[1], *tb, win, eps);

        std::vector<IndexSet> battery;
        if (!battery_file->empty()) {
            for (const std::string& line : split(read_file(*battery_file), '\n')) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                battery.push_back(IndexSet::parse(line));
            }
        } else {
            battery = standard_battery(parse_branches(*pool));
        }

        EquivalenceVerdict v = equivalent(left, right, battery);
        std::string text = v.equivalent
                               ? std::string("Equivalent")
                               : "DistinguishedBy " + v.witness->str();
        json result{{"equivalent", v.equivalent}};
        json diag{{"assumption", kIsolationAssumption}, {"battery_size", battery.size()}};
        if (!v.equivalent) {
            result["witness"] = v.witness->str();
            diag["witness_index"] = v.witness_index;
            diag["left"] = verdict_str(v.left);
            diag["right"] = verdict_str(v.right);
        }
        emit("equiv", {{"a", (*specs)[0]}, {"b", (*specs)[1]}}, result, diag, text);
    });
}

// ---------------------------------------------------------------- block group

void setup_block(CLI::App& app) {
    CLI::App* block = app.add_subcommand("block", "block sequences over the increasing tree");
    block->require_subcommand(1);

    auto add_blocks = [](CLI::App* c, std::shared_ptr<std::string> path) {
        c->add_option("--blocks", *path, "file with one comma-separated sequence per line")
            ->required();
    };

    {
        auto path = std::make_shared<std::string>();
        CLI::App* c = block->add_subcommand("chain", "running unions of the blocks");
        add_blocks(c, path);
        c->callback([path] {
            std::vector<FinSeq> out = chain_map(BlockSeq::parse(read_file(*path)));
            emit("block chain", {{"blocks", *path}}, {{"terms", finseqs_json(out)}}, {},
                 finseqs_text(out));
        });
    }
    {
        auto path = std::make_shared<std::string>();
        CLI::App* c = block->add_subcommand("antichain", "gapped unions converging to the branch");
        add_blocks(c, path);
        c->callback([path] {
            std::vector<FinSeq> out = antichain_map(BlockSeq::parse(read_file(*path)));
            emit("block antichain", {{"blocks", *path}}, {{"terms", finseqs_json(out)}}, {},
                 finseqs_text(out));
        });
    }
    {
        auto path = std::make_shared<std::string>();
        auto s = std::make_shared<std::string>();
        CLI::App* c = block->add_subcommand("beta", "the dyadic family over the blocks");
        add_blocks(c, path);
        c->add_option("--s", *s, "0/1 address (empty for the root)");
        c->callback([path, s] {
            std::vector<FinSeq> out = beta(Node::parse(*s), BlockSeq::parse(read_file(*path)));
            emit("block beta", {{"blocks", *path}, {"s", *s}},
                 {{"terms", finseqs_json(out)}, {"union", beta_union(Node::parse(*s),
                                                                     BlockSeq::parse(read_file(*path))).str()}},
                 {}, finseqs_text(out));
        });
    }
    {
        auto path = std::make_shared<std::string>();
        auto s = std::make_shared<std::string>();
        auto samples = std::make_shared<std::size_t>(20);
        CLI::App* c = block->add_subcommand("c3", "check the gapped branch lands on antichain terms");
        add_blocks(c, path);
        c->add_option("--s", *s, "0/1 address (empty for the root)");
        c->add_option("--samples", *samples, "random extensions to try (default 20)");
        c->callback([path, s, samples] {
            bool ok = verify_c3(Node::parse(*s), BlockSeq::parse(read_file(*path)), *samples);
            emit("block c3", {{"blocks", *path}, {"s", *s}, {"samples", *samples}},
                 {{"holds", ok}}, {}, ok ? "holds" : "fails");
        });
    }
    {
        auto path = std::make_shared<std::string>();
        auto s = std::make_shared<std::string>();
        CLI::App* c = block->add_subcommand("span", "decompose a sequence into block indices");
        add_blocks(c, path);
        c->add_option("--s", *s, "comma-separated sequence")->required();
        c->callback([path, s] {
            auto F = span_member(BlockSeq::parse(read_file(*path)), FinSeq::parse(*s));
            std::string text = "absent";
            json result{{"present", F.has_value()}};
            if (F) {
                text.clear();
                json idx = json::array();
                for (std::size_t i : *F) {
                    if (!text.empty()) text += ' ';
                    text += std::to_string(i);
                    idx.push_back(i);
                }
                result["indices"] = idx;
            }
            emit("block span", {{"blocks", *path}, {"s", *s}}, result, {}, text);
        });
    }
    {
        auto path = std::make_shared<std::string>();
        CLI::App* c = block->add_subcommand("fan", "common stem with increasing next entries");
        add_blocks(c, path);
        c->callback([path] {
            auto fan = is_fan(load_finseq_lines(*path));
            if (!fan) {
                emit("block fan", {{"blocks", *path}}, {{"fan", false}}, {}, "not a fan");
                return;
            }
            std::string entries;
            json ej = json::array();
            for (unsigned e : fan->second) {
                if (!entries.empty()) entries += ',';
                entries += std::to_string(e);
                ej.push_back(e);
            }
            emit("block fan", {{"blocks", *path}},
                 {{"fan", true}, {"stem", fan->first.str()}, {"entries", ej}}, {},
                 "stem=" + fan->first.str() + " entries=" + entries);
        });
    }
    {
        auto path = std::make_shared<std::string>();
        auto n = std::make_shared<std::size_t>(1);
        CLI::App* c = block->add_subcommand("dominated", "minimal fixed-length prefix cover");
        add_blocks(c, path);
        c->add_option("--n", *n, "witness length (default 1)");
        c->callback([path, n] {
            auto w = dominated(load_finseq_lines(*path), *n);
            if (!w) {
                emit("block dominated", {{"blocks", *path}, {"n", *n}},
                     {{"present", false}}, {}, "absent");
                return;
            }
            emit("block dominated", {{"blocks", *path}, {"n", *n}},
                 {{"present", true}, {"witnesses", finseqs_json(*w)}}, {},
                 finseqs_text(*w));
        });
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact combinatorics of the dyadic tree and its function families"};
    app.require_subcommand(1);
    app.add_flag("--json", g_json, "emit a JSON report instead of plain text");
    app.footer(
        "Text forms: nodes are 0/1 strings (empty or 'e' for the root); branches are\n"
        "prefix*period like 01*10; rationals are p/q in lowest terms; index sets join\n"
        "'chain <br>', 'incr <br>', 'decr <br>', 'node <bits>' entries with ';'.\n"
        "Every battery and sampler is deterministically seeded; set ROSETREE_SEED to\n"
        "pin reports in scripted runs (output is byte-stable either way).");

    setup_tree(app);
    setup_subtree(app);
    setup_antichain(app);
    setup_proto(app);
    setup_classify(app);
    setup_equiv(app);
    setup_block(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const inconclusive_exit&) {
        return 4;
    } catch (const rosetree::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const rosetree::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
