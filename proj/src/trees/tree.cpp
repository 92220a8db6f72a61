#include "cert/order_tree.hpp"

#include <map>

namespace cert {

bool same_tree(const NonorderingTree& a, const NonorderingTree& b) {
    return a.presentation.generators == b.presentation.generators &&
           a.presentation.relators == b.presentation.relators && a.root == b.root &&
           a.vertex_count == b.vertex_count && a.edges == b.edges && a.leaves == b.leaves;
}

json tree_to_json(const NonorderingTree& t) {
    const auto& g = t.presentation.generators;
    json edges = json::array(), leaves = json::array();
    for (const TreeEdge& e : t.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"label", word_to_string(e.label, g)}});
    for (const TreeLeaf& l : t.leaves) leaves.push_back({{"vertex", l.vertex}, {"product", l.product}});
    return {{"presentation", presentation_to_json(t.presentation)},
            {"root", t.root},
            {"vertices", t.vertex_count},
            {"edges", edges},
            {"leaves", leaves}};
}

namespace {

const json& field(const json& j, const char* name, const std::string& where) {
    if (!j.is_object() || !j.contains(name)) throw TreeParseError(where + ": missing \"" + name + "\"");
    return j.at(name);
}

int int_field(const json& j, const char* name, const std::string& where) {
    const json& v = field(j, name, where);
    if (!v.is_number_integer()) throw TreeParseError(where + "." + name + ": expected an integer");
    return v.get<int>();
}

}  // namespace

NonorderingTree tree_from_json(const json& j) {
    NonorderingTree t;
    try {
        t.presentation = presentation_from_json(field(j, "presentation", "tree"));
    } catch (const TreeParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw TreeParseError(std::string("tree.presentation: ") + e.what());
    }
    t.root = int_field(j, "root", "tree");
    const json& edges = field(j, "edges", "tree");
    if (!edges.is_array()) throw TreeParseError("tree.edges: expected a list");
    int max_vertex = t.root;
    for (size_t i = 0; i < edges.size(); ++i) {
        std::string where = "tree.edges[" + std::to_string(i) + "]";
        TreeEdge e;
        e.from = int_field(edges[i], "from", where);
        e.to = int_field(edges[i], "to", where);
        try {
            e.label = word_from_json(field(edges[i], "label", where), t.presentation.generators);
        } catch (const TreeParseError&) {
            throw;
        } catch (const std::exception& ex) {
            throw TreeParseError(where + ".label: " + ex.what());
        }
        max_vertex = std::max({max_vertex, e.from, e.to});
        t.edges.push_back(std::move(e));
    }
    const json& leaves = field(j, "leaves", "tree");
    if (!leaves.is_array()) throw TreeParseError("tree.leaves: expected a list");
    for (size_t i = 0; i < leaves.size(); ++i) {
        std::string where = "tree.leaves[" + std::to_string(i) + "]";
        TreeLeaf l;
        l.vertex = int_field(leaves[i], "vertex", where);
        const json& p = field(leaves[i], "product", where);
        if (!p.is_array()) throw TreeParseError(where + ".product: expected a list");
        for (const json& x : p) {
            if (!x.is_number_integer()) throw TreeParseError(where + ".product: expected edge ids");
            l.product.push_back(x.get<int>());
        }
        t.leaves.push_back(std::move(l));
    }
    t.vertex_count = j.contains("vertices") ? int_field(j, "vertices", "tree") : max_vertex + 1;
    return t;
}

NonorderingTree parse_tree(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw TreeParseError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return tree_from_json(j);
}

namespace {

std::vector<int> incoming_edges(const NonorderingTree& t) {
    std::vector<int> incoming(t.vertex_count, -1);
    for (size_t i = 0; i < t.edges.size(); ++i) incoming.at(t.edges[i].to) = static_cast<int>(i);
    return incoming;
}

std::vector<int> path_up(const NonorderingTree& t, const std::vector<int>& incoming, int vertex) {
    std::vector<int> path;
    while (vertex != t.root) {
        int e = incoming.at(vertex);
        if (e < 0 || path.size() > t.edges.size()) throw std::invalid_argument("vertex is not below the root");
        path.push_back(e);
        vertex = t.edges[e].from;
    }
    return {path.rbegin(), path.rend()};
}

}  // namespace

std::vector<int> root_path(const NonorderingTree& t, int vertex) { return path_up(t, incoming_edges(t), vertex); }

std::optional<std::string> tree_structure_error(const NonorderingTree& t) {
    const int n = t.vertex_count;
    if (n < 2) return "tree needs a root and at least one more vertex";
    if (t.root < 0 || t.root >= n) return "root out of range";
    std::vector<int> in(n, 0);
    std::vector<std::vector<int>> out(n);
    for (size_t i = 0; i < t.edges.size(); ++i) {
        const TreeEdge& e = t.edges[i];
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n || e.from == e.to)
            return "edge " + std::to_string(i) + " has bad endpoints";
        ++in[e.to];
        out[e.from].push_back(static_cast<int>(i));
    }
    if (in[t.root] != 0) return "root has an incoming edge";
    if (out[t.root].size() != 1) return "root must have exactly one outgoing edge";
    for (int v = 0; v < n; ++v) {
        if (v == t.root) continue;
        if (in[v] != 1) return "vertex " + std::to_string(v) + " does not have exactly one incoming edge";
        if (out[v].size() != 0 && out[v].size() != 2)
            return "vertex " + std::to_string(v) + " is neither a leaf nor trivalent";
        if (out[v].size() == 2) {
            const Word& x = t.edges[out[v][0]].label;
            const Word& y = t.edges[out[v][1]].label;
            if (free_reduce(x) != free_reduce(inverse(y)))
                return "outgoing labels at vertex " + std::to_string(v) + " are not inverse";
        }
    }
    // every vertex hangs below the root
    std::vector<bool> reached(n, false);
    std::vector<int> stack{t.root};
    reached[t.root] = true;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : out[v]) {
            int w = t.edges[e].to;
            if (reached[w]) return "edges do not form a tree";
            reached[w] = true;
            ++count;
            stack.push_back(w);
        }
    }
    if (count != n) return "some vertex is not reachable from the root";
    std::vector<int> incoming = incoming_edges(t);
    std::vector<int> labelled(n, 0);
    for (size_t i = 0; i < t.leaves.size(); ++i) {
        const TreeLeaf& l = t.leaves[i];
        std::string name = "leaf label " + std::to_string(i);
        if (l.vertex < 0 || l.vertex >= n || l.vertex == t.root || !out[l.vertex].empty())
            return name + " is not on a leaf";
        if (++labelled[l.vertex] > 1) return "leaf " + std::to_string(l.vertex) + " has two labels";
        if (l.product.empty()) return name + " is empty";
        std::vector<int> path = path_up(t, incoming, l.vertex);
        for (int e : l.product)
            if (std::find(path.begin(), path.end(), e) == path.end())
                return name + " uses edge " + std::to_string(e) + " off its root path";
    }
    for (int v = 0; v < n; ++v)
        if (v != t.root && out[v].empty() && !labelled[v]) return "leaf " + std::to_string(v) + " has no label";
    return std::nullopt;
}

Word expand_leaf(const NonorderingTree& t, const TreeLeaf& leaf) {
    Word w;
    for (int e : leaf.product) w = w * t.edges.at(e).label;
    return free_reduce(w);
}

std::string to_string(TreeVerdict v) {
    switch (v) {
        case TreeVerdict::verified: return "Verified";
        case TreeVerdict::refuted: return "Refuted";
        case TreeVerdict::unknown: return "Unknown";
    }
    return "?";
}

TreeReport verify_tree(const NonorderingTree& t, const HolonomyAt& rho_at, const TreeCheckOptions& opt) {
    TreeReport rep;
    auto refuted = [&](std::string why) {
        rep.verdict = TreeVerdict::refuted;
        rep.reason = std::move(why);
        return rep;
    };
    if (auto err = tree_structure_error(t)) return refuted("structure: " + *err);
    if (opt.ladder.empty()) throw std::invalid_argument("empty precision ladder");

    std::map<mpfr_prec_t, ApproxHolonomy> cache;
    HolonomyAt at = [&](mpfr_prec_t p) -> ApproxHolonomy {
        auto it = cache.find(p);
        if (it == cache.end()) it = cache.emplace(p, rho_at(p)).first;
        return it->second;
    };
    const ApproxHolonomy& top = at(opt.ladder.back());
    if (top.generators != t.presentation.generators)
        throw std::invalid_argument("holonomy generators do not match the tree's presentation");
    auto pair = opt.jorgensen_pair ? opt.jorgensen_pair : find_jorgensen_pair(top);
    if (!pair) {
        rep.reason = "no generator pair passes the Jorgensen precondition";
        return rep;
    }
    rep.jorgensen_pair = pair;
    ValidationReport val = validate_holonomy(top, t.presentation, pair->first, pair->second);
    if (!val.passed()) {
        rep.reason = val.relators_consistent ? "Jorgensen precondition failed" : "holonomy does not satisfy the relators";
        return rep;
    }

    bool unknown = false;
    std::string unknown_reason;
    auto decide = [&](const Word& w) {
        LadderVerdict v = decide_word_ladder(at, w, opt.ladder, pair->first, pair->second);
        ++rep.words_decided;
        rep.decisions.push_back({w, v});
        rep.max_precision_used = std::max(rep.max_precision_used, v.precision);
        return v.verdict;
    };
    for (size_t i = 0; i < t.edges.size(); ++i) {
        std::string name = "edge label " + std::to_string(i);
        if (free_reduce(t.edges[i].label).empty()) return refuted(name + " is trivial");
        WordVerdict v = decide(t.edges[i].label);
        if (v == WordVerdict::proven_trivial) return refuted(name + " is trivial in the group");
        if (v == WordVerdict::unknown && !unknown) unknown = true, unknown_reason = name + " undecided";
    }
    for (size_t i = 0; i < t.leaves.size(); ++i) {
        std::string name = "leaf label " + std::to_string(i);
        Word w = expand_leaf(t, t.leaves[i]);
        if (w.empty()) return refuted(name + " is freely trivial");
        WordVerdict v = decide(w);
        if (v == WordVerdict::proven_nontrivial) return refuted(name + " is not trivial in the group");
        if (v == WordVerdict::unknown && !unknown) unknown = true, unknown_reason = name + " undecided";
    }
    if (unknown) {
        rep.reason = unknown_reason;
        return rep;
    }
    rep.verdict = TreeVerdict::verified;
    return rep;
}

}  // namespace cert
