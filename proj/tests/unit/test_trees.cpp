#include "cert/order_tree.hpp"

#include "doctest.h"
#include "../support/oracles.hpp"
#include "../support/tri_oracle.hpp"

#include <chrono>

using namespace cert;

namespace {

const std::vector<std::string> ab{"a", "b"};

const ApproxHolonomy& weeks() {
    static const ApproxHolonomy w = holonomy_from_json(oracle::load_fixture("weeks.hol.json"));
    return w;
}

HolonomyAt weeks_at() {
    return [](mpfr_prec_t p) { return at_precision(weeks(), p); };
}

const NonorderingTree& weeks_tree() {
    static const NonorderingTree t = find_tree(weeks().presentation(), float_matrices(weeks()));
    return t;
}

Mat2d float_word(const std::vector<Mat2d>& g, const Word& w) {
    Mat2d m{1, 0, 0, 1};
    for (int l : w.letters) {
        Mat2d x = g[generator_of(l)];
        if (l < 0) x = {x[3], -x[1], -x[2], x[0]};
        m = {m[0] * x[0] + m[1] * x[2], m[0] * x[1] + m[1] * x[3], m[2] * x[0] + m[3] * x[2], m[2] * x[1] + m[3] * x[3]};
    }
    return m;
}

double distance_to_identity(const Mat2d& m) {
    double plus = std::abs(m[0] - 1.0) + std::abs(m[1]) + std::abs(m[2]) + std::abs(m[3] - 1.0);
    double minus = std::abs(m[0] + 1.0) + std::abs(m[1]) + std::abs(m[2]) + std::abs(m[3] + 1.0);
    return std::min(plus, minus);
}

std::vector<Mat2d> fig8_float() {
    std::vector<Mat2d> out;
    for (char c : {'a', 'b'}) {
        Matrix2 m = oracle::enclose(oracle::fig8_gen(c), 64);
        ApproxHolonomy r;
        r.images = {m};
        out.push_back(float_matrices(r).front());
    }
    return out;
}

}  // namespace

TEST_CASE("ball of the figure-eight group matches the free ball at small radius") {
    auto g = fig8_float();
    // no relator has length <= 4, so radius 2 is still free: 1 + 4 + 12
    CayleyBall ball(g, 2, 100000);
    CHECK(ball.size() == 17);
    CHECK(ball.word(ball.identity()).empty());
    for (size_t i = 0; i < ball.size(); ++i) {
        int j = ball.inverse(static_cast<int>(i));
        CHECK(ball.inverse(j) == static_cast<int>(i));
        CHECK(free_reduce(ball.word(i) * ball.word(j)).empty());
        CHECK(distance_to_identity(float_word(g, ball.word(i))) >= (i == 0 ? 0.0 : 1e-3));
    }
    // words are listed shortest first
    for (size_t i = 1; i < ball.size(); ++i) CHECK(ball.word(i - 1).size() <= ball.word(i).size());
    CayleyBall capped(g, 6, 50);
    CHECK(capped.size() <= 50);
    for (size_t i = 0; i < capped.size(); ++i) CHECK(capped.inverse(capped.inverse(i)) == static_cast<int>(i));
}

TEST_CASE("cone closure records how each positive element was forced") {
    auto g = fig8_float();
    CayleyBall ball(g, 3, 100000);
    ConeSearchState s(ball.size());
    int a = *ball.find(g[0]);
    REQUIRE(assume_positive(s, ball, a, 0));
    int aa = *ball.product(a, a);
    CHECK(s.sign[aa] == 1);
    CHECK(s.sign[ball.inverse(aa)] == -1);
    CHECK(s.expand(aa) == std::vector<int>{0, 0});
    // a and a^-1 together are contradictory: a * a^-1 = 1
    ConeSearchState t = s;
    CHECK_FALSE(assume_positive(t, ball, ball.inverse(a), 1));
    REQUIRE(t.contradiction);
    Word prod;
    for (int e : *t.contradiction) prod = prod * (e == 0 ? ball.word(a) : ball.word(ball.inverse(a)));
    CHECK(free_reduce(prod).empty());
    // the identity can never be positive
    ConeSearchState u(ball.size());
    CHECK_FALSE(assume_positive(u, ball, ball.identity(), 0));
}

TEST_CASE("free group on Sanov generators has no tree in a small ball") {
    Presentation free2{ab, {}};
    std::vector<Mat2d> g{Mat2d{1, 2, 0, 1}, Mat2d{1, 0, 2, 1}};
    FindStats st;
    CHECK_THROWS_AS(find_tree(free2, g, {3, 1000, 20000, 1e-6}, &st), BallTooSmall);
    CHECK(st.ball_size == 53);
    CHECK_THROWS_AS(find_tree(free2, g, {3, 1000, 1, 1e-6}), SearchTimeout);
}

TEST_CASE("Weeks: search finds a tree and the verifier proves it") {
    auto t0 = std::chrono::steady_clock::now();
    const NonorderingTree& t = weeks_tree();
    CHECK_FALSE(tree_structure_error(t));
    CHECK(t.edges.size() == static_cast<size_t>(t.vertex_count - 1));
    // floating closure check: every leaf product really is 1
    auto g = float_matrices(weeks());
    for (const TreeLeaf& l : t.leaves) CHECK(distance_to_identity(float_word(g, expand_leaf(t, l))) < 1e-6);
    TreeReport r = verify_tree(t, weeks_at());
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(r.verdict == TreeVerdict::verified);
    CHECK(r.reason.empty());
    CHECK(r.words_decided == static_cast<long>(t.edges.size() + t.leaves.size()));
    CHECK(secs < 60);
    MESSAGE("Weeks tree: ", t.vertex_count, " vertices, ", t.leaves.size(), " leaves, ", secs, " s");
}

TEST_CASE("tampered Weeks trees are refuted") {
    const NonorderingTree& good = weeks_tree();
    SUBCASE("leaf product using an edge off its root path") {
        NonorderingTree t = good;
        // the sibling edge of the leaf's own incoming edge is never on its path
        TreeLeaf& l = t.leaves.front();
        int in = root_path(t, l.vertex).back();
        int sib = -1;
        for (size_t i = 0; i < t.edges.size(); ++i)
            if (t.edges[i].from == t.edges[in].from && static_cast<int>(i) != in) sib = static_cast<int>(i);
        REQUIRE(sib >= 0);
        l.product.push_back(sib);
        TreeReport r = verify_tree(t, weeks_at());
        CHECK(r.verdict == TreeVerdict::refuted);
        CHECK(r.reason.find("off its root path") != std::string::npos);
    }
    SUBCASE("edge label that is freely trivial") {
        NonorderingTree t = good;
        t.edges.front().label = parse_word("aA", ab);
        CHECK(verify_tree(t, weeks_at()).verdict == TreeVerdict::refuted);
    }
    SUBCASE("edge label trivial in the group but not freely") {
        NonorderingTree t = good;
        t.edges.front().label = weeks().relators.front();
        TreeReport r = verify_tree(t, weeks_at());
        CHECK(r.verdict == TreeVerdict::refuted);
        CHECK(r.reason == "edge label 0 is trivial in the group");
    }
    SUBCASE("leaf product that is not 1") {
        NonorderingTree t = good;
        // drop one factor; a single assumption is never 1
        TreeLeaf& l = t.leaves.back();
        l.product = {root_path(t, l.vertex).front()};
        TreeReport r = verify_tree(t, weeks_at());
        CHECK(r.verdict == TreeVerdict::refuted);
        CHECK(r.reason.find("not trivial") != std::string::npos);
    }
    SUBCASE("sibling labels that are not inverse") {
        NonorderingTree t = good;
        for (TreeEdge& e : t.edges)
            if (e.from != t.root) {
                e.label = e.label * parse_word("a", ab);
                break;
            }
        TreeReport r = verify_tree(t, weeks_at());
        CHECK(r.verdict == TreeVerdict::refuted);
        CHECK(r.reason.find("not inverse") != std::string::npos);
    }
    SUBCASE("missing leaf label") {
        NonorderingTree t = good;
        t.leaves.pop_back();
        CHECK(verify_tree(t, weeks_at()).verdict == TreeVerdict::refuted);
    }
}

TEST_CASE("precision too low for a leaf gives Unknown, not a wrong verdict") {
    const NonorderingTree& t = weeks_tree();
    TreeCheckOptions opt;
    opt.ladder = {8};
    TreeReport r = verify_tree(t, weeks_at(), opt);
    CHECK(r.verdict != TreeVerdict::refuted);
}

TEST_CASE("tree codec round trip and parse errors") {
    const NonorderingTree& t = weeks_tree();
    std::string text = tree_to_json(t).dump();
    NonorderingTree back = parse_tree(text);
    CHECK(same_tree(t, back));
    CHECK_THROWS_AS(parse_tree(text.substr(0, text.size() / 2)), TreeParseError);
    try {
        parse_tree(text.substr(0, 40));
        FAIL("expected a parse error");
    } catch (const TreeParseError& e) {
        CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
    json j = tree_to_json(t);
    j["edges"][2].erase("label");
    try {
        tree_from_json(j);
        FAIL("expected a parse error");
    } catch (const TreeParseError& e) {
        CHECK(std::string(e.what()).find("edges[2]") != std::string::npos);
    }
    j = tree_to_json(t);
    j["edges"][0]["label"] = "aZ";
    CHECK_THROWS_AS(tree_from_json(j), TreeParseError);
}

TEST_CASE("large synthetic tree parses and passes structural checks quickly") {
    // complete binary tree under a single root edge, 2^14 leaves
    NonorderingTree t;
    t.presentation = {ab, {}};
    t.vertex_count = 2;
    t.edges.push_back({0, 1, parse_word("a", ab)});
    std::vector<std::pair<int, std::vector<int>>> frontier{{1, {0}}};
    for (int depth = 0; depth < 14; ++depth) {
        std::vector<std::pair<int, std::vector<int>>> next;
        for (const auto& [v, path] : frontier)
            for (const char* s : {"b", "B"}) {
                int c = t.vertex_count++;
                t.edges.push_back({v, c, parse_word(s, ab)});
                auto p = path;
                p.push_back(static_cast<int>(t.edges.size()) - 1);
                next.push_back({c, p});
            }
        frontier = next;
    }
    for (const auto& [v, path] : frontier) t.leaves.push_back({v, path});
    std::string text = tree_to_json(t).dump();
    auto t0 = std::chrono::steady_clock::now();
    NonorderingTree back = parse_tree(text);
    CHECK(same_tree(t, back));
    CHECK(back.leaves.size() == 16384);
    CHECK_FALSE(tree_structure_error(back));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 10);
}
