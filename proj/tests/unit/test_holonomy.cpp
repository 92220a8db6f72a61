#include "cert/holonomy.hpp"

#include "doctest.h"
#include "../support/oracles.hpp"
#include "../support/tri_oracle.hpp"

#include <functional>

using namespace cert;

namespace {

const std::vector<std::string> ab{"a", "b"};

ApproxHolonomy fig8_exact(mpfr_prec_t prec) {
    ApproxHolonomy rho;
    rho.generators = ab;
    rho.precision = prec;
    rho.images = {oracle::enclose(oracle::fig8_gen('a'), prec), oracle::enclose(oracle::fig8_gen('b'), prec)};
    rho.relators = {parse_word("abaBAbabAB", ab)};
    return rho;
}

oracle::EisMat exact_word(const std::string& w) {
    oracle::EisMat m{oracle::Eis(1), oracle::Eis(0), oracle::Eis(0), oracle::Eis(1)};
    for (char c : w) m = oracle::mul(m, oracle::fig8_gen(c));
    return m;
}

// all words over a, A, b, B of length <= n (not only reduced ones)
void for_each_word(int n, const std::function<void(const std::string&)>& f) {
    std::string w;
    std::function<void()> rec = [&] {
        f(w);
        if (static_cast<int>(w.size()) == n) return;
        for (char c : {'a', 'A', 'b', 'B'}) {
            w.push_back(c);
            rec();
            w.pop_back();
        }
    };
    rec();
}

// nearest point of Z[omega] to the midpoint, then an exact containment check
bool contains_eisenstein_integer(const Box& b) {
    double x = b.re.mid_double(), y = b.im.mid_double();
    // a + b*omega = (a + b/2) + (b/2) sqrt(-3)
    long bb = std::lround(2 * y / std::sqrt(3.0));
    long aa = std::lround(x - bb / 2.0);
    return oracle::box_contains(b, oracle::Eis(mpq_class(2 * aa + bb, 2), mpq_class(bb, 2)));
}

Triangulation load_tri(const std::string& name) {
    return triangulation_from_json(oracle::load_fixture("tri/" + name + ".json"));
}

CertifiedStructure complete_structure(const json& j, mpfr_prec_t prec) {
    Triangulation T = triangulation_from_json(j);
    GluingSystem sys = build_gluing_system(T, std::nullopt);
    return certify_hyperbolic_structure(sys, krawczyk_certify(sys, shapes_from_json(j.at("shapes"), 53), prec).box);
}

}  // namespace

TEST_CASE("word parsing and reduction") {
    Word w = parse_word("abAB", ab);
    CHECK(w.letters == std::vector<int>{1, 2, -1, -2});
    CHECK(word_to_string(w, ab) == "abAB");
    CHECK(word_to_string(inverse(w), ab) == "baBA");
    CHECK(free_reduce(parse_word("abBA", ab)).empty());
    CHECK(word_to_string(cyclic_reduce(parse_word("bAabaB", ab)), ab) == "ba");
    CHECK(exponent_sums(parse_word("ababaBaaB", ab), 2) == std::vector<long>{5, 0});
    CHECK(word_to_string(power(parse_word("ab", ab), -2), ab) == "BABA");
    CHECK(parse_word("1", ab).empty());
    CHECK_THROWS_AS(parse_word("abc", ab), WordSyntaxError);
    CHECK_THROWS_AS(parse_word("a b", ab), WordSyntaxError);
    CHECK(word_from_json(json::array({1, -2}), ab) == parse_word("aB", ab));
    CHECK_THROWS_AS(word_from_json(json::array({3}), ab), WordSyntaxError);
    Presentation p = presentation_from_json(json::parse(R"({"generators":["a","b"],"relators":["ababaBaaB","ababAbbAb"]})"));
    CHECK(p.rank() == 2);
    CHECK(presentation_to_json(p)["relators"][1] == "ababAbbAb");
    CHECK_THROWS_AS(presentation_from_json(json::parse(R"({"generators":["a"],"relators":[""]})")), WordSyntaxError);
}

TEST_CASE("evaluating words") {
    ApproxHolonomy rho = fig8_exact(100);
    Matrix2 e = evaluate_word(rho, Word{});
    CHECK(contains_identity(e));
    CHECK(diameter(e) == 0);
    CHECK(contains_identity(evaluate_word(rho, parse_word("aA", ab))));
    // ab = [[1 - omega, 1], [-omega, 1]]
    Matrix2 m = evaluate_word(rho, parse_word("ab", ab));
    oracle::Eis om = oracle::omega();
    CHECK(oracle::box_contains(m.a(), oracle::Eis(1) - om));
    CHECK(oracle::box_contains(m.b(), oracle::Eis(1)));
    CHECK(oracle::box_contains(m.c(), -om));
    CHECK(oracle::box_contains(m.d(), oracle::Eis(1)));
}

TEST_CASE("validation of the Jorgensen precondition") {
    ApproxHolonomy rho = fig8_exact(100);
    ValidationReport r = validate_holonomy(rho, rho.presentation());
    CHECK(r.passed());
    CHECK(r.relator_ok == std::vector<bool>{true});
    // exact commutator trace of the two parabolics is 2 + omega^2 = 1 + omega
    CHECK(oracle::box_contains(r.commutator_trace, oracle::Eis(1) + oracle::omega()));

    ApproxHolonomy same = rho;
    same.images[1] = same.images[0];
    CHECK_FALSE(validate_holonomy(same, rho.presentation()).jorgensen_ok);

    Presentation bad{ab, {parse_word("ab", ab)}};
    ValidationReport rb = validate_holonomy(rho, bad);
    CHECK_FALSE(rb.relators_consistent);
    CHECK_FALSE(rb.passed());
}

TEST_CASE("decide_word basics") {
    ApproxHolonomy rho = fig8_exact(100);
    CHECK(decide_word(rho, Word{}) == WordVerdict::proven_trivial);
    CHECK(decide_word(rho, parse_word("a", ab)) == WordVerdict::proven_nontrivial);
    CHECK(decide_word(rho, rho.relators[0]) == WordVerdict::proven_trivial);
    // smear every entry to a box of diameter 10
    ApproxHolonomy wide = rho;
    for (Matrix2& m : wide.images) {
        auto smear = [](const Box& b) {
            Interval d = Interval::symmetric(5, b.prec());
            return Box(b.re + d, b.im + d);
        };
        m = Matrix2(smear(m.a()), smear(m.b()), smear(m.c()), smear(m.d()), true);
    }
    CHECK(decide_word(wide, parse_word("a", ab)) == WordVerdict::unknown);
    CHECK(to_string(WordVerdict::unknown) == "Unknown");
}

TEST_CASE("figure-eight words of length at most 6 agree with exact arithmetic") {
    std::map<mpfr_prec_t, ApproxHolonomy> cache;
    HolonomyAt at = [&](mpfr_prec_t p) {
        auto it = cache.find(p);
        if (it == cache.end()) it = cache.emplace(p, fig8_exact(p)).first;
        return it->second;
    };
    long words = 0, wrong = 0, unknown = 0;
    for_each_word(6, [&](const std::string& s) {
        ++words;
        bool trivial = oracle::is_identity(exact_word(s));
        LadderVerdict v = decide_word_ladder(at, parse_word(s, ab), {100, 200, 400});
        if (v.verdict == WordVerdict::unknown)
            ++unknown;
        else if ((v.verdict == WordVerdict::proven_trivial) != trivial)
            ++wrong;
    });
    CHECK(words == 5461);
    CHECK(wrong == 0);
    CHECK(unknown == 0);
}

TEST_CASE("proven verdicts persist at higher precision") {
    std::vector<Word> sample;
    for_each_word(5, [&](const std::string& s) { sample.push_back(parse_word(s, ab)); });
    sample.push_back(parse_word("abaBAbabAB", ab));
    for (const Word& w : sample) {
        WordVerdict v = decide_word(fig8_exact(100), w);
        if (v == WordVerdict::unknown) continue;
        CHECK(decide_word(fig8_exact(200), w) == v);
        CHECK(decide_word(fig8_exact(400), w) == v);
    }
}

TEST_CASE("dual-spine presentation of the figure-eight") {
    Triangulation T = load_tri("m004");
    DualSpinePresentation d = dual_spine_presentation(T);
    CHECK(d.presentation.rank() == T.size() + 1);
    CHECK(d.paths.size() == d.presentation.generators.size());
    for (size_t g = 0; g < d.paths.size(); ++g) {
        // each generator path reads back as its own generator
        CHECK(path_word(T, d.paths[g]) == Word{{letter(static_cast<int>(g))}});
        CHECK(d.paths[g].front().tet == 0);
    }
    REQUIRE(d.meridian);
    REQUIRE(d.longitude);
    // the commutator of the peripheral words is not freely trivial; that its
    // holonomy is the identity is checked on the developed representation
    Word comm = *d.meridian * *d.longitude * inverse(*d.meridian) * inverse(*d.longitude);
    CHECK(!comm.empty());
}

TEST_CASE("developed figure-eight holonomy") {
    json j = oracle::load_fixture("tri/m004.json");
    Triangulation T = triangulation_from_json(j);
    CertifiedStructure s = complete_structure(j, 200);
    DualSpinePresentation d = dual_spine_presentation(T);
    ApproxHolonomy rho = develop_holonomy(s, T, d);
    CHECK(rho.provenance == HolonomyProvenance::developed);
    for (const Matrix2& m : rho.images) {
        CHECK(m.certified_sl2());
        CHECK(m.det_hint().contains(1, 0));
        CHECK(contains_eisenstein_integer(trace(m)));
    }
    for (const Word& r : d.presentation.relators) CHECK(contains_identity(evaluate_word(rho, r)));
    // traces of products are algebraic integers of the trace field too
    for (const char* w : {"ab", "aB", "abc", "aCb", "bbc"}) CHECK(contains_eisenstein_integer(trace(evaluate_word(rho, parse_word(w, rho.generators)))));
    // cusp: the meridian and longitude are commuting parabolics
    for (const Word* w : {&*d.meridian, &*d.longitude}) {
        Matrix2 m = evaluate_word(rho, *w);
        Box t = trace(m);
        CHECK((t.contains(2, 0) || t.contains(-2, 0)));
        CHECK(excludes_identity(m));
    }
    Word comm = *d.meridian * *d.longitude * inverse(*d.meridian) * inverse(*d.longitude);
    CHECK(contains_identity(evaluate_word(rho, comm)));
    ValidationReport rep = validate_holonomy(rho, d.presentation);
    CHECK(rep.relators_consistent);

    SUBCASE("identity and inverse paths") {
        Matrix2 e = develop_path(s.shapes, T, {});
        CHECK(contains_identity(e));
        FacePath p = d.paths[1];
        FacePath back;
        for (auto it = p.rbegin(); it != p.rend(); ++it) {
            // crossing back through the same face from the far side
            int u = T.gluing(it->tet, it->face).tet;
            back.push_back({u, T.gluing(it->tet, it->face).perm[it->face]});
        }
        FacePath loop = p;
        loop.insert(loop.end(), back.begin(), back.end());
        Matrix2 m = develop_path(s.shapes, T, loop);
        CHECK((contains_identity(m) || contains_minus_identity(m)));
        Matrix2 pr = develop_path(s.shapes, T, p) * develop_path(s.shapes, T, back);
        CHECK((contains_identity(pr) || contains_minus_identity(pr)));
    }
    SUBCASE("broken paths") {
        CHECK_THROWS_AS(develop_path(s.shapes, T, {{0, 0}, {0, 0}, {0, 0}}), PathNotClosed);
        FacePath open{{0, 0}};
        if (T.gluing(0, 0).tet != 0) CHECK_THROWS_AS(develop_path(s.shapes, T, open), PathNotClosed);
    }
    SUBCASE("degenerate shapes collapse") {
        ShapeBox z = s.shapes;
        z[0] = Box(Interval::from_strings("-0.5", "0.5", 200), Interval::from_strings("-0.5", "0.5", 200));
        CHECK_THROWS_AS(develop_holonomy(z, T, d.paths, d.presentation.generators), PrecisionCollapse);
    }
}

TEST_CASE("developed holonomy of every cusped fixture satisfies its relators") {
    for (const char* name : {"m003", "m006", "m015", "m016", "m137", "m009", "m023"}) {
        CAPTURE(name);
        json j = oracle::load_fixture(std::string("tri/") + name + ".json");
        Triangulation T = triangulation_from_json(j);
        DualSpinePresentation d = dual_spine_presentation(T);
        ApproxHolonomy rho = develop_holonomy(complete_structure(j, 160), T, d);
        for (const Word& r : d.presentation.relators) CHECK(contains_identity(evaluate_word(rho, r)));
        for (const Word* w : {&*d.meridian, &*d.longitude}) {
            Box t = trace(evaluate_word(rho, *w));
            CHECK((t.contains(2, 0) || t.contains(-2, 0)));
        }
        auto pair = find_jorgensen_pair(rho);
        REQUIRE(pair);
        CHECK(validate_holonomy(rho, d.presentation, pair->first, pair->second).passed());
    }
}

TEST_CASE("filled real structure kills the filling slope") {
    json fx = oracle::load_fixture("real/m004_1_2.json");
    Triangulation T = load_tri("m004");
    Slope fill{fx["filling"][0].get<long>(), fx["filling"][1].get<long>()};
    GluingSystem sys = build_gluing_system(T, fill, GluingForm::rectangular);
    CertifiedRealStructure r =
        certify_real_structure(sys, shapes_from_json(fx.at("shapes"), 53), Slope{0, 1}, 200);
    DualSpinePresentation d = dual_spine_presentation(T, fill);
    ApproxHolonomy rho = develop_holonomy(r.shapes, T, d.paths, d.presentation.generators);
    for (const Matrix2& m : rho.images)
        for (const Box* e : {&m.a(), &m.b(), &m.c(), &m.d()}) CHECK(e->is_real());
    const Word& filling_relator = d.presentation.relators.back();
    Matrix2 f = evaluate_word(rho, filling_relator);
    CHECK((contains_identity(f) || contains_minus_identity(f)));
    // the other slope with the same meridian count is not killed
    Matrix2 g = evaluate_word(rho, power(*d.meridian, 1) * power(*d.longitude, -2));
    CHECK_FALSE(contains_identity(g));
    CHECK_FALSE(contains_minus_identity(g));
    // longitude trace squared agrees with the cusp-equation witness
    Box t = trace(evaluate_word(rho, *d.longitude));
    Interval tr2 = (t * t).re;
    CHECK(!disjoint(tr2, r.trace_squared));
    CHECK(std::abs(tr2.mid_double() - fx["trace_squared"].get<double>()) < 1e-9);
    std::vector<int> flips = choose_lift_signs(rho, d.presentation);
    for (const Word& rel : d.presentation.relators) CHECK(contains_identity(evaluate_word(rho, rel)));
    CHECK(flips.size() == rho.images.size());
}

TEST_CASE("lift signs") {
    ApproxHolonomy rho = fig8_exact(100);
    rho.images[0] = -rho.images[0];
    // abaBAbabAB has odd exponent sum in a, so the flip is undone
    std::vector<int> flips = choose_lift_signs(rho, rho.presentation());
    CHECK(flips == std::vector<int>{-1, 1});
    CHECK(contains_identity(evaluate_word(rho, rho.relators[0])));
    ApproxHolonomy one;
    one.generators = {"a"};
    one.precision = 64;
    one.images = {-Matrix2::identity(64)};
    CHECK(choose_lift_signs(one, Presentation{{"a"}, {parse_word("a", {"a"})}}) == std::vector<int>{-1});
    // a quarter turn squares to -I whatever its sign
    one.images = {Matrix2(Box::from_int(0, 64), Box::from_int(1, 64), Box::from_int(-1, 64), Box::from_int(0, 64), true)};
    CHECK_THROWS_AS(choose_lift_signs(one, Presentation{{"a"}, {parse_word("aa", {"a"})}}), LiftSignsUnsolvable);
}

TEST_CASE("holonomy JSON and the Weeks fixture") {
    ApproxHolonomy w = holonomy_from_json(oracle::load_fixture("weeks.hol.json"));
    CHECK(w.generators == ab);
    CHECK(w.precision == 640);
    REQUIRE(w.relators.size() == 2);
    ValidationReport rep = validate_holonomy(w, w.presentation());
    CHECK(rep.passed());
    for (mpfr_prec_t p : {100, 200}) {
        ApproxHolonomy lo = at_precision(w, p);
        CHECK(lo.images[0].prec() == p);
        for (const Word& r : w.relators) CHECK(decide_word(lo, r) == WordVerdict::proven_trivial);
        CHECK(decide_word(lo, parse_word("ab", ab)) == WordVerdict::proven_nontrivial);
    }
    ApproxHolonomy back = holonomy_from_json(holonomy_to_json(w));
    for (size_t i = 0; i < 2; ++i) CHECK(subset(w.images[i].a(), back.images[i].a()));
    ApproxHolonomy low = holonomy_from_json(oracle::load_fixture("weeks.hol.json"), 120);
    CHECK(low.precision == 120);
    json broken = oracle::load_fixture("weeks.hol.json");
    broken["matrices"]["a"][1][0] = broken["matrices"]["b"][1][0];
    CHECK_THROWS_AS(holonomy_from_json(broken), std::invalid_argument);
}
