#include "cert/gtil.hpp"
#include "cert/interval_json.hpp"

#include "doctest.h"
#include "../support/gtil_oracle.hpp"
#include "../support/tri_oracle.hpp"

using namespace cert;

namespace {

const mpfr_prec_t P = 64;

Interval num(const char* s, mpfr_prec_t p = P) { return Interval::from_strings(s, s, p); }

Interval pi_times(long num_, long den) {
    return Interval::from_int(num_, P) * pi_interval(P) / Interval::from_int(den, P);
}

bool contains_pi_multiple(const Interval& t, long num_, long den) {
    Interval target = pi_times(num_, den);
    return !disjoint(t, target);
}

Matrix2 real_matrix(long a, long b, long c, long d) {
    return Matrix2(Box::from_int(a, P), Box::from_int(b, P), Box::from_int(c, P), Box::from_int(d, P), true);
}

Presentation one_gen(const char* rel) {
    Presentation p{{"a"}, {}};
    if (*rel) p.relators.push_back(parse_word(rel, p.generators));
    return p;
}

}  // namespace

TEST_CASE("lifting single matrices") {
    GtilElement p = lift_element(gtil_translation(num("1.5"), num("2")).g);
    CHECK(p.t.contains(0));
    GtilElement k = lift_element(real_matrix(0, 1, -1, 0));
    CHECK(contains_pi_multiple(k.t, 1, 2));
    CHECK(diameter(k.t) < mpq_class(1, 1000000));
    // -I sits on the closed end of (-pi, pi]
    GtilElement m = lift_element(real_matrix(-1, 0, 0, -1));
    CHECK(contains_pi_multiple(m.t, 1, 1));
    CHECK(m.t.below(4));
    // bottom row box with c on both sides of 0 and d < 0 is ambiguous
    Matrix2 straddle(Box::from_int(-1, P), Box::from_int(0, P), Box(Interval::from_strings("-0.01", "0.01", P), num("0")),
                     Box::from_int(-1, P));
    CHECK_THROWS_AS(lift_element(straddle), BranchRayAmbiguity);
    // c <= 0 only: the interval runs up to pi
    Matrix2 upper(Box::from_int(-1, P), Box::from_int(0, P), Box(Interval::from_strings("-0.01", "0", P), num("0")),
                  Box::from_int(-1, P));
    GtilElement u = lift_element(upper);
    CHECK(contains_pi_multiple(u.t, 1, 1));
    CHECK(u.t.above(3));
    Matrix2 complex_entry(Box::from_int(1, P), Box(num("0"), num("1")), Box::from_int(0, P), Box::from_int(1, P));
    CHECK_THROWS_AS(lift_element(complex_entry), std::invalid_argument);
}

TEST_CASE("lift_element contains the exact angle for random elements") {
    std::mt19937_64 rng(7);
    oracle::RandomElement gen{rng};
    for (int i = 0; i < 300; ++i) {
        oracle::HiElem e = gen(640);
        GtilElement l = lift_element(widen_to_precision(e.g, P));
        CHECK(oracle::contains_point(l.t, e.t));
    }
}

TEST_CASE("group law on the two special subgroups") {
    GtilElement a = gtil_translation(num("0.5"), num("3"));
    GtilElement b = gtil_translation(num("-2"), num("0.25"));
    GtilElement ab = gtil_mul(a, b);
    CHECK(ab.t.contains(0));
    CHECK(ab.g.c().re.contains(0));

    GtilElement q = gtil_rotation(pi_times(1, 2));
    GtilElement h = gtil_mul(q, q);
    CHECK(contains_minus_identity(h.g));
    CHECK(contains_pi_multiple(h.t, 1, 1));
    GtilElement full = gtil_mul(h, h);
    CHECK(contains_identity(full.g));
    CHECK(contains_pi_multiple(full.t, 2, 1));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-9, 9);
    for (int i = 0; i < 200; ++i) {
        double s = u(rng), t = u(rng);
        GtilElement x = gtil_mul(gtil_rotation(Interval::from_double(s, P)), gtil_rotation(Interval::from_double(t, P)));
        Interval sum = Interval::from_double(s, 640) + Interval::from_double(t, 640);
        CHECK(oracle::contains_point(x.t, sum));
        CHECK(oracle::contains_point(x.g, gtil_rotation(sum).g));
    }
}

TEST_CASE("products, inverses and associativity against the reference model") {
    std::mt19937_64 rng(3);
    oracle::RandomElement gen{rng};
    for (int i = 0; i < 400; ++i) {
        oracle::HiElem x = gen(640), y = gen(640), z = gen(640);
        GtilElement lx = oracle::lower(x, P), ly = oracle::lower(y, P), lz = oracle::lower(z, P);
        oracle::HiElem xyz = oracle::hi_mul(oracle::hi_mul(x, y), z);
        GtilElement left = gtil_mul(gtil_mul(lx, ly), lz);
        GtilElement right = gtil_mul(lx, gtil_mul(ly, lz));
        CHECK(oracle::contains_point(left.t, xyz.t));
        CHECK(oracle::contains_point(right.t, xyz.t));
        CHECK(oracle::contains_point(left.g, xyz.g));
        CHECK_FALSE(disjoint(left.t, right.t));
        GtilElement one = gtil_mul(lx, gtil_inverse(lx));
        CHECK(contains_identity(one.g));
        CHECK(one.t.contains(0));
        // a shifted lift moves the product by the same central amount
        GtilElement shifted = gtil_mul(gtil_shift(lx, 2), ly);
        CHECK(oracle::contains_point(shifted.t, oracle::hi_mul(x, y).t + mul_2si(pi_interval(640), 2)));
    }
}

TEST_CASE("relator cocycles of small presentations") {
    SUBCASE("<a | a> with a = I") {
        LiftResult r = lift_representation({gtil_identity(P)}, one_gen("a"));
        CHECK(r.verdict == LiftVerdict::exists);
        CHECK(r.cocycle->m == std::vector<long>{0});
        CHECK(r.alpha == IntVector{0});
    }
    SUBCASE("free group") {
        LiftResult r = lift_representation({lift_element(real_matrix(2, 1, 1, 1))}, one_gen(""));
        CHECK(r.verdict == LiftVerdict::exists);
        CHECK(r.cocycle->m.empty());
    }
    SUBCASE("<a | a^2> with a = -I is obstructed") {
        LiftResult r = lift_representation({lift_element(real_matrix(-1, 0, 0, -1))}, one_gen("aa"));
        CHECK(r.verdict == LiftVerdict::obstructed);
        CHECK(r.cocycle->m == std::vector<long>{1});
    }
    SUBCASE("<a | a^2> with a = k(2 pi) lifts") {
        LiftResult r = lift_representation({gtil_shift(gtil_identity(P), 1)}, one_gen("aa"));
        CHECK(r.verdict == LiftVerdict::exists);
        CHECK(r.cocycle->m == std::vector<long>{2});
        CHECK(r.alpha == IntVector{1});
    }
    SUBCASE("quarter turn of order four winds once") {
        ObstructionCocycle c = relator_obstruction({gtil_rotation(pi_times(1, 2))}, one_gen("aaaa"));
        CHECK(c.m == std::vector<long>{1});
        ObstructionCocycle back = relator_obstruction({gtil_rotation(pi_times(1, 2))}, one_gen("AAAA"));
        CHECK(back.m == std::vector<long>{-1});
    }
    SUBCASE("relator at -I is rejected") {
        CHECK_THROWS_AS(relator_obstruction({lift_element(real_matrix(-1, 0, 0, -1))}, one_gen("a")),
                        CentralValueAmbiguous);
        LiftResult r = lift_representation({lift_element(real_matrix(-1, 0, 0, -1))}, one_gen("a"));
        CHECK(r.verdict == LiftVerdict::unknown);
    }
    SUBCASE("angle interval too wide") {
        GtilElement wide{Matrix2::identity(P), Interval::from_strings("-7", "7", P)};
        CHECK_THROWS_AS(relator_obstruction({wide}, one_gen("a")), CentralValueAmbiguous);
    }
    SUBCASE("two generators") {
        Presentation p{{"a", "b"}, {}};
        p.relators.push_back(parse_word("ab", p.generators));
        GtilElement h = lift_element(real_matrix(-1, 0, 0, -1));
        LiftResult r = lift_representation({h, h}, p);
        CHECK(r.verdict == LiftVerdict::exists);
        CHECK(r.cocycle->m == std::vector<long>{1});
        CHECK(coboundary_holds(p, r.cocycle->m, r.alpha));
        CHECK_FALSE(coboundary_holds(p, {2}, r.alpha));
    }
}

TEST_CASE("shifting generator lifts never changes the verdict") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> k(-3, 3);
    struct Case {
        const char* rel;
        GtilElement a;
        LiftVerdict v;
    };
    std::vector<Case> cases{{"a", gtil_identity(P), LiftVerdict::exists},
                            {"aa", lift_element(real_matrix(-1, 0, 0, -1)), LiftVerdict::obstructed},
                            {"aa", gtil_shift(gtil_identity(P), 1), LiftVerdict::exists}};
    for (const Case& c : cases)
        for (int trial = 0; trial < 100; ++trial) {
            long s = k(rng);
            LiftResult r = lift_representation({gtil_shift(c.a, s)}, one_gen(c.rel));
            CHECK(r.verdict == c.v);
        }
}

TEST_CASE("precision retry") {
    int calls = 0;
    HolonomyAt rho_at = [&](mpfr_prec_t p) {
        ++calls;
        ApproxHolonomy r;
        r.generators = {"a"};
        r.precision = p;
        // too wide at the first precision, fine at the doubled one
        // bottom-right entry meets the negative axis at the first precision only
        Interval d = p < 100 ? Interval::from_strings("-2", "3", p) : Interval::from_int(1, p);
        Box one = Box::from_int(1, p), zero = Box::from_int(0, p);
        r.images = {Matrix2(one, zero, zero, Box::real(d), true)};
        return r;
    };
    LiftResult r = lift_representation(rho_at, one_gen("a"), 64);
    CHECK(calls == 2);
    CHECK(r.verdict == LiftVerdict::exists);
    json j = lift_result_to_json(r);
    CHECK(j["verdict"] == "LiftExists");
    CHECK(j["coboundary"] == json::array({"0"}));
}

TEST_CASE("orderability certificate for a real filling") {
    json fx = oracle::load_fixture("real/m004_1_2.json");
    Triangulation T = triangulation_from_json(oracle::load_fixture("tri/m004.json"));
    Slope fill{fx["filling"][0].get<long>(), fx["filling"][1].get<long>()};
    Slope witness{fx["witness"][0].get<long>(), fx["witness"][1].get<long>()};
    GluingSystem sys = build_gluing_system(T, fill, GluingForm::rectangular);
    CertifiedRealStructure s = certify_real_structure(sys, shapes_from_json(fx.at("shapes"), 53), witness, 200);
    json cert = certify_orderable(T, fill, s);
    MESSAGE("cocycle ", cert["cocycle"].dump(), " coboundary ", cert["coboundary"].dump());
    CertificateCheck ok = verify_orderable(cert);
    CHECK(ok.ok);
    CHECK(ok.detail == "");
    CHECK(cert.dump() == certify_orderable(T, fill, s).dump());

    auto fails_at = [&](json c, const std::string& stage) {
        CertificateCheck r = verify_orderable(c);
        CHECK_FALSE(r.ok);
        CHECK(r.stage == stage);
    };
    json c = cert;
    c["coboundary"][0] = std::to_string(std::stol(c["coboundary"][0].get<std::string>()) + 1);
    fails_at(c, "coboundary");
    c = cert;
    c["cocycle"][0] = c["cocycle"][0].get<long>() + 1;
    fails_at(c, "obstruction");
    c = cert;
    c["lift_signs"][0] = -c["lift_signs"][0].get<int>();
    fails_at(c, "lift_signs");
    c = cert;
    c["filling"] = {1, 3};
    CHECK_FALSE(verify_orderable(c).ok);
    c = cert;
    c["trace_squared"] = interval_to_json(Interval::from_strings("4.5", "4.6", 64));
    fails_at(c, "witness");
    c = cert;
    c["presentation"]["relators"][0] = "ab";
    fails_at(c, "presentation");
    c = cert;
    c.erase("cocycle");
    fails_at(c, "input");
}
