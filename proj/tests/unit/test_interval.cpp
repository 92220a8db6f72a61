#include "../support/oracles.hpp"
#include "cert/interval_json.hpp"

#include <doctest.h>

#include <random>

using namespace cert;
using oracle::random_dyadic;
using oracle::sample_in;

namespace {

Interval random_interval(std::mt19937_64& rng, double lo, double hi, mpfr_prec_t p) {
    mpq_class a = random_dyadic(rng, lo, hi), b = random_dyadic(rng, lo, hi);
    if (a > b) std::swap(a, b);
    return Interval::from_rationals(a, b, p);
}

mpq_class sample(std::mt19937_64& rng, const Interval& x) { return sample_in(rng, x.lo_q(), x.hi_q()); }

}  // namespace

TEST_CASE("exact endpoint addition") {
    Interval r = Interval::from_int(1) + Interval::from_int(2);
    CHECK(r.lo_q() == 3);
    CHECK(r.hi_q() == 3);
}

TEST_CASE("unit interval products contain all products") {
    Box x(Interval::from_rationals(0, 1, 64), Interval::from_int(0, 64));
    Box r = x * x;
    CHECK(r.re.contains(0));
    CHECK(r.re.contains(1));
    CHECK(r.re.contains(mpq_class(1, 7)));
}

TEST_CASE("decimal parsing is exact") {
    CHECK(parse_rational("0.1") == mpq_class(1, 10));
    CHECK(parse_rational("-12.5e-3") == mpq_class(-1, 80));
    CHECK(parse_rational("3/8") == mpq_class(3, 8));
    CHECK(parse_rational("1e3") == 1000);
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational("1.2.3"));
    Interval x = Interval::from_strings("0.1", "0.1", 53);
    CHECK(x.contains(mpq_class(1, 10)));
    CHECK_FALSE(x.is_point());  // 0.1 is not dyadic, so rounding went outward
    CHECK(exact_decimal(mpq_class(5, 16)) == "0.3125");
    CHECK(exact_decimal(mpq_class(-3, 2)) == "-1.5");
    CHECK_THROWS(exact_decimal(mpq_class(1, 3)));
}

TEST_CASE("complex product near -0.43-0.81i, Monte Carlo containment") {
    mpfr_prec_t p = 100;
    mpq_class e(1, 1000000);
    Box z(Interval::from_rationals(mpq_class(3, 10) - e, mpq_class(3, 10) + e, p),
          Interval::from_rationals(mpq_class(7, 10) - e, mpq_class(7, 10) + e, p));
    Box w(Interval::from_rationals(mpq_class(-12, 10) - e, mpq_class(-12, 10) + e, p),
          Interval::from_rationals(mpq_class(1, 10) - e, mpq_class(1, 10) + e, p));
    Box r = z * w;
    // exact midpoint product: (0.3+0.7i)(-1.2+0.1i) = -0.43 - 0.81i
    CHECK(r.contains(mpq_class(-43, 100), mpq_class(-81, 100)));
    std::mt19937_64 rng(11);
    int bad = 0;
    for (int k = 0; k < 100000; ++k) {
        mpq_class a = sample(rng, z.re), b = sample(rng, z.im), c = sample(rng, w.re), d = sample(rng, w.im);
        if (!r.contains(a * c - b * d, a * d + b * c)) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("real arithmetic containment fuzz") {
    std::mt19937_64 rng(1);
    int bad = 0;
    for (int k = 0; k < 3000; ++k) {
        mpfr_prec_t p = 40 + static_cast<mpfr_prec_t>(rng() % 300);
        Interval x = random_interval(rng, -5, 5, p), y = random_interval(rng, -5, 5, p);
        mpq_class a = sample(rng, x), b = sample(rng, y);
        if (!(x + y).contains(a + b)) ++bad;
        if (!(x - y).contains(a - b)) ++bad;
        if (!(x * y).contains(a * b)) ++bad;
        if (!sqr(x).contains(a * a)) ++bad;
        if (!y.contains_zero() && !(x / y).contains(a / b)) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("division by an interval containing zero throws") {
    CHECK_THROWS_AS(Interval::from_int(1) / Interval::from_rationals(-1, 1, 64), DivisorContainsZero);
    Box z = Box::from_int(0, 64);
    CHECK_THROWS_AS(Box::from_int(1, 64) / z, DivisorContainsZero);
}

TEST_CASE("complex arithmetic containment fuzz") {
    std::mt19937_64 rng(2);
    int bad = 0;
    for (int k = 0; k < 2000; ++k) {
        mpfr_prec_t p = 64 + static_cast<mpfr_prec_t>(rng() % 200);
        Box x(random_interval(rng, -3, 3, p), random_interval(rng, -3, 3, p));
        Box y(random_interval(rng, -3, 3, p), random_interval(rng, -3, 3, p));
        mpq_class a = sample(rng, x.re), b = sample(rng, x.im), c = sample(rng, y.re), d = sample(rng, y.im);
        if (!(x + y).contains(a + c, b + d)) ++bad;
        if (!(x - y).contains(a - c, b - d)) ++bad;
        if (!(x * y).contains(a * c - b * d, a * d + b * c)) ++bad;
        if (y.excludes_zero()) {
            mpq_class n = c * c + d * d;
            if (!(x / y).contains((a * c + b * d) / n, (b * c - a * d) / n)) ++bad;
        }
    }
    CHECK(bad == 0);
}

TEST_CASE("elementary point values") {
    CHECK(sin(Interval::from_int(0)).lo_q() == 0);
    CHECK(sin(Interval::from_int(0)).hi_q() == 0);
    CHECK(cos(Interval::from_int(0)).lo_q() == 1);
    CHECK(cos(Interval::from_int(0)).hi_q() == 1);
    Interval m = modulus(Box::from_rationals(3, 4, 80));
    CHECK(m.contains(5));
    CHECK(diameter(m) < mpq_class(1, 1000000));
    mpq_class r(1, 1000000000);
    Box near_one(Interval::from_rationals(1 - r, 1 + r, 80), Interval::from_rationals(-r, r, 80));
    Interval a = arg_principal(near_one);
    CHECK(a.contains(0));
    CHECK(diameter(a) < mpq_class(1, 100000000));
}

TEST_CASE("pi against a rational bracket") {
    for (mpfr_prec_t p : {53, 100, 200, 400, 1000, 2000}) {
        Interval pi = pi_interval(p);
        CHECK(oracle::contains_mpfr_value(pi, [](mpfr_ptr r, mpfr_srcptr, mpfr_rnd_t rnd) { return mpfr_const_pi(r, rnd); },
                                          0, p));
        CHECK(diameter(pi) < mpq_class(mpz_class(1), mpz_class(1) << (p - 3)));
    }
}

TEST_CASE("elementary functions contain MPFR reference values") {
    std::mt19937_64 rng(3);
    int bad = 0;
    for (int k = 0; k < 400; ++k) {
        mpfr_prec_t p = 53 + static_cast<mpfr_prec_t>(rng() % 500);
        Interval x = random_interval(rng, -20, 20, p);
        mpq_class q = sample(rng, x);
        if (!oracle::contains_mpfr_value(sin(x), mpfr_sin, q, p)) ++bad;
        if (!oracle::contains_mpfr_value(cos(x), mpfr_cos, q, p)) ++bad;
        if (!oracle::contains_mpfr_value(atan(x), mpfr_atan, q, p)) ++bad;
        Interval ax = abs(x) + Interval::from_rational(mpq_class(1, 1000), p);
        mpq_class aq = (q < 0 ? -q : q) + mpq_class(1, 1000);
        if (!oracle::contains_mpfr_value(log(ax), mpfr_log, aq, p)) ++bad;
        if (!oracle::contains_mpfr_value(sqrt_pos(ax), mpfr_sqrt, aq, p)) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("wide sine and cosine include interior extrema") {
    Interval x = Interval::from_rationals(1, 2, 64);  // contains pi/2
    CHECK(sin(x).contains(1));
    Interval y = Interval::from_rationals(3, 4, 64);  // contains pi
    CHECK(cos(y).contains(-1));
    Interval z = Interval::from_rationals(0, 100, 64);
    CHECK(sin(z).lo_q() == -1);
    CHECK(sin(z).hi_q() == 1);
}

TEST_CASE("tight point enclosures at high precision") {
    Interval x = Interval::from_rational(mpq_class(7, 3), 1000);
    CHECK(diameter(sin(x)) < mpq_class(mpz_class(1), mpz_class(1) << 990));
    CHECK(diameter(atan(x)) < mpq_class(mpz_class(1), mpz_class(1) << 990));
    CHECK(diameter(log(x)) < mpq_class(mpz_class(1), mpz_class(1) << 990));
}

TEST_CASE("arg branch safety") {
    Box on_ray(Interval::from_rationals(-2, -1, 64), Interval::from_rationals(-1, 1, 64));
    CHECK_THROWS_AS(arg_principal(on_ray), DomainViolation);
    Box origin(Interval::from_rationals(-1, 1, 64), Interval::from_rationals(-1, 1, 64));
    CHECK_THROWS_AS(arg_principal(origin), DomainViolation);
    std::mt19937_64 rng(4);
    int bad = 0;
    for (int k = 0; k < 300; ++k) {
        Box b(random_interval(rng, 0.001, 4, 80), random_interval(rng, -4, 4, 80));
        Interval a = arg_principal(b);
        Interval half_pi = mul_2si(pi_interval(80), -1);
        if (!(a.above(half_pi.lo_q() * -1) && a.below(half_pi.hi_q()))) ++bad;
    }
    CHECK(bad == 0);
    // arg of upper half-plane point -1 + i is 3pi/4
    Interval a = arg_principal(Box::from_rationals(-1, 1, 120));
    CHECK(oracle::contains_mpfr_value(
        a,
        [](mpfr_ptr r, mpfr_srcptr, mpfr_rnd_t rnd) {
            mpfr_const_pi(r, rnd);
            return mpfr_mul_d(r, r, 0.75, rnd);
        },
        0, 120));
}

TEST_CASE("complex sqrt squares back into its input") {
    std::mt19937_64 rng(5);
    int bad = 0;
    for (int k = 0; k < 500; ++k) {
        Box b(random_interval(rng, -3, 3, 120), random_interval(rng, -3, 3, 120));
        if (!b.excludes_zero()) continue;
        Box s;
        try {
            s = sqrt(b);
        } catch (const DomainViolation&) {
            continue;
        }
        // squaring the enclosure must cover a sampled point of the input
        mpq_class x = sample(rng, b.re), y = sample(rng, b.im);
        if (!sqr(s).contains(x, y)) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("predicates") {
    Box b(Interval::from_strings("0.9", "1.1", 64), Interval::from_strings("-0.1", "0.1", 64));
    CHECK(b.excludes(0, 0));
    CHECK(disjoint(Interval::from_rationals(0, 1, 64), Interval::from_rationals(2, 3, 64)));
    CHECK_FALSE(disjoint(Interval::from_rationals(0, 1, 64), Interval::from_rationals(1, 2, 64)));
    CHECK(diameter(Interval::from_rationals(1, 3, 64)) == 2);
    CHECK(midpoint(Interval::from_rationals(1, 3, 64)) == 2);
    Interval w = widen_to_precision(Interval::from_rational(mpq_class(1, 3), 200), 20);
    CHECK(w.contains(mpq_class(1, 3)));
    CHECK(w.prec() == 20);
    CHECK(diameter(w) > 0);
}

TEST_CASE("monotonicity under widening") {
    std::mt19937_64 rng(6);
    int bad = 0;
    for (int k = 0; k < 500; ++k) {
        Interval x = random_interval(rng, -4, 4, 100), y = random_interval(rng, -4, 4, 100);
        Interval xw = x + Interval::from_rationals(-1, 1, 100);
        if (!subset(x * y, xw * y)) ++bad;
        if (!subset(x + y, xw + y)) ++bad;
        if (!subset(sin(x), sin(xw))) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("matrix operations") {
    Matrix2 u(Box::from_int(1, 64), Box::from_int(1, 64), Box::from_int(0, 64), Box::from_int(1, 64), true);
    CHECK(contains_identity(u * sl2_inverse(u)));
    Box t = trace(u);
    CHECK(t.re.lo_q() == 2);
    CHECK(t.re.hi_q() == 2);
    Matrix2 unflagged(Box::from_int(2, 64), Box::from_int(0, 64), Box::from_int(0, 64), Box::from_int(1, 64));
    CHECK_THROWS_AS(sl2_inverse(unflagged), NotCertifiedSL2);
    CHECK(unflagged.det_hint().contains(2, 0));
}

TEST_CASE("figure-eight generator product in Q(sqrt(-3))") {
    using namespace oracle;
    mpfr_prec_t p = 80;  // 2^-80 ~ 1e-24 < 1e-20
    Matrix2 a = enclose(fig8_gen('a'), p), b = enclose(fig8_gen('b'), p);
    Matrix2 ab = a * b;
    EisMat want = mul(fig8_gen('a'), fig8_gen('b'));
    CHECK(box_contains(ab.a(), want[0]));
    CHECK(box_contains(ab.b(), want[1]));
    CHECK(box_contains(ab.c(), want[2]));
    CHECK(box_contains(ab.d(), want[3]));
    // [[1 - omega, 1], [-omega, 1]]
    CHECK(want[0] == Eis(1) - omega());
    CHECK(want[2] == -omega());
}

TEST_CASE("adjugate soundness on random exact det-1 matrices") {
    std::mt19937_64 rng(7);
    int bad = 0;
    for (int k = 0; k < 300; ++k) {
        mpq_class a = random_dyadic(rng, 0.5, 3), b = random_dyadic(rng, -3, 3), c = random_dyadic(rng, -3, 3);
        mpq_class d = (1 + b * c) / a;
        mpfr_prec_t p = 90;
        Matrix2 m(Box::from_rationals(a, 0, p), Box::from_rationals(b, 0, p), Box::from_rationals(c, 0, p),
                  Box::from_rationals(d, 0, p), true);
        Matrix2 inv = sl2_inverse(m);
        if (!(inv.a().contains(d, 0) && inv.b().contains(-b, 0) && inv.c().contains(-c, 0) && inv.d().contains(a, 0)))
            ++bad;
        if (!contains_identity(m * inv)) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("json round trip is exact") {
    Interval x = Interval::from_rational(mpq_class(1, 3), 100);
    Interval y = interval_from_json(interval_to_json(x), 100);
    CHECK(y.lo_q() == x.lo_q());
    CHECK(y.hi_q() == x.hi_q());
    Box b = box_from_json(json::parse(R"({"re": ["0.5", "0.75"], "im": "-2"})"), 64);
    CHECK(b.re.lo_q() == mpq_class(1, 2));
    CHECK(b.im.hi_q() == -2);
    CHECK_THROWS(interval_from_json(json::parse("[1.5, 2]"), 64));  // binary floats rejected
}
