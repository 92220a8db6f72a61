#include "cert/elementary.hpp"

#include <map>
#include <utility>

namespace cert {

namespace {

constexpr mpfr_prec_t guard_bits = 32;

Interval point_of(const Real& a, mpfr_prec_t wp) { return Interval::from_reals(a, a, wp); }

Interval rat(long num, long den, mpfr_prec_t wp) { return Interval::from_rational(mpq_class(num, den), wp); }

// upper bound of |x| is tiny compared with 2^-bits
bool negligible(const Interval& x, mpfr_prec_t bits) {
    Interval m = magnitude(x);
    if (mpfr_zero_p(m.hi().get())) return true;
    return mpfr_get_exp(m.hi().get()) < -static_cast<mpfr_exp_t>(bits);
}

Interval with_error(const Interval& x, const Interval& bound) {
    Interval b = magnitude(bound);
    return x + hull(-b, b);
}

// sum_{k>=0} (-1)^k r^(2k+1)/(2k+1)! with Lagrange remainder
Interval sin_series(const Interval& r, mpfr_prec_t wp) {
    Interval r2 = sqr(r);
    Interval term = r;
    Interval sum = r;
    for (long k = 1;; ++k) {
        term = -(term * r2) / Interval::from_int((2 * k) * (2 * k + 1), wp);
        if (negligible(term, wp + 2)) return with_error(sum, term);
        sum = sum + term;
    }
}

Interval cos_series(const Interval& r, mpfr_prec_t wp) {
    Interval r2 = sqr(r);
    Interval term = Interval::from_int(1, wp);
    Interval sum = term;
    for (long k = 1;; ++k) {
        term = -(term * r2) / Interval::from_int((2 * k - 1) * (2 * k), wp);
        if (negligible(term, wp + 2)) return with_error(sum, term);
        sum = sum + term;
    }
}

// atan for |u| <= 1/2 by its alternating series; remainder below the first
// omitted term |u|^(2N+1)/(2N+1)
Interval atan_series(const Interval& u, mpfr_prec_t wp) {
    Interval u2 = sqr(u);
    Interval power = u;
    Interval sum = u;
    for (long k = 1;; ++k) {
        power = -(power * u2);
        Interval term = power / Interval::from_int(2 * k + 1, wp);
        if (negligible(term, wp + 2)) return with_error(sum, term);
        sum = sum + term;
    }
}

// atanh for |s| <= 1/3; tail bounded by 2 |first omitted term|
Interval atanh_series(const Interval& s, mpfr_prec_t wp) {
    Interval s2 = sqr(s);
    Interval power = s;
    Interval sum = s;
    for (long k = 1;; ++k) {
        power = power * s2;
        Interval term = power / Interval::from_int(2 * k + 1, wp);
        if (negligible(term, wp + 2)) return with_error(sum, mul_2si(term, 1));
        sum = sum + term;
    }
}

Interval compute_pi(mpfr_prec_t wp) {
    Interval a = atan_series(rat(1, 5, wp), wp);
    Interval b = atan_series(rat(1, 239, wp), wp);
    return mul_2si(a, 4) - mul_2si(b, 2);
}

Interval log2_interval(mpfr_prec_t wp) { return mul_2si(atanh_series(rat(1, 3, wp), wp), 1); }

Interval atan_point(const Real& a, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + guard_bits;
    Interval u = point_of(a, wp);
    if (mpfr_zero_p(a.get())) return Interval::from_int(0, prec);
    Interval one = Interval::from_int(1, wp);
    long halvings = 0;
    // atan(u) = 2 atan(u / (1 + sqrt(1 + u^2)))
    while (!negligible(u, 6) && halvings < 200) {
        u = u / (one + sqrt_pos(one + sqr(u)));
        ++halvings;
    }
    return widen_to_precision(mul_2si(atan_series(u, wp + halvings), halvings), prec);
}

Interval log_point(const Real& a, mpfr_prec_t prec) {
    if (mpfr_sgn(a.get()) <= 0) throw DomainViolation("log of a nonpositive number");
    mpfr_prec_t wp = prec + guard_bits;
    mpfr_exp_t e = mpfr_get_exp(a.get());
    Real m(a.prec());
    mpfr_mul_2si(m.get(), a.get(), -e, MPFR_RNDN);  // exact, m in [1/2, 1)
    if (mpfr_cmp_d(m.get(), 0.70703125) < 0) {
        mpfr_mul_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        --e;
    }
    Interval mi = point_of(m, wp);
    Interval one = Interval::from_int(1, wp);
    Interval s = (mi - one) / (mi + one);
    Interval r = mul_2si(atanh_series(s, wp), 1);
    if (e != 0) r = r + Interval::from_int(e, wp) * log2_interval(wp + 64);
    return widen_to_precision(r, prec);
}

// returns (sin a, cos a)
std::pair<Interval, Interval> sincos_point(const Real& a, mpfr_prec_t prec) {
    if (mpfr_zero_p(a.get())) return {Interval::from_int(0, prec), Interval::from_int(1, prec)};
    mpfr_exp_t ex = mpfr_get_exp(a.get());
    if (ex > 4096) {
        Interval full = Interval::from_rationals(-1, 1, prec);
        return {full, full};
    }
    mpfr_prec_t extra = ex > 0 ? static_cast<mpfr_prec_t>(ex) : 0;
    mpfr_prec_t wp = prec + guard_bits + extra;
    Interval half_pi = mul_2si(pi_interval(wp + 16), -1);
    // nearest quadrant index
    Real q(wp);
    mpfr_div(q.get(), a.get(), mid_point(half_pi).lo().get(), MPFR_RNDN);
    mpz_class k;
    mpfr_get_z(k.get_mpz_t(), q.get(), MPFR_RNDN);
    Interval r = point_of(a, wp) - Interval::from_rational(mpq_class(k), wp) * half_pi;
    Interval sr = sin_series(r, wp), cr = cos_series(r, wp);
    long quad = mpz_class(((k % 4) + 4) % 4).get_si();
    Interval s(wp), c(wp);
    switch (quad) {
        case 0: s = sr; c = cr; break;
        case 1: s = cr; c = -sr; break;
        case 2: s = -sr; c = -cr; break;
        default: s = -cr; c = sr; break;
    }
    return {widen_to_precision(s, prec), widen_to_precision(c, prec)};
}

// whether some x0 in x may equal offset + 2*pi*k for an integer k
bool may_hit(const Interval& x, const Interval& offset, const Interval& two_pi) {
    Interval lo = (Interval::from_reals(x.lo(), x.lo(), x.prec()) - offset) / two_pi;
    Interval hi = (Interval::from_reals(x.hi(), x.hi(), x.prec()) - offset) / two_pi;
    mpz_class a, b;
    mpfr_get_z(a.get_mpz_t(), lo.lo().get(), MPFR_RNDU);
    mpfr_get_z(b.get_mpz_t(), hi.hi().get(), MPFR_RNDD);
    return a <= b;
}

Interval clamp_unit(const Interval& x) {
    auto r = intersect(x, Interval::from_rationals(-1, 1, x.prec()));
    return r ? *r : x;
}

enum class Trig { sine, cosine };

Interval trig(const Interval& x, Trig which) {
    mpfr_prec_t prec = x.prec();
    Interval full = Interval::from_rationals(-1, 1, prec);
    if (mpfr_inf_p(x.lo().get()) || mpfr_inf_p(x.hi().get())) return full;
    if (diameter(x) >= 6) return full;
    auto lo = sincos_point(x.lo(), prec);
    if (x.is_point()) return which == Trig::sine ? lo.first : lo.second;
    auto hi = sincos_point(x.hi(), prec);
    Interval r = which == Trig::sine ? hull(lo.first, hi.first) : hull(lo.second, hi.second);
    mpfr_prec_t wp = prec + guard_bits;
    Interval pi = pi_interval(wp);
    Interval two_pi = mul_2si(pi, 1);
    Interval max_at = which == Trig::sine ? mul_2si(pi, -1) : Interval::from_int(0, wp);
    Interval min_at = which == Trig::sine ? -mul_2si(pi, -1) : pi;
    Interval xw = widen_to_precision(x, wp);
    if (may_hit(xw, max_at, two_pi)) r = hull(r, Interval::from_int(1, prec));
    if (may_hit(xw, min_at, two_pi)) r = hull(r, Interval::from_int(-1, prec));
    return clamp_unit(r);
}

// angle of an exact point, excluding the closed negative real ray
Interval angle_point(const Real& y, const Real& x, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + guard_bits;
    int sx = mpfr_sgn(x.get()), sy = mpfr_sgn(y.get());
    if (sy == 0 && sx <= 0) throw DomainViolation("argument on the branch ray");
    Interval xi = point_of(x, wp), yi = point_of(y, wp);
    Interval r(wp);
    if (sx > 0) {
        r = atan(yi / xi);
    } else if (sy > 0) {
        r = mul_2si(pi_interval(wp), -1) + atan(-xi / yi);
    } else {
        r = -mul_2si(pi_interval(wp), -1) - atan(xi / yi);
    }
    return widen_to_precision(r, prec);
}

}  // namespace

Interval pi_interval(mpfr_prec_t prec) {
    thread_local std::map<mpfr_prec_t, Interval> cache;
    auto it = cache.find(prec);
    if (it != cache.end()) return it->second;
    Interval p = widen_to_precision(compute_pi(prec + guard_bits), prec);
    cache.emplace(prec, p);
    return p;
}

Interval sqrt_pos(const Interval& x) {
    if (mpfr_sgn(x.lo().get()) < 0) throw DomainViolation("sqrt of an interval with negative part");
    mpfr_prec_t p = x.prec();
    Interval r(p);
    Real sq(2 * p + 2);
    mpfr_ptr lo = r.lo_mut().get();
    mpfr_ptr hi = r.hi_mut().get();
    // guesses from directed rounding, then an exact check by squaring
    mpfr_sqrt(lo, x.lo().get(), MPFR_RNDD);
    for (;;) {
        mpfr_sqr(sq.get(), lo, MPFR_RNDN);  // exact at 2p+2 bits
        if (mpfr_cmp(sq.get(), x.lo().get()) <= 0) break;
        mpfr_nextbelow(lo);
    }
    if (mpfr_sgn(lo) < 0) mpfr_set_zero(lo, 1);
    mpfr_sqrt(hi, x.hi().get(), MPFR_RNDU);
    for (;;) {
        mpfr_sqr(sq.get(), hi, MPFR_RNDN);
        if (mpfr_cmp(sq.get(), x.hi().get()) >= 0) break;
        mpfr_nextabove(hi);
    }
    return r;
}

Interval sin(const Interval& x) { return trig(x, Trig::sine); }

Interval cos(const Interval& x) { return trig(x, Trig::cosine); }

Interval atan(const Interval& x) {
    Interval lo = atan_point(x.lo(), x.prec());
    if (x.is_point()) return lo;
    Interval hi = atan_point(x.hi(), x.prec());
    return Interval::from_reals(lo.lo(), hi.hi(), x.prec());
}

Interval log(const Interval& x) {
    if (mpfr_sgn(x.lo().get()) <= 0) throw DomainViolation("log of an interval meeting (-inf, 0]");
    Interval lo = log_point(x.lo(), x.prec());
    if (x.is_point()) return lo;
    Interval hi = log_point(x.hi(), x.prec());
    return Interval::from_reals(lo.lo(), hi.hi(), x.prec());
}

Interval atan2_box(const Interval& y, const Interval& x) {
    if (!x.positive() && y.contains_zero())
        throw DomainViolation("argument box meets the branch ray (-inf, 0]");
    mpfr_prec_t prec = std::max(x.prec(), y.prec());
    Interval r = angle_point(y.lo(), x.lo(), prec);
    const Real* ys[2] = {&y.lo(), &y.hi()};
    const Real* xs[2] = {&x.lo(), &x.hi()};
    for (auto yy : ys)
        for (auto xx : xs) r = hull(r, angle_point(*yy, *xx, prec));
    return r;
}

}  // namespace cert
