#include "cert/interval.hpp"

#include <algorithm>
#include <sstream>

namespace cert {

namespace {

mpfr_prec_t pmax(const Interval& x, const Interval& y) { return std::max(x.prec(), y.prec()); }

void set_q(Real& r, const mpq_class& q, mpfr_rnd_t rnd) { mpfr_set_q(r.get(), q.get_mpq_t(), rnd); }

}  // namespace

void check_order(const Interval& x) {
    if (mpfr_nan_p(x.lo_.get()) || mpfr_nan_p(x.hi_.get()) || mpfr_cmp(x.lo_.get(), x.hi_.get()) > 0)
        throw std::logic_error("interval endpoints out of order");
}

Interval Interval::from_int(long v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
    return r;
}

Interval Interval::from_double(double v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_d(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_d(r.hi_.get(), v, MPFR_RNDU);
    check_order(r);
    return r;
}

Interval Interval::from_rational(const mpq_class& q, mpfr_prec_t prec) { return from_rationals(q, q, prec); }

Interval Interval::from_rationals(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec) {
    if (lo > hi) throw std::invalid_argument("interval lower endpoint exceeds upper endpoint");
    Interval r(prec);
    set_q(r.lo_, lo, MPFR_RNDD);
    set_q(r.hi_, hi, MPFR_RNDU);
    return r;
}

Interval Interval::from_strings(const std::string& lo, const std::string& hi, mpfr_prec_t prec) {
    return from_rationals(parse_rational(lo), parse_rational(hi), prec);
}

Interval Interval::symmetric(const mpq_class& r, mpfr_prec_t prec) {
    mpq_class a = abs(r);
    return from_rationals(-a, a, prec);
}

Interval Interval::from_reals(const Real& lo, const Real& hi, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
    check_order(r);
    return r;
}

double Interval::mid_double() const {
    Real m(prec() + 1);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m.to_double();
}

bool Interval::contains(const mpq_class& q) const {
    return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

Interval operator+(const Interval& x, const Interval& y) {
    Interval r(pmax(x, y));
    mpfr_add(r.lo_mut().get(), x.lo().get(), y.lo().get(), MPFR_RNDD);
    mpfr_add(r.hi_mut().get(), x.hi().get(), y.hi().get(), MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& x, const Interval& y) {
    Interval r(pmax(x, y));
    mpfr_sub(r.lo_mut().get(), x.lo().get(), y.hi().get(), MPFR_RNDD);
    mpfr_sub(r.hi_mut().get(), x.hi().get(), y.lo().get(), MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& x) {
    Interval r(x.prec());
    mpfr_neg(r.lo_mut().get(), x.hi().get(), MPFR_RNDD);
    mpfr_neg(r.hi_mut().get(), x.lo().get(), MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& x, const Interval& y) {
    Interval r(pmax(x, y));
    mpfr_ptr lo = r.lo_mut().get();
    mpfr_ptr hi = r.hi_mut().get();
    int xs = mpfr_sgn(x.lo().get()) >= 0 ? 1 : (mpfr_sgn(x.hi().get()) <= 0 ? -1 : 0);
    int ys = mpfr_sgn(y.lo().get()) >= 0 ? 1 : (mpfr_sgn(y.hi().get()) <= 0 ? -1 : 0);
    auto L = [](const Interval& i) { return i.lo().get(); };
    auto H = [](const Interval& i) { return i.hi().get(); };
    // sign case table; the mixed/mixed case needs two candidates per side
    if (xs > 0 && ys > 0) {
        mpfr_mul(lo, L(x), L(y), MPFR_RNDD);
        mpfr_mul(hi, H(x), H(y), MPFR_RNDU);
    } else if (xs > 0 && ys < 0) {
        mpfr_mul(lo, H(x), L(y), MPFR_RNDD);
        mpfr_mul(hi, L(x), H(y), MPFR_RNDU);
    } else if (xs < 0 && ys > 0) {
        mpfr_mul(lo, L(x), H(y), MPFR_RNDD);
        mpfr_mul(hi, H(x), L(y), MPFR_RNDU);
    } else if (xs < 0 && ys < 0) {
        mpfr_mul(lo, H(x), H(y), MPFR_RNDD);
        mpfr_mul(hi, L(x), L(y), MPFR_RNDU);
    } else if (xs == 0 && ys > 0) {
        mpfr_mul(lo, L(x), H(y), MPFR_RNDD);
        mpfr_mul(hi, H(x), H(y), MPFR_RNDU);
    } else if (xs == 0 && ys < 0) {
        mpfr_mul(lo, H(x), L(y), MPFR_RNDD);
        mpfr_mul(hi, L(x), L(y), MPFR_RNDU);
    } else if (xs > 0 && ys == 0) {
        mpfr_mul(lo, H(x), L(y), MPFR_RNDD);
        mpfr_mul(hi, H(x), H(y), MPFR_RNDU);
    } else if (xs < 0 && ys == 0) {
        mpfr_mul(lo, L(x), H(y), MPFR_RNDD);
        mpfr_mul(hi, L(x), L(y), MPFR_RNDU);
    } else {
        Real t(r.prec());
        mpfr_mul(lo, L(x), H(y), MPFR_RNDD);
        mpfr_mul(t.get(), H(x), L(y), MPFR_RNDD);
        mpfr_min(lo, lo, t.get(), MPFR_RNDD);
        mpfr_mul(hi, L(x), L(y), MPFR_RNDU);
        mpfr_mul(t.get(), H(x), H(y), MPFR_RNDU);
        mpfr_max(hi, hi, t.get(), MPFR_RNDU);
    }
    return r;
}

Interval operator/(const Interval& x, const Interval& y) {
    if (y.contains_zero()) throw DivisorContainsZero();
    Interval r(pmax(x, y));
    mpfr_ptr lo = r.lo_mut().get();
    mpfr_ptr hi = r.hi_mut().get();
    Real t(r.prec());
    // y has constant sign, so the extremes sit at endpoint quotients
    mpfr_srcptr xs[2] = {x.lo().get(), x.hi().get()};
    mpfr_srcptr ys[2] = {y.lo().get(), y.hi().get()};
    bool first = true;
    for (auto a : xs)
        for (auto b : ys) {
            if (first) {
                mpfr_div(lo, a, b, MPFR_RNDD);
                mpfr_div(hi, a, b, MPFR_RNDU);
                first = false;
            } else {
                mpfr_div(t.get(), a, b, MPFR_RNDD);
                mpfr_min(lo, lo, t.get(), MPFR_RNDD);
                mpfr_div(t.get(), a, b, MPFR_RNDU);
                mpfr_max(hi, hi, t.get(), MPFR_RNDU);
            }
        }
    return r;
}

Interval sqr(const Interval& x) {
    Interval r(x.prec());
    if (x.nonnegative()) {
        mpfr_sqr(r.lo_mut().get(), x.lo().get(), MPFR_RNDD);
        mpfr_sqr(r.hi_mut().get(), x.hi().get(), MPFR_RNDU);
    } else if (x.negative()) {
        mpfr_sqr(r.lo_mut().get(), x.hi().get(), MPFR_RNDD);
        mpfr_sqr(r.hi_mut().get(), x.lo().get(), MPFR_RNDU);
    } else {
        Real t(x.prec());
        mpfr_set_zero(r.lo_mut().get(), 1);
        mpfr_sqr(r.hi_mut().get(), x.lo().get(), MPFR_RNDU);
        mpfr_sqr(t.get(), x.hi().get(), MPFR_RNDU);
        mpfr_max(r.hi_mut().get(), r.hi().get(), t.get(), MPFR_RNDU);
    }
    return r;
}

Interval abs(const Interval& x) {
    if (x.nonnegative()) return x;
    if (x.negative()) return -x;
    Interval r(x.prec());
    mpfr_set_zero(r.lo_mut().get(), 1);
    mpfr_neg(r.hi_mut().get(), x.lo().get(), MPFR_RNDU);
    mpfr_max(r.hi_mut().get(), r.hi().get(), x.hi().get(), MPFR_RNDU);
    return r;
}

Interval mul_2si(const Interval& x, long e) {
    Interval r(x.prec());
    mpfr_mul_2si(r.lo_mut().get(), x.lo().get(), e, MPFR_RNDD);
    mpfr_mul_2si(r.hi_mut().get(), x.hi().get(), e, MPFR_RNDU);
    return r;
}

Interval hull(const Interval& x, const Interval& y) {
    Interval r(pmax(x, y));
    mpfr_min(r.lo_mut().get(), x.lo().get(), y.lo().get(), MPFR_RNDD);
    mpfr_max(r.hi_mut().get(), x.hi().get(), y.hi().get(), MPFR_RNDU);
    return r;
}

std::optional<Interval> intersect(const Interval& x, const Interval& y) {
    if (disjoint(x, y)) return std::nullopt;
    Interval r(pmax(x, y));
    mpfr_max(r.lo_mut().get(), x.lo().get(), y.lo().get(), MPFR_RNDD);
    mpfr_min(r.hi_mut().get(), x.hi().get(), y.hi().get(), MPFR_RNDU);
    return r;
}

bool disjoint(const Interval& x, const Interval& y) {
    return mpfr_cmp(x.hi().get(), y.lo().get()) < 0 || mpfr_cmp(y.hi().get(), x.lo().get()) < 0;
}

bool interior(const Interval& x, const Interval& y) {
    return mpfr_cmp(y.lo().get(), x.lo().get()) < 0 && mpfr_cmp(x.hi().get(), y.hi().get()) < 0;
}

bool subset(const Interval& x, const Interval& y) {
    return mpfr_cmp(y.lo().get(), x.lo().get()) <= 0 && mpfr_cmp(x.hi().get(), y.hi().get()) <= 0;
}

mpq_class diameter(const Interval& x) { return x.hi_q() - x.lo_q(); }

mpq_class midpoint(const Interval& x) { return (x.lo_q() + x.hi_q()) / 2; }

Interval mid_point(const Interval& x) {
    Real m(x.prec());
    mpq_class q = midpoint(x);
    mpfr_set_q(m.get(), q.get_mpq_t(), MPFR_RNDN);
    Interval r(x.prec());
    mpfr_set(r.lo_mut().get(), m.get(), MPFR_RNDN);
    mpfr_set(r.hi_mut().get(), m.get(), MPFR_RNDN);
    return r;
}

Interval widen_to_precision(const Interval& x, mpfr_prec_t p) {
    Interval r(p);
    mpfr_set(r.lo_mut().get(), x.lo().get(), MPFR_RNDD);
    mpfr_set(r.hi_mut().get(), x.hi().get(), MPFR_RNDU);
    return r;
}

Interval magnitude(const Interval& x) {
    Interval a = abs(x);
    Interval r(x.prec());
    mpfr_set(r.lo_mut().get(), a.hi().get(), MPFR_RNDU);
    mpfr_set(r.hi_mut().get(), a.hi().get(), MPFR_RNDU);
    return r;
}

std::string to_string(const Interval& x) {
    std::ostringstream os;
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.17Rg", x.lo().get());
    os << "[" << buf << ", ";
    mpfr_snprintf(buf, sizeof buf, "%.17Rg", x.hi().get());
    os << buf << "]";
    return os.str();
}

}  // namespace cert
