#include "cert/complex_box.hpp"

namespace cert {

Box operator+(const Box& x, const Box& y) { return Box(x.re + y.re, x.im + y.im); }
Box operator-(const Box& x, const Box& y) { return Box(x.re - y.re, x.im - y.im); }
Box operator-(const Box& x) { return Box(-x.re, -x.im); }

Box operator*(const Box& x, const Box& y) {
    return Box(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
}

Box operator*(const Interval& x, const Box& y) { return Box(x * y.re, x * y.im); }

Box operator/(const Box& x, const Box& y) {
    if (!y.excludes_zero()) throw DivisorContainsZero();
    Interval n = norm2(y);
    Box num = x * conj(y);
    return Box(num.re / n, num.im / n);
}

Box conj(const Box& x) { return Box(x.re, -x.im); }

Box sqr(const Box& x) {
    return Box(sqr(x.re) - sqr(x.im), mul_2si(x.re * x.im, 1));
}

Interval norm2(const Box& x) { return sqr(x.re) + sqr(x.im); }

Interval modulus(const Box& x) { return sqrt_pos(norm2(x)); }

Interval arg_principal(const Box& x) { return atan2_box(x.im, x.re); }

Box log(const Box& x) {
    Interval a = arg_principal(x);  // checks the branch ray first
    return Box(mul_2si(log(norm2(x)), -1), a);
}

Box exp_i(const Interval& t) { return Box(cos(t), sin(t)); }

namespace {

// principal root of a box avoiding (-inf, 0]
Box principal_sqrt(const Box& x) {
    Interval m = modulus(x);
    if (x.re.positive()) {
        Interval u = sqrt_pos(mul_2si(m + x.re, -1));
        return Box(u, x.im / mul_2si(u, 1));
    }
    // here im excludes 0, and |x| - re >= |x| > 0
    Interval v = sqrt_pos(mul_2si(m - x.re, -1));
    if (x.im.negative()) v = -v;
    return Box(x.im / mul_2si(v, 1), v);
}

bool meets_negative_ray(const Box& x) { return !x.re.positive() && x.im.contains_zero(); }

}  // namespace

Box sqrt(const Box& x) {
    if (!meets_negative_ray(x)) return principal_sqrt(x);
    Box neg = -x;
    if (meets_negative_ray(neg)) throw DomainViolation("square root box meets both branch rays");
    Box r = principal_sqrt(neg);
    return Box(-r.im, r.re);  // i * sqrt(-x)
}

Box hull(const Box& x, const Box& y) { return Box(hull(x.re, y.re), hull(x.im, y.im)); }

bool disjoint(const Box& x, const Box& y) { return disjoint(x.re, y.re) || disjoint(x.im, y.im); }
bool interior(const Box& x, const Box& y) { return interior(x.re, y.re) && interior(x.im, y.im); }
bool subset(const Box& x, const Box& y) { return subset(x.re, y.re) && subset(x.im, y.im); }

mpq_class diameter(const Box& x) {
    mpq_class a = diameter(x.re), b = diameter(x.im);
    return a > b ? a : b;
}

Box mid_point(const Box& x) { return Box(mid_point(x.re), mid_point(x.im)); }

Box widen_to_precision(const Box& x, mpfr_prec_t p) {
    return Box(widen_to_precision(x.re, p), widen_to_precision(x.im, p));
}

std::string to_string(const Box& x) { return to_string(x.re) + " + i" + to_string(x.im); }

}  // namespace cert
