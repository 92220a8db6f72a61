#pragma once

#include "cert/elementary.hpp"
#include "cert/interval.hpp"

#include <string>

namespace cert {

// Closed axis-aligned rectangle re x im in the complex plane.
struct Box {
    Interval re;
    Interval im;

    Box() = default;
    Box(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
    static Box real(Interval r) {
        mpfr_prec_t p = r.prec();
        return Box(std::move(r), Interval::from_int(0, p));
    }
    static Box from_int(long v, mpfr_prec_t prec) {
        return Box(Interval::from_int(v, prec), Interval::from_int(0, prec));
    }
    static Box from_rationals(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec) {
        return Box(Interval::from_rational(re, prec), Interval::from_rational(im, prec));
    }

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
    bool contains(const mpq_class& x, const mpq_class& y) const { return re.contains(x) && im.contains(y); }
    bool excludes(const mpq_class& x, const mpq_class& y) const { return !contains(x, y); }
    bool excludes_zero() const { return !re.contains_zero() || !im.contains_zero(); }
    bool is_real() const { return im.is_point() && mpfr_zero_p(im.lo().get()); }
};

Box operator+(const Box& x, const Box& y);
Box operator-(const Box& x, const Box& y);
Box operator-(const Box& x);
Box operator*(const Box& x, const Box& y);
Box operator*(const Interval& x, const Box& y);
Box operator/(const Box& x, const Box& y);  // DivisorContainsZero unless y excludes 0
Box conj(const Box& x);
Box sqr(const Box& x);
Interval norm2(const Box& x);  // |z|^2
Interval modulus(const Box& x);
// principal argument; DomainViolation when the box meets (-inf, 0]
Interval arg_principal(const Box& x);
// principal logarithm, same domain as arg_principal
Box log(const Box& x);
// cos t + i sin t
Box exp_i(const Interval& t);
// a square root continuous on the box: principal when the box avoids
// (-inf, 0], otherwise the branch cut along [0, inf) (i.e. i*sqrt(-x))
Box sqrt(const Box& x);
Box hull(const Box& x, const Box& y);

bool disjoint(const Box& x, const Box& y);
bool interior(const Box& x, const Box& y);
bool subset(const Box& x, const Box& y);
mpq_class diameter(const Box& x);
Box mid_point(const Box& x);
Box widen_to_precision(const Box& x, mpfr_prec_t p);

std::string to_string(const Box& x);

}  // namespace cert
