#pragma once

#include "cert/real.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace cert {

struct DivisorContainsZero : std::domain_error {
    DivisorContainsZero() : std::domain_error("divisor contains zero") {}
};

struct DomainViolation : std::domain_error {
    using std::domain_error::domain_error;
};

constexpr mpfr_prec_t default_precision = 128;

// Closed interval [lo, hi] with dyadic endpoints of a fixed mantissa length.
// Every operation rounds its result outward to the larger operand precision.
class Interval {
public:
    Interval() : lo_(default_precision), hi_(default_precision) {}
    explicit Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

    static Interval from_int(long v, mpfr_prec_t prec = default_precision);
    static Interval from_double(double v, mpfr_prec_t prec = default_precision);
    static Interval from_rational(const mpq_class& q, mpfr_prec_t prec);
    static Interval from_rationals(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec);
    static Interval from_strings(const std::string& lo, const std::string& hi, mpfr_prec_t prec);
    // [-r, r]
    static Interval symmetric(const mpq_class& r, mpfr_prec_t prec);
    // stores the two endpoints as given (rounding outward if they do not fit)
    static Interval from_reals(const Real& lo, const Real& hi, mpfr_prec_t prec);

    const Real& lo() const { return lo_; }
    const Real& hi() const { return hi_; }
    Real& lo_mut() { return lo_; }
    Real& hi_mut() { return hi_; }
    mpfr_prec_t prec() const { return lo_.prec(); }

    mpq_class lo_q() const { return lo_.to_rational(); }
    mpq_class hi_q() const { return hi_.to_rational(); }
    double mid_double() const;

    bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()); }
    bool contains(const mpq_class& q) const;
    bool contains(long v) const { return contains(mpq_class(v)); }
    bool excludes(const mpq_class& q) const { return !contains(q); }
    bool contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }
    bool positive() const { return mpfr_sgn(lo_.get()) > 0; }
    bool negative() const { return mpfr_sgn(hi_.get()) < 0; }
    bool nonnegative() const { return mpfr_sgn(lo_.get()) >= 0; }
    // true when every point is < v (resp. > v)
    bool below(const mpq_class& v) const { return mpfr_cmp_q(hi_.get(), v.get_mpq_t()) < 0; }
    bool above(const mpq_class& v) const { return mpfr_cmp_q(lo_.get(), v.get_mpq_t()) > 0; }

private:
    Real lo_, hi_;
    friend void check_order(const Interval&);
};

Interval operator+(const Interval& x, const Interval& y);
Interval operator-(const Interval& x, const Interval& y);
Interval operator*(const Interval& x, const Interval& y);
Interval operator/(const Interval& x, const Interval& y);
Interval operator-(const Interval& x);
Interval sqr(const Interval& x);
Interval abs(const Interval& x);
Interval mul_2si(const Interval& x, long e);  // exact scaling by 2^e
Interval hull(const Interval& x, const Interval& y);
std::optional<Interval> intersect(const Interval& x, const Interval& y);

bool disjoint(const Interval& x, const Interval& y);
// x lies in the open interior of y
bool interior(const Interval& x, const Interval& y);
bool subset(const Interval& x, const Interval& y);
mpq_class diameter(const Interval& x);
mpq_class midpoint(const Interval& x);
// nearest dyadic to the midpoint at precision p, as a degenerate interval
Interval mid_point(const Interval& x);
// re-round endpoints outward to p bits (p may be larger or smaller)
Interval widen_to_precision(const Interval& x, mpfr_prec_t p);
// upper bound of max(|lo|, |hi|), as a degenerate interval
Interval magnitude(const Interval& x);

std::string to_string(const Interval& x);

}  // namespace cert
