#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace cert {

// Owning wrapper around an MPFR number. Only used as an interval endpoint, so
// it offers nothing beyond storage, copying and exact conversions.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    mpq_class to_rational() const;
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // exact decimal expansion (always terminates for a dyadic)
    std::string to_decimal() const;

private:
    mpfr_t v_;
};

// Exact decimal expansion of a rational whose denominator is a power of two
// (or of ten). Throws if it would not terminate.
std::string exact_decimal(const mpq_class& q);

// Parses "-12.5e-3", "7", "3/8". Exact, no binary float anywhere.
mpq_class parse_rational(const std::string& s);

}  // namespace cert
