#pragma once

// High-precision reference model of the universal cover of SL(2,R). The
// rotation coordinate of a product is obtained by following the angle of
// cos s - conj(z) sin s continuously for s from 0 to t, instead of the
// closed-form correction used by the library.

#include "cert/gtil.hpp"

#include <cmath>
#include <complex>
#include <random>

namespace oracle {

struct HiElem {
    cert::Matrix2 g;   // enclosure at high precision
    cert::Interval t;  // exact lifted angle, to high precision
};

inline cert::Box hi_image_of_i(const cert::Matrix2& g) {
    return cert::Box(g.b().re, g.a().re) / cert::Box(g.d().re, g.c().re);
}

// continuous angle of w(s) = cos s - conj(z) sin s over s in [0, t]
inline cert::Interval lifted_correction(const cert::Interval& t, const cert::Box& z) {
    mpfr_prec_t p = t.prec();
    double td = t.mid_double();
    std::complex<double> zc(z.re.mid_double(), -z.im.mid_double());
    int steps = 64 + static_cast<int>(std::abs(td) * 200);
    double angle = 0, prev = 0;
    for (int k = 1; k <= steps; ++k) {
        double s = td * k / steps;
        std::complex<double> w = std::cos(s) - zc * std::sin(s);
        double a = std::arg(w);
        double d = a - prev;
        d -= 2 * M_PI * std::round(d / (2 * M_PI));
        angle += d;
        prev = a;
    }
    // principal value at full precision, then the winding from the walk
    cert::Interval c = cert::cos(t), s = cert::sin(t);
    cert::Box w = cert::Box::real(c) - s * cert::conj(z);
    cert::Interval principal = cert::arg_principal(w);
    long wind = std::lround((angle - principal.mid_double()) / (2 * M_PI));
    return principal + cert::Interval::from_int(wind, p) * cert::mul_2si(cert::pi_interval(p), 1);
}

inline HiElem hi_mul(const HiElem& x, const HiElem& y) {
    return {x.g * y.g, lifted_correction(x.t, hi_image_of_i(y.g)) + y.t};
}

// p(x + iy) k(t) at precision p
inline HiElem hi_element(double x, double y, double t, mpfr_prec_t p) {
    using namespace cert;
    GtilElement a = gtil_translation(Interval::from_double(x, p), Interval::from_double(y, p));
    GtilElement b = gtil_rotation(Interval::from_double(t, p));
    return {a.g * b.g, Interval::from_double(t, p)};
}

// the same element enclosed at a lower working precision
inline cert::GtilElement lower(const HiElem& e, mpfr_prec_t p) {
    return {cert::widen_to_precision(e.g, p), cert::widen_to_precision(e.t, p)};
}

inline bool contains_point(const cert::Interval& low, const cert::Interval& hi) {
    return cert::subset(cert::mid_point(hi), low);
}

inline bool contains_point(const cert::Matrix2& low, const cert::Matrix2& hi) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!contains_point(low.entry(i, j).re, hi.entry(i, j).re)) return false;
    return true;
}

struct RandomElement {
    std::mt19937_64& rng;
    HiElem operator()(mpfr_prec_t p) {
        std::uniform_real_distribution<double> ux(-3, 3), uy(0.2, 5), ut(-3.1, 3.1);
        return hi_element(ux(rng), uy(rng), ut(rng), p);
    }
};

}  // namespace oracle
