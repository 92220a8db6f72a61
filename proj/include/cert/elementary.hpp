#pragma once

#include "cert/interval.hpp"

namespace cert {

// Enclosures of elementary functions. Results are rounded outward to the
// argument's precision; internal work uses a few dozen guard bits.

Interval pi_interval(mpfr_prec_t prec);
Interval sqrt_pos(const Interval& x);  // requires x.lo >= 0
Interval sin(const Interval& x);
Interval cos(const Interval& x);
Interval atan(const Interval& x);
Interval log(const Interval& x);  // requires x.lo > 0
// angle of the point (x, y) for boxes avoiding the closed ray (-inf, 0] x {0};
// values in (-pi, pi)
Interval atan2_box(const Interval& y, const Interval& x);

}  // namespace cert
