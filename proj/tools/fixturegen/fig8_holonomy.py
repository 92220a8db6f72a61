"""Figure-eight holonomy file with exact generators a=[[1,1],[0,1]] and
b=[[1,0],[-omega,1]], omega=(1+sqrt(-3))/2. Only sqrt(3)/2 is irrational; it
is enclosed by a decimal bracket from integer square roots."""

import json
import math
import sys

DIGITS = 330


def sqrt3_half_bracket():
    # floor and ceil of sqrt(3) * 10^DIGITS, halved exactly (5 * 10^(DIGITS-1) grid)
    s = math.isqrt(3 * 10 ** (2 * DIGITS))
    return s, s + 1


def dec(n, shift):
    # n / 10^shift as an exact decimal string
    sgn = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, 10 ** shift)
    s = f"{sgn}{whole}.{frac:0{shift}d}".rstrip("0").rstrip(".")
    return s if s not in ("-0", "") else "0"


def main(out):
    lo, hi = sqrt3_half_bracket()
    # -sqrt(3)/2 in [-hi/2, -lo/2]; halves of integers are exact with one more digit
    im_lo = dec(-hi * 5, DIGITS + 1)
    im_hi = dec(-lo * 5, DIGITS + 1)
    one = {"re": ["1", "1"], "im": ["0", "0"]}
    zero = {"re": ["0", "0"], "im": ["0", "0"]}
    c = {"re": ["-0.5", "-0.5"], "im": [im_lo, im_hi]}
    doc = {
        "generators": ["a", "b"],
        "relators": ["abaBAbabAB"],
        "matrices": {"a": [[one, one], [zero, one]], "b": [[one, zero], [c, one]]},
        "precision": 1100,
    }
    with open(out, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "fig8.hol.json")
