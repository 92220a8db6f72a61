"""Exact holonomy fixture for the Weeks manifold presentation
<a,b | ababaBaaB, ababAbbAb>.

Generators are written over the sextic field Q(x), x^6+x^5+3x^4+x^3+3x^2+x+1 = 0:
    a = [[-x, -1], [0, -1/x]],   b = [[-x, 0], [t, -1/x]],
    t = -1 + 2x + x^2 + 3x^3 + x^4 + x^5.
Both relators are checked to equal the identity exactly in Q[x]/(p). The root
is then isolated rigorously and every entry enclosed with exact rational boxes.
Only the standard library and mpmath (for a starting approximation) are used.
"""
import json
import math
import sys
from fractions import Fraction as Q

import mpmath as mp

P = [1, 1, 3, 1, 3, 1, 1]          # coefficients low -> high, monic degree 6
INV_X = [-1, -3, -1, -3, -1, -1]   # 1/x = -(1 + 3x + x^2 + 3x^3 + x^4 + x^5)
T = [-1, 2, 1, 3, 1, 1]
NEG_X = [0, -1]


# ---- exact arithmetic in Q[x]/(P) ----
def pmul(u, v):
    out = [Q(0)] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            out[i + j] += a * b
    for k in range(len(out) - 1, 5, -1):
        c = out[k]
        if c:
            for i in range(7):
                out[k - 6 + i] -= c * P[i]
    out = out[:6] + [Q(0)] * (6 - len(out[:6]))
    return out


def padd(u, v):
    n = max(len(u), len(v))
    u = list(u) + [0] * (n - len(u))
    v = list(v) + [0] * (n - len(v))
    return [Q(a) + Q(b) for a, b in zip(u, v)]


def pneg(u):
    return [-Q(a) for a in u]


def mmul(m, n):
    return [[padd(pmul(m[i][0], n[0][j]), pmul(m[i][1], n[1][j])) for j in range(2)] for i in range(2)]


def adj(m):
    return [[m[1][1], pneg(m[0][1])], [pneg(m[1][0]), m[0][0]]]


def norm(u):
    u = [Q(c) for c in u] + [Q(0)] * (6 - len(u))
    return u[:6]


ZERO = [0]
ONE = [1]
GENS_EXACT = {
    "a": [[NEG_X, [-1]], [ZERO, pneg(INV_X)]],
    "b": [[NEG_X, ZERO], [T, pneg(INV_X)]],
}


def word_exact(w):
    g = dict(GENS_EXACT)
    g["A"] = adj(g["a"])
    g["B"] = adj(g["b"])
    r = [[ONE, ZERO], [ZERO, ONE]]
    for ch in w:
        r = mmul(r, g[ch])
    return [[norm(e) for e in row] for row in r]


def check_exact():
    ident = [[norm(ONE), norm(ZERO)], [norm(ZERO), norm(ONE)]]
    assert pmul(norm([0, 1]), norm(INV_X)) == norm(ONE), "1/x wrong"
    for g in "ab":
        m = GENS_EXACT[g]
        det = padd(pmul(m[0][0], m[1][1]), pneg(pmul(m[0][1], m[1][0])))
        assert norm(det) == norm(ONE), "det != 1"
    for rel in ("ababaBaaB", "ababAbbAb"):
        assert word_exact(rel) == ident, rel


# ---- rigorous root enclosure ----
def cpoly(coeffs, z):
    re, im = Q(0), Q(0)
    for c in reversed(coeffs):
        re, im = re * z[0] - im * z[1] + c, re * z[1] + im * z[0]
    return re, im


def isqrt_up(q):
    # upper bound for sqrt of a nonnegative rational on the 2^-800 grid
    n = q.numerator * 2 ** 1600 // q.denominator + 1
    return Q(math.isqrt(n) + 1, 2 ** 800)


def root_box(digits=200):
    mp.mp.dps = digits + 40
    # start from the embedding matching the discrete faithful representation
    z0 = mp.mpc("-0.27313053518529263826", "-0.61430601881259317127")
    z = mp.findroot(lambda s: mp.polyval(P[::-1], s), z0)
    zr = (Q(mp.nstr(z.real, digits + 30)), Q(mp.nstr(z.imag, digits + 30)))
    dp = [k * P[k] for k in range(1, 7)]
    pr, pi = cpoly(P, zr)
    dr, di = cpoly(dp, zr)
    r2 = 36 * (pr * pr + pi * pi) / (dr * dr + di * di)
    rad = isqrt_up(r2)
    assert rad < Q(1, 10 ** (digits - 20))
    return zr, rad


# ---- rational complex boxes with outward rounding to a decimal grid ----
class Box:
    GRID = 10 ** 220

    def __init__(self, rlo, rhi, ilo, ihi):
        self.r = (self._dn(rlo), self._up(rhi))
        self.i = (self._dn(ilo), self._up(ihi))

    @classmethod
    def _dn(cls, q):
        q = Q(q)
        return Q((q.numerator * cls.GRID) // q.denominator, cls.GRID)

    @classmethod
    def _up(cls, q):
        q = Q(q)
        return Q(-((-q.numerator * cls.GRID) // q.denominator), cls.GRID)

    @staticmethod
    def point(c):
        return Box(c, c, 0, 0)

    def __add__(self, o):
        return Box(self.r[0] + o.r[0], self.r[1] + o.r[1], self.i[0] + o.i[0], self.i[1] + o.i[1])

    def __mul__(self, o):
        def imul(a, b):
            ps = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
            return min(ps), max(ps)

        def isub(a, b):
            return a[0] - b[1], a[1] - b[0]

        def iadd(a, b):
            return a[0] + b[0], a[1] + b[1]

        re = isub(imul(self.r, o.r), imul(self.i, o.i))
        im = iadd(imul(self.r, o.i), imul(self.i, o.r))
        return Box(re[0], re[1], im[0], im[1])


def enclose_poly(coeffs, xb):
    acc = Box.point(0)
    for c in reversed(coeffs):
        acc = acc * xb + Box.point(c)
    return acc


def dec(q, up):
    # exact decimal string of a grid rational (grid is a power of ten)
    sgn = "-" if q < 0 else ""
    q = abs(q)
    whole = q.numerator // q.denominator
    frac = q - whole
    digits = 220
    fd = (frac * 10 ** digits)
    assert fd.denominator == 1
    s = f"{sgn}{whole}.{int(fd):0{digits}d}".rstrip("0").rstrip(".")
    return s if s not in ("-0", "") else "0"


def box_json(b):
    return {"re": [dec(b.r[0], False), dec(b.r[1], True)], "im": [dec(b.i[0], False), dec(b.i[1], True)]}


def main(out):
    check_exact()
    (xr, xi), rad = root_box()
    xb = Box(xr - rad, xr + rad, xi - rad, xi + rad)
    mats = {}
    for g, m in GENS_EXACT.items():
        mats[g] = [[box_json(enclose_poly([Q(c) for c in e], xb)) for e in row] for row in m]
    doc = {
        "generators": ["a", "b"],
        "relators": ["ababaBaaB", "ababAbbAb"],
        "matrices": mats,
        "precision": 640,
        "note": "entries are polynomials in a root of x^6+x^5+3x^4+x^3+3x^2+x+1; relators verified exactly",
    }
    with open(out, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "weeks.hol.json")
