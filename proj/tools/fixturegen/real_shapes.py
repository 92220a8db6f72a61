"""Generate a real-shape fixture: a solution of the rectangular gluing
equations of a Dehn filling with every shape real.

Needs snappy and scipy (offline only; output is committed). The shapes come
from a plain double-precision root solve, and the witness trace squared is
computed from SnapPy's own rectangular cusp rows, so neither depends on the
library under test.
"""

import json
import os

import numpy as np
import snappy
from scipy.optimize import fsolve

OUT = os.path.join(os.path.dirname(__file__), "..", "..", "tests", "fixtures", "real")

CASES = [
    # manifold, filling, witness slope, seed
    ("m004", (1, 2), (0, 1), [0.6, 0.3]),
]


def monomial(row, z):
    a, b, c = row
    v = float(c)
    for zi, ai, bi in zip(z, a, b):
        v *= zi ** ai * (1 - zi) ** bi
    return v


def solve(name, filling, seed):
    M = snappy.Manifold(name)
    M.dehn_fill(filling)
    rows = M.gluing_equations("rect")
    # drop one redundant edge equation
    square = rows[: M.num_tetrahedra() - 1] + [rows[-1]]
    f = lambda z: [monomial(r, z) - 1 for r in square]
    z, info, ok, msg = fsolve(f, seed, full_output=True, xtol=1e-13)
    if ok != 1:
        raise RuntimeError(msg)
    assert max(abs(monomial(r, z) - 1) for r in rows) < 1e-12
    return z


def main():
    os.makedirs(OUT, exist_ok=True)
    for name, filling, witness, seed in CASES:
        z = solve(name, filling, seed)
        cusp = snappy.Manifold(name).gluing_equations("rect")[-2:]
        m, l = cusp
        p, q = witness
        row = (
            [p * x + q * y for x, y in zip(m[0], l[0])],
            [p * x + q * y for x, y in zip(m[1], l[1])],
            m[2] ** p * l[2] ** q,
        )
        h = monomial(row, z)
        tr2 = h + 2 + 1 / h
        out = {
            "manifold": name,
            "filling": list(filling),
            "shapes": [[repr(float(x)), "0"] for x in z],
            "witness": list(witness),
            "trace_squared": tr2,
        }
        path = os.path.join(OUT, "%s_%d_%d.json" % (name, filling[0], filling[1]))
        with open(path, "w") as fh:
            json.dump(out, fh, indent=1)
        print(path, z, tr2)


if __name__ == "__main__":
    main()
