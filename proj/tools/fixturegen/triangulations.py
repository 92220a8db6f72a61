"""Generate triangulation fixtures for the foliar and gluing tests.

Needs snappy and regina (offline only; outputs are committed).

Ideal fixtures come from SnapPy's census triangulations, with the peripheral
corner weights (both sheets summed) and shapes as Newton seeds. The expected
homological longitude is found independently: the first primitive slope whose
Dehn filling has positive first Betti number.

Closed one-vertex fixtures are Dehn fillings turned into closed triangulations
by Regina and simplified. The two-vertex fixture is a 1-4 move on one of them.
"""

import json
import os
import sys
from math import gcd

import regina
import snappy

OUT = os.path.join(os.path.dirname(__file__), "..", "..", "tests", "fixtures", "tri")

IDEAL = ["m004", "m003", "m006", "m015", "m016", "m137", "m009", "m023"]
FILL_SOURCES = ["m003", "m004", "m006", "m007", "m009", "m010", "m011", "m015", "m016", "m017", "m019", "m023"]
FILL_SLOPES = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (-1, 2), (-2, 1), (-3, 1), (-1, 3), (3, 2), (-3, 2), (5, 1)]


def parse_snappea(text):
    lines = [l for l in text.splitlines()]
    k = max(i for i, l in enumerate(lines) if l.strip().startswith(("torus", "Klein"))) + 1
    while not lines[k].strip():
        k += 1
    n = int(lines[k])
    k += 1
    tets = []
    for _ in range(n):
        while not lines[k].strip():
            k += 1
        nb = [int(x) for x in lines[k].split()]
        perms = [[int(c) for c in p] for p in lines[k + 1].split()]
        curves = [[int(x) for x in lines[k + 3 + c].split()] for c in range(4)]
        k += 8
        tets.append((nb, perms, curves))
    return tets


def weights(curves, which):
    s = [curves[2 * which][i] + curves[2 * which + 1][i] for i in range(16)]
    return [[s[4 * v + f] for f in range(4)] for v in range(4)]


def homological_longitude(name):
    for r in range(1, 40):
        for p in range(-r, r + 1):
            for q in range(-r, r + 1):
                if max(abs(p), abs(q)) != r or gcd(p, q) != 1:
                    continue
                if p < 0 or (p == 0 and q < 0):
                    continue
                M = snappy.Manifold(name)
                M.dehn_fill((p, q))
                if M.homology().betti_number() > 0:
                    return [p, q]
    raise RuntimeError("no longitude found for " + name)


def ideal_fixture(name):
    M = snappy.ManifoldHP(name)
    tets = parse_snappea(M._to_string())
    shapes = [[str(z.real()), str(z.imag())] for z in M.tetrahedra_shapes("rect")]
    return {
        "name": name,
        "tets": len(tets),
        "gluings": [[[nb[f], perms[f]] for f in range(4)] for nb, perms, _ in tets],
        "peripheral": {
            "meridian": [weights(c, 0) for _, _, c in tets],
            "longitude": [weights(c, 1) for _, _, c in tets],
        },
        "shapes": shapes,
        # per-tet corner counts (z, z', z'') of every edge, then meridian and
        # longitude, as SnapPy reports them
        "corner_equations": [[int(x) for x in row] for row in M.gluing_equations("log")],
        "homology": str(M.homology()),
        "homological_longitude": homological_longitude(name),
    }


def regina_gluings(T):
    rows = []
    for t in range(T.size()):
        tet = T.tetrahedron(t)
        row = []
        for f in range(4):
            g = tet.adjacentGluing(f)
            row.append([tet.adjacentSimplex(f).index(), [g[i] for i in range(4)]])
        rows.append(row)
    return rows


def closed_fixture(name, T):
    return {
        "name": name,
        "tets": T.size(),
        "gluings": regina_gluings(T),
        "vertices": T.countVertices(),
        "edges": T.countEdges(),
        "homology": str(T.homology()),
    }


def closed_fixtures(limit):
    out, seen = [], set()
    for src in FILL_SOURCES:
        for (p, q) in FILL_SLOPES:
            name = "%s(%d,%d)" % (src, p, q)
            try:
                F = snappy.Manifold(name).filled_triangulation()
            except Exception:
                continue
            T = regina.Triangulation3(F._to_string())
            T.simplify()
            if T.countVertices() != 1 or T.size() > 13 or not T.isOrientable():
                continue
            sig = T.isoSig()
            if sig in seen:
                continue
            seen.add(sig)
            out.append(closed_fixture(name, T))
            if len(out) >= limit:
                return out
    return out


def main():
    os.makedirs(OUT, exist_ok=True)
    for name in IDEAL:
        fx = ideal_fixture(name)
        with open(os.path.join(OUT, name + ".json"), "w") as fh:
            json.dump(fx, fh, indent=1)
        print(name, fx["tets"], fx["homological_longitude"], file=sys.stderr)
    closed = closed_fixtures(26)
    with open(os.path.join(OUT, "closed_one_vertex.json"), "w") as fh:
        json.dump(closed, fh, indent=1)
    print("closed one-vertex:", len(closed), file=sys.stderr)
    # a two-vertex triangulation by a 1-4 move
    src = closed[0]
    T = regina.Triangulation3(snappy.Manifold(src["name"]).filled_triangulation()._to_string())
    T.simplify()
    T.pachner(T.tetrahedron(0))
    fx = closed_fixture(src["name"] + " after 1-4 move", T)
    with open(os.path.join(OUT, "two_vertex.json"), "w") as fh:
        json.dump(fx, fh, indent=1)


if __name__ == "__main__":
    main()
