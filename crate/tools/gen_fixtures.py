#!/usr/bin/env python3
"""Brute-force face-lattice oracle for the committed test fixtures.

Enumerates supporting hyperplanes of small vertex sets at high precision
(mpmath, 50 significant digits) and closes the resulting facet vertex sets
under intersection to obtain every proper face. Output files use the schema

    { "n": <int>, "k": <int>, "faces": [[vertex indices], ...] }

Instances covered:
  * symmetric-moment-curve polytopes in R^4 on n equally spaced angles,
  * classical cyclic polytopes C_4(n) on the moment curve (Gale evenness),
  * the triple list for the R^6 instance on 24 equally spaced angles
    (triples spanning an arc of at most arccos(1/8)).

Run from the repository root:  python3 tools/gen_fixtures.py
"""

import json
import os
from itertools import combinations

import mpmath as mp

mp.mp.dps = 50

MARGIN = mp.mpf("1e-30")
AMBIG_LO = mp.mpf("1e-36")
AMBIG_HI = mp.mpf("1e-12")

OUT_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


def sm4_points(n):
    pts = []
    for j in range(n):
        t = 2 * mp.pi * j / n
        pts.append([mp.cos(t), mp.sin(t), mp.cos(3 * t), mp.sin(3 * t)])
    return pts


def affine_reduce(points):
    """Project points onto an orthonormal basis of their affine hull."""
    n = len(points)
    dim = len(points[0])
    base = points[0]
    diffs = [[p[i] - base[i] for i in range(dim)] for p in points[1:]]
    basis = []
    for v in diffs:
        w = v[:]
        for b in basis:
            dot = sum(wi * bi for wi, bi in zip(w, b))
            w = [wi - dot * bi for wi, bi in zip(w, b)]
        norm = mp.sqrt(sum(wi * wi for wi in w))
        if norm > AMBIG_HI:
            basis.append([wi / norm for wi in w])
    reduced = []
    for p in points:
        v = [p[i] - base[i] for i in range(dim)]
        reduced.append([sum(vi * bi for vi, bi in zip(v, b)) for b in basis])
    return reduced, len(basis)


def hyperplane_through(points, idxs):
    """Return (w, c) with w.p = c for the chosen points, or None if they
    are affinely dependent."""
    # Solve the homogeneous system [1 p] . (c; -w) = 0 via elimination.
    rows = [[mp.mpf(1)] + list(points[i]) for i in idxs]
    m, ncols = len(idxs), len(points[0]) + 1
    mat = [row[:] for row in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv, best = None, MARGIN
        for rr in range(r, m):
            if abs(mat[rr][col]) > best:
                piv, best = rr, abs(mat[rr][col])
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for rr in range(m):
            if rr != r:
                f = mat[rr][col] / mat[r][col]
                for cc in range(ncols):
                    mat[rr][cc] -= f * mat[r][cc]
        pivots.append(col)
        r += 1
        if r == m:
            break
    if r < m:
        return None
    free = [c for c in range(ncols) if c not in pivots][0]
    sol = [mp.mpf(0)] * ncols
    sol[free] = mp.mpf(1)
    for rr, col in enumerate(pivots):
        sol[col] = -mat[rr][free] / mat[rr][col]
    # sol = (u0, u1..u4) with u0 + w.p = 0 for the 4 points, i.e. w.p = -u0
    w = sol[1:]
    c = -sol[0]
    scale = max(abs(x) for x in w)
    if scale < AMBIG_HI:
        return None
    return [x / scale for x in w], c / scale


def supporting_incidence(points, w, c):
    """If the hyperplane supports the hull, return the incident vertex set."""
    offs = [sum(wi * pi for wi, pi in zip(w, p)) - c for p in points]
    for o in offs:
        if AMBIG_LO < abs(o) < AMBIG_HI:
            raise RuntimeError("ambiguous offset; raise precision")
    pos = any(o > AMBIG_HI for o in offs)
    neg = any(o < -AMBIG_HI for o in offs)
    if pos and neg:
        return None
    return frozenset(i for i, o in enumerate(offs) if abs(o) <= AMBIG_LO)


def facets_brute(points, n):
    points, dim = affine_reduce(points)
    facets = set()
    # every facet has a rotated copy whose incident set contains vertex 0,
    # so scanning (dim)-subsets through 0 plus rotation closure is exhaustive
    for rest in combinations(range(1, n), dim - 1):
        idxs = (0,) + rest
        hc = hyperplane_through(points, idxs)
        if hc is None:
            continue
        inc = supporting_incidence(points, *hc)
        if inc is None or len(inc) == n:
            continue
        for shift in range(n):
            facets.add(frozenset((i + shift) % n for i in inc))
    return facets


def close_under_intersection(facets):
    faces = set(facets)
    frontier = list(facets)
    while frontier:
        nxt = []
        for a in frontier:
            for b in facets:
                c = a & b
                if c and c not in faces:
                    faces.add(c)
                    nxt.append(c)
        frontier = nxt
    return faces


def write_fixture(name, n, k, faces):
    os.makedirs(OUT_DIR, exist_ok=True)
    payload = {
        "n": n,
        "k": k,
        "faces": sorted([sorted(f) for f in faces], key=lambda f: (len(f), f)),
    }
    path = os.path.join(OUT_DIR, name)
    with open(path, "w") as fh:
        json.dump(payload, fh, separators=(",", ":"))
        fh.write("\n")
    print(f"wrote {path}: {len(faces)} faces")


def expected_edge_steps(n):
    """Pairs at arc < 2pi/3, plus pairs at exactly 2pi/3 when 3 | n."""
    out = set()
    for s in range(1, n // 2 + 1):
        arc = 2 * mp.pi * s / n
        if arc < 2 * mp.pi / 3 - mp.mpf("1e-30"):
            out.add(s)
        elif abs(arc - 2 * mp.pi / 3) < mp.mpf("1e-30") and n % 3 == 0:
            out.add(s)
    return out


def gen_sm4(n):
    pts = sm4_points(n)
    facets = facets_brute(pts, n)
    faces = close_under_intersection(facets)
    # sanity: edge set must match the arc-length prediction
    edges = {f for f in faces if len(f) == 2}
    steps = {min((b - a) % n, (a - b) % n) for f in edges for a, b in [sorted(f)]}
    exp = expected_edge_steps(n)
    if steps != exp:
        raise RuntimeError(f"n={n}: edge steps {sorted(steps)} != expected {sorted(exp)}")
    counts = {}
    for f in faces:
        counts[len(f)] = counts.get(len(f), 0) + 1
    print(f"sm4 n={n}: facets={len(facets)} faces-by-size={dict(sorted(counts.items()))}")
    write_fixture(f"b4_n{n}.json", n, 2, faces)


def gale_facets(n, d=4):
    """Facets of the cyclic polytope C_d(n) by Gale's evenness condition."""
    facets = []
    for S in combinations(range(n), d):
        sset = set(S)
        ok = True
        for i in range(n):
            if i in sset:
                continue
            for j in range(i + 1, n):
                if j in sset:
                    continue
                between = sum(1 for s in S if i < s < j)
                if between % 2 == 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            facets.append(frozenset(S))
    return set(facets)


def gen_cyclic(n):
    facets = gale_facets(n)
    assert len(facets) == n * (n - 3) // 2, (n, len(facets))
    faces = close_under_intersection(facets)
    counts = {}
    for f in faces:
        counts[len(f)] = counts.get(len(f), 0) + 1
    print(f"cyclic d=4 n={n}: faces-by-size={dict(sorted(counts.items()))}")
    write_fixture(f"cyclic_d4_n{n}.json", n, 2, faces)


def gen_b6_triples(n=24):
    maxspan = mp.acos(mp.mpf(1) / 8)
    step = 2 * mp.pi / n
    triples = []
    for i in range(n):
        for p in range(1, n):
            for q in range(1, n):
                if (p + q) * step > maxspan:
                    continue
                triples.append(frozenset([i, (i + p) % n, (i + p + q) % n]))
    triples = set(triples)
    print(f"b6 n={n}: triples within arccos(1/8): {len(triples)}")
    write_fixture(f"b6_n{n}_triples.json", n, 3, triples)


if __name__ == "__main__":
    for n in (6, 12, 18, 24, 36):
        gen_sm4(n)
    gen_cyclic(8)
    gen_cyclic(10)
    gen_b6_triples(24)
