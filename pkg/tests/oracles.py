"""Independent brute-force references used by several test modules."""

from __future__ import annotations

import itertools

import numpy as np

from pgcurves.forms import monomials


def eval_all(F, exps, points):
    """values[i, j] = monomial j at point i, by repeated multiplication."""
    out = np.zeros((len(points), len(exps)), dtype=np.int64)
    for i, P in enumerate(points):
        for j, e in enumerate(exps):
            v = 1
            for c, k in zip(P, e):
                for _ in range(k):
                    v = F.mul(v, c)
            out[i, j] = v
    return out


def exists_form(F, points, d) -> bool:
    """Is there a nonzero degree-d form vanishing on all points?  Enumerates
    every coefficient vector."""
    exps = monomials(d)
    vals = eval_all(F, exps, points)
    for coeffs in itertools.product(range(F.q), repeat=len(exps)):
        if not any(coeffs):
            continue
        ok = True
        for row in vals:
            s = 0
            for c, v in zip(coeffs, row):
                s = F.add(s, F.mul(c, int(v)))
            if s:
                ok = False
                break
        if ok:
            return True
    return False


def brute_min_degree(F, points) -> int:
    """Least d <= 2 found by enumeration; otherwise 3, forced for at most 9
    points because 10 cubic monomials exceed the number of conditions."""
    assert len(points) <= 9
    for d in (1, 2):
        if exists_form(F, points, d):
            return d
    return 3
