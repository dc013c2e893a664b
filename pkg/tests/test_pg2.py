from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pgcurves.gf import GF
from pgcurves.pg2 import PG2, GeometryError

QS = [2, 3, 4, 5, 7, 8, 9]


@pytest.mark.parametrize("q", QS)
def test_counts_and_incidence(q):
    plane = PG2(GF.from_spec(q))
    pts = plane.points()
    assert len(pts) == len(set(pts)) == q * q + q + 1
    inc = plane.incidence(plane.coords(), plane.coords())
    assert (inc.sum(axis=1) == q + 1).all()
    assert (inc.sum(axis=0) == q + 1).all()
    # two distinct points lie on exactly one common line
    pair = inc.astype(np.int64).T @ inc.astype(np.int64)
    assert (pair[~np.eye(len(pts), dtype=bool)] == 1).all()


def test_enumeration_order():
    plane = PG2(GF.from_spec(3))
    pts = plane.points()
    assert pts[:3] == [(0, 0, 1), (0, 1, 1), (0, 2, 1)]
    assert pts[9:] == [(0, 1, 0), (1, 1, 0), (2, 1, 0), (1, 0, 0)]
    assert all(plane.index(P) == i for i, P in enumerate(pts))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 15), st.integers(1, 15))
def test_normalize_is_projective(x, y, z, s):
    plane = PG2(GF.from_spec(16))
    if (x, y, z) == (0, 0, 0):
        with pytest.raises(GeometryError):
            plane.normalize((x, y, z))
        return
    F = plane.field
    P = plane.normalize((x, y, z))
    assert plane.normalize((F.mul(s, x), F.mul(s, y), F.mul(s, z))) == P
    last = [c for c in P if c][-1]
    assert last == 1


@pytest.mark.parametrize("q", [4, 5])
def test_join_meet(q):
    plane = PG2(GF.from_spec(q))
    pts = plane.points()
    for P, Q in itertools.combinations(pts[:12], 2):
        L = plane.line_through(P, Q)
        assert plane.incident(P, L) and plane.incident(Q, L)
        assert set(plane.line_points(L)) >= {P, Q}
    for L, M in itertools.combinations(pts[:12], 2):
        X = plane.meet(L, M)
        assert plane.incident(X, L) and plane.incident(X, M)
    with pytest.raises(GeometryError):
        plane.line_through(pts[0], pts[0])


def test_point_text():
    plane = PG2(GF.from_spec(9))
    assert plane.parse_point("3:4:1") == (3, 4, 1)
    assert plane.format_point((3, 4, 1)) == "3:4:1"
    assert plane.parse_point("2:0:2") == (1, 0, 1)
    for bad in ("1:2", "0:0:0", "9:0:1", "a:b:c"):
        with pytest.raises(ValueError):
            plane.parse_point(bad)


def test_collineation_preserves_incidence():
    plane = PG2(GF.from_spec(8))
    M = [[1, 2, 0], [0, 1, 3], [5, 0, 1]]
    for L in plane.points()[:10]:
        image = {plane.collineation(M, P) for P in plane.line_points(L)}
        Q1, Q2 = list(image)[:2]
        L2 = plane.line_through(Q1, Q2)
        assert image == set(plane.line_points(L2))


def test_line_counts_chunked():
    plane = PG2(GF.from_spec(7))
    pts = plane.coords()[::3]
    a = plane.line_counts(pts)
    b = plane.line_counts(pts, chunk=5)
    assert (a == b).all()
    assert a.sum() == len(pts) * 8
