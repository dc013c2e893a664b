from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pgcurves.gf import GF, FieldError
from pgcurves.pg2 import PG2
from pgcurves.pointsets import (
    PointSet, ValidationError, affine_plane, arc_violation, barlotti_max, check_maximal_arc, conic_pencil,
    conic_plus_nucleus, conic_points, default_denniston_basis, default_nu, denniston_arc, disjoint_conic_union,
    external_points, format_pointset, full_plane, generate, hermitian_unital, internal_points, is_maximal_arc,
    load_pointset, parse_pointset, perturb, random_pointset, save_pointset, spectrum, subgroup_span,
)


def plane(q):
    return PG2(GF.from_spec(q))


def brute_spectrum(K):
    pts = set(K.points)
    hist = {}
    for L in K.plane.points():
        n = sum(1 for P in K.plane.line_points(L) if P in pts)
        hist[n] = hist.get(n, 0) + 1
    return hist


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_basic_sizes(q):
    P = plane(q)
    assert full_plane(P).size == q * q + q + 1
    assert affine_plane(P).size == q * q
    assert conic_points(P).size == q + 1
    if q % 2:
        assert internal_points(P).size == q * (q - 1) // 2
        assert external_points(P).size == q * (q + 1) // 2
    else:
        assert conic_plus_nucleus(P).size == q + 2


@pytest.mark.parametrize("q,t", [(5, 2), (7, 3), (9, 4)])
def test_disjoint_conics(q, t):
    K = disjoint_conic_union(plane(q), t)
    assert K.size == t * (q + 1)
    conics = conic_pencil(GF.from_spec(q), t)
    for a, b in itertools.combinations(conics, 2):
        assert not set(a.points()) & set(b.points())


@pytest.mark.parametrize("q", [4, 16])
def test_hermitian_unital(q):
    s = int(q**0.5)
    K = hermitian_unital(plane(q))
    assert K.size == s**3 + 1
    assert spectrum(K).support == {1, s + 1}


@pytest.mark.parametrize("q", [4, 8, 16])
def test_hyperoval_spectrum(q):
    K = conic_plus_nucleus(plane(q))
    sp = spectrum(K)
    assert sp.histogram == brute_spectrum(K)
    assert sp.support == {0, 2}
    assert is_maximal_arc(K, 2)


@pytest.mark.parametrize("q,n", [(4, 2), (8, 2), (8, 4), (16, 2), (16, 4), (16, 8), (32, 8)])
def test_denniston_is_maximal(q, n):
    F = GF.from_spec(q)
    K = denniston_arc(F, default_denniston_basis(F, n))
    assert K.size == barlotti_max(q, n)
    check_maximal_arc(K, n)


def test_denniston_spectrum_q16():
    F = GF.from_spec(16)
    K = denniston_arc(F, [1, 2])
    assert K.size == 52
    assert spectrum(K).histogram == {0: 52, 4: 221}
    assert brute_spectrum(K) == {0: 52, 4: 221}


def test_denniston_errors():
    F = GF.from_spec(16)
    bad_nu = next(v for v in F.elements if F.trace(v) == 0)
    with pytest.raises(ValidationError, match="nu"):
        denniston_arc(F, [1, 2], bad_nu)
    with pytest.raises(ValidationError):
        subgroup_span(F, [1, 2, 3])
    with pytest.raises(ValidationError):
        default_denniston_basis(F, 3)
    with pytest.raises(FieldError):
        denniston_arc(GF.from_spec(9), [1])
    assert F.trace(default_nu(F)) == 1


def test_spectrum_parameters():
    K = full_plane(plane(4))
    sp = spectrum(K)
    assert (sp.m0, sp.M0) == (5, 5)
    assert (K.t, K.alpha) == (5, 1)
    assert is_maximal_arc(K, 5)
    assert is_maximal_arc(affine_plane(plane(4)), 4)
    assert not is_maximal_arc(conic_points(plane(4)), 2)


@pytest.mark.parametrize("q", [5, 8, 9])
@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10**6), size=st.integers(1, 30))
def test_spectrum_identities(q, seed, size):
    K = random_pointset(plane(q), size, seed)
    sp = spectrum(K)
    # every point lies on q+1 lines; lines are q^2+q+1
    assert sum(sp.histogram.values()) == q * q + q + 1
    assert sum(s * n for s, n in sp.histogram.items()) == size * (q + 1)
    assert sp.histogram == brute_spectrum(K)


@pytest.mark.parametrize("q", [4, 9, 16])
@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_file_roundtrip(tmp_path_factory, q, seed):
    K = random_pointset(plane(q), 12, seed)
    path = tmp_path_factory.mktemp("pts") / "k.pts"
    save_pointset(K, path)
    assert load_pointset(path) == K
    assert parse_pointset(format_pointset(K)) == K


def test_nondefault_modulus_roundtrip():
    F = GF(2, 4, (1, 0, 0, 1, 1))
    K = denniston_arc(F, [1, 2])
    text = format_pointset(K)
    assert "modulus=1,0,0,1,1" in text.splitlines()[0]
    assert parse_pointset(text).field is F


@pytest.mark.parametrize("text,where", [
    ("", "empty"),
    ("q=4\n0:0:1\n", "line 1"),
    ("q=6 n=1\n0:0:1\n", "line 1"),
    ("q=4 n=2\n0:0:1\n0:1\n", "line 3"),
    ("q=4 n=2\n0:0:1\n0:0:1\n", "line 3"),
    ("q=4 n=3\n0:0:1\n0:1:1\n", "announces"),
    ("q=4 n=1\n0:5:1\n", "line 2"),
])
def test_parse_errors(text, where):
    with pytest.raises(ValidationError, match=where):
        parse_pointset(text)


def test_parse_comments_and_scaling():
    K = parse_pointset("# hyperoval\nq=4 n=2\n\n0:0:2\n1:0:0\n")
    assert K.points == ((0, 0, 1), (1, 0, 0))


def test_arc_validator_rejects_perturbations():
    F = GF.from_spec(16)
    K = denniston_arc(F, [1, 2])
    for seed in range(8):
        bad = perturb(K, seed)
        assert bad.size == K.size
        assert not is_maximal_arc(bad, 4)
        assert arc_violation(bad, 4) is not None
        with pytest.raises(ValidationError, match="meets the set"):
            parse_pointset(format_pointset(bad), arc_degree=4)


def test_generate_dispatch():
    F = GF.from_spec(4)
    assert generate("full", F).size == 21
    assert generate("full_plane", F).size == 21
    assert generate("hyperoval", F).size == 6
    assert generate("denniston", F, n=2).size == 6
    assert generate("unital", F).size == 9
    assert generate("random", F, size=5, seed=1) == generate("random", F, size=5, seed=1)
    with pytest.raises(ValidationError):
        generate("random", F, size=5)
    with pytest.raises(ValidationError):
        generate("nonsense", F)
    assert generate("conics", GF.from_spec(5), t=2).size == 12


def test_pointset_ops():
    P = plane(4)
    K = PointSet.from_points(P, [(0, 0, 1), (1, 0, 0)])
    assert (0, 0, 2) in K
    assert K.union([(0, 1, 0)]).size == 3
    assert K.difference([(1, 0, 0)]).points == ((0, 0, 1),)
    with pytest.raises(ValidationError):
        PointSet.from_points(P, [(0, 0, 1), (0, 0, 3)])
