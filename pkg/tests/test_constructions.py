from __future__ import annotations

import random

import pytest

from pgcurves.constructions import (
    CertificateError, ConstructionError, NormalizedConicPair, SharedPointConicPair, admissible_completions,
    admissible_eps, completed_arc, denniston_witness, hyperoval_witness, is_completion, normalizing_collineation,
    nu_invariant, parse_pair, random_normalized_pair, random_shared_point_pair, secant_counts, third_conic,
    third_conic_swapped, three_secant_lines, three_secant_witness, verify_split_structure,
)
from pgcurves.forms import Conic, HomogeneousForm, conics_disjoint
from pgcurves.gf import GF
from pgcurves.pg2 import PG2
from pgcurves.pointsets import PointSet, ValidationError, conic_plus_nucleus, denniston_arc, is_maximal_arc


def pairs(q, n=8, seed=0):
    F = GF.from_spec(q)
    rng = random.Random(seed)
    return [random_normalized_pair(F, rng) for _ in range(n)]


@pytest.mark.parametrize("q", [8, 16, 32])
def test_random_pairs_are_valid(q):
    for pr in pairs(q):
        assert not pr.violations()
        c1, c2 = pr.conics
        assert c1.nucleus() == c2.nucleus() == (0, 0, 1)
        assert conics_disjoint(c1, c2)


@pytest.mark.parametrize("q", [8, 16])
def test_pair_invariants_rejected(q):
    F = GF.from_spec(q)
    a = next(x for x in F.elements if F.trace(x) == 1)
    with pytest.raises(ConstructionError, match="lambda1 = lambda2"):
        NormalizedConicPair(F, a, 1, 3, 1, a, 3)
    with pytest.raises(ConstructionError, match="nonzero"):
        NormalizedConicPair(F, a, 1, 0, 1, a, 3)
    with pytest.raises(ConstructionError, match="Tr"):
        NormalizedConicPair(F, 0, 1, 2, 1, a, 3)
    with pytest.raises(ConstructionError):
        NormalizedConicPair(GF.from_spec(9), 1, 1, 1, 1, 1, 2)
    with pytest.raises(ConstructionError):
        parse_pair(F, ["1", "2"])


@pytest.mark.parametrize("q", [8, 16, 32])
def test_third_conic_completes(q):
    for pr in pairs(q):
        c3 = third_conic(pr)
        assert c3.is_nondegenerate() and c3.nucleus() == (0, 0, 1)
        K = completed_arc(pr)
        assert K.size == 3 * q + 4
        assert is_maximal_arc(K, 4)


def test_cross_weighted_variant_fails_generically():
    trials = pairs(16, 20, seed=3)
    good = sum(is_completion(pr, third_conic_swapped(pr)) for pr in trials)
    assert good < len(trials)


def test_symmetric_pair_collapses():
    F = GF.from_spec(16)
    a = 1
    b = next(x for x in F.elements if F.trace(x) == 1)
    # alpha1 = alpha2 breaks alpha1 l2 != alpha2 l1 only when l1 = l2, so this pair is allowed
    pr = NormalizedConicPair(F, a, b, 2, a, b, 5)
    c3 = third_conic(pr)
    assert (c3.a, c3.c, c3.f) == (a, b, F.add(2, 5))
    assert third_conic_swapped(pr) == c3
    assert nu_invariant(pr) == F.mul(a, b)


@pytest.mark.parametrize("q", [8, 16, 32])
def test_nu_trace_and_collineation(q):
    for pr in pairs(q):
        F = pr.field
        nu = nu_invariant(pr)
        assert F.trace(nu) == 1
        H = normalizing_collineation(pr)
        for c, lam in zip(pr.conics, (pr.lambda1, pr.lambda2)):
            target = Conic(F, a=1, b=1, c=nu, f=lam).form
            assert c.form.substitute(H).proportional(target)
        assert H[0, 0] == F.inv(H[1, 1])


def test_collineation_identity_on_normal_form():
    F = GF.from_spec(16)
    nu = next(x for x in F.elements if F.trace(x) == 1)
    pr = NormalizedConicPair(F, 1, nu, 3, 1, nu, 6)
    H = normalizing_collineation(pr)
    assert H.tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


@pytest.mark.parametrize("q", [8, 16, 32])
def test_secant_counts_and_uniqueness(q):
    plane = PG2(GF.from_spec(q))
    for pr in pairs(q, 4, seed=q):
        X = pr.points()
        K = completed_arc(pr)
        for P in plane.points():
            if P in X:
                continue
            u0, u2, u4 = secant_counts(X, P)
            assert u0 + u2 + u4 == q + 1
            assert 2 * u2 + 4 * u4 == 2 * q + 2
            if P in K:
                assert u4 == 0
            else:
                assert u0 == u4 == q // 4
        adm = admissible_completions(X)
        assert adm.size == q + 2
        assert set(adm.points) == set(K.points) - set(X.points)


def test_secant_count_errors():
    plane = PG2(GF.from_spec(8))
    K = conic_plus_nucleus(plane)
    odd = K.difference([K.points[0]])
    P = next(p for p in plane.points() if p not in odd)
    with pytest.raises(ValidationError, match="0,2,4"):
        secant_counts(odd, P)
    with pytest.raises(ValidationError):
        secant_counts(K, K.points[0])


@pytest.mark.parametrize("q", [16, 32])
def test_three_secant_witness(q):
    F = GF.from_spec(q)
    plane = PG2(F)
    rng = random.Random(q)
    for _ in range(6):
        pr = random_shared_point_pair(F, rng)
        c1, c2 = pr.conics
        assert set(c1.points(plane)) & set(c2.points(plane)) == {(0, 0, 1)}
        assert c1.nucleus() == plane.normalize(pr.nuclei[0])
        target = set(c1.points(plane)) | set(c2.points(plane)) | {plane.normalize(N) for N in pr.nuclei}
        for eps in admissible_eps(pr):
            L = three_secant_witness(pr, eps)
            assert plane.incident((0, eps, 1), L)
            assert sum(P in target for P in plane.line_points(L)) >= 3


def test_witness_gap_at_q8():
    """For some pairs over GF(8) no line P_m P_t with m, t nonzero and m != t
    passes through P_eps; the only three-secant through it is X = 0."""
    F = GF.from_spec(8)
    rng = random.Random(8)
    gaps = 0
    for _ in range(6):
        pr = random_shared_point_pair(F, rng)
        for eps in admissible_eps(pr):
            try:
                three_secant_witness(pr, eps)
            except ConstructionError:
                gaps += 1
                assert three_secant_lines(pr, eps) == [(1, 0, 0)]
    assert gaps > 0


def test_witness_rejects_excluded_eps():
    F = GF.from_spec(8)
    pr = random_shared_point_pair(F, random.Random(1))
    with pytest.raises(ConstructionError):
        three_secant_witness(pr, 0)
    if pr.beta1:
        with pytest.raises(ConstructionError):
            three_secant_witness(pr, F.div(pr.lambda1, pr.beta1))


def test_shared_pair_invariants():
    F = GF.from_spec(8)
    with pytest.raises(ConstructionError, match="equal nuclei"):
        SharedPointConicPair(F, 1, 1, 2, 3, 1, 2)
    with pytest.raises(ConstructionError):
        SharedPointConicPair(F, 0, 1, 2, 3, 1, 4)


def test_conic_point_parametrisation():
    F = GF.from_spec(16)
    pr = random_shared_point_pair(F, random.Random(7))
    c1 = pr.conics[0]
    pts = {pr.conic_point(1, m) for m in F.nonzero}
    assert all(c1.contains(P) for P in pts)
    assert pts | {(0, 0, 1), pr.conic_point(1, 0)} >= set(c1.points())


@pytest.mark.parametrize("q", [4, 8, 16])
def test_split_structure_hyperoval(q):
    F = GF.from_spec(q)
    v = verify_split_structure(hyperoval_witness(F), conic_plus_nucleus(PG2(F)), 2)
    assert v.ok and v.shape == "line+conics"


def test_split_structure_denniston():
    F = GF.from_spec(16)
    K = denniston_arc(F, [1, 2])
    w = denniston_witness(F, [1, 2])
    v = verify_split_structure(w, K, 4)
    assert v.ok, v.reasons
    assert verify_split_structure(w[:3] + [HomogeneousForm.linear(F, (1, 1, 0))], K, 4).ok
    X, Y = HomogeneousForm.linear(F, (1, 0, 0)), HomogeneousForm.linear(F, (0, 1, 0))
    bad = verify_split_structure(w[:3] + [X * Y], K, 4)
    assert not bad.ok and any("total degree" in r for r in bad.reasons)
    with pytest.raises(CertificateError):
        verify_split_structure(w[:2] + [X], K, 4)


def test_split_structure_line_off_nucleus():
    F = GF.from_spec(16)
    plane = PG2(F)
    conics = denniston_witness(F, [1, 2])[:3]
    pts = [P for c in conics for P in Conic.from_form(c).points(plane)]
    extra = next(P for P in plane.points() if P not in pts and P != (0, 0, 1))
    r = HomogeneousForm.linear(F, next(L for L in plane.lines_through(extra) if not plane.incident((0, 0, 1), L)))
    K = PointSet.from_points(plane, pts + [extra])
    v = verify_split_structure(conics + [r], K, 4)
    assert not v.ok
    assert any("nuclei do not lie on the line r" in s for s in v.reasons)
    assert any("not in the arc" in s for s in v.reasons)


def test_split_structure_cubic_shape():
    F = GF.from_spec(4)
    K = conic_plus_nucleus(PG2(F))
    cubic = hyperoval_witness(F)
    v = verify_split_structure([cubic[0] * cubic[1]], K, 2)
    assert v.ok and v.shape == "conics+cubic"
