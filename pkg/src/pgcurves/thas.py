"""Experimental Thas maximal arcs in PG(2,q^2) from the Suzuki-Tits ovoid.

Construction (Bruck-Bose model): identify AG(2,q^2) with GF(q)^4 through a
GF(q)-basis {1, w} of GF(q^2).  The 1-dimensional GF(q^2)-subspaces then form
a regular spread, all of whose lines are totally isotropic for the
alternating form Tr((x1 y2 + x2 y1)).  Carry the Tits ovoid of PG(3,q) onto
that form by a symplectic isometry; each spread line is then a tangent line
of the ovoid.  The cone over the ovoid with vertex the origin, minus the
hyperplane at infinity, is a maximal (q^3 - q^2 + q, q)-arc.

The result is always re-validated with :func:`pointsets.check_maximal_arc`.
"""

from __future__ import annotations

import random

import numpy as np

from .gf import GF, FieldError
from .linalg import nullspace, rref
from .pg2 import PG2
from .pointsets import PointSet, check_maximal_arc


def tits_ovoid(F: GF, h: int) -> list[tuple[int, int, int, int]]:
    """Points of the Suzuki-Tits ovoid of PG(3, 2^h), h odd, with coordinates
    in the subfield GF(2^h) of ``F``.

    {(1, x, y, z) : z = xy + x^(s+2) + y^s} U {(0, 0, 0, 1)}, s = 2^((h+1)/2).
    """
    if h % 2 == 0 or h < 1:
        raise FieldError("the Tits ovoid needs q = 2^h with h odd")
    add, mul = F.add, F.mul
    s = 2 ** ((h + 1) // 2)
    sub = F.subfield(h)
    pts = []
    for x in sub:
        for y in sub:
            z = add(add(mul(x, y), F.pow(x, s + 2)), F.pow(y, s))
            pts.append((1, x, y, z))
    pts.append((0, 0, 0, 1))
    return pts


def _normalize4(F: GF, v):
    for c in reversed(v):
        if c:
            s = F.inv(c)
            return tuple(F.mul(x, s) for x in v)
    raise ValueError("zero vector")


def ovoid_symplectic_form(F: GF, ovoid, sub) -> np.ndarray:
    """Alternating Gram matrix S (up to scalar) for which every tangent line
    of the ovoid is totally isotropic, found by linear algebra."""
    add, mul = F.add, F.mul
    oset = {_normalize4(F, p) for p in ovoid}
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    rows = []
    # a line PQ with P on the ovoid is tangent iff no other point of the line
    # is on the ovoid; use a few tangent lines per ovoid point
    others = [(a, b, c, 1) for a in sub for b in sub for c in sub]
    for P in ovoid:
        found = 0
        for Q in others:
            if _normalize4(F, Q) in oset:
                continue
            line_hits = any(
                _normalize4(F, tuple(add(qc, mul(lam, pc)) for qc, pc in zip(Q, P))) in oset
                for lam in sub if lam
            )
            if line_hits:
                continue
            rows.append([add(mul(P[i], Q[j]), mul(P[j], Q[i])) for i, j in pairs])
            found += 1
            if found == 3:
                break
    ker = nullspace(F, np.array(rows))
    if len(ker) != 1:
        raise FieldError(f"expected a unique symplectic polarity, kernel has dimension {len(ker)}")
    S = np.zeros((4, 4), dtype=np.int64)
    for (i, j), v in zip(pairs, ker[0]):
        S[i, j] = S[j, i] = v
    return S


def _bilinear(F: GF, S, u, v) -> int:
    return F.sum(F.mul(u[i], F.mul(int(S[i, j]), v[j])) for i in range(4) for j in range(4))


def symplectic_basis(F: GF, S, rng: random.Random | None = None, scalars=None) -> list:
    """Vectors e1, f1, e2, f2 with B(e_i, f_i) = 1 and all other pairs orthogonal.

    Without ``rng`` the basis is built greedily from unit vectors; with it,
    e_i and f_i are random vectors (coefficients drawn from ``scalars``) of
    the remaining orthogonal complement.
    """
    basis = []
    space = [tuple(int(c) for c in row) for row in np.eye(4, dtype=np.int64)]

    def combo(k):
        return tuple(F.sum(F.mul(int(k[i]), space[i][c]) for i in range(len(space))) for c in range(4))

    def pick():
        while True:
            v = combo([rng.choice(scalars) for _ in space])
            if any(v):
                return v

    while space:
        if rng is None:
            e = space[0]
            f = next(v for v in space[1:] if _bilinear(F, S, e, v))
        else:
            e = pick()
            f = pick()
            while not _bilinear(F, S, e, f):
                f = pick()
        f = tuple(F.mul(F.inv(_bilinear(F, S, e, f)), c) for c in f)
        basis += [e, f]
        # the part of the current space orthogonal to e and f
        coeffs = np.array([[_bilinear(F, S, v, e) for v in space], [_bilinear(F, S, v, f) for v in space]])
        space = [combo(k) for k in nullspace(F, coeffs)]
    return basis


def _inverse(F: GF, M) -> np.ndarray:
    n = len(M)
    aug = np.hstack([np.asarray(M, dtype=np.int64), np.eye(n, dtype=np.int64)])
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)):
        raise FieldError("singular matrix")
    return R[:, n:]


def _matmul(F: GF, A, B) -> np.ndarray:
    A = np.asarray(A)
    B = np.asarray(B)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for i in range(A.shape[0]):
        for j in range(B.shape[1]):
            out[i, j] = F.sum(F.mul(int(A[i, k]), int(B[k, j])) for k in range(A.shape[1]))
    return out


def thas_arc(F: GF, seed: int | None = 3) -> PointSet:
    """A maximal (q^3 - q^2 + q, q)-arc of PG(2, q^2), q = 2^h with h odd.

    ``F`` is GF(q^2); for PG(2,64) pass GF(64).  ``seed`` picks the
    symplectic isometry carrying the ovoid onto the spread's form, i.e. the
    position of the regular spread relative to the ovoid; ``None`` uses the
    greedy unit-vector basis.  Different positions can give projectively
    inequivalent arcs.
    """
    if F.p != 2 or F.k % 2:
        raise FieldError("Thas arcs need GF(q^2) with q even")
    h = F.k // 2
    sub = F.subfield(h)
    ovoid = tits_ovoid(F, h)
    S = ovoid_symplectic_form(F, ovoid, sub)

    # target form on GF(q)^4 = GF(q^2)^2 via (a0, a1, b0, b1) -> (a0 + a1 w, b0 + b1 w)
    w = next(x for x in F.elements if x not in set(sub))
    def embed(v):
        return (F.add(v[0], F.mul(v[1], w)), F.add(v[2], F.mul(v[3], w)))

    def target(u, v):
        (x1, y1), (x2, y2) = embed(u), embed(v)
        return F.trace(F.add(F.mul(x1, y2), F.mul(x2, y1)), h)

    unit = [tuple(int(c) for c in r) for r in np.eye(4, dtype=np.int64)]
    T = np.array([[target(u, v) for v in unit] for u in unit], dtype=np.int64)

    rng = None if seed is None else random.Random(seed)
    E = np.array(symplectic_basis(F, S, rng, sub), dtype=np.int64).T
    E2 = np.array(symplectic_basis(F, T), dtype=np.int64).T
    A = _matmul(F, E2, _inverse(F, E))

    plane = PG2(F)
    points = {(0, 0, 1)}
    for P in ovoid:
        v = _matmul(F, A, np.array(P, dtype=np.int64).reshape(4, 1)).ravel()
        x, y = embed(v)
        for lam in sub:
            if lam:
                points.add((F.mul(lam, x), F.mul(lam, y), 1))
    K = PointSet.from_points(plane, points)
    check_maximal_arc(K, 2**h)
    return K


def thas_arc_pg2_64(seed: int | None = 3) -> PointSet:
    return thas_arc(GF(2, 6), seed)
