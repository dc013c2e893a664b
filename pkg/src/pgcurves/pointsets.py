"""Named point sets of PG(2,q), line spectra and maximal-arc recognition."""

from __future__ import annotations

import math
import os
import random
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .forms import Conic, HomogeneousForm
from .gf import GF, FieldError, find_modulus
from .pg2 import PG2, GeometryError


class ValidationError(ValueError):
    pass


@dataclass(frozen=True)
class PointSet:
    """Distinct points of PG(2,q), sorted by their enumeration index.

    ``size = q*t + alpha`` with ``0 <= alpha < q``.
    """

    plane: PG2
    points: tuple

    @classmethod
    def from_points(cls, plane: PG2, points, strict: bool = True) -> "PointSet":
        normed = [plane.normalize(p) for p in points]
        unique = set(normed)
        if strict and len(unique) != len(normed):
            raise ValidationError("duplicate points")
        return cls(plane, tuple(sorted(unique, key=plane.index)))

    @property
    def field(self) -> GF:
        return self.plane.field

    @property
    def q(self) -> int:
        return self.plane.q

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def t(self) -> int:
        return self.size // self.q

    @property
    def alpha(self) -> int:
        return self.size % self.q

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, P):
        return self.plane.normalize(P) in self._set

    @property
    def _set(self):
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.points)
            object.__setattr__(self, "_cached_set", s)
        return s

    def array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.int64).reshape(-1, 3)

    def union(self, other) -> "PointSet":
        return PointSet.from_points(self.plane, self._set | set(other), strict=False)

    def difference(self, other) -> "PointSet":
        drop = {self.plane.normalize(p) for p in other}
        return PointSet(self.plane, tuple(p for p in self.points if p not in drop))


@dataclass(frozen=True)
class LineSpectrum:
    """How many lines meet K in exactly s points, for each s."""

    histogram: dict
    m0: int
    M0: int
    counts: np.ndarray = field(repr=False, compare=False)

    @property
    def support(self) -> set:
        return {s for s, n in self.histogram.items() if n}


def spectrum(K: PointSet) -> LineSpectrum:
    if K.size == 0:
        raise ValidationError("spectrum of the empty set")
    counts = K.plane.line_counts(K.array())
    values, freq = np.unique(counts, return_counts=True)
    hist = {int(v): int(n) for v, n in zip(values, freq)}
    positive = [s for s in hist if s > 0]
    return LineSpectrum(hist, min(positive), max(positive), counts)


def barlotti_max(q: int, n: int) -> int:
    return (n - 1) * q + n


def is_maximal_arc(K: PointSet, n: int) -> bool:
    if not 1 <= n <= K.q + 1:
        return False
    if K.size != barlotti_max(K.q, n):
        return False
    return spectrum(K).support <= {0, n}


def arc_violation(K: PointSet, n: int):
    """First line meeting K in neither 0 nor n points, with its count, or None."""
    sp = spectrum(K)
    bad = np.flatnonzero((sp.counts != 0) & (sp.counts != n))
    if bad.size == 0:
        return None
    i = int(bad[0])
    return K.plane.points()[i], int(sp.counts[i])


# -- generators ---------------------------------------------------------------

def full_plane(plane: PG2) -> PointSet:
    return PointSet(plane, tuple(plane.points()))


def affine_plane(plane: PG2) -> PointSet:
    """The complement of the line Z = 0."""
    return PointSet(plane, tuple(p for p in plane.points() if p[2]))


def standard_conic(field: GF) -> Conic:
    """X^2 - YZ, whose points are (x, x^2, 1) and (0, 1, 0)."""
    return Conic(field, a=1, e=field.neg(1))


def conic_points(plane: PG2) -> PointSet:
    return PointSet.from_points(plane, standard_conic(plane.field).points(plane))


def conic_plus_nucleus(plane: PG2) -> PointSet:
    """A regular hyperoval, q even."""
    if plane.field.p != 2:
        raise FieldError("a conic has a nucleus only for q even")
    C = standard_conic(plane.field)
    return PointSet.from_points(plane, C.points(plane) + [C.nucleus(plane)])


def tangent_counts(plane: PG2, conic: Conic) -> np.ndarray:
    """For each point of the plane, the number of tangents to ``conic`` through it."""
    tangents = np.array(conic.tangent_lines(plane), dtype=np.int64)
    return plane.incidence(tangents, plane.coords()).sum(axis=0)


def _internal_external(plane: PG2, want: int) -> PointSet:
    if plane.field.p == 2:
        raise FieldError("internal/external points need q odd")
    C = standard_conic(plane.field)
    on = set(C.points(plane))
    counts = tangent_counts(plane, C)
    pts = [p for p, c in zip(plane.points(), counts) if c == want and p not in on]
    return PointSet(plane, tuple(pts))


def internal_points(plane: PG2) -> PointSet:
    return _internal_external(plane, 0)


def external_points(plane: PG2) -> PointSet:
    return _internal_external(plane, 2)


def hermitian_form(field: GF) -> HomogeneousForm:
    s = math.isqrt(field.q)
    if s * s != field.q:
        raise FieldError(f"q = {field.q} is not a square")
    return HomogeneousForm.from_terms(field, {(s + 1, 0, 0): 1, (0, s + 1, 0): 1, (0, 0, s + 1): 1})


def hermitian_unital(plane: PG2) -> PointSet:
    return PointSet.from_points(plane, hermitian_form(plane.field).zero_set(plane))


def nonsquare_pencil_nu(field: GF) -> int:
    """Least element nu with -nu a nonsquare (q odd)."""
    if field.p == 2:
        raise FieldError("the X^2 + nu Y^2 pencil needs q odd")
    return next(v for v in field.nonzero if not field.is_square(field.neg(v)))


def conic_pencil(field: GF, t: int, nu: int | None = None) -> list[Conic]:
    """t pairwise disjoint conics X^2 + nu Y^2 - lam Z^2, lam the first t nonzero elements."""
    if nu is None:
        nu = nonsquare_pencil_nu(field)
    if field.p == 2:
        raise FieldError("disjoint_conic_union needs q odd")
    if field.is_square(field.neg(nu)):
        raise ValidationError(f"-nu must be a nonsquare, nu = {nu}")
    if not 1 <= t <= field.q - 1:
        raise ValidationError(f"t must lie in [1, {field.q - 1}]")
    return [Conic(field, a=1, c=nu, f=field.neg(lam)) for lam in range(1, t + 1)]


def disjoint_conic_union(plane: PG2, t: int, nu: int | None = None) -> PointSet:
    pts = []
    for C in conic_pencil(plane.field, t, nu):
        pts.extend(C.points(plane))
    return PointSet.from_points(plane, pts)


def subgroup_span(field: GF, basis) -> list[int]:
    """The additive subgroup spanned over GF(2) by ``basis``; raises if dependent."""
    span = {0}
    for b in basis:
        if b in span:
            raise ValidationError(f"subgroup basis is not GF(2)-independent at {b}")
        span |= {s ^ b for s in span}
    return sorted(span)


def default_nu(field: GF) -> int:
    """Least element of absolute trace 1."""
    return next(v for v in field.elements if field.trace(v) == 1)


def denniston_conics(field: GF, basis, nu: int) -> list[Conic]:
    """The conics X^2 + XY + nu Y^2 + a Z^2, a a nonzero element of the subgroup."""
    if field.p != 2:
        raise FieldError("Denniston arcs live in characteristic 2")
    if field.trace(nu) != 1:
        raise ValidationError(f"invalid nu = {nu}: absolute trace must be 1")
    A = subgroup_span(field, basis)
    return [Conic(field, a=1, b=1, c=nu, f=a) for a in A if a]


def denniston_arc(field: GF, basis, nu: int | None = None) -> PointSet:
    """{(x, y, 1) : x^2 + xy + nu y^2 in A}, a maximal 2^m-arc."""
    if nu is None:
        nu = default_nu(field)
    denniston_conics(field, basis, nu)  # validation
    A = np.zeros(field.q, dtype=bool)
    A[subgroup_span(field, basis)] = True
    x = np.repeat(np.arange(field.q), field.q)
    y = np.tile(np.arange(field.q), field.q)
    val = field.vadd(field.vadd(field.vmul(x, x), field.vmul(x, y)), field.vmul(nu, field.vmul(y, y)))
    keep = A[val]
    plane = PG2(field)
    return PointSet(plane, tuple((int(a), int(b), 1) for a, b in zip(x[keep], y[keep])))


def default_denniston_basis(field: GF, n: int) -> list[int]:
    m = n.bit_length() - 1
    if n < 2 or 1 << m != n or m > field.k:
        raise ValidationError(f"Denniston degree n = {n} must be 2^m with 1 <= m <= {field.k}")
    return [1 << i for i in range(m)]


def random_pointset(plane: PG2, size: int, seed: int) -> PointSet:
    if not 0 <= size <= plane.size:
        raise ValidationError(f"size must lie in [0, {plane.size}]")
    rng = random.Random(seed)
    pts = rng.sample(plane.points(), size)
    return PointSet.from_points(plane, pts)


KINDS = {
    "full_plane": "full",
    "affine_plane": "affine",
    "conic_points": "conic",
    "conic_plus_nucleus": "hyperoval",
    "internal_points": "internal",
    "external_points": "external",
    "hermitian_unital": "unital",
    "disjoint_conic_union": "conics",
    "denniston": "denniston",
    "thas": "thas",
    "random": "random",
}
ALIASES = {v: k for k, v in KINDS.items()} | {k: k for k in KINDS} | {"hermitian": "hermitian_unital"}


def generate(kind: str, field: GF, **params) -> PointSet:
    """Dispatch by kind name (long or short form, see ``KINDS``)."""
    try:
        kind = ALIASES[kind]
    except KeyError:
        raise ValidationError(f"unknown kind {kind!r}") from None
    plane = PG2(field)
    if kind == "full_plane":
        return full_plane(plane)
    if kind == "affine_plane":
        return affine_plane(plane)
    if kind == "conic_points":
        return conic_points(plane)
    if kind == "conic_plus_nucleus":
        return conic_plus_nucleus(plane)
    if kind == "internal_points":
        return internal_points(plane)
    if kind == "external_points":
        return external_points(plane)
    if kind == "hermitian_unital":
        return hermitian_unital(plane)
    if kind == "disjoint_conic_union":
        return disjoint_conic_union(plane, params["t"], params.get("nu"))
    if kind == "denniston":
        basis = params.get("basis") or default_denniston_basis(field, params["n"])
        return denniston_arc(field, basis, params.get("nu"))
    if kind == "thas":
        from .thas import thas_arc
        if params.get("seed") is None:
            return thas_arc(field)
        return thas_arc(field, params["seed"])
    if kind == "random":
        if params.get("seed") is None:
            raise ValidationError("random point sets need a seed")
        return random_pointset(plane, params["size"], params["seed"])
    raise AssertionError(kind)  # pragma: no cover


# -- file format ----------------------------------------------------------------

def format_pointset(K: PointSet) -> str:
    F = K.field
    head = f"q={F.spec} n={K.size}"
    if F.modulus != tuple(find_modulus(F.p, F.k)):
        head += " modulus=" + ",".join(str(c) for c in F.modulus)
    return head + "\n" + "".join(K.plane.format_point(p) + "\n" for p in K.points)


def write_atomic(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_pointset(K: PointSet, path) -> None:
    write_atomic(path, format_pointset(K))


def parse_pointset(text: str, arc_degree: int | None = None) -> PointSet:
    rows = [(n, ln.strip()) for n, ln in enumerate(text.splitlines(), 1)]
    rows = [(n, ln) for n, ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise ValidationError("empty point-set file")
    n0, header = rows[0]
    fields = dict(tok.split("=", 1) for tok in header.split() if "=" in tok)
    if "q" not in fields or "n" not in fields:
        raise ValidationError(f"line {n0}: expected header 'q=<spec> n=<count>', got {header!r}")
    try:
        F = GF.from_spec(fields["q"], fields.get("modulus"))
        count = int(fields["n"])
    except (FieldError, ValueError) as err:
        raise ValidationError(f"line {n0}: {err}") from err
    plane = PG2(F)
    seen: dict = {}
    for n, ln in rows[1:]:
        try:
            P = plane.parse_point(ln)
        except (GeometryError, FieldError) as err:
            raise ValidationError(f"line {n}: {err}") from err
        if P in seen:
            raise ValidationError(f"line {n}: duplicate of the point on line {seen[P]}")
        seen[P] = n
    if len(seen) != count:
        raise ValidationError(f"header announces {count} points, file has {len(seen)}")
    K = PointSet.from_points(plane, seen)
    if arc_degree is not None:
        check_maximal_arc(K, arc_degree)
    return K


def check_maximal_arc(K: PointSet, n: int) -> None:
    if K.size != barlotti_max(K.q, n):
        raise ValidationError(f"{K.size} points, a maximal {n}-arc of PG(2,{K.q}) has {barlotti_max(K.q, n)}")
    bad = arc_violation(K, n)
    if bad is not None:
        line, c = bad
        raise ValidationError(f"line [{K.plane.format_point(line)}] meets the set in {c} points, not 0 or {n}")


def load_pointset(path, arc_degree: int | None = None) -> PointSet:
    return parse_pointset(Path(path).read_text(), arc_degree)


def perturb(K: PointSet, seed: int) -> PointSet:
    """Swap one point of K for a point outside it (same size)."""
    rng = random.Random(seed)
    outside = [p for p in K.plane.points() if p not in K]
    drop = rng.choice(K.points)
    add = rng.choice(outside)
    return PointSet.from_points(K.plane, [p for p in K.points if p != drop] + [add])
