"""Homogeneous ternary forms over GF(q) and the conic toolkit built on them.

Coefficients are kept densely, aligned with :func:`monomials`, which lists
the exponent triples of a degree in graded-lexicographic order with
X > Y > Z.  That order is also the column order of the interpolation matrix
and of certificate files.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .gf import GF, FieldError
from .pg2 import PG2, GeometryError

Exponent = tuple[int, int, int]


@functools.lru_cache(maxsize=None)
def monomials(d: int) -> tuple[Exponent, ...]:
    """Exponent triples (i, j, k), i + j + k = d, in grlex order."""
    if d < 0:
        raise ValueError("negative degree")
    return tuple((i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1))


def num_monomials(d: int) -> int:
    return (d + 1) * (d + 2) // 2


@functools.lru_cache(maxsize=None)
def _monomial_index(d: int) -> dict:
    return {e: n for n, e in enumerate(monomials(d))}


def monomial_matrix(F: GF, points, d: int) -> np.ndarray:
    """Evaluation matrix: row per point, column per degree-d monomial."""
    pts = np.asarray(points, dtype=np.int64).reshape(-1, 3)
    pw = F.powers(d)
    exps = np.array(monomials(d), dtype=np.int64)
    xs = pw[pts[:, 0]][:, exps[:, 0]]
    ys = pw[pts[:, 1]][:, exps[:, 1]]
    zs = pw[pts[:, 2]][:, exps[:, 2]]
    return F.mul_table[F.mul_table[xs, ys], zs]


class FormError(ValueError):
    pass


class HomogeneousForm:
    """A nonzero homogeneous polynomial in X, Y, Z of degree ``degree``."""

    __slots__ = ("field", "degree", "vector")

    def __init__(self, field: GF, degree: int, vector):
        vector = tuple(int(c) for c in vector)
        if degree < 0 or len(vector) != num_monomials(degree):
            raise FormError(f"degree {degree} needs {num_monomials(degree)} coefficients")
        if not any(vector):
            raise FormError("the zero polynomial is not a curve")
        if any(not 0 <= c < field.q for c in vector):
            raise FormError("coefficient outside the field")
        self.field = field
        self.degree = degree
        self.vector = vector

    @classmethod
    def from_terms(cls, field: GF, terms: dict) -> "HomogeneousForm":
        """Build from {(i, j, k): coefficient}; repeated exponents are not merged."""
        if not terms:
            raise FormError("no terms")
        degrees = {sum(e) for e in terms}
        if len(degrees) != 1:
            raise FormError(f"terms of mixed degree {sorted(degrees)}")
        d = degrees.pop()
        idx = _monomial_index(d)
        vec = [0] * num_monomials(d)
        for e, c in terms.items():
            vec[idx[tuple(e)]] = int(c)
        return cls(field, d, vec)

    @classmethod
    def linear(cls, field: GF, line) -> "HomogeneousForm":
        u, v, w = line
        return cls(field, 1, (u, v, w))

    @property
    def terms(self) -> dict:
        return {e: c for e, c in zip(monomials(self.degree), self.vector) if c}

    def coefficient(self, exponent: Exponent) -> int:
        return self.vector[_monomial_index(self.degree)[tuple(exponent)]]

    def __eq__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        return self.field is other.field and self.degree == other.degree and self.vector == other.vector

    def __hash__(self):
        return hash((self.field.q, self.degree, self.vector))

    def __repr__(self):
        return f"HomogeneousForm({self.field!r}, {self})"

    def __str__(self):
        out = []
        for (i, j, k), c in self.terms.items():
            mono = "".join(
                v if e == 1 else f"{v}^{e}" for v, e in (("X", i), ("Y", j), ("Z", k)) if e
            )
            if not mono:
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            else:
                out.append(f"{c}*{mono}")
        return " + ".join(out)

    # -- evaluation -----------------------------------------------------------

    def evaluate(self, P) -> int:
        F = self.field
        x, y, z = P
        total = 0
        for (i, j, k), c in self.terms.items():
            total = F.add(total, F.mul(c, F.mul(F.pow(x, i), F.mul(F.pow(y, j), F.pow(z, k)))))
        return total

    def evaluate_many(self, points) -> np.ndarray:
        F = self.field
        M = monomial_matrix(F, points, self.degree)
        coeffs = np.asarray(self.vector, dtype=np.int64)
        return F.vsum(F.mul_table[M, coeffs[None, :]], axis=1)

    def vanishes_on(self, points) -> bool:
        pts = np.asarray(points, dtype=np.int64).reshape(-1, 3)
        return bool(len(pts) == 0 or not np.any(self.evaluate_many(pts)))

    def zero_set(self, plane: PG2 | None = None) -> list:
        plane = plane or PG2(self.field)
        pts = plane.coords()
        vals = self.evaluate_many(pts)
        return [tuple(int(c) for c in p) for p in pts[vals == 0]]

    # -- algebra --------------------------------------------------------------

    def _check(self, other):
        if other.field is not self.field:
            raise FieldError("forms over different fields")

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        self._check(other)
        F = self.field
        d = self.degree + other.degree
        idx = _monomial_index(d)
        vec = [0] * num_monomials(d)
        for (a, b, c), u in self.terms.items():
            for (i, j, k), v in other.terms.items():
                n = idx[(a + i, b + j, c + k)]
                vec[n] = F.add(vec[n], F.mul(u, v))
        return HomogeneousForm(F, d, vec)

    def __add__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        self._check(other)
        if other.degree != self.degree:
            raise FormError("cannot add forms of different degree")
        F = self.field
        return HomogeneousForm(F, self.degree, (F.add(a, b) for a, b in zip(self.vector, other.vector)))

    def scale(self, s: int) -> "HomogeneousForm":
        F = self.field
        return HomogeneousForm(F, self.degree, (F.mul(s, c) for c in self.vector))

    def normalized(self) -> "HomogeneousForm":
        """Scale so the first nonzero coefficient in grlex order is 1."""
        lead = next(c for c in self.vector if c)
        return self.scale(self.field.inv(lead))

    def proportional(self, other: "HomogeneousForm") -> bool:
        return self.normalized() == other.normalized()

    def substitute(self, matrix) -> "HomogeneousForm":
        """The form P -> f(M P): each variable becomes row i of M as a linear form."""
        F = self.field
        rows = [[int(c) for c in r] for r in matrix]
        linear = [HomogeneousForm(F, 1, r) if any(r) else None for r in rows]
        one = HomogeneousForm(F, 0, (1,))
        powers = []
        for lin in linear:
            pw = [one]
            for _ in range(self.degree):
                pw.append(None if lin is None or pw[-1] is None else pw[-1] * lin)
            powers.append(pw)
        acc = [0] * num_monomials(self.degree)
        for (i, j, k), c in self.terms.items():
            parts = (powers[0][i], powers[1][j], powers[2][k])
            if any(p is None for p in parts):
                continue
            prod = parts[0] * parts[1] * parts[2]
            acc = [F.add(a, F.mul(c, b)) for a, b in zip(acc, prod.vector)]
        if not any(acc):
            raise FormError("substitution by a singular matrix killed the form")
        return HomogeneousForm(F, self.degree, acc)

    # -- certificate text -------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"degree {self.degree} over {self.field.spec}"]
        for (i, j, k), c in self.terms.items():
            lines.append(f"{i},{j},{k}: {self.field.format(c)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, field: GF | None = None) -> "HomogeneousForm":
        rows = [(n, ln.strip()) for n, ln in enumerate(text.splitlines(), 1)]
        rows = [(n, ln) for n, ln in rows if ln and not ln.startswith("#")]
        if not rows:
            raise FormError("empty certificate")
        n0, header = rows[0]
        parts = header.split()
        if len(parts) != 4 or parts[0] != "degree" or parts[2] != "over":
            raise FormError(f"line {n0}: expected 'degree d over q', got {header!r}")
        d = int(parts[1])
        spec_field = GF.from_spec(parts[3])
        if field is None:
            field = spec_field
        elif field.q != spec_field.q:
            raise FormError(f"line {n0}: certificate is over {parts[3]}, points over {field.spec}")
        terms = {}
        for n, ln in rows[1:]:
            try:
                exp, val = ln.split(":")
                e = tuple(int(s) for s in exp.split(","))
                c = field.parse(val)
            except (ValueError, FieldError) as err:
                raise FormError(f"line {n}: cannot parse term {ln!r}") from err
            if len(e) != 3 or sum(e) != d or min(e) < 0:
                raise FormError(f"line {n}: exponent {e} does not have degree {d}")
            if e in terms:
                raise FormError(f"line {n}: repeated exponent {e}")
            terms[e] = c
        if not any(terms.values()):
            raise FormError("certificate has no nonzero term")
        vec = [terms.get(e, 0) for e in monomials(d)]
        return cls(field, d, vec)


def variable(field: GF, name: str) -> HomogeneousForm:
    return HomogeneousForm(field, 1, {"X": (1, 0, 0), "Y": (0, 1, 0), "Z": (0, 0, 1)}[name])


def product(forms) -> HomogeneousForm:
    return functools.reduce(lambda a, b: a * b, forms)


def all_points_form(field: GF) -> HomogeneousForm:
    """X^q Y - X Y^q, which vanishes on every point of PG(2,q)."""
    q = field.q
    return HomogeneousForm.from_terms(field, {(q, 1, 0): 1, (1, q, 0): field.neg(1)})


# -- conics -------------------------------------------------------------------

@dataclass(frozen=True)
class Conic:
    """aX^2 + bXY + cY^2 + dXZ + eYZ + fZ^2."""

    field: GF
    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0
    e: int = 0
    f: int = 0

    @classmethod
    def from_form(cls, form: HomogeneousForm) -> "Conic":
        if form.degree != 2:
            raise FormError("not a quadratic form")
        # grlex order of degree 2: X^2, XY, XZ, Y^2, YZ, Z^2
        x2, xy, xz, y2, yz, z2 = form.vector
        return cls(form.field, x2, xy, y2, xz, yz, z2)

    @property
    def form(self) -> HomogeneousForm:
        return HomogeneousForm(self.field, 2, (self.a, self.b, self.d, self.c, self.e, self.f))

    def discriminant(self) -> int:
        """4acf + bde - ae^2 - cd^2 - fb^2: zero iff the conic is degenerate, in any characteristic."""
        F = self.field
        a, b, c, d, e, f = self.a, self.b, self.c, self.d, self.e, self.f
        m = F.mul
        pos = F.add(m(F.from_int(4), m(a, m(c, f))), m(b, m(d, e)))
        neg = F.add(F.add(m(a, m(e, e)), m(c, m(d, d))), m(f, m(b, b)))
        return F.sub(pos, neg)

    def is_nondegenerate(self) -> bool:
        return self.discriminant() != 0

    def points(self, plane: PG2 | None = None) -> list:
        return self.form.zero_set(plane)

    def contains(self, P) -> bool:
        return self.form.evaluate(P) == 0

    def nucleus(self, plane: PG2 | None = None):
        """The common point (e, d, b) of all tangents, q even, nondegenerate only."""
        if self.field.p != 2:
            raise FieldError("conic nuclei exist only in even characteristic")
        if not self.is_nondegenerate():
            raise GeometryError("degenerate conic has no nucleus")
        plane = plane or PG2(self.field)
        return plane.normalize((self.e, self.d, self.b))

    def tangent_lines(self, plane: PG2 | None = None) -> list:
        """Lines meeting the conic in exactly one rational point (brute force)."""
        plane = plane or PG2(self.field)
        counts = plane.line_counts(self.points(plane))
        return [plane.points()[i] for i in np.flatnonzero(counts == 1)]


def nucleus_by_tangents(conic: Conic, plane: PG2 | None = None):
    """Independent oracle: intersect all tangent lines by brute force."""
    plane = plane or PG2(conic.field)
    tangents = np.array(conic.tangent_lines(plane), dtype=np.int64)
    if len(tangents) < 2:
        raise GeometryError("fewer than two tangent lines")
    inc = plane.incidence(tangents, plane.coords()).all(axis=0)
    common = np.flatnonzero(inc)
    if len(common) != 1:
        raise GeometryError(f"tangent lines share {len(common)} points")
    return plane.points()[int(common[0])]


def conics_disjoint(c1: Conic, c2: Conic, plane: PG2 | None = None) -> bool:
    plane = plane or PG2(c1.field)
    return not set(c1.points(plane)) & set(c2.points(plane))


def has_linear_factor(form: HomogeneousForm, plane: PG2 | None = None) -> bool:
    """Trial division by every GF(q)-rational line: does some line lie on the curve?"""
    plane = plane or PG2(form.field)
    pts = plane.coords()
    vanish = form.evaluate_many(pts) == 0
    inc = plane.incidence(pts, pts)
    # a line divides the form iff the form vanishes on all q+1 rational points
    # of the line, once deg < q+1 (else check algebraically below)
    on_line = (inc & vanish[None, :]).sum(axis=1) == plane.q + 1
    if form.degree <= plane.q:
        return bool(on_line.any())
    return any(_divisible_by_line(form, plane.points()[i]) for i in np.flatnonzero(on_line))


def _divisible_by_line(form: HomogeneousForm, line) -> bool:
    """Exact test that ``line`` divides ``form``: f(sA + tB) vanishes identically."""
    A, B = PG2(form.field).line_points(line)[:2]
    M = [[A[0], B[0], 0], [A[1], B[1], 0], [A[2], B[2], 0]]
    try:
        form.substitute(M)
    except FormError:
        return True
    return False
