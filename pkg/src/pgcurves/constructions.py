"""Pairs of conics in even characteristic and the arcs they complete to.

Two normal forms are used, both with q even:

* ``NormalizedConicPair``: C_i : a_i X^2 + XY + b_i Y^2 + l_i Z^2, sharing
  the nucleus O = (0,0,1), with Z = 0 external to both;
* ``SharedPointConicPair``: C_i : a_i X^2 + XY + b_i Y^2 + l_i YZ, through
  A = (0,0,1) with nuclei (l_i, 0, 1) on the line Y = 0.

Traces are absolute traces GF(q) -> GF(2).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .forms import Conic, FormError, HomogeneousForm, conics_disjoint, has_linear_factor, product
from .gf import GF
from .pg2 import PG2
from .pointsets import PointSet, ValidationError, is_maximal_arc


class ConstructionError(ValueError):
    pass


class CertificateError(ValueError):
    pass


def _require_even(F: GF) -> None:
    if F.p != 2:
        raise ConstructionError("conic-pair constructions need q even")


@dataclass(frozen=True)
class NormalizedConicPair:
    field: GF
    alpha1: int
    beta1: int
    lambda1: int
    alpha2: int
    beta2: int
    lambda2: int

    def __post_init__(self):
        _require_even(self.field)
        bad = self.violations()
        if bad:
            raise ConstructionError("invalid conic pair: " + "; ".join(bad))

    def violations(self) -> list[str]:
        F = self.field
        a1, b1, l1, a2, b2, l2 = self.coefficients
        out = []
        if not l1 or not l2:
            out.append("lambda_i must be nonzero")
        if l1 == l2:
            out.append("lambda1 = lambda2")
        if F.mul(a1, l2) == F.mul(a2, l1):
            out.append("alpha1 lambda2 = alpha2 lambda1")
        if F.mul(b1, l2) == F.mul(b2, l1):
            out.append("beta1 lambda2 = beta2 lambda1")
        for i, (a, b) in enumerate(((a1, b1), (a2, b2)), 1):
            if F.trace(F.mul(a, b)) != 1:
                out.append(f"Tr(alpha{i} beta{i}) = 0")
        return out

    @property
    def coefficients(self) -> tuple:
        return (self.alpha1, self.beta1, self.lambda1, self.alpha2, self.beta2, self.lambda2)

    @property
    def conics(self) -> tuple[Conic, Conic]:
        F = self.field
        return (Conic(F, a=self.alpha1, b=1, c=self.beta1, f=self.lambda1),
                Conic(F, a=self.alpha2, b=1, c=self.beta2, f=self.lambda2))

    def points(self) -> PointSet:
        plane = PG2(self.field)
        c1, c2 = self.conics
        return PointSet.from_points(plane, c1.points(plane) + c2.points(plane))


@dataclass(frozen=True)
class SharedPointConicPair:
    field: GF
    alpha1: int
    beta1: int
    lambda1: int
    alpha2: int
    beta2: int
    lambda2: int

    def __post_init__(self):
        _require_even(self.field)
        bad = self.violations()
        if bad:
            raise ConstructionError("invalid conic pair: " + "; ".join(bad))

    def violations(self) -> list[str]:
        F = self.field
        a1, b1, l1, a2, b2, l2 = self.coefficients
        out = []
        if not (a1 and a2 and l1 and l2):
            out.append("alpha_i and lambda_i must be nonzero")
        if l1 == l2:
            out.append("lambda1 = lambda2 (equal nuclei)")
        x = F.add(F.mul(a1, l2), F.mul(a2, l1))
        y = F.add(F.mul(b1, l2), F.mul(b2, l1))
        if F.trace(F.mul(x, y)) != 1:
            out.append("Tr((alpha1 lambda2 + alpha2 lambda1)(beta1 lambda2 + beta2 lambda1)) = 0")
        return out

    @property
    def coefficients(self) -> tuple:
        return (self.alpha1, self.beta1, self.lambda1, self.alpha2, self.beta2, self.lambda2)

    @property
    def conics(self) -> tuple[Conic, Conic]:
        F = self.field
        return (Conic(F, a=self.alpha1, b=1, c=self.beta1, e=self.lambda1),
                Conic(F, a=self.alpha2, b=1, c=self.beta2, e=self.lambda2))

    @property
    def nuclei(self) -> tuple:
        return ((self.lambda1, 0, 1), (self.lambda2, 0, 1))

    def conic_point(self, i: int, m: int):
        """The point (l m, l, a m^2 + m + b) of C_i with parameter m.

        Where a m^2 + m + b = 0 this is the point of C_i on Z = 0, which the
        affine form (l m / den, l / den, 1) cannot express.
        """
        F = self.field
        a, b, l = (self.alpha1, self.beta1, self.lambda1) if i == 1 else (self.alpha2, self.beta2, self.lambda2)
        den = F.add(F.add(F.mul(a, F.mul(m, m)), m), b)
        return PG2(F).normalize((F.mul(l, m), l, den))


def parse_pair(field: GF, values, shared_point: bool = False):
    vals = [field.parse(v) if isinstance(v, str) else int(v) for v in values]
    if len(vals) != 6:
        raise ConstructionError("a conic pair needs six coefficients a1 b1 l1 a2 b2 l2")
    cls = SharedPointConicPair if shared_point else NormalizedConicPair
    return cls(field, *vals)


# -- random pairs -----------------------------------------------------------------

def random_normalized_pair(field: GF, rng: random.Random, max_tries: int = 10_000) -> NormalizedConicPair:
    """Rejection sampling against the algebraic criteria, confirmed by brute force."""
    _require_even(field)
    plane = PG2(field)
    nz = list(field.nonzero)
    for _ in range(max_tries):
        vals = []
        for _ in range(2):
            a = rng.randrange(field.q)
            b = rng.randrange(field.q)
            vals += [a, b, rng.choice(nz)]
        try:
            pair = NormalizedConicPair(field, *vals)
        except ConstructionError:
            continue
        c1, c2 = pair.conics
        if conics_disjoint(c1, c2, plane):
            return pair
    raise ConstructionError(f"no disjoint pair found in {max_tries} tries")


def random_shared_point_pair(field: GF, rng: random.Random, max_tries: int = 10_000) -> SharedPointConicPair:
    _require_even(field)
    plane = PG2(field)
    nz = list(field.nonzero)
    for _ in range(max_tries):
        vals = []
        for _ in range(2):
            vals += [rng.choice(nz), rng.randrange(field.q), rng.choice(nz)]
        try:
            pair = SharedPointConicPair(field, *vals)
        except ConstructionError:
            continue
        c1, c2 = pair.conics
        if set(c1.points(plane)) & set(c2.points(plane)) == {(0, 0, 1)}:
            return pair
    raise ConstructionError(f"no pair meeting in a single point found in {max_tries} tries")


# -- completing two disjoint conics ---------------------------------------------------

def third_conic(pair: NormalizedConicPair) -> Conic:
    """The conic C_3 of the pencil with C_1 ∪ C_2 ∪ C_3 ∪ {O} a maximal 4-arc.

    C_3 = (l1 C_1 + l2 C_2) / (l1 + l2): the combination whose image under
    :func:`normalizing_collineation` has Z^2 coefficient l1 + l2.
    """
    F = pair.field
    a1, b1, l1, a2, b2, l2 = pair.coefficients
    s = F.add(l1, l2)
    a = F.div(F.add(F.mul(l1, a1), F.mul(l2, a2)), s)
    b = F.div(F.add(F.mul(l1, b1), F.mul(l2, b2)), s)
    return Conic(F, a=a, b=1, c=b, f=s)


def third_conic_swapped(pair: NormalizedConicPair) -> Conic:
    """The variant with cross-multiplied weights (a1 l2 + a2 l1)/(l1 + l2);
    kept to show it does not complete the arc in general."""
    F = pair.field
    a1, b1, l1, a2, b2, l2 = pair.coefficients
    s = F.add(l1, l2)
    a = F.div(F.add(F.mul(a1, l2), F.mul(a2, l1)), s)
    b = F.div(F.add(F.mul(b1, l2), F.mul(b2, l1)), s)
    return Conic(F, a=a, b=1, c=b, f=s)


def completed_arc(pair: NormalizedConicPair) -> PointSet:
    plane = PG2(pair.field)
    c3 = third_conic(pair)
    return pair.points().union(c3.points(plane) + [(0, 0, 1)])


def nu_invariant(pair: NormalizedConicPair) -> int:
    """(a1 l2 + a2 l1)(b1 l2 + b2 l1) / (l1^2 + l2^2)."""
    F = pair.field
    a1, b1, l1, a2, b2, l2 = pair.coefficients
    den = F.add(F.mul(l1, l1), F.mul(l2, l2))
    if den == 0:
        raise ConstructionError("lambda1 = lambda2")
    num = F.mul(F.add(F.mul(a1, l2), F.mul(a2, l1)), F.add(F.mul(b1, l2), F.mul(b2, l1)))
    return F.div(num, den)


def normalizing_collineation(pair: NormalizedConicPair, check: bool = True) -> np.ndarray:
    """H with C_i(H X) proportional to X^2 + XY + nu Y^2 + l_i Z^2 (and C_3 to l1 + l2).

    Forms transform by substitution X -> H X, so points move by H^-1.
    """
    F = pair.field
    a1, b1, l1, a2, b2, l2 = pair.coefficients
    s = F.add(l1, l2)
    a2sq = F.div(F.add(F.mul(a1, l2), F.mul(a2, l1)), s)
    if a2sq == 0:
        raise ConstructionError("alpha1 lambda2 = alpha2 lambda1")
    a = F.sqrt(a2sq)
    b = F.sqrt(F.div(F.add(1, F.div(a1, a2sq)), l1))
    c = F.mul(a, F.sqrt(F.div(F.add(b1, b2), s)))
    H = np.array([[F.inv(a), 0, 0], [0, a, 0], [b, c, 1]], dtype=np.int64)
    if check:
        nu = nu_invariant(pair)
        targets = [Conic(F, a=1, b=1, c=nu, f=l) for l in (l1, l2, s)]
        for src, dst in zip(pair.conics + (third_conic(pair),), targets):
            if not src.form.substitute(H).proportional(dst.form):
                raise ConstructionError("collineation does not normalize the pencil")
    return H


# -- (0,2,4)-sets ----------------------------------------------------------------------

def _secant_sizes(X: PointSet) -> np.ndarray:
    counts = X.plane.line_counts(X.array())
    bad = np.flatnonzero((counts % 2 == 1) | (counts > 4))
    if bad.size:
        line = X.plane.points()[int(bad[0])]
        raise ValidationError(
            f"not a (0,2,4)-set: line [{X.plane.format_point(line)}] meets it in {int(counts[bad[0]])} points")
    return counts


def secant_counts(X: PointSet, P) -> tuple[int, int, int]:
    """Numbers (u0, u2, u4) of lines through P meeting X in 0, 2, 4 points."""
    plane = X.plane
    P = plane.normalize(P)
    if P in X:
        raise ValidationError("P must lie outside X")
    counts = _secant_sizes(X)
    through = plane.incidence(plane.coords(), np.array([P], dtype=np.int64))[:, 0]
    c = counts[through]
    return int((c == 0).sum()), int((c == 2).sum()), int((c == 4).sum())


def admissible_completions(X: PointSet) -> PointSet:
    """Points off X lying on no 4-secant of X: the only candidates for
    extending X to a maximal 4-arc."""
    plane = X.plane
    counts = _secant_sizes(X)
    four = plane.coords()[counts == 4]
    blocked = plane.incidence(four, plane.coords()).any(axis=0)
    pts = plane.points()
    return PointSet.from_points(plane, [pts[i] for i in np.flatnonzero(~blocked) if pts[i] not in X])


# -- three-secant witness --------------------------------------------------------------

def admissible_eps(pair: SharedPointConicPair) -> list[int]:
    F = pair.field
    bad = {0}
    for l, b in ((pair.lambda1, pair.beta1), (pair.lambda2, pair.beta2)):
        if b:
            bad.add(F.div(l, b))
    return [e for e in F.elements if e not in bad]


def three_secant_witness(pair: SharedPointConicPair, eps: int):
    """A line through P_eps = (0, eps, 1) joining a point of C_1 to a point of
    C_2 and meeting C_1 ∪ C_2 ∪ {N_1, N_2} in at least three points.

    Exhaustive over parameter pairs (m, t), m != t, both nonzero; points
    are taken in homogeneous form so parameters at a pole of the affine
    parametrisation still count.
    """
    F = pair.field
    plane = PG2(F)
    if eps not in admissible_eps(pair):
        raise ConstructionError(f"eps = {F.format(eps)} is excluded (zero or on a conic)")
    Pe = (0, eps, 1)
    c1, c2 = pair.conics
    target = set(c1.points(plane)) | set(c2.points(plane)) | {plane.normalize(N) for N in pair.nuclei}
    pts1 = [(m, pair.conic_point(1, m)) for m in F.nonzero]
    pts2 = [(t, pair.conic_point(2, t)) for t in F.nonzero]
    for (m, P), (t, Q) in itertools.product(pts1, pts2):
        if m == t:
            continue
        line = plane.line_through(P, Q)
        if not plane.incident(Pe, line):
            continue
        hits = sum(1 for R in plane.line_points(line) if R in target)
        if hits >= 3:
            return line
    raise ConstructionError(f"no three-secant through (0,{F.format(eps)},1)")


def three_secant_lines(pair: SharedPointConicPair, eps: int) -> list:
    """Every line through (0, eps, 1) meeting C_1 ∪ C_2 ∪ {N_1, N_2} in at
    least three points, by brute force.  The line X = 0 always qualifies when
    it meets the two conics in distinct second points."""
    F = pair.field
    plane = PG2(F)
    c1, c2 = pair.conics
    target = set(c1.points(plane)) | set(c2.points(plane)) | {plane.normalize(N) for N in pair.nuclei}
    return [L for L in plane.lines_through((0, eps, 1))
            if sum(1 for R in plane.line_points(L) if R in target) >= 3]


# -- split curves through maximal arcs ---------------------------------------------------

@dataclass
class SplitVerdict:
    ok: bool
    shape: str
    reasons: list

    def __bool__(self):
        return self.ok


def verify_split_structure(forms, K: PointSet, n: int) -> SplitVerdict:
    """Check that a factored curve through a maximal n-arc has degree 2n-1 and
    splits as a line and n-1 conics, or n-2 conics and a cubic.

    For n = 4 the line shape must also be three pairwise disjoint conics with
    a common nucleus N in K and the line through N.
    """
    forms = list(forms)
    if not forms:
        raise CertificateError("no factors given")
    F = K.field
    if any(f.field.q != F.q for f in forms):
        raise CertificateError("factors over a different field")
    try:
        prod = product(forms)
    except FormError as err:
        raise CertificateError(str(err)) from err
    if not prod.vanishes_on(K.array()):
        raise CertificateError("the product of the factors does not vanish on the point set")
    degrees = sorted(f.degree for f in forms)
    reasons = []
    if sum(degrees) != 2 * n - 1:
        reasons.append(f"total degree {sum(degrees)} != {2 * n - 1}")
    if degrees == [1] + [2] * (n - 1):
        shape = "line+conics"
    elif degrees == [2] * (n - 2) + [3]:
        shape = "conics+cubic"
    else:
        shape = "other"
        reasons.append(f"factor degrees {degrees} fit neither split shape")
    plane = PG2(F)
    conics = []
    for f in forms:
        if f.degree != 2:
            continue
        c = Conic.from_form(f)
        if not c.is_nondegenerate() or has_linear_factor(f, plane):
            reasons.append(f"quadratic factor {f} is degenerate")
        else:
            conics.append(c)
    if n == 4 and shape == "line+conics" and F.p == 2 and len(conics) == 3:
        for c1, c2 in itertools.combinations(conics, 2):
            if not conics_disjoint(c1, c2, plane):
                reasons.append("conics are not pairwise disjoint")
                break
        nuclei = {c.nucleus(plane) for c in conics}
        r = next(f for f in forms if f.degree == 1)
        if len(nuclei) != 1:
            reasons.append("conics have different nuclei")
        else:
            N = nuclei.pop()
            if N not in K:
                reasons.append(f"common nucleus {plane.format_point(N)} is not in the arc")
            if r.evaluate(N) != 0:
                reasons.append("the nuclei do not lie on the line r")
    return SplitVerdict(not reasons, shape, reasons)


def denniston_witness(field: GF, basis, nu: int | None = None) -> list[HomogeneousForm]:
    """Factors of a degree 2n-1 curve through the Denniston arc: the n-1 conics
    and the line X = 0 through their common nucleus."""
    from .pointsets import default_nu, denniston_conics
    nu = default_nu(field) if nu is None else nu
    return [c.form for c in denniston_conics(field, basis, nu)] + [HomogeneousForm.linear(field, (1, 0, 0))]


def hyperoval_witness(field: GF) -> list[HomogeneousForm]:
    """The conic of ``conic_plus_nucleus`` and a line through its nucleus."""
    from .pointsets import standard_conic
    c = standard_conic(field)
    N = c.nucleus()
    plane = PG2(field)
    line = plane.line_through(N, c.points(plane)[0])
    return [c.form, HomogeneousForm.linear(field, line)]


def is_completion(pair: NormalizedConicPair, conic: Conic) -> bool:
    plane = PG2(pair.field)
    K = pair.points().union(conic.points(plane) + [(0, 0, 1)])
    return is_maximal_arc(K, 4)
