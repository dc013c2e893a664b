"""Minimum degree of a plane curve over GF(q) through a point set.

The forms of degree d vanishing on K are the kernel of the |K| x (d+1)(d+2)/2
matrix of monomial values at the points.  The search climbs from the counting
bound ceil(|K|/(q+1)) and stops at the first degree with a nonzero kernel;
X^q Y - X Y^q guarantees termination by degree q + 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .forms import HomogeneousForm, monomial_matrix, num_monomials
from .linalg import nullspace, rank
from .pointsets import PointSet, ValidationError

log = logging.getLogger(__name__)


class SearchExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class ProfileRow:
    degree: int
    monomials: int
    rank: int

    @property
    def kernel_dim(self) -> int:
        return self.monomials - self.rank


@dataclass
class CurveCertificate:
    """A minimum-degree curve through K with its witnesses.

    ``kernel_dim`` is the dimension of the degree-``degree`` vanishing space;
    ``kernel_dim_below`` must be 0 for the degree to be minimal.
    """

    degree: int
    form: HomogeneousForm
    kernel_dim: int
    kernel_dim_below: int
    checked: bool
    profile: list = field(default_factory=list)

    @property
    def minimal(self) -> bool:
        return self.kernel_dim_below == 0


def trivial_min_degree(size: int, q: int) -> int:
    """ceil(|K| / (q+1)): each line through a point off the curve's linear
    components meets the curve in at most d points."""
    return -(-size // (q + 1))


def _matrix(K: PointSet, d: int) -> np.ndarray:
    return monomial_matrix(K.field, K.array(), d)


def kernel_rank(K: PointSet, d: int) -> ProfileRow:
    if d < 0:
        raise ValueError("negative degree")
    return ProfileRow(d, num_monomials(d), rank(K.field, _matrix(K, d)))


def vanishing_space(K: PointSet, d: int) -> tuple[int, list[HomogeneousForm]]:
    """Dimension and reduced basis of the degree-d forms vanishing on K."""
    if d < 0:
        raise ValueError("negative degree")
    F = K.field
    basis = nullspace(F, _matrix(K, d))
    forms = [HomogeneousForm(F, d, row) for row in basis]
    pts = K.array()
    for f in forms:
        if not f.vanishes_on(pts):
            raise AssertionError(f"kernel vector fails to vanish on K at degree {d}")
    return len(forms), forms


def certificate_form(forms: list[HomogeneousForm]) -> HomogeneousForm:
    """The grlex-least normalised form among a reduced kernel basis."""
    return min((f.normalized() for f in forms), key=lambda f: f.vector)


def min_degree(K: PointSet, max_degree: int | None = None) -> CurveCertificate:
    if K.size == 0:
        raise ValidationError("the empty set has no minimum degree")
    q = K.q
    top = q + 1 if max_degree is None else max_degree
    start = max(1, trivial_min_degree(K.size, q))
    profile = []
    for d in range(start, top + 1):
        row = kernel_rank(K, d)
        profile.append(row)
        log.debug("degree %d: %d monomials, rank %d", d, row.monomials, row.rank)
        if row.kernel_dim == 0:
            continue
        dim, forms = vanishing_space(K, d)
        assert dim == row.kernel_dim
        if len(profile) > 1:
            below = profile[-2]
        else:
            below = kernel_rank(K, d - 1)
            profile.insert(0, below)
        form = certificate_form(forms)
        checked = form.vanishes_on(K.array())
        return CurveCertificate(d, form, dim, below.kernel_dim, checked, profile)
    raise SearchExhausted(f"no curve of degree <= {top} through the {K.size} points")


def verify_certificate(K: PointSet, form: HomogeneousForm, check_minimal: bool = True) -> tuple[bool, str]:
    """Re-check a certificate independently of how it was produced."""
    if form.field.q != K.q:
        return False, f"certificate over GF({form.field.q}), points over GF({K.q})"
    if form.field is not K.field:
        form = HomogeneousForm(K.field, form.degree, form.vector)
    vals = form.evaluate_many(K.array())
    bad = np.flatnonzero(vals)
    if bad.size:
        P = K.points[int(bad[0])]
        return False, f"form does not vanish at {K.plane.format_point(P)} ({bad.size} points fail)"
    if check_minimal and form.degree > 0:
        below = kernel_rank(K, form.degree - 1)
        if below.kernel_dim:
            return False, f"not minimal: {below.kernel_dim}-dimensional space of degree {form.degree - 1} curves"
    return True, "ok"


def kernel_profile(K: PointSet, max_degree: int) -> list[ProfileRow]:
    return [kernel_rank(K, d) for d in range(0, max_degree + 1)]

