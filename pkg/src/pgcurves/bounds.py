"""Point-count bounds for plane curves and lower bounds on the degree of a
curve through a point set, checked against solver output.

Every verdict is exact: rationals are :class:`fractions.Fraction`, square and
fourth roots are compared through integer powers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .forms import HomogeneousForm
from .gf import is_prime, prime_power
from .mindeg import CurveCertificate, trivial_min_degree
from .pointsets import PointSet, barlotti_max, spectrum

__all__ = [
    "BoundError", "BoundCheck", "BoundReport", "barlotti_max", "trivial_min_degree",
    "hasse_weil_rhs", "hasse_weil_holds", "hasse_weil_audit", "sv_line_rhs", "sv_conic_rhs",
    "plucker_max_singular", "thm_main_condition", "thm_conic_condition", "component_condition",
    "lemma_component_bound", "fourth_root_ceil", "arc_degree_thresholds", "validate_bounds",
]


class BoundError(ValueError):
    pass


def _prime_power(q: int) -> tuple[int, int]:
    try:
        return prime_power(q)
    except ValueError as err:
        raise BoundError(str(err)) from err


# -- point counts ---------------------------------------------------------------

def hasse_weil_rhs(d: int, q: int) -> int:
    """floor(q + 1 + (d-1)(d-2) sqrt(q))."""
    if d < 1:
        raise BoundError("degree must be positive")
    _prime_power(q)
    c = (d - 1) * (d - 2)
    return q + 1 + math.isqrt(c * c * q)


def hasse_weil_holds(n_points: int, d: int, q: int) -> bool:
    return n_points <= hasse_weil_rhs(d, q)


def hasse_weil_audit(form: HomogeneousForm) -> tuple[int, int, bool]:
    """(rational points, bound, within bound) for the curve ``form = 0``."""
    q = form.field.q
    n = len(form.zero_set())
    rhs = hasse_weil_rhs(form.degree, q)
    return n, rhs, n <= rhs


def _valid_line_nu(nu: int, p: int, h: int) -> bool:
    if h == 1:
        return nu == 1 or (nu == 2 and p == 2)
    if nu in (1, 2):
        return True
    e = 0
    while nu % p == 0:
        nu //= p
        e += 1
    return nu == 1 and 1 <= e <= h


def sv_line_rhs(d: int, q: int, nu: int | None = None) -> Fraction:
    """Upper bound on 2N from (nu (d-3) d + d (q+2)) / 2, returned as N's bound.

    ``nu`` is the Frobenius order with respect to lines; it defaults to 1
    only for odd prime q.
    """
    if d < 1:
        raise BoundError("degree must be positive")
    p, h = _prime_power(q)
    if nu is None:
        if h != 1 or p == 2:
            raise BoundError(f"no default Frobenius order for q={q}; pass nu")
        nu = 1
    if not _valid_line_nu(nu, p, h):
        raise BoundError(f"invalid Frobenius order nu={nu} for q={q}")
    return Fraction(nu * (d - 3) * d + d * (q + 2), 2)


def sv_conic_rhs(d: int, q: int, nu_sum: int | None = None) -> Fraction:
    """Bound on N from 5N <= nu_sum (d-3) d + 2d(q+5), for d >= 3.

    ``nu_sum`` is the sum of the four positive Frobenius orders for conics:
    10 when q > 5 is prime, otherwise at most 6d - 1.
    """
    if d < 3:
        raise BoundError("the conic bound needs degree >= 3")
    p, h = _prime_power(q)
    if nu_sum is None:
        if h != 1 or q <= 5:
            raise BoundError(f"no default order sum for q={q}; pass nu_sum")
        nu_sum = 10
    if not 1 <= nu_sum <= 6 * d - 1:
        raise BoundError(f"order sum {nu_sum} outside 1..{6 * d - 1}")
    return Fraction(nu_sum * (d - 3) * d + 2 * d * (q + 5), 5)


def plucker_max_singular(d: int) -> int:
    """Most singular points an irreducible curve of degree d can have."""
    if d < 1:
        raise BoundError("degree must be positive")
    return (d - 1) * (d - 2) // 2


# -- degree lower bounds ------------------------------------------------------------

@dataclass
class BoundCheck:
    """One conditional lower bound: if ``holds`` then min degree >= ``implied``.

    ``enforced`` checks count towards the verdict; the others depend on
    properties of the curve that are not computed (e.g. its factorisation)
    and are reported for information only.
    """

    name: str
    holds: bool
    implied: int
    rhs: dict = field(default_factory=dict)
    enforced: bool = True
    note: str = ""

    def violated(self, degree: int) -> bool:
        return self.enforced and self.holds and self.implied > degree

    def to_dict(self) -> dict:
        rhs = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in self.rhs.items()}
        return {"name": self.name, "holds": self.holds, "implied": self.implied,
                "rhs": rhs, "enforced": self.enforced, "note": self.note}


def _check_spectrum(t: int, m0: int, M0: int) -> None:
    if t < 1:
        raise BoundError("t must be at least 1")
    if not 1 <= m0 <= M0:
        raise BoundError(f"need 1 <= m0 <= M0, got m0={m0}, M0={M0}")


def thm_main_condition(q: int, t: int, m0: int, M0: int, alpha: int, q_prime: bool | None = None) -> BoundCheck:
    """Sufficient conditions for degree >= 2t (cubic in t; quadratic for prime q)."""
    _check_spectrum(t, m0, M0)
    if q_prime is None:
        q_prime = is_prime(q)
    general = 8 * t**3 - 16 * t**2 + 2 * t + 4 - 2 * m0 * (2 * t**2 - 5 * t + 2) + 2 * M0 * (2 * t - 1)
    prime = 8 * t**2 - 16 * t + 8 - 2 * alpha + 2 * M0 * (2 * t - 1)
    relaxed = 8 * t**3 - 12 * t**2 + 4 * t - 2 * alpha + 2
    relaxed_prime = 16 * t**2 - 24 * t - 2 * alpha + 8
    holds = q > general or (q_prime and q > prime)
    rhs = {"general": general, "prime": prime, "relaxed": relaxed, "relaxed_prime": relaxed_prime,
           "relaxed_holds": q > relaxed or (q_prime and q > relaxed_prime)}
    note = "relaxed cubic read as 8t^3-12t^2+4t-2a+2"
    return BoundCheck("degree>=2t", holds, 2 * t, rhs, True, note)


def thm_conic_condition(q: int, t: int, M0: int, alpha: int, q_prime: bool | None = None) -> BoundCheck:
    """Sufficient conditions for degree >= 5t/2 when the curve has no conic component."""
    _check_spectrum(t, 1, M0)
    if q_prime is None:
        q_prime = is_prime(q)
    general = Fraction(750 * t**3 - 1725 * t**2 + 10 * (10 * M0 + 113) * t - 184 - 40 * (alpha + M0), 40)
    prime = Fraction(125 * t**2 + 2 * (10 * M0 - 105) * t - 8 * (alpha + M0 - 9), 8)
    holds = q > general or (q_prime and q > 5 and q > prime)
    implied = -(-5 * t // 2)
    return BoundCheck("degree>=5t/2", holds, implied, {"general": general, "prime": prime}, False,
                      "only for curves without a conic component")


def component_condition(t: int) -> BoundCheck:
    """Degree >= 2t+1 for curves with a component not defined over GF(q)."""
    return BoundCheck("degree>=2t+1", True, 2 * t + 1, {}, False,
                      "only for curves with a component not defined over GF(q)")


def fourth_root_ceil(q: int) -> int:
    r = math.isqrt(math.isqrt(q))
    while r**4 < q:
        r += 1
    while r > 0 and (r - 1) ** 4 >= q:
        r -= 1
    return r


def lemma_component_bound(q: int, n: int, num_components: int) -> int | None:
    """ceil(q^(1/4)) for a reducible curve through a maximal n-arc with
    fewer than n-1 components; None when the hypothesis fails."""
    if num_components < 2 or num_components >= n - 1:
        return None
    return fourth_root_ceil(q)


def arc_degree_thresholds(n: int) -> dict:
    """Both readings of the field-size threshold beyond which every curve
    through a maximal n-arc has degree >= 2n-1."""
    return {"square": (2 * n - 2) ** 2, "fourth_power": (2 * n - 2) ** 4}


def arc_condition(q: int, n: int) -> BoundCheck:
    th = arc_degree_thresholds(n)
    holds = q > th["fourth_power"]
    note = "verdict uses the fourth-power threshold"
    if q > th["square"] and not holds:
        note += "; square threshold would apply"
    return BoundCheck("maximal-arc degree>=2n-1", holds, 2 * n - 1, th, True, note)


# -- validator ------------------------------------------------------------------

@dataclass
class BoundReport:
    inputs: dict
    checks: list
    degree: int | None

    @property
    def violations(self) -> list:
        if self.degree is None:
            return []
        return [c for c in self.checks if c.violated(self.degree)]

    @property
    def best_lower_bound(self) -> int:
        return max([c.implied for c in self.checks if c.enforced and c.holds] or [0])

    @property
    def verdict(self) -> str:
        if self.degree is None:
            return "NO-CERTIFICATE"
        return "INCONSISTENT" if self.violations else "CONSISTENT"

    def to_dict(self) -> dict:
        return {"inputs": self.inputs, "degree": self.degree, "verdict": self.verdict,
                "best_lower_bound": self.best_lower_bound,
                "checks": [c.to_dict() for c in self.checks]}


def validate_bounds(K: PointSet, cert: CurveCertificate | int | None = None) -> BoundReport:
    """Evaluate every applicable lower bound for K and compare with a
    certificate (or a bare degree)."""
    q, t, alpha = K.q, K.t, K.alpha
    sp = spectrum(K)
    m0, M0 = sp.m0, sp.M0
    q_prime = is_prime(q)
    inputs = {"q": q, "size": K.size, "t": t, "alpha": alpha, "m0": m0, "M0": M0}
    checks = [BoundCheck("counting", True, trivial_min_degree(K.size, q), {"t": t})]
    if t >= 1:
        checks.append(thm_main_condition(q, t, m0, M0, alpha, q_prime))
        checks.append(thm_conic_condition(q, t, M0, alpha, q_prime))
        checks.append(component_condition(t))
    if sp.support == {0, M0} and K.size == barlotti_max(q, M0) and 2 <= M0 <= q:
        n = M0
        inputs["n"] = n
        checks.append(arc_condition(q, n))
        checks.append(BoundCheck("few-components", True, fourth_root_ceil(q), {"n": n}, False,
                                 f"only for reducible curves with fewer than {n - 1} components"))
    if isinstance(cert, CurveCertificate):
        degree = cert.degree
    else:
        degree = cert
    if degree is not None:
        inputs["d"] = degree
    return BoundReport(inputs, checks, degree)
