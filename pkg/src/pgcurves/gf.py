"""Exact arithmetic in GF(p^k).

Elements are plain ints: the coefficient vector (c_0, ..., c_{k-1}) of the
polynomial-basis representative is encoded as sum(c_i * p**i).  For p = 2 this
is the usual bitmask, so addition is XOR.  All arithmetic goes through
precomputed numpy tables, which also serve the vectorised row reduction in
:mod:`pgcurves.linalg`.

>>> F = GF.from_spec("4")
>>> F.mul(2, 3), F.inv(2), F.trace(2)
(1, 3, 1)
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass

import numpy as np

MAX_ORDER = 1024

# constant term first; one fixed modulus per (p, k) so encodings are stable
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (3, 2): (2, 1, 1),
}


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, k


# -- polynomials over GF(p), little-endian coefficient lists -----------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _poly_mulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_mod(out, m, p)


def is_irreducible(modulus, p: int) -> bool:
    """Trial division of a polynomial over GF(p) by every monic of degree <= k/2."""
    m = _trim(modulus)
    k = len(m) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    if m[0] == 0:
        return False
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _poly_mod(m, list(low) + [1], p):
                return False
    return True


def find_modulus(p: int, k: int) -> tuple[int, ...]:
    """The built-in modulus for (p, k), else the first monic irreducible in
    lexicographic order of (c_{k-1}, ..., c_0)."""
    if (p, k) in DEFAULT_MODULI:
        return DEFAULT_MODULI[(p, k)]
    if k == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=k):
        cand = tuple(reversed(low)) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


class GF:
    """The finite field GF(p^k) with a fixed irreducible modulus.

    Instances are immutable and cached, so ``GF(2, 4) is GF(2, 4)``.
    """

    _cache: dict = {}

    def __new__(cls, p: int, k: int = 1, modulus=None):
        key = (p, k, None if modulus is None else tuple(modulus))
        if key not in cls._cache:
            obj = super().__new__(cls)
            obj._setup(p, k, modulus)
            cls._cache[key] = obj
            cls._cache[(p, k, obj.modulus)] = obj
        return cls._cache[key]

    @classmethod
    def from_spec(cls, spec: str | int, modulus=None) -> "GF":
        """Parse ``"64"``, ``"2^6"`` or ``"3**2"``; ``modulus`` may be a
        comma-separated coefficient string, constant term first."""
        if isinstance(modulus, str):
            modulus = tuple(int(c) for c in modulus.split(","))
        s = str(spec).strip()
        m = re.fullmatch(r"(\d+)\s*(?:\^|\*\*)\s*(\d+)", s)
        if m:
            p, k = int(m.group(1)), int(m.group(2))
            if not is_prime(p) or k < 1:
                raise FieldError(f"bad field spec {spec!r}")
        elif s.isdigit():
            p, k = prime_power(int(s))
        else:
            raise FieldError(f"bad field spec {spec!r}")
        return cls(p, k, modulus)

    def _setup(self, p, k, modulus):
        if not is_prime(p) or k < 1:
            raise FieldError(f"GF({p}^{k}) is not a field")
        q = p**k
        if q > MAX_ORDER:
            raise FieldError(f"q = {q} exceeds the supported order {MAX_ORDER}")
        if modulus is None:
            modulus = find_modulus(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        mt = tuple(_trim(modulus))
        if len(mt) != k + 1 or mt[-1] != 1:
            raise FieldError(f"modulus {modulus} is not monic of degree {k}")
        if not is_irreducible(mt, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p, self.k, self.q = p, k, q
        self.modulus = mt

        # digits[x] = coefficient vector of element x
        idx = np.arange(q)
        digits = np.stack([(idx // p**i) % p for i in range(k)], axis=1)
        weights = p ** np.arange(k)
        self._digits = digits
        self.add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg_table = ((-digits) % p) @ weights
        self.sub_table = self.add_table[:, self.neg_table]

        # exp/log tables from a primitive element
        self.generator, exp = self._primitive()
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self.exp_table = np.asarray(exp, dtype=np.int64)
        self.log_table = log
        mul = np.zeros((q, q), dtype=np.int64)
        la = log[1:]
        mul[1:, 1:] = self.exp_table[(la[:, None] + la[None, :]) % (q - 1)]
        self.mul_table = mul
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = self.exp_table[(-la) % (q - 1)]
        self.inv_table = inv
        for t in (self.add_table, self.neg_table, self.sub_table, mul, inv, log, self.exp_table):
            t.setflags(write=False)

    def _encode(self, coeffs) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(coeffs))

    def _decode(self, x: int) -> list[int]:
        return [int(d) for d in self._digits[x]]

    def _primitive(self):
        p, q = self.p, self.q
        if q == 2:
            return 1, [1]
        for g in range(2, q):
            gp = self._decode(g)
            cur, seen = [1], []
            for _ in range(q - 1):
                val = self._encode(cur + [0] * (self.k - len(cur)))
                seen.append(val)
                cur = _poly_mulmod(cur, gp, self.modulus, p)
                if _trim(cur) == [1]:
                    break
            if len(seen) == q - 1:
                return g, seen
        raise FieldError("no primitive element found")  # pragma: no cover

    # -- scalar arithmetic --------------------------------------------------

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.q})"
        return f"GF({self.p}^{self.k})"

    def __reduce__(self):
        return (GF, (self.p, self.k, self.modulus))

    @property
    def spec(self) -> str:
        return str(self.q) if self.k == 1 else f"{self.p}^{self.k}"

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def nonzero(self) -> range:
        return range(1, self.q)

    def add(self, a, b):
        return a ^ b if self.p == 2 else int(self.add_table[a, b])

    def sub(self, a, b):
        return a ^ b if self.p == 2 else int(self.sub_table[a, b])

    def neg(self, a):
        return a if self.p == 2 else int(self.neg_table[a])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return int(self.inv_table[a])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % (self.q - 1)])

    def sum(self, values):
        return functools.reduce(self.add, values, 0)

    def prod(self, values):
        return functools.reduce(self.mul, values, 1)

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def frobenius(self, a, times: int = 1):
        return self.pow(a, self.p**times)

    # -- traces, roots ------------------------------------------------------

    def trace(self, a, m: int = 1):
        """Relative trace Tr_{GF(p^k)/GF(p^m)}(a) = sum of a^(p^(m*i))."""
        if m < 1 or self.k % m:
            raise FieldError(f"GF({self.p}^{m}) is not a subfield of {self!r}")
        s, x = 0, a
        for _ in range(self.k // m):
            s = self.add(s, x)
            x = self.pow(x, self.p**m)
        return s

    def subfield(self, m: int) -> list[int]:
        """Elements of the subfield GF(p^m), in encoding order."""
        if m < 1 or self.k % m:
            raise FieldError(f"GF({self.p}^{m}) is not a subfield of {self!r}")
        pm = self.p**m
        return [x for x in self.elements if self.pow(x, pm) == x]

    def sqrt(self, a):
        """The unique square root in characteristic 2, a^(q/2)."""
        if self.p != 2:
            raise FieldError("sqrt is only defined here for characteristic 2; use is_square")
        return self.pow(a, self.q // 2)

    def artin_schreier_roots(self, c) -> list[int]:
        """All z with z^2 + z = c (characteristic 2)."""
        if self.p != 2:
            raise FieldError("Artin-Schreier solving needs characteristic 2")
        if self.trace(c) != 0:
            return []
        # z -> z^2 + z is GF(2)-linear with kernel {0, 1}; scan for one root
        for z in self.elements:
            if self.add(self.mul(z, z), z) == c:
                return sorted((z, z ^ 1))
        raise AssertionError("trace-zero element without an Artin-Schreier root")

    def is_square(self, a) -> bool:
        if self.p == 2:
            raise FieldError("every element of GF(2^h) is a square")
        return a == 0 or self.pow(a, (self.q - 1) // 2) == 1

    # -- text I/O -----------------------------------------------------------

    def format(self, a) -> str:
        return str(int(a))

    def parse(self, s: str) -> int:
        try:
            v = int(str(s).strip())
        except ValueError:
            raise FieldError(f"cannot parse field element {s!r}") from None
        if not 0 <= v < self.q:
            raise FieldError(f"{v} is not an element of {self!r}")
        return v

    # -- vectorised helpers -------------------------------------------------

    def vadd(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.add_table[a, b]

    def vsub(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.sub_table[a, b]

    def vmul(self, a, b):
        return self.mul_table[a, b]

    def vsum(self, arr, axis=-1):
        """Field sum of an int array along ``axis``."""
        arr = np.asarray(arr)
        if self.p == 2:
            return np.bitwise_xor.reduce(arr, axis=axis)
        if self.k == 1:
            return arr.sum(axis=axis) % self.p
        return (self._digits[arr].sum(axis=axis) % self.p) @ (self.p ** np.arange(self.k))

    def powers(self, max_exp: int) -> np.ndarray:
        """table[x, e] = x**e for 0 <= e <= max_exp (with 0**0 = 1)."""
        out = np.zeros((self.q, max_exp + 1), dtype=np.int64)
        out[:, 0] = 1
        for e in range(1, max_exp + 1):
            out[:, e] = self.mul_table[out[:, e - 1], np.arange(self.q)]
        return out

    def element(self, value) -> "FieldElement":
        return FieldElement(self, self.parse(value) if isinstance(value, str) else int(value))


@dataclass(frozen=True)
class FieldElement:
    """An element of a :class:`GF` with operator overloading, for interactive use.

    The library internals work on raw ints for speed.
    """

    field: GF
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise FieldError(f"{self.value} is not an element of {self.field!r}")

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError("operands live in different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, v):
        return FieldElement(self.field, int(v))

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __repr__(self):
        return f"{self.field!r}({self.value})"

    def inv(self):
        return self._wrap(self.field.inv(self.value))

    def trace(self, m: int = 1):
        return self._wrap(self.field.trace(self.value, m))

    def sqrt(self):
        return self._wrap(self.field.sqrt(self.value))

    def is_square(self) -> bool:
        return self.field.is_square(self.value)

    def artin_schreier_roots(self):
        return [self._wrap(z) for z in self.field.artin_schreier_roots(self.value)]
