"""The Desarguesian plane PG(2,q).

Points and lines are int triples normalised so that the last nonzero
coordinate is 1.  A line [u, v, w] is stored the same way as a point, and
(X, Y, Z) lies on it iff uX + vY + wZ = 0.
"""

from __future__ import annotations

import re

import numpy as np

from .gf import GF

ProjPoint = tuple[int, int, int]
ProjLine = tuple[int, int, int]


class GeometryError(ValueError):
    pass


class PG2:
    """Incidence structure of PG(2,q) over a fixed :class:`GF`."""

    _cache: dict = {}

    def __new__(cls, field: GF):
        if field not in cls._cache:
            obj = super().__new__(cls)
            obj.field = field
            obj.q = field.q
            obj._points = None
            obj._coords = None
            cls._cache[field] = obj
        return cls._cache[field]

    def __repr__(self):
        return f"PG(2,{self.q})"

    def __reduce__(self):
        return (PG2, (self.field,))

    @property
    def size(self) -> int:
        return self.q * self.q + self.q + 1

    def normalize(self, v) -> ProjPoint:
        F = self.field
        x, y, z = (int(c) for c in v)
        for lead in (z, y, x):
            if lead:
                s = F.inv(lead)
                return (F.mul(x, s), F.mul(y, s), F.mul(z, s))
        raise GeometryError("the zero vector is not a projective point")

    def cross(self, a, b) -> ProjPoint:
        F = self.field
        x1, y1, z1 = a
        x2, y2, z2 = b
        return (
            F.sub(F.mul(y1, z2), F.mul(z1, y2)),
            F.sub(F.mul(z1, x2), F.mul(x1, z2)),
            F.sub(F.mul(x1, y2), F.mul(y1, x2)),
        )

    def dot(self, a, b) -> int:
        F = self.field
        return F.add(F.add(F.mul(a[0], b[0]), F.mul(a[1], b[1])), F.mul(a[2], b[2]))

    def incident(self, point, line) -> bool:
        return self.dot(point, line) == 0

    def line_through(self, P, Q) -> ProjLine:
        c = self.cross(P, Q)
        if c == (0, 0, 0):
            raise GeometryError(f"{P} and {Q} are the same point")
        return self.normalize(c)

    def meet(self, l, m) -> ProjPoint:
        c = self.cross(l, m)
        if c == (0, 0, 0):
            raise GeometryError(f"{l} and {m} are the same line")
        return self.normalize(c)

    def points(self) -> list[ProjPoint]:
        """All points: (x, y, 1) for x, then y; then (x, 1, 0); then (1, 0, 0)."""
        if self._points is None:
            q = self.q
            pts = [(x, y, 1) for x in range(q) for y in range(q)]
            pts += [(x, 1, 0) for x in range(q)]
            pts.append((1, 0, 0))
            self._points = pts
        return list(self._points)

    lines = points  # duality: the same normalised triples

    def index(self, P) -> int:
        """Position of a normalised point in :meth:`points`."""
        x, y, z = P
        if z:
            return x * self.q + y
        if y:
            return self.q * self.q + x
        return self.q * self.q + self.q

    def coords(self) -> np.ndarray:
        """All points as an (N, 3) int array, in enumeration order."""
        if self._coords is None:
            self._coords = np.array(self.points(), dtype=np.int64)
            self._coords.setflags(write=False)
        return self._coords

    def line_points(self, line) -> list[ProjPoint]:
        line = self.normalize(line)
        pts = self.coords()
        mask = self.incidence(np.array([line]), pts)[0]
        return [tuple(int(c) for c in p) for p in pts[mask]]

    def lines_through(self, P) -> list[ProjLine]:
        return self.line_points(P)  # dual statement

    def incidence(self, lines: np.ndarray, points: np.ndarray) -> np.ndarray:
        """Boolean matrix [i, j] = points[j] lies on lines[i]."""
        F = self.field
        lines = np.asarray(lines, dtype=np.int64)
        points = np.asarray(points, dtype=np.int64)
        acc = F.vmul(lines[:, None, 0], points[None, :, 0])
        acc = F.vadd(acc, F.vmul(lines[:, None, 1], points[None, :, 1]))
        acc = F.vadd(acc, F.vmul(lines[:, None, 2], points[None, :, 2]))
        return acc == 0

    def line_counts(self, points, lines=None, chunk: int = 2048) -> np.ndarray:
        """Number of the given points on each line (all lines by default)."""
        points = np.asarray(points, dtype=np.int64).reshape(-1, 3)
        lines = self.coords() if lines is None else np.asarray(lines, dtype=np.int64)
        out = np.zeros(len(lines), dtype=np.int64)
        for start in range(0, len(lines), chunk):
            block = lines[start:start + chunk]
            out[start:start + chunk] = self.incidence(block, points).sum(axis=1)
        return out

    # -- text format ----------------------------------------------------------

    def format_point(self, P) -> str:
        return ":".join(self.field.format(c) for c in P)

    def parse_point(self, s: str) -> ProjPoint:
        parts = re.split(r"\s*:\s*", s.strip())
        if len(parts) != 3:
            raise GeometryError(f"expected x:y:z, got {s!r}")
        return self.normalize(self.field.parse(c) for c in parts)

    def collineation(self, matrix, P) -> ProjPoint:
        """Image of P under the column-vector action P -> M P."""
        F = self.field
        return self.normalize(
            F.sum(F.mul(matrix[i][j], P[j]) for j in range(3)) for i in range(3)
        )
