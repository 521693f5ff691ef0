"""The projective plane PG(2,q): point/line enumeration and incidence.

Points are homogeneous triples (x, y, z) over GF(q), canonicalized so the
last nonzero coordinate is 1, and indexed in a fixed order:

    (x, y, 1)  ->  y*q + x          for x, y in [0, q)
    (x, 1, 0)  ->  q*q + x          for x in [0, q)
    (1, 0, 0)  ->  q*q + q

Lines are dual triples [a, b, c] indexed by the same scheme; point (x,y,z)
lies on line [a,b,c] iff ax + by + cz = 0.  Index <-> coordinates is closed
form in both directions, so no global incidence tables are stored.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .gf import Field


class Plane:
    """Immutable model of PG(2,q) over a fixed field."""

    def __init__(self, field: Field, max_points: int = 1 << 26):
        self.field = field
        self.q = field.q
        self.n_points = self.q * self.q + self.q + 1
        self.n_lines = self.n_points
        if self.n_points > max_points:
            raise ValueError(
                f"PG(2,{self.q}) has {self.n_points} points, over the "
                f"memory budget of {max_points}")

    # -- scalar coordinate helpers --------------------------------------------

    def canonicalize(self, x: int, y: int, z: int) -> tuple[int, int, int]:
        """Scale (x,y,z) so its last nonzero coordinate is 1."""
        F = self.field
        if z != 0:
            s = F.inv(z)
        elif y != 0:
            s = F.inv(y)
        elif x != 0:
            s = F.inv(x)
        else:
            raise ValueError("zero triple has no canonical form")
        return F.mul(x, s), F.mul(y, s), F.mul(z, s)

    def index_of(self, x: int, y: int, z: int) -> int:
        """Index of the point (or line) with the given homogeneous triple."""
        x, y, z = self.canonicalize(x, y, z)
        q = self.q
        if z == 1:
            return y * q + x
        if y == 1:
            return q * q + x
        return q * q + q

    def coords_of(self, idx: int) -> tuple[int, int, int]:
        q = self.q
        if idx < 0 or idx > q * q + q:
            raise IndexError(f"index {idx} out of range for PG(2,{q})")
        if idx < q * q:
            return idx % q, idx // q, 1
        if idx < q * q + q:
            return idx - q * q, 1, 0
        return 1, 0, 0

    def incident(self, point_idx: int, line_idx: int) -> bool:
        F = self.field
        x, y, z = self.coords_of(point_idx)
        a, b, c = self.coords_of(line_idx)
        s = F.add(F.add(F.mul(a, x), F.mul(b, y)), F.mul(c, z))
        return s == 0

    def _cross(self, u: tuple[int, int, int], v: tuple[int, int, int]):
        F = self.field
        x1, y1, z1 = u
        x2, y2, z2 = v
        return (F.sub(F.mul(y1, z2), F.mul(z1, y2)),
                F.sub(F.mul(z1, x2), F.mul(x1, z2)),
                F.sub(F.mul(x1, y2), F.mul(y1, x2)))

    def line_through(self, a: int, b: int) -> int:
        """Index of the unique line through two distinct points."""
        cx, cy, cz = self._cross(self.coords_of(a), self.coords_of(b))
        if cx == 0 and cy == 0 and cz == 0:
            raise ValueError(f"identical points {a}, {b} span no line")
        return self.index_of(cx, cy, cz)

    def meet(self, l1: int, l2: int) -> int:
        """Index of the unique point on two distinct lines (dual of line_through)."""
        cx, cy, cz = self._cross(self.coords_of(l1), self.coords_of(l2))
        if cx == 0 and cy == 0 and cz == 0:
            raise ValueError(f"identical lines {l1}, {l2} meet everywhere")
        return self.index_of(cx, cy, cz)

    # -- incidence pencils -----------------------------------------------------

    def points_on_line(self, line_idx: int) -> np.ndarray:
        """Strictly increasing indices of the q+1 points on the line."""
        out = self.pencil(np.asarray([line_idx], dtype=np.int64))[0]
        out.sort()
        return out

    def lines_through_point(self, point_idx: int) -> np.ndarray:
        """Strictly increasing indices of the q+1 lines through the point."""
        return self.points_on_line(point_idx)  # incidence is self-dual here

    def pencil(self, idx: np.ndarray) -> np.ndarray:
        """For each index (row), the q+1 indices incident with it.

        By the self-duality of the indexing scheme this yields the points on
        each given line, or equally the lines through each given point.
        Row order is internal (not sorted).
        """
        idx = np.asarray(idx, dtype=np.int64)
        q = self.q
        F = self.field
        m = idx.shape[0]
        a, b, c = self.vcoords(idx)
        out = np.empty((m, q + 1), dtype=np.int64)
        t = np.arange(q, dtype=np.int64)
        qq = q * q

        affine = np.flatnonzero(c == 1)
        if affine.size:
            bnz = affine[b[affine] != 0]
            if bnz.size:
                an, bn = a[bnz], b[bnz]
                # ax + by + 1 = 0  ->  y = -(1 + ax) / b
                nib = F.vneg(F.vinv(bn))[:, None]
                y = F.vmul(nib, F.vadd(np.int64(1), F.vmul(an[:, None], t[None, :])))
                out[bnz, :q] = y * q + t[None, :]
                inf = np.where(an != 0,
                               qq + F.vmul(bn, F.vinv(F.vneg(an))),
                               qq + q)
                out[bnz, q] = inf
            bz = affine[b[affine] == 0]
            if bz.size:
                anz = bz[a[bz] != 0]
                if anz.size:
                    # ax + 1 = 0 -> x fixed, y free
                    x0 = F.vneg(F.vinv(a[anz]))[:, None]
                    out[anz, :q] = t[None, :] * q + x0
                    out[anz, q] = qq  # (0, 1, 0)
                azr = bz[a[bz] == 0]
                if azr.size:
                    # [0,0,1]: z = 0, all the infinite triples
                    out[azr, :q] = qq + t[None, :]
                    out[azr, q] = qq + q

        mid = np.flatnonzero((c == 0) & (b == 1))
        if mid.size:
            am = a[mid]
            # ax + y = 0 -> y = -ax, plus the direction (1, -a, 0)
            y = F.vneg(F.vmul(am[:, None], t[None, :]))
            out[mid, :q] = y * q + t[None, :]
            out[mid, q] = np.where(am != 0, qq + F.vinv(F.vneg(am)), qq + q)

        last = np.flatnonzero((c == 0) & (b == 0))
        if last.size:
            # [1,0,0]: x = 0
            out[last, :q] = (t * q)[None, :]
            out[last, q] = qq
        return out

    # -- vectorized coordinate kernels ------------------------------------------

    def vcoords(self, idx: np.ndarray):
        q = self.q
        qq = q * q
        aff = idx < qq
        inf1 = (idx >= qq) & (idx < qq + q)
        x = np.where(aff, idx % q, np.where(inf1, idx - qq, 1))
        y = np.where(aff, idx // q, np.where(inf1, 1, 0))
        z = np.where(aff, 1, 0).astype(np.int64)
        return x, y, z

    def vcanon(self, x, y, z):
        F = self.field
        s = np.where(z != 0, F.vinv(z), np.where(y != 0, F.vinv(y), F.vinv(x)))
        return F.vmul(x, s), F.vmul(y, s), F.vmul(z, s)

    def vindex(self, x, y, z) -> np.ndarray:
        """Indices from canonical triples."""
        q = self.q
        return np.where(z == 1, y * q + x,
                        np.where(y == 1, q * q + x, q * q + q))

    def vline_through(self, pts: np.ndarray, anchor: int) -> np.ndarray:
        """Line indices through each point of `pts` and the fixed point `anchor`.

        Any entry equal to `anchor` yields an undefined value; callers ensure
        distinctness.
        """
        F = self.field
        x1, y1, z1 = self.vcoords(np.asarray(pts, dtype=np.int64))
        x2, y2, z2 = self.coords_of(anchor)
        cx = F.vsub(F.vmul(y1, np.int64(z2)), F.vmul(z1, np.int64(y2)))
        cy = F.vsub(F.vmul(z1, np.int64(x2)), F.vmul(x1, np.int64(z2)))
        cz = F.vsub(F.vmul(x1, np.int64(y2)), F.vmul(y1, np.int64(x2)))
        return self.vindex(*self.vcanon(cx, cy, cz))

    # -- misc -------------------------------------------------------------------

    def all_points(self) -> range:
        return range(self.n_points)

    def describe(self) -> str:
        return f"q={self.q} " + self.field.describe()

    def __repr__(self):
        return f"Plane(q={self.q}, n_points={self.n_points})"


def build_plane(field: Field, max_points: int = 1 << 26) -> Plane:
    """Construct the PG(2,q) model for the given field."""
    return Plane(field, max_points=max_points)
