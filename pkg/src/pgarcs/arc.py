"""Arc construction state, certificate verification, and certificate files.

An arc is a point set with no 3 points collinear.  A line through exactly
two arc points is a secant; a point lying on some secant can never extend
the arc.  The arc is complete when every point outside it lies on a secant.

ArcState maintains this incrementally: adding a point turns its joining
lines into secants, whose points become covered.  `uncovered` counts the
points that are neither in the arc nor covered, so completeness is the
single test `uncovered == 0`.  verify_certificate recomputes everything
from scratch and is the authority the incremental bookkeeping is tested
against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .gf import Field, build_field, factor_prime_power
from .plane import Plane

_PENCIL_CHUNK = 4096  # rows per pencil call when marking many lines


class ArcState:
    """Mutable arc under incremental construction over a fixed plane.

    With track_gains=True an extra per-line counter `unc_line` is kept
    (uncovered points on each line), which makes bulk gain evaluation a
    table lookup.  Costs one pencil sweep per covered point overall.
    """

    def __init__(self, plane: Plane, track_gains: bool = False):
        self.plane = plane
        self.n_points = plane.n_points
        self.points: list[int] = []
        self.in_arc = np.zeros(self.n_points, dtype=bool)
        self.on_secant = np.zeros(self.n_points, dtype=bool)
        self.line_count: dict[int, int] = {}
        self.uncovered = self.n_points
        self.track_gains = track_gains
        self.unc_line: Optional[np.ndarray] = None
        if track_gains:
            self.unc_line = np.full(plane.n_lines, plane.q + 1, dtype=np.int32)

    # -- queries ----------------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def is_complete(self) -> bool:
        return self.uncovered == 0

    def admissible(self, p: int) -> bool:
        """True iff try_add(p) would accept."""
        return not (self.in_arc[p] or self.on_secant[p])

    def uncovered_points(self) -> np.ndarray:
        """Indices still neither in the arc nor on any secant (= admissible)."""
        return np.flatnonzero(~self.in_arc & ~self.on_secant)

    def secant_lines(self) -> list[int]:
        return sorted(l for l, k in self.line_count.items() if k >= 2)

    # -- mutation ----------------------------------------------------------------

    def try_add(self, p: int) -> bool:
        """Add point p if the arc property survives; report rejection as False.

        Raises ValueError if p is already in the arc (a distinct condition
        from a collinearity rejection, which leaves the state untouched).
        """
        if self.in_arc[p]:
            raise ValueError(f"point {p} already in arc")
        n = len(self.points)
        plane = self.plane
        joins = None
        if n:
            # recompute the joining lines; reject if any already carries 2
            # arc points or two of them coincide (p collinear with a pair)
            pts = np.asarray(self.points, dtype=np.int64)
            joins = plane.vline_through(pts, p)
            jlist = joins.tolist()
            if len(set(jlist)) < n:
                return False
            if any(self.line_count.get(l, 0) >= 2 for l in jlist):
                return False

        self.in_arc[p] = True
        self.points.append(p)
        self.uncovered -= 1  # p was admissible, hence uncovered
        lc = self.line_count
        for l in plane.pencil(np.asarray([p], dtype=np.int64))[0].tolist():
            lc[l] = lc.get(l, 0) + 1

        if joins is None:
            removed = np.asarray([p], dtype=np.int64)
        else:
            # the joining lines are exactly the lines that reached count 2
            flat = np.unique(plane.pencil(joins).ravel())
            newly = flat[~self.on_secant[flat]]
            self.on_secant[flat] = True
            ext = newly[~self.in_arc[newly]]
            self.uncovered -= int(ext.size)
            removed = np.concatenate((np.asarray([p], dtype=np.int64), ext))

        if self.track_gains:
            # every point that left the uncovered set lowers the tally of
            # each of the q+1 lines through it
            for lo in range(0, removed.size, _PENCIL_CHUNK):
                chunk = removed[lo:lo + _PENCIL_CHUNK]
                hit = np.bincount(self.plane.pencil(chunk).ravel(),
                                  minlength=self.plane.n_lines)
                self.unc_line -= hit.astype(np.int32)
        return True

    # -- gain evaluation -----------------------------------------------------------

    def coverage_gain(self, p: int) -> int:
        """Drop in `uncovered` that try_add(p) would cause, without mutating.

        By convention the gain against an empty arc is 0: a single point
        creates no secant, so it covers nothing.
        """
        if self.in_arc[p]:
            raise ValueError(f"point {p} already in arc")
        if self.on_secant[p]:
            raise ValueError(f"point {p} is on a secant, inadmissible")
        n = len(self.points)
        if n == 0:
            return 0
        pts = np.asarray(self.points, dtype=np.int64)
        joins = self.plane.vline_through(pts, p)
        sec = self.plane.pencil(joins).ravel()
        fresh = ~self.on_secant[sec] & ~self.in_arc[sec]
        # p itself sits on all n new secants but counts once
        return int(fresh.sum()) - (n - 1)

    def gain_bulk(self, cands: np.ndarray) -> np.ndarray:
        """coverage_gain for many admissible candidates at once.

        Requires track_gains and a nonempty arc.  Candidates must be
        admissible; values for inadmissible entries are meaningless.
        """
        if self.unc_line is None:
            raise ValueError("gain_bulk needs track_gains=True")
        n = len(self.points)
        if n == 0:
            raise ValueError("gain_bulk needs a nonempty arc")
        cands = np.asarray(cands, dtype=np.int64)
        acc = np.zeros(cands.shape[0], dtype=np.int64)
        for a in self.points:
            acc += self.unc_line[self.plane.vline_through(cands, a)]
        return acc - (n - 1)

    # -- lifecycle -------------------------------------------------------------------

    def clone(self) -> "ArcState":
        other = ArcState.__new__(ArcState)
        other.plane = self.plane
        other.n_points = self.n_points
        other.points = list(self.points)
        other.in_arc = self.in_arc.copy()
        other.on_secant = self.on_secant.copy()
        other.line_count = dict(self.line_count)
        other.uncovered = self.uncovered
        other.track_gains = self.track_gains
        other.unc_line = None if self.unc_line is None else self.unc_line.copy()
        return other

    @staticmethod
    def from_points(plane: Plane, points: Iterable[int],
                    track_gains: bool = False) -> "ArcState":
        """Rebuild a state from scratch; raises if the points are not an arc."""
        state = ArcState(plane, track_gains=track_gains)
        for p in points:
            if not state.try_add(int(p)):
                raise ValueError(f"point {p} is collinear with two arc points")
        return state


# -- from-scratch verification --------------------------------------------------


@dataclass
class VerifyReport:
    is_arc: bool
    is_complete: bool
    size: int
    first_violation: Optional[str] = None
    uncovered: Optional[int] = None


def verify_certificate(plane: Plane, points: Sequence[int]) -> VerifyReport:
    """Check the arc property and completeness from scratch.

    Counts arc points per line (any line reaching 3 voids the arc), then
    marks every point of every 2-point line and scans for external points
    left unmarked.  Independent of ArcState bookkeeping by design.
    """
    pts = [int(p) for p in points]
    size = len(pts)
    for p in pts:
        if p < 0 or p >= plane.n_points:
            raise ValueError(f"point index {p} out of range for q={plane.q}")

    seen: set[int] = set()
    for p in pts:
        if p in seen:
            return VerifyReport(False, False, size, f"duplicate point {p}")
        seen.add(p)

    arr = np.asarray(pts, dtype=np.int64)
    if size:
        lcount = np.zeros(plane.n_lines, dtype=np.int64)
        for lo in range(0, size, _PENCIL_CHUNK):
            pens = plane.pencil(arr[lo:lo + _PENCIL_CHUNK])
            lcount += np.bincount(pens.ravel(), minlength=plane.n_lines)
        bad = np.flatnonzero(lcount >= 3)
        if bad.size:
            l = int(bad[0])
            return VerifyReport(False, False, size,
                                f"line {l} carries {int(lcount[l])} arc points")
        secants = np.flatnonzero(lcount == 2)
    else:
        secants = np.empty(0, dtype=np.int64)

    covered = np.zeros(plane.n_points, dtype=bool)
    for lo in range(0, secants.size, _PENCIL_CHUNK):
        covered[plane.pencil(secants[lo:lo + _PENCIL_CHUNK]).ravel()] = True
    covered[arr] = True
    uncovered = int(plane.n_points - int(covered.sum()))
    return VerifyReport(True, uncovered == 0, size, None, uncovered)


# -- reference constructions ------------------------------------------------------


def max_arc_size(q: int) -> int:
    """Largest possible arc size in PG(2,q): q+1 for odd q, q+2 for even q."""
    return q + 2 if q % 2 == 0 else q + 1


def conic_arc(plane: Plane) -> list[int]:
    """The (q+1)-arc {(t^2, t, 1) : t in GF(q)} plus (1, 0, 0).

    Complete for odd q; for even q all its tangents meet in one point
    (see conic_nucleus), which extends it.
    """
    F = plane.field
    pts = [plane.index_of(F.mul(t, t), t, 1) for t in F.elements()]
    pts.append(plane.index_of(1, 0, 0))
    return pts


def conic_nucleus(plane: Plane) -> int:
    """The common point of the conic's tangents when q is even: (0, 1, 0)."""
    return plane.index_of(0, 1, 0)


# -- certificate files -------------------------------------------------------------


class CertificateError(ValueError):
    """Certificate text that cannot be parsed; carries line and column."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


def format_certificate(plane: Plane, points: Sequence[int]) -> str:
    """Canonical text form: header, size, then one `x y z` row per point."""
    F = plane.field
    head = f"q={F.q} p={F.p} h={F.h}"
    if F.h > 1:
        head += " poly=" + ",".join(str(c) for c in F.poly)
    rows = [head, f"n={len(points)}"]
    for p in points:
        x, y, z = plane.coords_of(int(p))
        rows.append(f"{x} {y} {z}")
    return "\n".join(rows) + "\n"


def _tokens(line: str):
    """(column, token) pairs, 1-based columns."""
    out = []
    col = None
    for i, ch in enumerate(line):
        if ch.isspace():
            col = None
        elif col is None:
            col = i + 1
            out.append((col, ch))
        else:
            c, t = out[-1]
            out[-1] = (c, t + ch)
    return out


def parse_certificate(text: str) -> tuple[Field, list[tuple[int, int, int]]]:
    """Parse certificate text into its field and raw coordinate triples.

    Tolerates arbitrary whitespace and non-canonical (scalar multiple)
    triples; the caller maps triples to indices via Plane.index_of.
    """
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise CertificateError(1, 1, "missing header line")

    fields = {}
    for col, tok in _tokens(lines[0]):
        if "=" not in tok:
            raise CertificateError(1, col, f"expected key=value, got {tok!r}")
        key, _, val = tok.partition("=")
        if key in fields:
            raise CertificateError(1, col, f"repeated key {key!r}")
        fields[key] = (col, val)
    for key in ("q", "p", "h"):
        if key not in fields:
            raise CertificateError(1, 1, f"header missing {key}=")
    ints = {}
    for key in ("q", "p", "h"):
        col, val = fields[key]
        try:
            ints[key] = int(val)
        except ValueError:
            raise CertificateError(1, col, f"{key}= wants an integer, got {val!r}")
    q, p, h = ints["q"], ints["p"], ints["h"]
    if q != p ** h:
        raise CertificateError(1, 1, f"inconsistent header: {p}^{h} != {q}")

    poly = None
    if "poly" in fields:
        col, val = fields["poly"]
        try:
            poly = tuple(int(c) for c in val.split(","))
        except ValueError:
            raise CertificateError(1, col, f"poly= wants comma-separated integers")
    elif h > 1:
        raise CertificateError(1, 1, "poly= required when h > 1")
    known = {"q", "p", "h", "poly"}
    for key, (col, _) in fields.items():
        if key not in known:
            raise CertificateError(1, col, f"unknown header key {key!r}")

    try:
        field = build_field(p, h, poly=poly)
    except ValueError as e:
        raise CertificateError(1, 1, str(e))

    if len(lines) < 2 or not lines[1].strip():
        raise CertificateError(2, 1, "missing size line n=<count>")
    toks = _tokens(lines[1])
    if len(toks) != 1 or not toks[0][1].startswith("n="):
        raise CertificateError(2, toks[0][0] if toks else 1,
                               "expected a single n=<count> token")
    try:
        n = int(toks[0][1][2:])
    except ValueError:
        raise CertificateError(2, toks[0][0], "n= wants an integer")
    if n < 0:
        raise CertificateError(2, toks[0][0], "n= wants a nonnegative integer")

    triples = []
    lineno = 2
    for raw in lines[2:]:
        lineno += 1
        toks = _tokens(raw)
        if not toks:
            continue  # blank line
        if len(triples) == n:
            raise CertificateError(lineno, toks[0][0],
                                   f"more than n={n} point lines")
        if len(toks) != 3:
            col = toks[3][0] if len(toks) > 3 else (toks[-1][0] + len(toks[-1][1]))
            raise CertificateError(lineno, col,
                                   f"point line wants 3 coordinates, got {len(toks)}")
        vals = []
        for col, tok in toks:
            try:
                v = int(tok)
            except ValueError:
                raise CertificateError(lineno, col, f"bad coordinate {tok!r}")
            if not 0 <= v < q:
                raise CertificateError(lineno, col,
                                       f"coordinate {v} out of range [0, {q})")
            vals.append(v)
        if vals == [0, 0, 0]:
            raise CertificateError(lineno, toks[0][0], "zero triple is not a point")
        triples.append((vals[0], vals[1], vals[2]))
    if len(triples) != n:
        raise CertificateError(lineno + 1, 1,
                               f"expected n={n} point lines, found {len(triples)}")
    return field, triples


def certificate_points(plane: Plane, triples: Sequence[tuple[int, int, int]]) -> list[int]:
    """Map parsed triples to point indices (canonicalizing scalar multiples)."""
    return [plane.index_of(x, y, z) for x, y, z in triples]
