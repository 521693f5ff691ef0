"""Search for small complete arcs: randomized greedy, exact-size targeting,
and an exhaustive oracle for tiny planes.

All randomness flows from a single 64-bit master seed through a counter
derivation (seed_i = hash64(master_seed, i)), and results reduce by
(size, restart index), so outcomes are reproducible for any worker count
whenever the time budget does not bind.
"""

from __future__ import annotations

import hashlib
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .arc import ArcState, conic_arc, max_arc_size, verify_certificate
from .plane import Plane

FULL_EVAL_MAX_Q = 512      # below this, every admissible candidate is scored
AUTO_SAMPLE = 4096         # sample size above it


class BudgetExhausted(RuntimeError):
    """Time budget ran out before any restart finished."""


def hash64(*parts: int) -> int:
    """Counter-based 64-bit stream derivation from integer parts."""
    h = hashlib.blake2b(digest_size=8)
    for v in parts:
        h.update(int(v).to_bytes(8, "little", signed=False))
    return int.from_bytes(h.digest(), "little")


@dataclass
class SearchConfig:
    master_seed: int = 0
    restarts: int = 32
    time_budget: float = 0.0          # seconds; 0 = unlimited
    candidate_sample: Optional[int] = None  # None = auto, 0 = all, else cap
    tie_top_k: int = 5
    start_size: int = 2

    def validate(self) -> None:
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.time_budget < 0:
            raise ValueError("time_budget must be >= 0")
        if self.candidate_sample is not None and self.candidate_sample < 0:
            raise ValueError("candidate_sample must be >= 0")
        if self.tie_top_k < 1:
            raise ValueError("tie_top_k must be >= 1")
        if self.start_size < 1:
            raise ValueError("start_size must be >= 1")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ValueError("master_seed must fit in 64 bits")

    def sample_cap(self, q: int) -> int:
        """Effective per-step candidate cap (0 = score everything)."""
        if self.candidate_sample is None:
            return 0 if q <= FULL_EVAL_MAX_Q else AUTO_SAMPLE
        return self.candidate_sample


@dataclass
class SearchOutcome:
    best_size: int
    best_arc: list[int]
    restarts_used: int
    elapsed: float
    size_log: list[int] = field(default_factory=list)


def _pick_candidates(state: ArcState, cap: int, rng: np.random.Generator) -> np.ndarray:
    pool = state.uncovered_points()
    if cap and pool.size > cap:
        return rng.choice(pool, size=cap, replace=False)
    return pool


def _greedy_restart(plane: Plane, cfg: SearchConfig, seed: int,
                    deadline: Optional[float]) -> Optional[list[int]]:
    """One restart; None if the deadline cut it off mid-run."""
    rng = np.random.default_rng(seed)
    state = ArcState(plane, track_gains=True)
    cap = cfg.sample_cap(plane.q)

    for _ in range(cfg.start_size):
        pool = state.uncovered_points()
        if pool.size == 0:
            break
        state.try_add(int(pool[rng.integers(pool.size)]))

    while not state.is_complete:
        if deadline is not None and time.monotonic() > deadline:
            return None
        cands = _pick_candidates(state, cap, rng)
        gains = state.gain_bulk(cands)
        # near-best pool in a deterministic order: gain desc, index asc
        order = np.lexsort((cands, -gains))
        top = order[:cfg.tie_top_k]
        pick = int(cands[top[rng.integers(top.size)]])
        state.try_add(pick)
    return state.points


def _certify(plane: Plane, points: list[int]) -> None:
    report = verify_certificate(plane, points)
    if not (report.is_arc and report.is_complete):
        raise RuntimeError(f"search produced an uncertified arc: {report}")


def greedy_min(plane: Plane, config: SearchConfig, workers: int = 1) -> SearchOutcome:
    """Smallest complete arc found over `restarts` randomized greedy runs.

    Each restart drops start_size random admissible points, then repeatedly
    scores admissible candidates by how many uncovered points they would
    cover, picking uniformly among the tie_top_k best.  The returned arc is
    re-verified from scratch.
    """
    config.validate()
    if workers < 1:
        raise ValueError("workers must be >= 1")
    t0 = time.monotonic()
    deadline = t0 + config.time_budget if config.time_budget > 0 else None
    seeds = [hash64(config.master_seed, i) for i in range(config.restarts)]

    results: list[Optional[list[int]]] = [None] * config.restarts

    def run(i: int) -> None:
        if deadline is not None and time.monotonic() > deadline:
            return
        results[i] = _greedy_restart(plane, config, seeds[i], deadline)

    if workers == 1:
        for i in range(config.restarts):
            run(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(config.restarts)))

    completed = [(len(pts), i) for i, pts in enumerate(results) if pts is not None]
    if not completed:
        raise BudgetExhausted(
            f"no restart finished within {config.time_budget:.3f}s")
    best_size, best_i = min(completed)
    best_arc = results[best_i]
    _certify(plane, best_arc)
    return SearchOutcome(
        best_size=best_size,
        best_arc=list(best_arc),
        restarts_used=len(completed),
        elapsed=time.monotonic() - t0,
        size_log=[s for s, _ in sorted(completed, key=lambda t: t[1])],
    )


MAX_GAIN, PACED, CONIC_SEEDED, RANDOM = range(4)  # spectrum attempt flavors


def _spectrum_attempt(plane: Plane, k: int, cfg: SearchConfig, seed: int,
                      flavor: int, deadline: Optional[float]) -> Optional[list[int]]:
    """One attempt at a complete arc of size exactly k; None on failure.

    MAX_GAIN plays plain greedy and insists on finishing at k (reaches
    small k).  PACED steers each step's gain toward uncovered/remaining so
    coverage lands at k (mid-band).  CONIC_SEEDED starts from a random
    conic subset of size k-2 or k-3 and covers the leftovers with external
    points (near-maximal k, where random growth completes too early).
    RANDOM grows uniformly at random, catching rare sizes the scored
    flavors walk past.  Every flavor demands the same exact finisher.
    """
    rng = np.random.default_rng(seed)
    state = ArcState(plane, track_gains=True)
    cap = cfg.sample_cap(plane.q)

    if flavor == CONIC_SEEDED:
        spare = 2 + int(rng.integers(2))
        if k - spare < 2:
            flavor = MAX_GAIN
    if flavor == CONIC_SEEDED:
        conic = np.asarray(conic_arc(plane), dtype=np.int64)
        for p in rng.choice(conic, size=k - spare, replace=False).tolist():
            state.try_add(p)
    else:
        for _ in range(min(cfg.start_size, k)):
            pool = state.uncovered_points()
            if pool.size == 0:
                break
            state.try_add(int(pool[rng.integers(pool.size)]))

    while not state.is_complete and state.size < k:
        if deadline is not None and time.monotonic() > deadline:
            return None
        cands = _pick_candidates(state, cap, rng)
        remaining = k - state.size
        if remaining == 1:
            # the finisher must cover every uncovered point at once
            gains = state.gain_bulk(cands)
            hit = np.flatnonzero(gains == state.uncovered)
            if hit.size == 0:
                return None
            picks = np.sort(cands[hit])
            pick = int(picks[rng.integers(picks.size)])
        elif flavor == RANDOM:
            pick = int(cands[rng.integers(cands.size)])
        else:
            gains = state.gain_bulk(cands)
            if flavor == PACED:
                score = np.abs(gains * np.int64(remaining)
                               - np.int64(state.uncovered))
            else:
                score = -gains
            order = np.lexsort((cands, score))
            top = order[:cfg.tie_top_k]
            pick = int(cands[top[rng.integers(top.size)]])
        state.try_add(pick)

    if state.is_complete and state.size == k:
        return state.points
    return None


def spectrum_search(plane: Plane, k: int, config: SearchConfig,
                    workers: int = 1) -> Optional[SearchOutcome]:
    """Certified complete arc of size exactly k, or None if attempts fail.

    Attempts rotate through four flavors (max-gain, paced, conic-seeded,
    random; see _spectrum_attempt) to cover the low, middle and high ends
    of the attainable size band; every flavor demands an exact-cover
    finisher at the last step.  Each attempt uses stream
    hash64(master_seed, attempt, k), and the first success in attempt
    order wins, so outcomes are reproducible.
    """
    config.validate()
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if not 3 <= k <= max_arc_size(plane.q):
        raise ValueError(
            f"k={k} out of range [3, {max_arc_size(plane.q)}] for q={plane.q}")
    t0 = time.monotonic()
    deadline = t0 + config.time_budget if config.time_budget > 0 else None

    size_log: list[int] = []
    attempts_done = 0
    found: Optional[list[int]] = None
    for wave in range(0, config.restarts, workers):
        idxs = list(range(wave, min(wave + workers, config.restarts)))
        if deadline is not None and time.monotonic() > deadline:
            break
        if workers == 1:
            wave_results = [_spectrum_attempt(plane, k, config,
                                              hash64(config.master_seed, i, k),
                                              i % 4, deadline)
                            for i in idxs]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                wave_results = list(pool.map(
                    lambda i: _spectrum_attempt(plane, k, config,
                                                hash64(config.master_seed, i, k),
                                                i % 4, deadline), idxs))
        attempts_done += len(idxs)
        size_log.extend(0 if pts is None else len(pts) for pts in wave_results)
        for pts in wave_results:
            if pts is not None:
                found = pts
                break
        if found is not None:
            break

    if found is None:
        return None
    _certify(plane, found)
    return SearchOutcome(
        best_size=k,
        best_arc=list(found),
        restarts_used=attempts_done,
        elapsed=time.monotonic() - t0,
        size_log=size_log,
    )


# -- exhaustive oracle ------------------------------------------------------------


def _cover_ceiling(n: int, j: int, q: int) -> int:
    """Most points j further adds to an n-arc can newly cover.

    Point n+i+1 creates n+i secants, each covering at most q-1 points that
    are new, plus the point itself.
    """
    return sum((n + i) * (q - 1) + 1 for i in range(j))


def _dfs_exact(state: ArcState, lo: int, remaining: int, q: int) -> Optional[list[int]]:
    if remaining == 0:
        return list(state.points) if state.is_complete else None
    if state.uncovered > _cover_ceiling(state.size, remaining, q):
        return None
    cands = state.uncovered_points()
    cands = cands[cands >= lo]
    if cands.size < remaining:
        return None
    for c in cands.tolist():
        child = state.clone()
        child.try_add(c)
        hit = _dfs_exact(child, c + 1, remaining - 1, q)
        if hit is not None:
            return hit
    return None


def oracle_min(plane: Plane, max_q_guard: int = 13) -> tuple[int, list[int]]:
    """Exact minimum complete-arc size with a witness, by exhaustive search.

    Sizes >= 4 fix the first four points to the standard frame
    (1,0,0),(0,1,0),(0,0,1),(1,1,1): the collineation group is transitive
    on 4-point frames, and any arc of size >= 4 contains one.  Size 3 needs
    only one triangle for the same reason (transitivity on triangles).
    Further points are explored in increasing index order.
    """
    q = plane.q
    if q > max_q_guard:
        raise ValueError(f"q={q} beyond the oracle guard {max_q_guard}")

    triangle = [plane.index_of(1, 0, 0), plane.index_of(0, 1, 0),
                plane.index_of(0, 0, 1)]
    rep = verify_certificate(plane, triangle)
    assert rep.is_arc
    if rep.is_complete:
        return 3, triangle

    frame = triangle + [plane.index_of(1, 1, 1)]
    base = ArcState.from_points(plane, frame)
    for s in range(4, max_arc_size(q) + 1):
        hit = _dfs_exact(base.clone(), 0, s - 4, q)
        if hit is not None:
            final = verify_certificate(plane, hit)
            if not (final.is_arc and final.is_complete):
                raise RuntimeError(f"oracle witness failed certification: {final}")
            return s, hit
    raise RuntimeError(f"no complete arc up to size {max_arc_size(q)} at q={q}")


def oracle_min_unreduced(plane: Plane, max_q_guard: int = 5) -> tuple[int, list[int]]:
    """oracle_min without the frame reduction: every arc, smallest index first.

    Exists to validate the symmetry reduction; keep q tiny.
    """
    q = plane.q
    if q > max_q_guard:
        raise ValueError(f"q={q} beyond the unreduced guard {max_q_guard}")
    for s in range(3, max_arc_size(q) + 1):
        hit = _dfs_exact(ArcState(plane), 0, s, q)
        if hit is not None:
            final = verify_certificate(plane, hit)
            if not (final.is_arc and final.is_complete):
                raise RuntimeError(f"oracle witness failed certification: {final}")
            return s, hit
    raise RuntimeError(f"no complete arc up to size {max_arc_size(q)} at q={q}")
