"""Acceptance gate: one test per shipped criterion, one verdict line each.

Every test records ``[PASS]/[FAIL] criterion N: ...`` in RECORDS — the
conftest terminal-summary hook prints the collected lines at the end of
the run, where pytest's output capture cannot swallow them — and then
asserts.  Budgets are asserted against wall-clock time.
"""

from __future__ import annotations

import filecmp
import time

import numpy as np

from pgarcs import (ArcState, SearchConfig, build_field, build_plane,
                    certificate_points, conic_arc, conic_nucleus,
                    factor_prime_power, greedy_min, oracle_min,
                    parse_certificate, spectrum_search, verify_certificate)
from pgarcs.cli import main
from pgarcs.dataset import EXCLUDED_ORDERS, dataset
from pgarcs.metrics import (check_dataset, compute_metrics, log_ratio,
                            spectrum_ceiling)
from pgarcs.search import oracle_min_unreduced


def _plane(q):
    return build_plane(build_field(*factor_prime_power(q)))


RECORDS: list[str] = []


def _record(num: int, ok: bool, detail: str) -> None:
    verdict = "PASS" if ok else "FAIL"
    RECORDS.append(f"[{verdict}] criterion {num}: {detail}")
    assert ok, f"criterion {num}: {detail}"


# ---------------------------------------------------------------------------


def test_criterion_1_table_arithmetic_exact():
    t0 = time.perf_counter()
    rep = check_dataset()
    elapsed = time.perf_counter() - t0
    ok = (rep.rows_checked == 292 and not rep.mismatches
          and not rep.blank_slack_flags and elapsed < 1.0)
    detail = (f"recomputed every published column over {rep.rows_checked} rows, "
              f"{len(rep.mismatches)} mismatches, "
              f"{len(rep.blank_slack_flags)} blank-slack flags, "
              f"{elapsed:.2f}s")
    _record(1, ok, detail)


def test_criterion_2_range_envelope_zero_violations():
    t0 = time.perf_counter()
    bad: list[str] = []
    rows = 0
    for r in dataset():
        if r.source not in ("T1", "T2") or r.q in EXCLUDED_ORDERS:
            continue
        rows += 1
        m = compute_metrics(r.q, r.t_bar)
        if not 0.720 < m.log_ratio_075 < 0.743:
            bad.append(f"q={r.q} log_ratio_075={m.log_ratio_075:.6f}")
        if not -1.86 <= m.gap <= 1.23:
            bad.append(f"q={r.q} gap={m.gap:.6f}")
        if r.q <= 997:
            in_band = -1.73 < m.gap_pct < 1.31
        elif r.q <= 1999:
            in_band = -0.80 < m.gap_pct < 0.93
        else:
            in_band = -0.53 < m.gap_pct < 0.54
        if not in_band:
            bad.append(f"q={r.q} gap_pct={m.gap_pct:.6f}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 1.0
    detail = (f"banded ranges over {rows} rows, {len(bad)} violations"
              + (": " + "; ".join(bad) if bad else "") + f", {elapsed:.2f}s")
    _record(2, ok, detail)


def test_criterion_3_oracle_equivalence_tiny_orders():
    t0 = time.perf_counter()
    mismatches = []
    pairs = []
    oracle_elapsed = 0.0
    for q in (2, 3, 4, 5, 7, 8, 9):
        plane = _plane(q)
        t1 = time.perf_counter()
        exact, witness = oracle_min(plane)
        oracle_elapsed += time.perf_counter() - t1
        rep = verify_certificate(plane, witness)
        assert rep.is_arc and rep.is_complete and rep.size == exact
        got = greedy_min(plane, SearchConfig(master_seed=0, restarts=200)).best_size
        pairs.append(f"q={q}:{got}")
        if got != exact:
            mismatches.append(f"q={q} greedy={got} oracle={exact}")
    t2 = time.perf_counter()
    unreduced_ok = all(
        oracle_min_unreduced(_plane(q))[0] == oracle_min(_plane(q))[0]
        for q in (2, 3, 4, 5))
    unreduced_elapsed = time.perf_counter() - t2
    ok = (not mismatches and unreduced_ok
          and oracle_elapsed <= 600 and unreduced_elapsed <= 60)
    detail = (f"greedy(200 restarts) == exhaustive minimum at {' '.join(pairs)}; "
              f"oracle {oracle_elapsed:.1f}s, unreduced cross-check q<=5 "
              f"{unreduced_elapsed:.1f}s"
              + ("; MISMATCH " + "; ".join(mismatches) if mismatches else ""))
    _record(3, ok, detail)


def test_criterion_4_incremental_bookkeeping_drift():
    t0 = time.perf_counter()
    orders = (4, 5, 7, 8, 9, 13, 25, 49)
    per = 1000 // len(orders)
    sequences = 0
    drift = 0
    for q in orders:
        plane = _plane(q)
        for i in range(per):
            rng = np.random.default_rng(1000 * q + i)
            state = ArcState(plane, track_gains=False)
            sequences += 1
            for p in rng.permutation(plane.n_points):
                if not state.try_add(int(p)):
                    continue
                rep = verify_certificate(plane, state.points)
                if (not rep.is_arc or rep.uncovered != state.uncovered
                        or rep.is_complete != state.is_complete):
                    drift += 1
                if state.is_complete:
                    break
    elapsed = time.perf_counter() - t0
    ok = sequences == 1000 and drift == 0 and elapsed <= 300
    detail = (f"{sequences} random construction sequences over q in {orders}, "
              f"{drift} bookkeeping drifts, {elapsed:.1f}s")
    _record(4, ok, detail)


def test_criterion_5_conic_behavior():
    t0 = time.perf_counter()
    odd = [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47,
           49, 53, 59, 61, 67, 71, 73, 79, 81, 83, 89, 97, 101]
    bad = []
    for q in odd:
        plane = _plane(q)
        rep = verify_certificate(plane, conic_arc(plane))
        if not (rep.is_arc and rep.is_complete and rep.size == q + 1):
            bad.append(f"odd q={q}")
    for q in (4, 8, 16, 32, 64):
        plane = _plane(q)
        arc = conic_arc(plane)
        rep = verify_certificate(plane, arc)
        if not (rep.is_arc and not rep.is_complete):
            bad.append(f"even q={q} conic")
        rep2 = verify_certificate(plane, arc + [conic_nucleus(plane)])
        if not (rep2.is_arc and rep2.is_complete and rep2.size == q + 2):
            bad.append(f"even q={q} extension")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed <= 60
    detail = (f"conic complete at {len(odd)} odd orders <= 101, "
              f"incomplete-then-extended at 5 even orders, {elapsed:.1f}s"
              + ("; FAILED " + "; ".join(bad) if bad else ""))
    _record(5, ok, detail)


def test_criterion_6_midrange_prime_search_gates():
    primes = [173, 179, 191, 211, 229, 241, 257, 271, 283, 307, 317, 337,
              353, 373, 389, 409, 421, 439, 461, 499]
    t0 = time.perf_counter()
    gate_misses = []
    stretch_hits = 0
    sizes = []
    for q in primes:
        plane = _plane(q)
        outcome = greedy_min(plane, SearchConfig(master_seed=6, restarts=10,
                                                 time_budget=600.0))
        t = outcome.best_size
        rep = verify_certificate(plane, outcome.best_arc)
        assert rep.is_arc and rep.is_complete and rep.size == t
        sizes.append(f"{q}:{t}")
        if not 4 * t * t < 81 * q:            # t < 4.5*sqrt(q), exact
            gate_misses.append(f"q={q} t={t}")
        if log_ratio(q, t, 0.75) < 0.743:     # stretch target, reported only
            stretch_hits += 1
    elapsed = time.perf_counter() - t0

    plane = _plane(853)
    outcome = greedy_min(plane, SearchConfig(master_seed=6, restarts=10,
                                             time_budget=7200.0))
    rep = verify_certificate(plane, outcome.best_arc)
    assert rep.is_arc and rep.is_complete
    t853 = outcome.best_size
    elapsed_853 = time.perf_counter() - t0 - elapsed

    ok = (not gate_misses and elapsed <= 4 * 3600
          and t853 <= 131 and elapsed_853 <= 2 * 3600)
    detail = (f"20 primes in [173,499], sizes {' '.join(sizes)}, "
              f"all below 4.5*sqrt(q)" if not gate_misses else
              f"gate missed at {'; '.join(gate_misses)}")
    detail += (f"; stretch 0.743*sqrt(q)*log2(q)^0.75 met at "
               f"{stretch_hits}/20 (reported, not gated); {elapsed:.0f}s; "
               f"q=853 size {t853} (gate <=131, reference 118) "
               f"in {elapsed_853:.0f}s")
    _record(6, ok, detail)


def test_criterion_7_spectrum_coverage():
    t0 = time.perf_counter()
    missing = []
    summary = []
    for q in (25, 27, 29, 31, 37):
        plane = _plane(q)
        best = greedy_min(plane, SearchConfig(master_seed=11,
                                              restarts=300)).best_size
        hi = spectrum_ceiling(q)
        got = []
        for k in range(best, hi + 1):
            outcome = spectrum_search(plane, k,
                                      SearchConfig(master_seed=11,
                                                   restarts=3000))
            if outcome is None:
                missing.append(f"q={q} k={k}")
                continue
            rep = verify_certificate(plane, outcome.best_arc)
            assert rep.is_arc and rep.is_complete and rep.size == k
            got.append(k)
        summary.append(f"q={q}:[{best}..{hi}]")
    elapsed = time.perf_counter() - t0
    ok = not missing and elapsed <= 2 * 3600
    detail = (f"every size in {' '.join(summary)} certified, {elapsed:.0f}s"
              + ("; MISSING " + "; ".join(missing) if missing else ""))
    _record(7, ok, detail)


def test_criterion_8_determinism(tmp_path):
    outs = []
    for name, workers in (("one.arc", "1"), ("two.arc", "1"), ("par.arc", "4")):
        out = tmp_path / name
        rc = main(["search", "--q", "101", "--seed", "7", "--restarts", "20",
                   "--workers", workers, "--out", str(out)])
        assert rc == 0
        outs.append(out)
    same = (filecmp.cmp(outs[0], outs[1], shallow=False)
            and filecmp.cmp(outs[0], outs[2], shallow=False))
    plane = _plane(101)
    _, triples = parse_certificate(outs[0].read_text())
    rep = verify_certificate(plane, certificate_points(plane, triples))
    ok = same and rep.is_arc and rep.is_complete
    detail = (f"q=101 seed 7: two single-worker runs and one 4-worker run "
              f"byte-identical={same}, certificate size {rep.size}")
    _record(8, ok, detail)
