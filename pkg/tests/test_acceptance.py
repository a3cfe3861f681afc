"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion
lines; the heavyweight paired experiment grids are shared via
module-scoped fixtures so each (scheme, q, K) combination is simulated
once.
"""

import math
import time
from functools import lru_cache

import numpy as np
import pytest

from innocode.encoder import UserState, build_assignment_plan, cofactor_method
from innocode.gf import field_new
from innocode.linalg import MatrixGF, bareiss_cofactors, bareiss_passes
from innocode.sim import SCHEME_COFACTOR, SCHEME_RLNC, SimConfig, run_realization
from innocode.verify import (
    check_innovation,
    check_linalg,
    check_reduction,
    replay_success_slots,
)

N = 32
PE = 0.3
R = 200
LIMIT = N / (1 - PE)  # 45.714...


def report(num, ok, text):
    print(f"\nACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {text}")
    assert ok, f"criterion {num}: {text}"


@lru_cache(maxsize=None)
def paired_runs(q, k):
    """Per-realization results for both schemes at shared seed, plus the
    wall time spent producing them."""
    t0 = time.perf_counter()
    out = {}
    for scheme in (SCHEME_COFACTOR, SCHEME_RLNC):
        cfg = SimConfig(
            n_packets=N, n_users=k, q=q, erasure_prob=PE,
            realizations=R, scheme=scheme, seed=1234,
        )
        out[scheme] = [run_realization(cfg, i) for i in range(R)]
    return out, time.perf_counter() - t0


def sign_test_p(wins, losses):
    """One-sided exact binomial tail P[X >= wins], ties dropped."""
    n = wins + losses
    return sum(math.comb(n, i) for i in range(wins, n + 1)) / 2**n


def three_receiver_states():
    f3 = field_new(3)
    return [
        UserState.from_matrix(1, MatrixGF(f3, [[0, 1, 0]])),
        UserState.from_matrix(2, MatrixGF(f3, [[1, 0, 1], [0, 1, 1]])),
        UserState.from_matrix(3, MatrixGF(f3, [[1, 0, 0], [0, 2, 0]])),
    ]


def test_criterion_1_three_receiver_golden():
    f3 = field_new(3)
    states = three_receiver_states()
    plan = build_assignment_plan(states, f3)
    chosen_1based = [e.chosen_index + 1 for e in plan.entries]
    j_1based = [j + 1 for j in plan.indices]
    groups = [[e.user_id for e in g] for g in plan.groups]
    vec = cofactor_method(states, f3).to_dense().tolist()

    best = min(
        _timed(lambda: cofactor_method(three_receiver_states(), f3)) for _ in range(10)
    )
    ok = (
        vec == [1, 0, 2]
        and chosen_1based == [1, 3, 3]
        and j_1based == [1, 3]
        and groups == [[1], [2, 3]]
        and best < 1e-3
    )
    report(
        1,
        ok,
        f"vector={vec} i={tuple(chosen_1based)} J={set(j_1based)} "
        f"groups={groups} runtime={best * 1e6:.0f}us",
    )


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def test_criterion_2_cofactor_readout_golden():
    ok = True
    detail = []
    for q in (7, 101):
        f = field_new(q)
        poly = bareiss_cofactors(MatrixGF(f, [[1, 2, 3], [4, 5, 6]]))
        want = [(-3) % q, 6 % q, (-3) % q]
        got = poly.as_list([0, 1, 2])
        ok &= got == want
        first = next(bareiss_passes(MatrixGF(f, [[1, 2, 3], [4, 5, 6]])))
        _, numeric, symb, _ = first
        ok &= numeric[1].tolist() == [4 % q, (-3) % q, (-6) % q]
        ok &= symb[1].tolist() == [(-2) % q, 1, 0]
        ok &= symb[2].tolist() == [(-3) % q, 0, 1]
        detail.append(f"q={q}: cofactors={got}")
    report(2, ok, "; ".join(detail) + "; k=1 partial block matches")


def test_criterion_3_delay_optimality_replay():
    cfg = SimConfig(
        n_packets=N, n_users=16, q=101, erasure_prob=PE,
        realizations=50, scheme=SCHEME_COFACTOR, seed=77,
    )
    t0 = time.perf_counter()
    mismatches = 0
    for i in range(50):
        res = run_realization(cfg, i)
        if res.per_user_done_slot != replay_success_slots(cfg, i):
            mismatches += 1
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 30
    report(3, ok, f"50 realizations, {mismatches} mismatches, {elapsed:.1f}s (< 30s)")


def test_criterion_4_capacity_limit():
    runs, elapsed = paired_runs(101, 16)
    details = []
    ok = elapsed < 120
    for scheme in (SCHEME_COFACTOR, SCHEME_RLNC):
        ad = float(
            np.mean([sum(r.per_user_done_slot) / 16 for r in runs[scheme]])
        )
        dev = abs(ad - LIMIT) / LIMIT
        ok &= dev <= 0.03
        details.append(f"{scheme}: avg_delay={ad:.3f} dev={dev * 100:.2f}%")
    report(4, ok, f"limit={LIMIT:.3f}; " + "; ".join(details) + f"; {elapsed:.0f}s (< 120s)")


def test_criterion_5_gf2_delay_ordering():
    ok = True
    details = []
    for k in (8, 16):
        runs, _ = paired_runs(2, k)
        cof, rl = runs[SCHEME_COFACTOR], runs[SCHEME_RLNC]
        for metric, name in (
            (lambda r: r.total_slots, "wcd"),
            (lambda r: sum(r.per_user_done_slot), "ad"),
        ):
            wins = sum(metric(a) < metric(b) for a, b in zip(cof, rl))
            losses = sum(metric(a) > metric(b) for a, b in zip(cof, rl))
            p = sign_test_p(wins, losses)
            mean_c = float(np.mean([metric(r) for r in cof]))
            mean_r = float(np.mean([metric(r) for r in rl]))
            ok &= p < 0.01 and mean_c < mean_r
            details.append(f"K={k} {name}: wins={wins}/{wins + losses} p={p:.2e}")
    report(5, ok, "; ".join(details))


def test_criterion_6_decoding_cost_ordering():
    ok = True
    details = []
    for q in (2, 101):
        for k in (8, 16):
            runs, _ = paired_runs(q, k)

            def total_ops(r):
                if q == 2:
                    return sum(op.additions for op in r.per_user_ops)
                return sum(op.additions + op.multiplications for op in r.per_user_ops)

            mean_c = float(np.mean([total_ops(r) for r in runs[SCHEME_COFACTOR]]))
            mean_r = float(np.mean([total_ops(r) for r in runs[SCHEME_RLNC]]))
            ok &= mean_c < mean_r
            details.append(f"q={q} K={k}: cofactor={mean_c:.0f} rlnc={mean_r:.0f}")
            if q == 2:
                muls = sum(
                    op.multiplications
                    for r in runs[SCHEME_COFACTOR] + runs[SCHEME_RLNC]
                    for op in r.per_user_ops
                )
                ok &= muls == 0
    report(6, ok, "; ".join(details) + "; GF(2) multiplications all zero")


def test_criterion_7_sat_iev_equivalence():
    t0 = time.perf_counter()
    results = check_reduction(200, seed=2025)
    elapsed = time.perf_counter() - t0
    ok = all(r.passed for r in results) and elapsed < 120
    report(
        7,
        ok,
        f"200 formulas: {'; '.join(f'{r.name}={r.passed}' for r in results)}; "
        f"{elapsed:.1f}s (< 120s)",
    )


def test_criterion_8_property_suites():
    f_ok = True
    for q in (2, 3, 101):
        f = field_new(q)
        rng = np.random.default_rng(800 + q)
        for _ in range(200):
            a, b, c = (int(v) for v in rng.integers(0, q, size=3))
            f_ok &= f.add(a, b) == f.add(b, a)
            f_ok &= f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            f_ok &= f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            f_ok &= f.add(a, f.neg(a)) == 0 and f.mul(a, 1) == a

    lin = check_linalg(1000, seed=801)  # 1000 oracle triples, 500 growths
    inn = check_innovation(1000, seed=802)
    ok = f_ok and all(r.passed for r in lin) and all(r.passed for r in inn)
    names = "; ".join(f"{r.name}={r.passed}" for r in lin + inn)
    report(8, ok, f"field-axioms={f_ok}; {names}")
