"""Cross-check suites pairing each core path with an independent oracle.

Three suites back the `verify` CLI subcommand and the heavier property
tests: `linalg` checks the Bareiss engine against naive Laplace
expansion and the nullspace-minor construction, and the incremental
workspace against from-scratch elimination; `reduction` checks the
3-SAT reduction against brute-force deciders on both sides; `delay`
replays the erasure channel stream to confirm that with a large enough
field every receiver finishes exactly at its N-th successful slot.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encoder import UserState, cofactor_method, systematic_vector
from .gf import Field, field_new
from .linalg import (
    CofactorPolynomial,
    CofactorWorkspace,
    MatrixGF,
    bareiss_cofactors,
    minors_via_nullspace,
    row_space_contains,
    rref,
)
from .reduction import (
    Cnf,
    brute_force_iev,
    brute_force_sat,
    eval_cnf,
    lift_assignment,
    project_vector,
    reduce_3sat_to_2iev,
)
from .sim import SimConfig, run_realization
from .streams import channel_stream, erasure_draw


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def laplace_cofactors(top: MatrixGF) -> CofactorPolynomial:
    """Cofactors by naive Laplace minor expansion (memoized on column
    subsets), kept free of any elimination machinery."""
    f = top.field
    a = top.a
    r, width = a.shape
    memo: dict[tuple[int, int], int] = {}

    def minor_det(row: int, colmask: int) -> int:
        if row == r:
            return 1
        key = (row, colmask)
        if key in memo:
            return memo[key]
        total = 0
        pos = 0
        mask = colmask
        while mask:
            col = (mask & -mask).bit_length() - 1
            entry = int(a[row, col])
            if entry:
                sub = minor_det(row + 1, colmask & ~(1 << col))
                term = entry * sub % f.q
                total = (total - term if pos % 2 else total + term) % f.q
            mask &= mask - 1
            pos += 1
        memo[key] = total
        return total

    full = (1 << width) - 1
    coeffs = {}
    for j in range(width):
        d = minor_det(0, full & ~(1 << j))
        if (r + j) % 2 == 1:
            d = f.neg(d)
        coeffs[j] = d
    return CofactorPolynomial(coeffs)


def random_full_rank_top(rng: np.random.Generator, field: Field, r: int) -> MatrixGF:
    """Random r x (r+1) matrix with independent rows."""
    while True:
        m = MatrixGF(field, rng.integers(0, field.q, size=(r, r + 1)))
        if rref(m)[1] == r:
            return m


def grow_random_workspace(
    rng: np.random.Generator, field: Field, r: int, width: int
) -> tuple[CofactorWorkspace, list[np.ndarray]]:
    """Build a workspace by r random extensions over `width` columns,
    resampling any row that would drop rank."""
    cols = list(rng.permutation(width))
    ws = CofactorWorkspace(field, first_col=int(cols[0]))
    rows: list[np.ndarray] = []
    for i in range(r):
        new_col = int(cols[i + 1])
        while True:
            row = rng.integers(0, field.q, size=width)
            sub = np.vstack(rows + [row])[:, sorted(ws.col_map + [new_col])]
            if rref(MatrixGF(field, sub))[1] == i + 1:
                break
        ws.extend(row, new_col)
        rows.append(np.asarray(row, dtype=np.int64) % field.q)
    return ws, rows


def workspace_reference_poly(ws: CofactorWorkspace, rows: list[np.ndarray]) -> CofactorPolynomial:
    """From-scratch cofactors of the rows restricted to the workspace's
    tracked columns in ascending order."""
    order = sorted(ws.col_map)
    top = MatrixGF(ws.field, np.vstack(rows)[:, order]) if rows else MatrixGF(
        ws.field, np.zeros((0, 1), dtype=np.int64)
    )
    poly = bareiss_cofactors(top)
    return CofactorPolynomial({order[p]: c for p, c in poly.coeffs.items()})


def check_linalg(trials: int, seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []

    bad = None
    for _ in range(trials):
        field = field_new(int(rng.choice([2, 3, 101])))
        r = int(rng.integers(1, 9))
        top = random_full_rank_top(rng, field, r)
        b = bareiss_cofactors(top)
        l = laplace_cofactors(top)
        m = minors_via_nullspace(top)
        if b.coeffs != l.coeffs or b.coeffs != m.coeffs:
            bad = f"top={top.tolist()} q={field.q} bareiss={b.coeffs} laplace={l.coeffs} minors={m.coeffs}"
            break
    results.append(
        CheckResult("bareiss-vs-laplace-vs-nullspace-minors", bad is None, bad or f"{trials} instances")
    )

    bad = None
    n_growth = max(1, trials // 2)
    for _ in range(n_growth):
        field = field_new(int(rng.choice([2, 3, 101])))
        r = int(rng.integers(1, 8))
        ws, rows = grow_random_workspace(rng, field, r, width=r + 3)
        inc = ws.cofactor_polynomial()
        ref = workspace_reference_poly(ws, rows)
        if inc.coeffs != ref.coeffs:
            bad = f"cols={ws.col_map} rows={[r.tolist() for r in rows]} inc={inc.coeffs} ref={ref.coeffs}"
            break
    results.append(
        CheckResult("incremental-vs-from-scratch", bad is None, bad or f"{n_growth} growth sequences")
    )

    bad = None
    for _ in range(max(1, trials // 4)):
        field = field_new(int(rng.choice([2, 3, 101])))
        r = int(rng.integers(2, 7))
        top = random_full_rank_top(rng, field, r)
        a = top.a.copy()
        a[0, 0] = 0  # force a pivot exchange at the first pass
        zeroed = MatrixGF(field, a)
        if rref(zeroed)[1] != r:
            continue
        b = bareiss_cofactors(zeroed)
        l = laplace_cofactors(zeroed)
        if b.coeffs != l.coeffs:
            bad = f"top={zeroed.tolist()} q={field.q} bareiss={b.coeffs} laplace={l.coeffs}"
            break
    results.append(CheckResult("zero-pivot-exchange-sign", bad is None, bad or "engineered pivots"))

    return results


def random_cnf(rng: np.random.Generator, n: int, m: int) -> Cnf:
    clauses = []
    for _ in range(m):
        vars_ = rng.integers(1, n + 1, size=3)
        signs = rng.integers(0, 2, size=3)
        clauses.append(tuple(int(v) if s else -int(v) for v, s in zip(vars_, signs)))
    return Cnf(n=n, clauses=clauses)


def check_reduction(trials: int, seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    agree = None
    roundtrip = None
    for _ in range(trials):
        n = int(rng.integers(3, 11))
        m = int(rng.integers(1, 21))
        cnf = random_cnf(rng, n, m)
        inst = reduce_3sat_to_2iev(cnf)
        sat = brute_force_sat(cnf)
        vec = brute_force_iev(inst)
        if (sat is None) != (vec is None):
            agree = f"cnf={cnf} sat={sat} iev={None if vec is None else vec.tolist()}"
            break
        if sat is not None:
            lifted = lift_assignment(sat)
            ok_fwd = all(
                not row_space_contains(u, lifted) for u in inst.user_matrices
            )
            back = project_vector(vec)
            if not ok_fwd or not eval_cnf(cnf, back):
                roundtrip = f"cnf={cnf} sat={sat} vec={vec.tolist()}"
                break
    results = [
        CheckResult("sat-iff-innovative-vector", agree is None, agree or f"{trials} formulas"),
        CheckResult("witness-round-trip", roundtrip is None, roundtrip or "both directions"),
    ]
    return results


def replay_success_slots(cfg: SimConfig, realization: int) -> list[int]:
    """Channel-stream oracle: the slot of each user's N-th successful
    reception, replayed independently of any encoder state."""
    rng = channel_stream(cfg.seed, realization)
    counts = [0] * cfg.n_users
    slots = [0] * cfg.n_users
    pending = cfg.n_users
    slot = 0
    while pending:
        slot += 1
        mask = erasure_draw(rng, cfg.n_users, cfg.erasure_prob)
        for i in range(cfg.n_users):
            if counts[i] < cfg.n_packets and (mask >> i) & 1:
                counts[i] += 1
                if counts[i] == cfg.n_packets:
                    slots[i] = slot
                    pending -= 1
    return slots


def check_delay(trials: int, seed: int) -> list[CheckResult]:
    cfg = SimConfig(
        n_packets=32,
        n_users=16,
        q=101,
        erasure_prob=0.3,
        realizations=trials,
        scheme="cofactor",
        seed=seed,
    )
    bad = None
    for i in range(trials):
        res = run_realization(cfg, i)
        expect = replay_success_slots(cfg, i)
        if res.per_user_done_slot != expect:
            bad = f"realization {i}: sim={res.per_user_done_slot} replay={expect}"
            break
    return [
        CheckResult(
            "done-slot-equals-nth-success-slot", bad is None, bad or f"{trials} realizations"
        )
    ]


def sample_reachable_states(
    rng: np.random.Generator, n: int, k: int, q: int, erasure_prob: float
):
    """Yield snapshots of receiver states mid-protocol, produced by an
    actual simulated run (phase 1 plus coded slots)."""
    field = field_new(q)
    states = [UserState(i, n, field) for i in range(k)]
    for t in range(n):
        vec = systematic_vector(t, n)
        got = rng.random(k) < 1.0 - erasure_prob
        for i in range(k):
            if not states[i].done and got[i]:
                states[i].receive(vec)
    while any(not s.done for s in states):
        yield states
        vec = cofactor_method(states, field)
        got = rng.random(k) < 1.0 - erasure_prob
        for i in range(k):
            if not states[i].done and got[i]:
                states[i].receive(vec)


def check_innovation(trials: int, seed: int) -> list[CheckResult]:
    """For q >= K the cofactor vector must be innovative to every
    unfinished receiver, and always at most min(K, unfinished)-sparse."""
    rng = np.random.default_rng(seed)
    checked = 0
    bad_innov = None
    bad_sparse = None
    while checked < trials:
        k = int(rng.integers(2, 6))
        q = int(rng.choice([5, 7, 101]))
        n = int(rng.integers(3, 9))
        pe = float(rng.uniform(0.1, 0.6))
        for states in sample_reachable_states(rng, n, k, q, pe):
            active = [s for s in states if not s.done]
            vec = cofactor_method(states, states[0].field)
            if vec.nnz > min(k, len(active)):
                bad_sparse = f"q={q} k={k} n={n} nnz={vec.nnz} active={len(active)}"
                break
            if any(not s.is_innovative(vec) for s in active):
                bad_innov = f"q={q} k={k} n={n} vec={vec.terms} states={[s.c_matrix.tolist() for s in active]}"
                break
            checked += 1
            if checked >= trials:
                break
        if bad_innov or bad_sparse:
            break
    return [
        CheckResult("innovation-guarantee-q-ge-k", bad_innov is None, bad_innov or f"{checked} states"),
        CheckResult("sparsity-at-most-active-users", bad_sparse is None, bad_sparse or f"{checked} states"),
    ]


SUITES = {
    "linalg": check_linalg,
    "reduction": check_reduction,
    "delay": check_delay,
}
