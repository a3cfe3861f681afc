"""Encoding-vector generation for broadcast with feedback.

Three vector sources: the systematic phase (unit vectors), uniform
random linear network coding, and the cofactor method, which builds one
square matrix per unfinished receiver with a symbolic last row and
assigns values so every determinant is nonzero.  For field size q >= K
the resulting vector is innovative to every unfinished receiver and has
at most K nonzero components.

Per-receiver bookkeeping lives in :class:`UserState`: the raw received
vectors, an eliminated copy used for the innovation test and pivot
selection, and the incremental Bareiss workspace that mirrors the
received matrix restricted to the tracked columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .gf import Field
from .linalg import CofactorWorkspace, DimensionMismatchError, MatrixGF


class AllUsersDoneError(RuntimeError):
    """The cofactor method was invoked with no unfinished receiver."""


@dataclass(frozen=True)
class EncodingVector:
    """Sparse N-vector over GF(q): sorted (index, nonzero value) pairs."""

    dim: int
    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = -1
        for idx, val in self.terms:
            if not 0 <= idx < self.dim:
                raise IndexError(f"index {idx} outside [0, {self.dim})")
            if idx <= prev:
                raise ValueError("term indices must be strictly increasing")
            if val == 0:
                raise ValueError("terms must be nonzero")
            prev = idx
        if not self.terms:
            raise ValueError("a transmitted vector has at least one nonzero term")

    @classmethod
    def from_dense(cls, vec) -> "EncodingVector":
        arr = np.asarray(vec, dtype=np.int64)
        nz = np.nonzero(arr)[0]
        return cls(arr.shape[0], tuple((int(j), int(arr[j])) for j in nz))

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        for idx, val in self.terms:
            out[idx] = val
        return out

    @property
    def nnz(self) -> int:
        return len(self.terms)


def systematic_vector(t: int, n: int) -> EncodingVector:
    """Unit vector e_t, the phase-1 uncoded transmission of packet t."""
    if not 0 <= t < n:
        raise IndexError(f"packet index {t} outside [0, {n})")
    return EncodingVector(n, ((t, 1),))


def rlnc_vector(n: int, field: Field, rng: np.random.Generator) -> EncodingVector:
    """Uniform random coefficients; the all-zero draw is resampled."""
    while True:
        vals = rng.integers(0, field.q, size=n)
        if vals.any():
            return EncodingVector.from_dense(vals)


class UserState:
    """Source-side record of one receiver's decoding progress.

    Maintains the raw received vectors (rows of C_k), the pivot column
    list I_k grown by the smallest-index rule, and the incremental
    cofactor workspace over I_k plus one extra column.  The eliminated
    matrix kept alongside has unit pivot columns, which makes both the
    innovation test and the next-pivot search one residual reduction.
    """

    def __init__(self, user_id: int, n: int, field: Field):
        if n < 1:
            raise ValueError("need at least one packet")
        self.user_id = user_id
        self.n = n
        self.field = field
        self.pivots: list[int] = []
        self._raw: list[np.ndarray] = []
        self._elim = np.zeros((0, n), dtype=np.int64)
        self._extra = 0  # smallest column not in pivots
        self.workspace = CofactorWorkspace(field, first_col=0)

    @classmethod
    def from_matrix(cls, user_id: int, m: MatrixGF) -> "UserState":
        """Replay the rows of m as successive receptions (all must be
        innovative, i.e. m has independent rows)."""
        state = cls(user_id, m.cols, m.field)
        for i in range(m.rows):
            if not state.receive(EncodingVector.from_dense(m.row(i))):
                raise ValueError(f"row {i} is dependent on earlier rows")
        return state

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def done(self) -> bool:
        return self.rank == self.n

    @property
    def c_matrix(self) -> MatrixGF:
        rows = np.vstack(self._raw) if self._raw else np.zeros((0, self.n), dtype=np.int64)
        return MatrixGF(self.field, rows)

    def _residual(self, vec: np.ndarray) -> np.ndarray:
        q = self.field.q
        u = vec.copy()
        for i, p in enumerate(self.pivots):
            coef = int(u[p])
            if coef:
                u = (u - coef * self._elim[i]) % q
        return u

    def is_innovative(self, v: EncodingVector) -> bool:
        if v.dim != self.n:
            raise DimensionMismatchError(f"vector dim {v.dim} != {self.n}")
        return bool(self._residual(v.to_dense()).any())

    def receive(self, v: EncodingVector) -> bool:
        """Feed one received vector; returns True iff it was innovative
        (in which case the state advances, otherwise it is unchanged)."""
        if v.dim != self.n:
            raise DimensionMismatchError(f"vector dim {v.dim} != {self.n}")
        f = self.field
        q = f.q
        vec = v.to_dense() % q
        u = self._residual(vec)
        if not u.any():
            return False
        # smallest j not in I_k keeping the pivot columns independent
        p_new = int(np.nonzero(u)[0][0])
        if not self.done and self.rank + 1 < self.n:
            if p_new == self._extra:
                appended = self._next_free(exclude=p_new)
                self._extra = appended
            else:
                appended = p_new
            self.workspace.extend(vec, appended)
        # a finished user's workspace is never read again; there is no
        # non-pivot column left to track once rank reaches n
        nu = u * f.inv(int(u[p_new])) % q
        hit = self._elim[:, p_new] != 0
        if hit.any():
            self._elim[hit] = (self._elim[hit] - np.outer(self._elim[hit, p_new], nu)) % q
        self._elim = np.vstack([self._elim, nu.reshape(1, -1)])
        self.pivots.append(p_new)
        self._raw.append(vec)
        return True

    def _next_free(self, exclude: int) -> int:
        taken = set(self.pivots)
        taken.add(exclude)
        for j in range(self.n):
            if j not in taken:
                return j
        raise AssertionError("active user must have a free column")


def user_receive(state: UserState, v: EncodingVector) -> bool:
    return state.receive(v)


@dataclass
class PlanEntry:
    """One unfinished receiver's slice of the assignment plan."""

    user_id: int
    coeffs: dict[int, int]  # last-row cofactors of the per-user square matrix
    chosen_index: int  # largest column index with a nonzero cofactor
    b: int  # that cofactor, necessarily nonzero


@dataclass
class AssignmentPlan:
    """Grouping of unfinished receivers by chosen column index."""

    n: int
    entries: list[PlanEntry]
    indices: list[int]  # distinct chosen indices, ascending
    groups: list[list[PlanEntry]]  # groups[t] = receivers whose index is indices[t]
    failed_users: list[int] = dc_field(default_factory=list)


def build_assignment_plan(states: list[UserState], field: Field) -> AssignmentPlan:
    """Read per-user cofactors and group users by their chosen index."""
    active = [s for s in states if not s.done]
    if not active:
        raise AllUsersDoneError("every receiver already has full rank")
    entries = []
    for s in active:
        assert s.workspace.dim == s.rank, "workspace out of sync with c_matrix"
        poly = s.workspace.cofactor_polynomial()
        i_k = poly.largest_nonzero_index()
        assert i_k is not None, "full-rank block cannot have all-zero cofactors"
        entries.append(
            PlanEntry(
                user_id=s.user_id,
                coeffs=dict(poly.coeffs),
                chosen_index=i_k,
                b=poly.coefficient(i_k),
            )
        )
    indices = sorted({e.chosen_index for e in entries})
    groups = [[e for e in entries if e.chosen_index == j] for j in indices]
    return AssignmentPlan(n=active[0].n, entries=entries, indices=indices, groups=groups)


def assign_values(plan: AssignmentPlan, field: Field) -> dict[int, int]:
    """Assign the chosen components in ascending index order.

    Each group's component is the smallest field value keeping every
    group member's determinant nonzero; components outside the plan stay
    zero.  When the forbidden values cover the whole field (possible
    only for q < K) the component falls back to zero and the group is
    recorded in plan.failed_users, meaning innovation is no longer
    guaranteed for those receivers.
    """
    q = field.q
    values: dict[int, int] = {}
    plan.failed_users.clear()
    for t, (j, group) in enumerate(zip(plan.indices, plan.groups), start=1):
        forbidden = set()
        for e in group:
            a = 0
            for c, coef in e.coeffs.items():
                if c != j and coef:
                    a = (a + coef * values.get(c, 0)) % q
            if t == 1:
                assert a == 0, "first group determinants reduce to b*x"
            forbidden.add(field.div(field.neg(a), e.b))
        if t == 1:
            forbidden.add(0)
        choice = next((v for v in range(q) if v not in forbidden), None)
        if choice is None:
            choice = 0
            plan.failed_users.extend(e.user_id for e in group)
        values[j] = choice
    return values


def cofactor_method(states: list[UserState], field: Field) -> EncodingVector:
    """Deterministic sparse innovative-vector generation.

    For q >= number of unfinished receivers the result is innovative to
    all of them; it always has at most that many nonzero components.
    """
    plan = build_assignment_plan(states, field)
    values = assign_values(plan, field)
    terms = tuple(sorted((j, v) for j, v in values.items() if v))
    return EncodingVector(plan.n, terms)
