"""3-SAT to binary innovative-encoding-vector reduction.

A 3-CNF with n variables and m clauses maps to m+1 receiver matrices
over GF(2) with n+1 columns: each clause contributes a 3 x (n+1)
constraint matrix whose orthogonal complement is that receiver's row
space, and one extra receiver pins the last coordinate of any solution
to 1.  A vector outside every row space exists iff the formula is
satisfiable, and witnesses convert both ways by appending/stripping the
trailing 1.  Brute-force deciders for both sides double as oracles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .gf import field_new
from .linalg import MatrixGF, nullspace_basis, rref

Clause = tuple[int, int, int]  # DIMACS-signed literals

DEFAULT_ENUM_BUDGET = 1 << 24
SAT_VAR_BUDGET = 24
_CHUNK = 1 << 14


class ParseError(ValueError):
    """Malformed DIMACS input."""


class NotThreeCnfError(ParseError):
    """A clause does not have exactly three literals."""


class BudgetExceededError(RuntimeError):
    """The requested enumeration is larger than the configured budget."""


class LastCoordinateZeroError(ValueError):
    """A claimed solution vector does not end in 1."""


@dataclass
class Cnf:
    n: int
    clauses: list[Clause]

    @property
    def m(self) -> int:
        return len(self.clauses)


def parse_dimacs(text: str) -> Cnf:
    """Parse DIMACS CNF text; every clause must have exactly 3 literals."""
    tokens: list[str] = []
    header: tuple[int, int] | None = None
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            if header is not None:
                raise ParseError("duplicate problem line")
            parts = stripped.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise ParseError(f"bad problem line: {stripped!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError as exc:
                raise ParseError(f"bad problem line: {stripped!r}") from exc
            continue
        tokens.extend(stripped.split())
    if header is None:
        raise ParseError("missing 'p cnf <vars> <clauses>' header")
    n, m = header
    if n < 0 or m < 0:
        raise ParseError("negative counts in problem line")
    clauses: list[Clause] = []
    current: list[int] = []
    for tok in tokens:
        try:
            lit = int(tok)
        except ValueError as exc:
            raise ParseError(f"bad literal token {tok!r}") from exc
        if lit == 0:
            if len(current) != 3:
                raise NotThreeCnfError(
                    f"clause {len(clauses) + 1} has {len(current)} literals, need 3"
                )
            clauses.append((current[0], current[1], current[2]))
            current = []
            continue
        if not 1 <= abs(lit) <= n:
            raise ParseError(f"literal {lit} outside variable range 1..{n}")
        current.append(lit)
    if current:
        raise ParseError("unterminated clause (missing trailing 0)")
    if len(clauses) != m:
        raise ParseError(f"header promises {m} clauses, found {len(clauses)}")
    return Cnf(n=n, clauses=clauses)


def eval_cnf(cnf: Cnf, assignment) -> bool:
    """Standard CNF semantics; assignment[i] is the value of variable i+1."""
    if len(assignment) != cnf.n:
        raise ValueError(f"assignment length {len(assignment)} != {cnf.n}")
    for clause in cnf.clauses:
        if not any(
            bool(assignment[abs(lit) - 1]) == (lit > 0) for lit in clause
        ):
            return False
    return True


def brute_force_sat(cnf: Cnf) -> list[bool] | None:
    """Smallest satisfying assignment in lexicographic order (variable 1
    most significant, False < True), or None."""
    if cnf.n > SAT_VAR_BUDGET:
        raise BudgetExceededError(f"{cnf.n} variables exceed the budget of {SAT_VAR_BUDGET}")
    n = cnf.n
    total = 1 << n
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        bits = (idx[:, None] >> (n - 1 - np.arange(n))) & 1
        alive = np.ones(idx.shape[0], dtype=bool)
        for clause in cnf.clauses:
            sat = np.zeros(idx.shape[0], dtype=bool)
            for lit in clause:
                col = bits[:, abs(lit) - 1]
                sat |= (col == 1) if lit > 0 else (col == 0)
            alive &= sat
            if not alive.any():
                break
        if alive.any():
            first = int(np.nonzero(alive)[0][0])
            return [bool(b) for b in bits[first]]
    return None


@dataclass
class IevInstance:
    """Decision instance: receiver matrices over GF(q), shared column count."""

    q: int
    n_cols: int
    user_matrices: list[MatrixGF]

    def __post_init__(self):
        field_new(self.q)  # validates primality
        for i, m in enumerate(self.user_matrices):
            if m.cols != self.n_cols:
                raise ValueError(f"user {i} has {m.cols} columns, expected {self.n_cols}")
            if rref(m)[1] != m.rows:
                raise ValueError(f"user {i} has dependent rows")
            if m.rows >= self.n_cols:
                raise ValueError(f"user {i} already has full rank, instance is trivially negative")

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "n_cols": self.n_cols,
            "users": [m.tolist() for m in self.user_matrices],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data: dict) -> "IevInstance":
        f = field_new(int(data["q"]))
        users = [MatrixGF(f, rows) for rows in data["users"]]
        return cls(q=int(data["q"]), n_cols=int(data["n_cols"]), user_matrices=users)

    @classmethod
    def from_json(cls, text: str) -> "IevInstance":
        return cls.from_json_dict(json.loads(text))


def clause_matrix(clause: Clause, n: int) -> MatrixGF:
    """The 3 x (n+1) GF(2) constraint matrix of one clause: row j has a 1
    at the literal's variable column, plus one at the last column when
    the literal is negated."""
    f = field_new(2)
    b = np.zeros((3, n + 1), dtype=np.int64)
    for j, lit in enumerate(clause):
        b[j, abs(lit) - 1] = 1
        if lit < 0:
            b[j, n] = 1
    return MatrixGF(f, b)


def reduce_3sat_to_2iev(cnf: Cnf) -> IevInstance:
    """Build the GF(2) instance with n+1 columns and m+1 receivers."""
    f = field_new(2)
    n = cnf.n
    users = [nullspace_basis(clause_matrix(clause, n)) for clause in cnf.clauses]
    last = np.zeros((1, n + 1), dtype=np.int64)
    last[0, n] = 1
    users.append(nullspace_basis(MatrixGF(f, last)))
    return IevInstance(q=2, n_cols=n + 1, user_matrices=users)


def lift_assignment(x) -> np.ndarray:
    """Append the forced trailing 1 to a Boolean assignment."""
    arr = np.asarray([int(bool(v)) for v in x] + [1], dtype=np.int64)
    return arr


def project_vector(c) -> list[bool]:
    """Strip the trailing coordinate of a solution vector (must be 1)."""
    arr = np.asarray(c, dtype=np.int64)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise ValueError("expected a nonempty vector")
    if int(arr[-1]) != 1:
        raise LastCoordinateZeroError("solution vectors end in 1")
    return [bool(v) for v in arr[:-1]]


def brute_force_iev(inst: IevInstance, budget: int = DEFAULT_ENUM_BUDGET) -> np.ndarray | None:
    """Lexicographically smallest vector outside every row space, or None.

    Enumerates all q**n_cols vectors (first coordinate most significant)
    in chunks, eliminating per-user row-space members with the
    precomputed reduced forms.
    """
    q = inst.q
    n = inst.n_cols
    total = q**n
    if total > budget:
        raise BudgetExceededError(f"q**N = {total} exceeds the budget of {budget}")
    reduced = []
    for m in inst.user_matrices:
        red, _, pivots = rref(m)
        reduced.append((red.a, pivots))
    weights = q ** (n - 1 - np.arange(n, dtype=np.int64))
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        vecs = (idx[:, None] // weights) % q
        alive = np.ones(idx.shape[0], dtype=bool)
        for red, pivots in reduced:
            res = vecs.copy()
            for i, p in enumerate(pivots):
                coef = res[:, p].copy()
                res = (res - coef[:, None] * red[i]) % q
            alive &= res.any(axis=1)
            if not alive.any():
                break
        if alive.any():
            first = int(np.nonzero(alive)[0][0])
            return vecs[first]
    return None
