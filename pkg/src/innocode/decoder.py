"""Gauss-Jordan decoding with field-operation counting.

Counting rules: an addition counts when both operands are nonzero; a
multiplication counts when neither operand is 0 or 1.  Counts cover the
coefficient matrix and the payload column.  Each packet payload is
abstracted to a single field symbol, so reported figures are per-symbol
costs; a real packet length is a pure multiplier.

Elimination order: columns left to right, pivot = first row with a
nonzero entry in the column, pivot row normalized to 1, then every
other row with a nonzero entry in the column is cleared.  Row swaps
cost nothing.  Zero multipliers skip the row entirely, which is where
sparse encoding vectors pay off; the counts are identical to a
term-list implementation because skipped positions involve a zero or
unit operand and are never counted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DimensionMismatchError, MatrixGF, as_vector


class SingularMatrixError(ValueError):
    """The coefficient matrix is not invertible."""


@dataclass
class OpCounter:
    additions: int = 0
    multiplications: int = 0

    @property
    def total(self) -> int:
        return self.additions + self.multiplications

    def __add__(self, other: "OpCounter") -> "OpCounter":
        return OpCounter(
            self.additions + other.additions,
            self.multiplications + other.multiplications,
        )


def _gauss_jordan(c: MatrixGF, payload: np.ndarray | None) -> tuple[np.ndarray | None, OpCounter]:
    """Shared elimination core.

    With payload=None the payload column is treated as a column of
    generic nonzero symbols (never 0, never 1), the fast path used by
    the simulator where only counts matter.
    """
    f = c.field
    q = f.q
    a = c.a.copy()
    n, cols = a.shape
    if n != cols:
        raise DimensionMismatchError("decoding needs a square system")
    p = payload.copy() if payload is not None else None
    ops = OpCounter()
    for col in range(n):
        nz = np.nonzero(a[col:, col])[0]
        if nz.size == 0:
            raise SingularMatrixError(f"no pivot available in column {col}")
        r = col + int(nz[0])
        if r != col:
            a[[col, r]] = a[[r, col]]
            if p is not None:
                p[[col, r]] = p[[r, col]]
        piv = int(a[col, col])
        if piv != 1:
            inv = f.inv(piv)  # piv != 1 implies inv not in {0, 1}
            ops.multiplications += int(np.count_nonzero((a[col] != 0) & (a[col] != 1)))
            a[col] = a[col] * inv % q
            if p is None:
                ops.multiplications += 1
            else:
                if p[col] not in (0, 1):
                    ops.multiplications += 1
                p[col] = p[col] * inv % q
        prow = a[col]
        factors = a[:, col].copy()
        factors[col] = 0
        rows = factors != 0
        if not rows.any():
            continue
        fvals = factors[rows]
        n_generic = int(np.count_nonzero(fvals != 1))  # factors are nonzero already
        pnz = prow != 0
        ops.multiplications += n_generic * int(np.count_nonzero(pnz & (prow != 1)))
        ops.additions += int(np.count_nonzero(a[rows][:, pnz]))
        a[rows] = (a[rows] - np.outer(fvals, prow)) % q
        if p is None:
            ops.additions += int(np.count_nonzero(rows))
            ops.multiplications += n_generic
        else:
            pc = int(p[col])
            if pc:
                ops.additions += int(np.count_nonzero(p[rows]))
                if pc != 1:
                    ops.multiplications += n_generic
                p[rows] = (p[rows] - fvals * pc) % q
    return p, ops


def decode(c: MatrixGF, payload) -> tuple[np.ndarray, OpCounter]:
    """Solve c x = payload, returning the solution and the op counts."""
    vec = as_vector(c.field, payload, c.rows)
    solution, ops = _gauss_jordan(c, vec)
    return solution, ops


def decode_count_only(c: MatrixGF) -> OpCounter:
    """Op counts for decoding c against a symbolic all-nonzero payload."""
    _, ops = _gauss_jordan(c, None)
    return ops
