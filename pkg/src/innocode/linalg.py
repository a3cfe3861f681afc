"""Matrix algebra over GF(q).

Dense row-major matrices backed by int64 numpy arrays, plus the
fraction-free Bareiss engine used to read off last-row cofactors of a
matrix whose bottom row is symbolic.  The Bareiss elimination runs
entirely in the field: the division step divides by the previous pivot,
which is exact because every pivot is kept nonzero through virtual
row/column exchanges (tracked by a permutation sign so cofactor signs
stay correct).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import Field, FieldElement


class DimensionMismatchError(ValueError):
    """Operands have incompatible shapes."""


class SingularTopError(ValueError):
    """The numeric block above the symbolic row is row-deficient."""


class RankDropError(ValueError):
    """An extension row is linearly dependent on the existing block."""


# Bareiss updates form products of three canonical values (pivot, entry,
# inverse divisor), so q**3 must stay inside int64.
_MAX_MATRIX_Q = 1 << 20


class MatrixGF:
    """Dense matrix over GF(q); entries canonical ints in [0, q).

    Treated as immutable: operations return new values.
    """

    __slots__ = ("field", "a")

    def __init__(self, field: Field, a):
        if field.q > _MAX_MATRIX_Q:
            raise ValueError(f"matrix arithmetic supports q <= {_MAX_MATRIX_Q}")
        arr = np.asarray(a, dtype=np.int64) % field.q
        if arr.ndim != 2:
            raise DimensionMismatchError(f"expected a 2-D array, got ndim={arr.ndim}")
        self.field = field
        self.a = arr

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "MatrixGF":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: Field, n: int) -> "MatrixGF":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def row(self, i: int) -> np.ndarray:
        return self.a[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixGF)
            and other.field == self.field
            and other.a.shape == self.a.shape
            and bool(np.array_equal(other.a, self.a))
        )

    def __repr__(self) -> str:
        return f"MatrixGF({self.field!r}, {self.a.tolist()!r})"

    def tolist(self):
        return self.a.tolist()


def as_vector(field: Field, v, length: int | None = None) -> np.ndarray:
    """Coerce to a canonical 1-D int64 vector, checking length if given."""
    arr = np.asarray(v, dtype=np.int64) % field.q
    if arr.ndim != 1:
        raise DimensionMismatchError(f"expected a vector, got ndim={arr.ndim}")
    if length is not None and arr.shape[0] != length:
        raise DimensionMismatchError(f"expected length {length}, got {arr.shape[0]}")
    return arr


def rref(m: MatrixGF) -> tuple[MatrixGF, int, list[int]]:
    """Reduced row-echelon form.

    Returns (reduced, rank, pivot_cols) with pivot columns ascending.
    """
    f = m.field
    q = f.q
    a = m.a.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = a[r] * f.inv(piv) % q
        factors = a[:, c].copy()
        factors[r] = 0
        hit = factors != 0
        if hit.any():
            a[hit] = (a[hit] - np.outer(factors[hit], a[r])) % q
        pivots.append(c)
        r += 1
    return MatrixGF(f, a), r, pivots


def rank(m: MatrixGF) -> int:
    return rref(m)[1]


def row_space_contains(m: MatrixGF, v) -> bool:
    """True iff v is a linear combination of m's rows."""
    f = m.field
    vec = as_vector(f, v, m.cols)
    reduced, _, pivots = rref(m)
    res = vec.copy()
    for i, p in enumerate(pivots):
        coef = int(res[p])
        if coef:
            res = (res - coef * reduced.a[i]) % f.q
    return not res.any()


def nullspace_basis(m: MatrixGF) -> MatrixGF:
    """Rows spanning {v : m v^T = 0}; row count = cols - rank(m).

    The basis is the canonical one read off the RREF free columns.
    """
    f = m.field
    reduced, rk, pivots = rref(m)
    n = m.cols
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for i, p in enumerate(pivots):
            basis[k, p] = (-int(reduced.a[i, c])) % f.q
    return MatrixGF(f, basis)


def det(m: MatrixGF) -> FieldElement:
    """Determinant of a square matrix via plain Gaussian elimination."""
    f = m.field
    q = f.q
    a = m.a.copy()
    n, cols = a.shape
    if n != cols:
        raise DimensionMismatchError("determinant needs a square matrix")
    sign_flip = False
    d = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        p = c + int(nz[0])
        if p != c:
            a[[c, p]] = a[[p, c]]
            sign_flip = not sign_flip
        piv = int(a[c, c])
        d = d * piv % q
        inv = f.inv(piv)
        factors = a[c + 1 :, c] * inv % q
        hit = factors != 0
        if hit.any():
            a[c + 1 :][hit] = (a[c + 1 :][hit] - np.outer(factors[hit], a[c])) % q
    return (q - d) % q if sign_flip else d


@dataclass
class CofactorPolynomial:
    """Linear form sum_j coeffs[j] * x_j read from a symbolic last row.

    coeffs[j] is the signed cofactor of position (last row, column j) in
    the square matrix [top; x], columns ordered by ascending j.  The
    constant term is always zero for a purely symbolic row; it is kept
    so the type can also carry partially evaluated forms.
    """

    coeffs: dict[int, FieldElement]
    constant: FieldElement = 0

    def coefficient(self, j: int) -> FieldElement:
        return self.coeffs.get(j, 0)

    def nonzero_indices(self) -> list[int]:
        return sorted(j for j, c in self.coeffs.items() if c)

    def largest_nonzero_index(self) -> int | None:
        nz = self.nonzero_indices()
        return nz[-1] if nz else None

    def as_list(self, order: list[int] | None = None) -> list[FieldElement]:
        keys = order if order is not None else sorted(self.coeffs)
        return [self.coeffs.get(j, 0) for j in keys]


def _pivot_search(a: np.ndarray, k: int) -> tuple[int, int] | None:
    """First nonzero entry of a[k:, k:] in row-major order, or None."""
    sub = a[k:, k:]
    nz = np.argwhere(sub)
    if nz.size == 0:
        return None
    i, j = nz[0]
    return k + int(i), k + int(j)


def _bareiss_passes(a: np.ndarray, field: Field):
    """Run fraction-free elimination on the numeric block `a` (r x (r+1))
    with an implicit symbolic last row, yielding state after each pass.

    Yields (k, numeric, symb, sign) after pass k = 1..r where `symb[p]`
    is the coefficient vector (over original columns) of the symbolic
    row's entry at column position p.  Zero pivots are repaired by
    exchanging rows/columns of the numeric block (the symbolic entries
    move along with their columns); `sign` accumulates the exchanges.
    """
    q = field.q
    a = a.copy()
    r, width = a.shape
    symb = np.eye(width, dtype=np.int64)
    sign = 1
    prev_pivot_inv = 1
    for k in range(1, r + 1):
        if a[k - 1, k - 1] == 0:
            found = _pivot_search(a, k - 1)
            if found is None:
                raise SingularTopError("numeric block is row-deficient")
            i, j = found
            if i != k - 1:
                a[[k - 1, i]] = a[[i, k - 1]]
                sign = -sign
            if j != k - 1:
                a[:, [k - 1, j]] = a[:, [j, k - 1]]
                symb[[k - 1, j]] = symb[[j, k - 1]]
                sign = -sign
        piv = int(a[k - 1, k - 1])
        # numeric rows below the pivot, columns to the right
        if k < r:
            block = a[k:, k:]
            a[k:, k:] = (piv * block - np.outer(a[k:, k - 1], a[k - 1, k:])) * prev_pivot_inv % q
        # symbolic entries at positions k..width-1
        symb[k:] = (piv * symb[k:] - np.outer(a[k - 1, k:], symb[k - 1])) * prev_pivot_inv % q
        prev_pivot_inv = field.inv(piv)
        yield k, a.copy(), symb.copy(), sign


def bareiss_passes(top: MatrixGF):
    """Yield (pass_index, numeric_block, symbolic_coeffs, sign) snapshots
    after each elimination pass over `top` with its implicit symbolic
    last row; inspection hook for the in-place algorithm."""
    yield from _bareiss_passes(top.a, top.field)


def bareiss_cofactors(top: MatrixGF) -> CofactorPolynomial:
    """Signed cofactors of a symbolic row appended below `top` (r x (r+1)).

    The coefficient of x_j equals (-1)**(r + j) * det(top with column j
    deleted) for 0-based j, i.e. the cofactor of entry (r+1, j+1) of the
    (r+1) x (r+1) matrix [top; x].
    """
    f = top.field
    r, width = top.a.shape
    if width != r + 1:
        raise DimensionMismatchError(f"expected shape r x (r+1), got {r} x {width}")
    if r == 0:
        return CofactorPolynomial({0: 1})
    symb = np.eye(width, dtype=np.int64)
    sign = 1
    for _, _, symb, sign in _bareiss_passes(top.a, f):
        pass
    corner = symb[width - 1]
    if sign < 0:
        corner = (-corner) % f.q
    return CofactorPolynomial({j: int(corner[j]) for j in range(width)})


def minors_via_nullspace(top: MatrixGF) -> CofactorPolynomial:
    """Cofactor cross-check that avoids the Bareiss path entirely.

    The signed maximal minors of a full-rank r x (r+1) matrix span its
    right nullspace, so a nullspace basis vector is proportional to the
    cofactor vector.  The scale is pinned by evaluating one minor
    determinant directly (Gaussian elimination), making the result
    entry-for-entry comparable with :func:`bareiss_cofactors`.
    """
    f = top.field
    r, width = top.a.shape
    if width != r + 1:
        raise DimensionMismatchError(f"expected shape r x (r+1), got {r} x {width}")
    if r == 0:
        return CofactorPolynomial({0: 1})
    ns = nullspace_basis(top)
    if ns.rows != 1:
        raise SingularTopError("numeric block is row-deficient")
    v = ns.a[0]
    j0 = int(np.nonzero(v)[0][0])
    minor = MatrixGF(f, np.delete(top.a, j0, axis=1))
    c0 = det(minor)
    if (r + j0) % 2 == 1:
        c0 = f.neg(c0)
    scale = f.div(c0, int(v[j0]))
    scaled = v * scale % f.q
    return CofactorPolynomial({j: int(scaled[j]) for j in range(width)})


@dataclass
class ExtendStats:
    """Bookkeeping for one workspace extension (test introspection)."""

    entries_computed: int = 0
    exchanged: bool = False


class CofactorWorkspace:
    """Incremental Bareiss state for one receiver.

    Holds the eliminated numeric block of the received rows restricted
    to `col_map`, plus the transformed symbolic-row entries, so that
    adding one row and one column only computes the 2r+1 border entries
    instead of re-running the elimination.  `col_map` grows append-only
    and column exchanges rename it in place, so the stored block is
    always a clean (exchange-free) elimination of the rows restricted to
    the *current* col_map order; the read-out recovers the ascending
    column convention from the col_map sort parity.  A zero pivot can
    only appear at the final pass of an extension, where the last two
    column positions are the only candidates, so a single exchange
    repairs it or the new row is dependent (RankDropError).
    """

    __slots__ = (
        "field",
        "col_map",
        "rows",
        "work",
        "symb",
        "sign",
        "last_stats",
        "_sort_sign",
    )

    def __init__(self, field: Field, first_col: int = 0):
        if field.q > _MAX_MATRIX_Q:
            raise ValueError(f"matrix arithmetic supports q <= {_MAX_MATRIX_Q}")
        self.field = field
        self.col_map: list[int] = [first_col]
        self.rows: list[np.ndarray] = []  # original full-width rows
        # work: dim x (dim+1) eliminated numeric block
        # symb[p]: coefficient vector (over column positions) of the
        # symbolic row's entry at position p
        self.work = np.zeros((0, 1), dtype=np.int64)
        self.symb = np.eye(1, dtype=np.int64)
        self.sign = 1  # accumulated exchange parity, for introspection
        self._sort_sign = 1  # parity of the permutation sorting col_map
        self.last_stats = ExtendStats()

    @property
    def dim(self) -> int:
        return self.work.shape[0]

    @property
    def valid(self) -> bool:
        return len(self.col_map) == self.dim + 1 and len(self.rows) == self.dim

    def _div_inv(self, k: int) -> int:
        # inverse of m_{k-1,k-1} for pass k (1-based); m_00 is defined as 1
        if k <= 1:
            return 1
        return self.field.inv(int(self.work[k - 2, k - 2]))

    def extend(self, new_row, new_col: int) -> None:
        """Add one received vector (full width) and one tracked column.

        The row is restricted to the extended col_map internally.  Raises
        RankDropError, leaving the state untouched, when the restricted
        row is dependent on the existing block.
        """
        f = self.field
        q = f.q
        if new_col in self.col_map:
            raise ValueError(f"column {new_col} already tracked")
        d = self.dim
        full = np.asarray(new_row, dtype=np.int64) % q
        if self.rows and full.shape != self.rows[0].shape:
            raise DimensionMismatchError("row width differs from earlier rows")
        cmap = self.col_map + [new_col]
        stats = ExtendStats(entries_computed=2 * d + 1)

        # border column: old rows' entries at the new column, pushed
        # through the recorded passes (entry i settles after pass i)
        oc = np.array([row[new_col] for row in self.rows], dtype=np.int64)
        for k in range(1, d):
            oc[k:] = (
                int(self.work[k - 1, k - 1]) * oc[k:]
                - self.work[k:, k - 1] * int(oc[k - 1])
            ) * self._div_inv(k) % q
        wk = np.hstack([self.work, oc.reshape(-1, 1)])  # d x (d+2)

        # new numeric row, pushed through all d recorded passes
        nr = full[cmap].copy()
        for k in range(1, d + 1):
            nr[k:] = (
                int(self.work[k - 1, k - 1]) * nr[k:] - int(nr[k - 1]) * wk[k - 1, k:]
            ) * self._div_inv(k) % q

        # symbolic entry for the new column position
        sy = np.zeros((d + 2, d + 2), dtype=np.int64)
        sy[: d + 1, : d + 1] = self.symb
        sy[d + 1, d + 1] = 1
        for k in range(1, d + 1):
            sy[d + 1] = (
                int(self.work[k - 1, k - 1]) * sy[d + 1]
                - int(wk[k - 1, d + 1]) * sy[k - 1]
            ) * self._div_inv(k) % q

        wk = np.vstack([wk, nr.reshape(1, -1)])  # (d+1) x (d+2)
        sign = self.sign
        sort_sign = self._sort_sign
        if sum(1 for c in self.col_map if c > new_col) % 2 == 1:
            sort_sign = -sort_sign

        # final pass k = d+1: pivot must come from the new row
        if wk[d, d] == 0:
            if wk[d, d + 1] == 0:
                raise RankDropError("new row is dependent on the existing block")
            wk[:, [d, d + 1]] = wk[:, [d + 1, d]]
            sy[[d, d + 1]] = sy[[d + 1, d]]
            sy[:, [d, d + 1]] = sy[:, [d + 1, d]]
            cmap[d], cmap[d + 1] = cmap[d + 1], cmap[d]
            sign = -sign
            sort_sign = -sort_sign
            stats.exchanged = True
        piv = int(wk[d, d])
        div_inv = 1 if d == 0 else f.inv(int(wk[d - 1, d - 1]))
        sy[d + 1] = (piv * sy[d + 1] - int(wk[d, d + 1]) * sy[d]) * div_inv % q

        self.rows.append(full)
        self.col_map = cmap
        self.work = wk
        self.symb = sy
        self.sign = sign
        self._sort_sign = sort_sign
        self.last_stats = stats

    def cofactor_polynomial(self) -> CofactorPolynomial:
        """Cofactors of the symbolic last row of [rows | x] restricted to
        col_map, with columns taken in ascending index order (the natural
        convention for the per-receiver square matrix)."""
        corner = self.symb[self.dim]
        if self._sort_sign < 0:
            corner = (-corner) % self.field.q
        return CofactorPolynomial(
            {self.col_map[p]: int(corner[p]) for p in range(self.dim + 1)}
        )


def bareiss_extend(w: CofactorWorkspace, new_row, new_col: int) -> CofactorWorkspace:
    """Functional-style wrapper over :meth:`CofactorWorkspace.extend`."""
    w.extend(new_row, new_col)
    return w
