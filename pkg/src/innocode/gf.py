"""Arithmetic in prime fields GF(q).

Elements are plain Python ints kept in canonical form 0 <= a < q; every
operation goes through a :class:`Field` descriptor so that the modulus is
fixed once and inverse lookups are table-driven.  GF(2) gets a dedicated
bitwise code path that is selected transparently by :func:`field_new`.
"""

from __future__ import annotations

# Canonical representative of a field element: an int in [0, q).
FieldElement = int

_INV_TABLE_LIMIT = 1 << 16


class NotPrimeError(ValueError):
    """Raised when a field modulus is composite or smaller than 2."""


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for the moduli used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Descriptor for GF(q), q prime.

    Immutable after construction and therefore safe to share between
    threads or worker processes.  For q <= 2**16 the inverse table is
    precomputed with the standard O(q) recurrence; larger primes fall
    back to Fermat exponentiation.
    """

    __slots__ = ("q", "_inv_table")

    def __init__(self, q: int):
        if not is_prime(q):
            raise NotPrimeError(f"GF modulus must be prime, got {q}")
        self.q = q
        if q <= _INV_TABLE_LIMIT:
            inv = [0] * q
            inv[1] = 1
            for a in range(2, q):
                # inv[a] = -(q // a) * inv[q % a] mod q
                inv[a] = (q - (q // a) * inv[q % a] % q) % q
            self._inv_table = inv
        else:
            self._inv_table = None

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("Field", self.q))

    # -- arithmetic ---------------------------------------------------

    def reduce(self, a: int) -> FieldElement:
        return a % self.q

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return (a + b) % self.q

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return (a - b) % self.q

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return (a * b) % self.q

    def neg(self, a: FieldElement) -> FieldElement:
        return (-a) % self.q

    def inv(self, a: FieldElement) -> FieldElement:
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of 0 in " + repr(self))
        if self._inv_table is not None:
            return self._inv_table[a % self.q]
        return pow(a, self.q - 2, self.q)

    def div(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return (a * self.inv(b)) % self.q

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        if e < 0:
            return pow(self.inv(a), -e, self.q)
        return pow(a, e, self.q)

    def arith(self, op: str, a: FieldElement, b: FieldElement | None = None) -> FieldElement:
        """Dispatch a named field operation (`add`, `sub`, `mul`, `div`,
        `neg`, `inv`, `pow`)."""
        unary = {"neg", "inv"}
        if op in unary:
            return getattr(self, op)(a)
        if b is None:
            raise TypeError(f"operation {op!r} needs a second operand")
        return getattr(self, op)(a, b)

    def elements(self):
        return range(self.q)


class _FieldGF2(Field):
    """GF(2) specialization: addition is XOR, multiplication is AND.

    Results are bit-identical to the generic modular path.
    """

    __slots__ = ()

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return a ^ b

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return a ^ b

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return a & b

    def neg(self, a: FieldElement) -> FieldElement:
        return a

    def inv(self, a: FieldElement) -> FieldElement:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2)")
        return 1


def field_new(q: int) -> Field:
    """Create the GF(q) descriptor, selecting the GF(2) fast path when q == 2."""
    if q == 2:
        return _FieldGF2(q)
    return Field(q)
