"""Monomial orders and the packed-integer monomial encoding.

A monomial in ``n`` variables is stored as one Python int made of 16-bit
fields.  The high fields hold an order-specific linear image of the exponent
vector chosen so that plain integer comparison *is* the monomial order; the
low ``n`` fields hold the raw exponents.  Because every field is linear in the
exponents, multiplication is integer addition, and divisibility is a single
borrow test against the guard bit (bit 15) of every field.

For grevlex the order fields are ``(deg, s_{n-2}, ..., s_0)`` with
``s_j = e_0 + ... + e_j``: on monomials of equal degree, a smaller last
exponent means a larger prefix sum, which is exactly reverse-lex tie breaking.
"""

from __future__ import annotations

from dataclasses import dataclass

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1


@dataclass(frozen=True)
class MonomialOrder:
    """``kind`` is ``'grevlex'``, ``'lex'`` or ``'elim'`` (block order, ``k`` first variables)."""

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.k < 0:
            raise ValueError("block size must be non-negative")

    def __str__(self):
        return f"elim({self.k})" if self.kind == "elim" else self.kind

    def order_fields(self, n: int) -> list[list[int]]:
        """Each order field as the list of variable indices it sums."""
        if self.kind == "lex":
            return [[i] for i in range(n)]
        if self.kind == "grevlex":
            return _grevlex_fields(list(range(n)))
        k = min(self.k, n)
        return _grevlex_fields(list(range(k))) + _grevlex_fields(list(range(k, n)))


def _grevlex_fields(block: list[int]) -> list[list[int]]:
    if not block:
        return []
    fields = [list(block)]
    for j in range(len(block) - 2, -1, -1):
        fields.append(block[: j + 1])
    return fields


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elim(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


class Encoding:
    """Packing of exponent vectors for one (nvars, order) pair."""

    def __init__(self, n: int, order: MonomialOrder):
        self.n = n
        self.order = order
        ofields = order.order_fields(n)
        nfields = len(ofields) + n
        self.nfields = nfields
        units = [0] * n
        for pos, vars_ in enumerate(ofields):
            shift = FIELD_BITS * (nfields - 1 - pos)
            for i in vars_:
                units[i] += 1 << shift
        for i in range(n):
            units[i] += 1 << (FIELD_BITS * (n - 1 - i))
        self.units = tuple(units)
        self.guard = sum(1 << (FIELD_BITS * f + FIELD_BITS - 1) for f in range(nfields))
        self.raw_shifts = tuple(FIELD_BITS * (n - 1 - i) for i in range(n))
        self.deg_shift = FIELD_BITS * (nfields - 1) if order.kind == "grevlex" and n else None

    def encode(self, exps) -> int:
        m = 0
        for e, u in zip(exps, self.units):
            if e:
                if e < 0 or e > MAX_EXPONENT:
                    raise OverflowError(f"exponent {e} out of range")
                m += e * u
        return m

    def decode(self, m: int) -> tuple[int, ...]:
        return tuple((m >> s) & FIELD_MASK for s in self.raw_shifts)

    def degree(self, m: int) -> int:
        if self.deg_shift is not None:
            return m >> self.deg_shift
        return sum((m >> s) & FIELD_MASK for s in self.raw_shifts)

    def divides(self, a: int, b: int) -> bool:
        return not ((b - a) & self.guard)

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.decode(a), self.decode(b)
        return self.encode([x if x > y else y for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        for s in self.raw_shifts:
            if (a >> s) & FIELD_MASK and (b >> s) & FIELD_MASK:
                return False
        return True


def compare_monomials(e1, e2, order: MonomialOrder) -> int:
    """Compare two exponent vectors: -1, 0 or 1 (LT, EQ, GT)."""
    if len(e1) != len(e2):
        raise ValueError("monomials live in rings with different variable counts")
    enc = Encoding(len(e1), order)
    a, b = enc.encode(e1), enc.encode(e2)
    return (a > b) - (a < b)
