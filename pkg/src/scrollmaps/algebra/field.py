"""Exact coefficient fields: the rationals and prime fields F_p.

Elements are plain Python objects (``Fraction`` over Q, ``int`` in ``[0, p)``
over F_p); the prime lives on the field object, never on the elements.
"""

from __future__ import annotations

import random
from fractions import Fraction


class FieldError(ArithmeticError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, lo: int = 10007, hi: int = 32749, avoid=()) -> int:
    while True:
        q = rng.randrange(lo, hi + 1)
        if q not in avoid and is_prime(q):
            return q


class Field:
    """Q when ``p is None``, otherwise the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            p = int(p)
            if not is_prime(p):
                raise FieldError(f"{p} is not prime")
        self.p = p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def __call__(self, x) -> int | Fraction:
        """Coerce an int, Fraction or ``'a/b'`` string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    zero = property(lambda self: self(0))
    one = property(lambda self: self(1))

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else a * b % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def random(self, rng: random.Random, bound: int = 100):
        """A random element; nonzero-biased small integers over Q."""
        if self.p is None:
            return Fraction(rng.randint(-bound, bound))
        return rng.randrange(self.p)

    def random_nonzero(self, rng: random.Random, bound: int = 100):
        while True:
            a = self.random(rng, bound)
            if a:
                return a

    def to_str(self, a) -> str:
        if self.p is None:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a)

    def lift(self, a) -> int:
        """Symmetric integer representative of a residue."""
        if self.p is None:
            raise FieldError("lift is defined only for prime fields")
        return a - self.p if a > self.p // 2 else a


QQ = Field(None)


def GF(p: int) -> Field:
    return Field(p)


def check_same_field(a: Field, b: Field) -> None:
    if a != b:
        raise FieldError(f"mixed field contexts {a!r} and {b!r}")
