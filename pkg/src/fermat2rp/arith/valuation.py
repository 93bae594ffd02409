from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import sympy


class _Infinity:
    """The valuation of zero. Compares above every rational, absorbs addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "+oo"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("fermat2rp.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if other == 0:
            raise ValueError("INF * 0 is undefined")
        if other < 0:
            raise ValueError("negative multiple of INF")
        return self

    __rmul__ = __mul__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def is_prime(n: int) -> bool:
    return n >= 2 and bool(sympy.isprime(n))


def prime_factors(n: int) -> list[int]:
    """Sorted distinct primes dividing the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("0 has no finite prime factorisation")
    return sorted(int(p) for p in sympy.primefactors(abs(n)))


def _int_val(n: int, q: int) -> int:
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def val_q(x, q: int):
    """q-adic valuation of a rational; ``INF`` for zero.

    Integer inputs give an ``int``; other rationals give a ``Fraction`` with
    denominator 1, so the result is always exact.
    """
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if isinstance(x, int) and not isinstance(x, bool):
        return INF if x == 0 else _int_val(abs(x), q)
    x = as_rat(x)
    if x == 0:
        return INF
    return Fraction(_int_val(abs(x.numerator), q) - _int_val(x.denominator, q))


def is_q_integral(x, q: int) -> bool:
    return val_q(x, q) >= 0
