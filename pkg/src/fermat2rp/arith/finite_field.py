"""Finite fields F_q and F_{q^2}.

``FqElt`` is the scalar element type; ``FieldTable`` holds the whole field
as numpy component arrays for vectorised polynomial evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .valuation import is_prime


@lru_cache(maxsize=None)
def quadratic_modulus(q: int) -> tuple[int, int]:
    """(c, d) lexicographically minimal with x^2 + c x + d irreducible mod q."""
    squares = {(x * x) % q for x in range(q)}
    for c in range(q):
        for d in range(q):
            # irreducible iff the discriminant c^2 - 4d is a non-square (q odd)
            if q == 2:
                if all((x * x + c * x + d) % 2 for x in range(2)):
                    return c, d
            elif (c * c - 4 * d) % q not in squares:
                return c, d
    raise AssertionError("unreachable: every finite field has a quadratic extension")


@dataclass(frozen=True)
class FqElt:
    """Element of F_{q^f}, f in {1, 2}: value = (a0,) or (a0, a1) meaning a0 + a1*t."""

    q: int
    f: int
    value: tuple

    def __post_init__(self):
        if self.f not in (1, 2):
            raise ValueError("only F_q and F_{q^2} are supported")
        if len(self.value) != self.f:
            raise ValueError("residue vector length must equal f")
        object.__setattr__(self, "value", tuple(v % self.q for v in self.value))

    @classmethod
    def make(cls, q: int, f: int, *components: int) -> FqElt:
        comps = list(components) + [0] * (f - len(components))
        return cls(q, f, tuple(comps))

    @property
    def modulus(self) -> tuple[int, int] | None:
        return quadratic_modulus(self.q) if self.f == 2 else None

    def _check(self, other):
        if isinstance(other, int):
            return FqElt.make(self.q, self.f, other)
        if not isinstance(other, FqElt) or (other.q, other.f) != (self.q, self.f):
            raise TypeError("elements of different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FqElt(self.q, self.f, tuple(a + b for a, b in zip(self.value, other.value)))

    __radd__ = __add__

    def __neg__(self):
        return FqElt(self.q, self.f, tuple(-a for a in self.value))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if self.f == 1:
            return FqElt(self.q, 1, (self.value[0] * other.value[0],))
        c, d = self.modulus
        u1, v1 = self.value
        u2, v2 = other.value
        # t^2 = -c t - d
        vv = v1 * v2
        return FqElt(self.q, 2, (u1 * u2 - d * vv, u1 * v2 + u2 * v1 - c * vv))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = FqElt.make(self.q, self.f, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.value)

    def inverse(self) -> FqElt:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.q ** self.f - 2)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def frobenius(self) -> FqElt:
        return self ** self.q

    def is_square(self) -> bool:
        if self.is_zero():
            return True
        return (self ** ((self.q ** self.f - 1) // 2)).value == FqElt.make(self.q, self.f, 1).value


def field_elements(q: int, f: int):
    if f == 1:
        return [FqElt(q, 1, (a,)) for a in range(q)]
    return [FqElt(q, 2, (a, b)) for b in range(q) for a in range(q)]


class FieldTable:
    """All of F_{q^f} as index-aligned numpy component arrays.

    Element with components (u, v) has index u + q*v, which is also the
    position in the arrays ``u`` and ``v``.
    """

    def __init__(self, q: int, f: int):
        if not is_prime(q) or q == 2:
            raise ValueError("odd prime characteristic required")
        if f not in (1, 2):
            raise ValueError("f must be 1 or 2")
        self.q, self.f = q, f
        self.size = q ** f
        idx = np.arange(self.size, dtype=np.int64)
        self.u = idx % q
        self.v = idx // q if f == 2 else np.zeros_like(idx)
        self.c, self.d = quadratic_modulus(q) if f == 2 else (0, 0)
        sq_u, sq_v = self.mul(self.u, self.v, self.u, self.v)
        self.is_square = np.zeros(self.size, dtype=bool)
        self.is_square[self.index(sq_u, sq_v)] = True
        self.square_count = np.bincount(self.index(sq_u, sq_v), minlength=self.size)
        self._powers = self.powers(1)

    def index(self, u, v):
        return u + self.q * v

    def mul(self, u1, v1, u2, v2):
        q = self.q
        if self.f == 1:
            prod = (u1 * u2) % q
            return prod, np.zeros_like(prod)
        vv = (v1 * v2) % q
        return (u1 * u2 - self.d * vv) % q, (u1 * v2 + u2 * v1 - self.c * vv) % q

    def powers(self, n: int):
        """Component arrays of x^k for every element x, k = 0..n."""
        out = [(np.ones(self.size, dtype=np.int64), np.zeros(self.size, dtype=np.int64))]
        for _ in range(n):
            pu, pv = out[-1]
            out.append(self.mul(pu, pv, self.u, self.v))
        return out

    def power_table(self, n: int):
        """Memoised ``powers(n)``."""
        if len(self._powers) <= n:
            self._powers = self.powers(n)
        return self._powers[: n + 1]

    def evaluate(self, coeffs, powers=None):
        """Values of an F_q-coefficient polynomial at every element, as indices."""
        coeffs = [int(c) % self.q for c in coeffs]
        if powers is None:
            powers = self.power_table(len(coeffs) - 1)
        acc_u = np.zeros(self.size, dtype=np.int64)
        acc_v = np.zeros(self.size, dtype=np.int64)
        for c, (pu, pv) in zip(coeffs, powers):
            if c:
                acc_u += c * pu
                acc_v += c * pv
        return self.index(acc_u % self.q, acc_v % self.q)


@lru_cache(maxsize=64)
def field_table(q: int, f: int) -> FieldTable:
    return FieldTable(q, f)
