"""Exact arithmetic in Z[phi], phi = (1 + sqrt 5)/2, the ring of integers of Q(sqrt 5)."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt


@dataclass(frozen=True)
class QuadElt:
    """x + y*phi with phi^2 = phi + 1."""

    x: int
    y: int = 0

    @classmethod
    def phi(cls) -> QuadElt:
        return cls(0, 1)

    @classmethod
    def sqrt5(cls) -> QuadElt:
        return cls(-1, 2)

    @classmethod
    def from_half_integers(cls, m: int, n: int) -> QuadElt:
        """(m + n*sqrt5)/2, requires m = n mod 2."""
        if (m - n) % 2:
            raise ValueError(f"({m} + {n}*sqrt5)/2 is not in Z[phi]")
        return cls((m - n) // 2, n)

    def half_integers(self) -> tuple[int, int]:
        """(m, n) with self = (m + n*sqrt5)/2."""
        return 2 * self.x + self.y, self.y

    @staticmethod
    def _coerce(other):
        if isinstance(other, QuadElt):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return QuadElt(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadElt(self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadElt(-self.x, -self.y)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadElt(self.x - other.x, self.y - other.y)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.x, self.y, other.x, other.y
        return QuadElt(a * c + b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return quad_pow(self, n)

    def conjugate(self) -> QuadElt:
        # phi -> 1 - phi
        return QuadElt(self.x + self.y, -self.y)

    def norm(self) -> int:
        return self.x * self.x + self.x * self.y - self.y * self.y

    def trace(self) -> int:
        return 2 * self.x + self.y

    def is_totally_positive(self) -> bool:
        return self.norm() > 0 and self.trace() > 0

    def divides(self, other: QuadElt) -> bool:
        """Whether other / self lies in Z[phi]."""
        n = self.norm()
        if n == 0:
            return other == QuadElt(0, 0)
        t = other * self.conjugate()
        return t.x % n == 0 and t.y % n == 0

    def is_congruent(self, other: QuadElt, modulus: QuadElt) -> bool:
        return modulus.divides(self - other)

    def embeddings(self) -> tuple[float, float]:
        """Floating images under phi -> (1 +- sqrt5)/2, for display only."""
        s = 5 ** 0.5
        return self.x + self.y * (1 + s) / 2, self.x + self.y * (1 - s) / 2

    def __str__(self):
        if self.y == 0:
            return str(self.x)
        if self.x == 0:
            return f"{self.y}*phi"
        sign = "+" if self.y > 0 else "-"
        return f"{self.x} {sign} {abs(self.y)}*phi"


def quad_norm(e: QuadElt) -> int:
    return e.norm()


def quad_trace(e: QuadElt) -> int:
    return e.trace()


def quad_pow(e: QuadElt, n: int) -> QuadElt:
    if n < 0:
        if abs(e.norm()) != 1:
            raise ValueError("negative power of a non-unit")
        e, n = e.conjugate() * e.norm(), -n
    result, base = QuadElt(1, 0), e
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def roots_in_zphi(t1: int, n0: int) -> tuple[QuadElt, QuadElt] | None:
    """Roots of Y^2 - t1*Y + n0 in Z[phi], or None if it does not split there.

    Both roots are real, so the discriminant must be a square or five times a
    square; parity then always works out (disc = t1^2 mod 4).
    """
    disc = t1 * t1 - 4 * n0
    if disc < 0:
        return None
    if _is_square(disc):
        k = isqrt(disc)
        return QuadElt((t1 + k) // 2), QuadElt((t1 - k) // 2)
    if disc % 5 == 0 and _is_square(disc // 5):
        k = isqrt(disc // 5)
        return QuadElt.from_half_integers(t1, k), QuadElt.from_half_integers(t1, -k)
    return None
