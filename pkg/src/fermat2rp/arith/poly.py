"""Dense univariate polynomials over Z or Q with exact resultants."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Poly:
    """Immutable dense polynomial, ``coeffs[i]`` multiplies ``x**i``.

    Coefficients are ints or Fractions; integral Fractions are stored as ints
    so that integer polynomials stay integer after exact division.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_normalize(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        for c in cs:
            if not isinstance(c, (int, Fraction)) or isinstance(c, bool):
                raise TypeError(f"non-exact coefficient {c!r}")
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def x(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> Poly:
        return cls((c,))

    @classmethod
    def monomial(cls, c, n: int) -> Poly:
        return cls([0] * n + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                s = mono
            elif mono and c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}" if mono else f"{c}"
            terms.append(s)
        return " + ".join(terms).replace("+ -", "- ")

    @staticmethod
    def _coerce(other) -> Poly:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self), len(other))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> Poly:
        return Poly(c * a for a in self.coeffs)

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a number or a Poly (composition)."""
        acc = Poly() if isinstance(x, Poly) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def reverse_sign_x(self) -> Poly:
        """p(-x)."""
        return Poly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        dq = other.degree
        lc = Fraction(other.lc)
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lc
            if c == 0:
                continue
            quot[k - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= c * b
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return q

    def content_free_integral(self) -> Poly:
        """Integer multiple with coprime integer coefficients and positive lc."""
        from math import gcd, lcm

        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, c)
        sign = -1 if ints[-1] < 0 else 1
        return Poly(sign * c // g for c in ints)

    def mod_int(self, q: int) -> tuple[int, ...]:
        """Coefficients reduced into [0, q); requires integer coefficients."""
        if not self.is_integral():
            raise ValueError("reduction mod q needs integer coefficients")
        return tuple(c % q for c in self.coeffs)


def resultant(f: Poly, g: Poly):
    """Res(f, g) = lc(f)^deg g * prod over roots a of f of g(a).

    Computed by the Euclidean remainder recursion over Q; the value is an
    integer whenever f and g have integer coefficients.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    sign = 1
    acc = Fraction(1)
    while True:
        m, n = f.degree, g.degree
        if m == 0:
            return _normalize(acc * sign * Fraction(f.lc) ** n)
        if n == 0:
            return _normalize(acc * sign * Fraction(g.lc) ** m)
        if m < n:
            f, g = g, f
            if (m * n) % 2:
                sign = -sign
            continue
        # Res(f, g) = (-1)^{mn} Res(g, f) and Res(g, f) = lc(g)^{m-k} Res(g, f mod g)
        r = f % g
        if r.is_zero():
            return 0
        k = r.degree
        if (m * n) % 2:
            sign = -sign
        acc *= Fraction(g.lc) ** (m - k)
        f, g = g, r


def discriminant(f: Poly):
    """(-1)^{n(n-1)/2} Res(f, f') / lc(f); zero exactly when f has a repeated root."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    res = Fraction(resultant(f, f.derivative())) / Fraction(f.lc)
    if (n * (n - 1) // 2) % 2:
        res = -res
    return _normalize(res)
