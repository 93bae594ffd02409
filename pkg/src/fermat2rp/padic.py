"""Local analysis of C(z, s) at an odd prime q with v_q(z) = 1 and v_q(s) >= (r+1)/2.

Newton polygons, the irreducibility criterion for F over Q_q with an
independent root-lifting decision procedure, closed-form root valuations,
ramification indices and the wild conductor, plus exact arithmetic in the
ramified quadratic field Q_r(pi) used to certify the wild-conductor chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arith import INF, Poly, discriminant, is_prime, val_q
from .errors import DomainError, HypothesisError


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple[tuple[int, int], ...]
    hull: tuple[tuple[int, int], ...]
    segments: tuple[tuple[Fraction, int], ...]

    def slopes(self) -> list[Fraction]:
        return [s for s, _ in self.segments]

    def root_valuations(self) -> list[tuple[Fraction, int]]:
        """(valuation, multiplicity) of the roots, read off as minus the slopes."""
        return [(-s, n) for s, n in self.segments]


def newton_polygon(f: Poly, q: int) -> NewtonPolygon:
    """Lower convex hull of the points (i, v_q(c_i)) with c_i != 0."""
    if f.is_zero():
        raise DomainError("Newton polygon of the zero polynomial")
    pts = [(i, val_q(c, q)) for i, c in enumerate(f.coeffs) if c != 0]
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the chord hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    segs = tuple(
        (Fraction(y2 - y1, x2 - x1), x2 - x1) for (x1, y1), (x2, y2) in zip(hull, hull[1:])
    )
    return NewtonPolygon(tuple(pts), tuple(hull), segs)


def check_local_hypotheses(z: int, s: int, q: int, r: int) -> None:
    """Raise HypothesisError unless q is odd, v_q(z) = 1 and v_q(s) >= (r+1)/2."""
    if not is_prime(q) or q == 2:
        raise HypothesisError(f"q = {q} must be an odd prime")
    if not is_prime(r) or r < 5:
        raise HypothesisError(f"r = {r} must be a prime >= 5")
    if val_q(z, q) != 1:
        raise HypothesisError(f"v_{q}(z) = {val_q(z, q)}, expected 1")
    if val_q(s, q) < Fraction(r + 1, 2):
        raise HypothesisError(f"v_{q}(s) = {val_q(s, q)} < (r+1)/2")


def is_F_irreducible_case(z: int, s: int, q: int, r: int) -> bool:
    check_local_hypotheses(z, s, q, r)
    return q == r and val_q(s, r) == (r + 1) // 2


def _monic_integral(f: Poly) -> Poly:
    """Monic integer polynomial whose roots are c times those of f."""
    g = f.content_free_integral()
    c, n = g.lc, g.degree
    return Poly(a * c ** (n - 1 - i) if i < n else 1 for i, a in enumerate(g.coeffs))


def padic_root_exists(f: Poly, q: int) -> bool:
    """Whether f has a root in Q_q, decided by lifting residues mod q^k.

    f is first made monic and integral, so every q-adic root lies in Z_q.
    A residue class a mod q^k survives while G(a) = 0 mod q^k; it is
    certified as containing a root once v(G(a)) > 2 v(G'(a)) (Hensel).
    If a root alpha lies in the class and k > v(G'(alpha)), the certificate
    already holds; since v(G'(alpha)) <= v(disc G), any class still
    uncertified at depth v(disc G) + 1 contains no root.
    """
    if not is_prime(q):
        raise DomainError(f"{q} is not prime")
    if f.degree < 1:
        return False
    G = _monic_integral(f)
    if G.degree == 1:
        return True
    disc = discriminant(G)
    if disc == 0:
        raise DomainError("polynomial is not squarefree")
    bound = val_q(disc, q) + 1
    dG = G.derivative()

    def certified(a: int) -> bool:
        ga = G(a)
        if ga == 0:
            return True
        d = dG(a)
        return d != 0 and val_q(ga, q) > 2 * val_q(d, q)

    level = [a for a in range(q) if G(a) % q == 0]
    k = 1
    while level:
        if any(certified(a) for a in level):
            return True
        if k >= bound:
            return False
        mod = q ** (k + 1)
        level = [a + t * q ** k for a in level for t in range(q) if G(a + t * q ** k) % mod == 0]
        k += 1
    return False


@dataclass(frozen=True)
class RootValuationData:
    q: int
    r: int
    v_alpha0: Fraction
    v_beta0: Fraction
    v_sqrtDelta: Fraction
    v_alpha_minus_zeta_beta: Fraction
    pairwise_value: Fraction
    scale: int = 1

    @property
    def pairwise(self) -> Callable[[int, int], Fraction]:
        def value(k: int, j: int) -> Fraction:
            if k == j:
                raise DomainError("pairwise valuation needs distinct roots")
            return self.pairwise_value * self.scale
        return value

    def over_K(self) -> RootValuationData:
        """Same data in the valuation of K_q normalised by v(q) = e(K_q/Q_q)."""
        e = (self.r - 1) // 2 if self.q == self.r else 1
        return RootValuationData(self.q, self.r, self.v_alpha0, self.v_beta0, self.v_sqrtDelta,
                                 self.v_alpha_minus_zeta_beta, self.pairwise_value, e)


def root_valuation_data(z: int, s: int, q: int, r: int) -> RootValuationData:
    """Valuations of alpha0, beta0, sqrt(Delta) and of the root differences over Q_q."""
    check_local_hypotheses(z, s, q, r)
    delta = s * s - 4 * z ** r
    v_sqrt = Fraction(val_q(delta, q), 2)
    if v_sqrt != Fraction(r, 2):
        raise AssertionError("v(Delta) must equal r under the local hypotheses")
    # alpha0^r and beta0^r are -(s +- sqrt Delta)/2, both of valuation r/2
    v_ab = min(v_sqrt, Fraction(val_q(s, q))) / r
    # gamma_k - gamma_j = zeta^k (1 - zeta^{j-k}) (alpha0 - zeta^{-j-k} beta0)
    v_one_minus_zeta = Fraction(1, r - 1) if q == r else Fraction(0)
    return RootValuationData(q, r, v_ab, v_ab, v_sqrt, v_ab, v_one_minus_zeta + v_ab)


@dataclass(frozen=True)
class RamificationData:
    e_E_over_Qq_omega: int
    eps1: int
    eps2: int
    e_L_over_Qq: int
    e_L_over_K: Fraction


def ramification_data(z: int, s: int, q: int, r: int) -> RamificationData:
    check_local_hypotheses(z, s, q, r)
    eps1 = (r - 1) // 2 if q == r else 1
    # E = Q_q(omega)(sqrt(-4 Delta (omega^2 - 4))) is unramified over Q_q(omega)
    # exactly when that radicand has even valuation in Q_q(omega)
    v_radicand = eps1 * val_q(s * s - 4 * z ** r, q) + (1 if q == r else 0)
    e_E = 1 if v_radicand % 2 == 0 else 2
    expected = 1 if (q == r and r % 4 == 3) else 2
    if e_E != expected:
        raise AssertionError("ramification of E disagrees with the residue-class rule")
    eps2 = r if is_F_irreducible_case(z, s, q, r) else 1
    e_L = eps1 * eps2 * e_E
    return RamificationData(e_E, eps1, eps2, e_L, Fraction(e_L, eps1))


def extension_discriminant_valuation(r: int) -> int:
    """v_r of the discriminant of Q_r(gamma_0)/Q_r in the irreducible case."""
    return (3 * r - 1) // 2


def wild_conductor(z: int, s: int, q: int, r: int, base: str = "Q") -> int:
    """Wild part of the conductor exponent of C(z, s) over Q_q or K_q.

    Non-zero only when the splitting field is wildly ramified, i.e. q = r
    and v_r(s) = (r+1)/2. There F is irreducible of degree r with a totally
    ramified root field, so n_wild = v(disc) - r + f with f = 1, and the
    exponent over K_r scales by e(K_r/Q_r) = (r-1)/2.
    """
    if base not in ("Q", "K"):
        raise DomainError(f"base must be 'Q' or 'K', got {base!r}")
    ram = ramification_data(z, s, q, r)
    if ram.e_L_over_Qq % q:
        return 0
    n_wild_Q = extension_discriminant_valuation(r) - r + 1
    return n_wild_Q if base == "Q" else n_wild_Q * (r - 1) // 2


@dataclass(frozen=True)
class RamifiedQuadElt:
    """x + y*pi with x, y rational and pi^2 = D, where v_r(D) = 1."""

    x: Fraction
    y: Fraction
    D: Fraction
    r: int

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))
        object.__setattr__(self, "D", Fraction(self.D))
        if val_q(self.D, self.r) != 1:
            raise DomainError("pi^2 must have r-adic valuation 1")

    def _like(self, x, y) -> RamifiedQuadElt:
        return RamifiedQuadElt(x, y, self.D, self.r)

    def _coerce(self, other) -> RamifiedQuadElt:
        if isinstance(other, RamifiedQuadElt):
            if (other.D, other.r) != (self.D, self.r):
                raise DomainError("elements of different fields")
            return other
        return self._like(Fraction(other), 0)

    def __add__(self, other):
        o = self._coerce(other)
        return self._like(self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self.x, -self.y)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return self._like(self.x * o.x + self.y * o.y * self.D, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def conjugate(self) -> RamifiedQuadElt:
        return self._like(self.x, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x - self.D * self.y * self.y

    def inverse(self) -> RamifiedQuadElt:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conjugate()
        return self._like(c.x / n, c.y / n)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self._like(1, 0), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def v_pi(self):
        """Valuation normalised by v_pi(pi) = 1; x and y never cancel since parities differ."""
        if self.is_zero():
            return INF
        v = min(2 * val_q(self.x, self.r), 2 * val_q(self.y, self.r) + 1)
        return int(v)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0


@dataclass(frozen=True)
class WildChainReport:
    r: int
    v_pi_u: int
    v_pi_u_r_minus_u: int
    v_pi_w_r_minus_w: object
    pi_squared: Fraction
    disc_valuation: int
    wild_Q: int
    wild_K: int

    @property
    def ok(self) -> bool:
        return self.v_pi_u == 0 and self.v_pi_u_r_minus_u == 1 and self.v_pi_w_r_minus_w >= 2


def verify_wild_chain(z: int, s: int, r: int) -> WildChainReport:
    """Certify the valuations behind the wild conductor with exact arithmetic in Q_r(pi).

    pi = sqrt(Delta) / r^{(r-1)/2}, u = -(s + sqrt Delta) / (2 pi^r) and
    w = sqrt(Delta) / (2 pi^r), which is rational.
    """
    check_local_hypotheses(z, s, r, r)
    if val_q(s, r) != (r + 1) // 2:
        raise HypothesisError("the wild chain needs v_r(s) = (r+1)/2")
    delta = s * s - 4 * z ** r
    D = Fraction(delta, r ** (r - 1))
    pi = RamifiedQuadElt(0, 1, D, r)
    if pi * pi != RamifiedQuadElt(D, 0, D, r):
        raise AssertionError("pi^2 != D")
    sqrt_delta = pi * r ** ((r - 1) // 2)
    two_pi_r = (pi ** r) * 2
    u = -(sqrt_delta + s) / two_pi_r
    w = sqrt_delta / two_pi_r
    w_closed = Fraction(r ** (r * (r - 1) // 2), 2 * delta ** ((r - 1) // 2))
    if w.y != 0 or w.x != w_closed:
        raise AssertionError("sqrt(Delta)/(2 pi^r) is not the expected rational")
    u_diff = u ** r - u
    w_diff = w ** r - w
    wild_Q = extension_discriminant_valuation(r) - r + 1
    return WildChainReport(
        r=r,
        v_pi_u=u.v_pi(),
        v_pi_u_r_minus_u=u_diff.v_pi(),
        v_pi_w_r_minus_w=w_diff.v_pi(),
        pi_squared=D,
        disc_valuation=extension_discriminant_valuation(r),
        wild_Q=wild_Q,
        wild_K=wild_Q * (r - 1) // 2,
    )
