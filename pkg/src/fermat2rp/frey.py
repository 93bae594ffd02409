"""Frey hyperelliptic curves attached to Ax^2 + By^r = Cz^p.

Curve constructions, closed-form discriminants, the specialisation point t0,
j-invariants of the associated elliptic curves, the checkable hypotheses of
the irreducibility/modularity/large-image results, Igusa invariants for
r = 5, and the two explicit parametrised families used for r = 5.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd

from .arith import INF, Poly, discriminant, is_prime, prime_factors, val_q
from .errors import DegenerateCurveError, DomainError


def _is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(val_q(n, p) == 1 for p in prime_factors(n)) if abs(n) > 1 else True


def _is_rth_power_free(n: int, r: int) -> bool:
    if n == 0:
        return False
    return all(val_q(n, p) < r for p in prime_factors(n)) if abs(n) > 1 else True


@dataclass(frozen=True)
class EquationInstance:
    """Coefficients (A, B, C) and exponent r of Ax^2 + By^r = Cz^p.

    A solution (a, b, c, p) may be attached; when it is, the equation and
    the coprimality gcd(Aa, Bb) = 1 are checked.
    """

    A: int
    B: int
    C: int = 1
    r: int = 5
    solution: tuple[int, int, int, int] | None = None

    def __post_init__(self):
        if 0 in (self.A, self.B, self.C):
            raise DomainError("A, B, C must be nonzero")
        if not is_prime(self.r) or self.r < 5:
            raise DomainError(f"r must be a prime >= 5, got {self.r}")
        if not _is_squarefree(self.A):
            raise DomainError(f"A = {self.A} is not square-free")
        if not _is_rth_power_free(self.B, self.r):
            raise DomainError(f"B = {self.B} is not {self.r}-th power free")
        if self.solution is not None:
            a, b, c, p = self.solution
            if not is_prime(p):
                raise DomainError(f"exponent p = {p} is not prime")
            if self.A * a * a + self.B * b ** self.r != self.C * c ** p:
                raise DomainError("(a, b, c, p) does not satisfy the equation")
            self.check_coprime(a, b)

    @property
    def genus(self) -> int:
        return (self.r - 1) // 2

    def check_coprime(self, a: int, b: int):
        if gcd(self.A * a, self.B * b) != 1:
            raise DomainError(f"gcd(Aa, Bb) = gcd({self.A * a}, {self.B * b}) != 1")

    def value(self, a: int, b: int) -> int:
        """Aa^2 + Bb^r."""
        return self.A * a * a + self.B * b ** self.r


@dataclass(frozen=True)
class HyperellipticModel:
    """y^2 = f(x) with f of odd degree r and genus (r-1)/2.

    ``discriminant`` uses the curve normalisation 2^(4g) * disc(f), the one
    in which the closed forms below are stated.
    """

    f: Poly
    cm: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.f.degree % 2 == 0:
            raise DomainError("odd-degree model expected")

    @property
    def degree(self) -> int:
        return self.f.degree

    @property
    def genus(self) -> int:
        return (self.f.degree - 1) // 2

    @cached_property
    def poly_discriminant(self) -> int:
        return discriminant(self.f)

    @cached_property
    def discriminant(self) -> int:
        return 2 ** (4 * self.genus) * self.poly_discriminant

    def coefficients(self) -> list[int]:
        return list(self.f.coeffs)


@lru_cache(maxsize=None)
def minimal_poly_omega(r: int) -> Poly:
    """Minimal polynomial over Q of omega = zeta_r + zeta_r^{-1}.

    Expands prod_{j=1}^{(r-1)/2} (x - zeta^j - zeta^-j) with coefficients in
    Z[zeta]/(zeta^r - 1); each coefficient comes out as c0 + c1*(zeta + ... +
    zeta^{r-1}), which is the rational integer c0 - c1 modulo Phi_r.
    """
    if not is_prime(r) or r < 3:
        raise DomainError(f"r must be an odd prime, got {r}")

    def mul(u, v):
        out = [0] * r
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        out[(i + j) % r] += a * b
        return out

    # polynomial in x as a list of cyclotomic coefficient vectors
    prod = [[1] + [0] * (r - 1)]
    for j in range(1, (r - 1) // 2 + 1):
        neg_omega = [0] * r
        neg_omega[j] -= 1
        neg_omega[r - j] -= 1
        nxt = [[0] * r for _ in range(len(prod) + 1)]
        for k, c in enumerate(prod):
            nxt[k + 1] = [a + b for a, b in zip(nxt[k + 1], c)]
            nxt[k] = [a + b for a, b in zip(nxt[k], mul(c, neg_omega))]
        prod = nxt
    coeffs = []
    for c in prod:
        if len(set(c[1:])) != 1:
            raise AssertionError("coefficient of h(x) is not rational")
        coeffs.append(c[0] - c[1])
    return Poly(coeffs)


def _odd_part_expansion(m: int, r: int) -> Poly:
    """m^{(r-1)/2} * x * h(2 + x^2 / m), expanded exactly."""
    h = minimal_poly_omega(r)
    m = Fraction(m)
    arg = Poly((2, 0, 1 / m))
    core = h(arg).scale(m ** ((r - 1) // 2))
    return core * Poly.x()


def build_frey_curve(inst: EquationInstance, a: int, b: int) -> HyperellipticModel:
    """The Frey curve C_{2,r}(a, b) as an integral odd-degree model."""
    A, B, r = inst.A, inst.B, inst.r
    inst.check_coprime(a, b)
    if inst.value(a, b) == 0:
        raise DegenerateCurveError("Aa^2 + Bb^r = 0")
    const = 2 * A ** ((r + 1) // 2) * B ** ((r - 1) // 2) * a
    if b == 0:
        return HyperellipticModel(Poly.monomial(1, r) + const, cm=f"Q(zeta_{r})")
    f = _odd_part_expansion(A * B * b, r) + const
    if not f.is_integral():
        raise AssertionError(f"non-integral Frey model {f}")
    cm = "Q(i)" if a == 0 else None
    return HyperellipticModel(f, cm=cm)


def frey_discriminant(inst: EquationInstance, a: int, b: int) -> int:
    """Closed-form curve discriminant of C_{2,r}(a, b)."""
    A, B, r = inst.A, inst.B, inst.r
    g = (r - 1) // 2
    return ((-1) ** g * 2 ** (3 * (r - 1)) * r ** r * A ** (r * (r - 1) // 2)
            * B ** ((r - 1) ** 2 // 2) * inst.value(a, b) ** g)


@dataclass(frozen=True)
class GeneralParams:
    z: int
    s: int
    r: int

    @property
    def delta(self) -> int:
        return self.s * self.s - 4 * self.z ** self.r

    def curve_discriminant(self) -> int:
        """(-1)^{(r-1)/2} 2^{2(r-1)} r^r Delta^{(r-1)/2}."""
        g = (self.r - 1) // 2
        return (-1) ** g * 2 ** (2 * (self.r - 1)) * self.r ** self.r * self.delta ** g


def general_params(inst: EquationInstance, a: int, b: int) -> GeneralParams:
    A, B, r = inst.A, inst.B, inst.r
    return GeneralParams(z=-A * B * b, s=2 * A ** ((r + 1) // 2) * B ** ((r - 1) // 2) * a, r=r)


def build_general_curve(z: int, s: int, r: int) -> HyperellipticModel:
    """C(z, s): y^2 = (-z)^{(r-1)/2} x h(2 - x^2/z) + s."""
    if z == 0:
        raise DomainError("z = 0: use the b = 0 branch of the Frey curve")
    f = _odd_part_expansion(-z, r) + s
    return HyperellipticModel(f)


@dataclass(frozen=True)
class SpecializationPoint:
    t0: Fraction
    t0_product: Fraction
    twist_factor: Fraction


def specialize(inst: EquationInstance, a: int, b: int) -> SpecializationPoint:
    if a * b == 0:
        raise DomainError("trivial solution: ab = 0")
    total = inst.value(a, b)
    if total == 0:
        raise DegenerateCurveError("Aa^2 + Bb^r = 0")
    t0 = Fraction(inst.A * a * a, total)
    twist = abs(Fraction(b ** ((inst.r - 1) // 2) * a, total))
    return SpecializationPoint(t0=t0, t0_product=t0 * (t0 - 1), twist_factor=twist)


def j_darmon(t: Fraction) -> Fraction:
    """j-invariant of y^2 = x^3 + 2x^2 + t x."""
    return 64 * (4 - 3 * t) ** 3 / (t * t * (1 - t))


def j_isogenous(t: Fraction) -> Fraction:
    """j-invariant of y^2 = x^3 - 4x^2 + 4(1 - t)x."""
    return 64 * (3 * t + 1) ** 3 / (t * (t - 1) ** 2)


def darmon_j_invariants(inst: EquationInstance, a: int, b: int) -> tuple[Fraction, Fraction]:
    """(j(C_2), j(C_2')) at t = 1/t0."""
    t0 = specialize(inst, a, b).t0
    if t0 in (0, 1):
        raise DegenerateCurveError("t0 in {0, 1}")
    X, Y = inst.A * a * a, inst.B * b ** inst.r
    j2 = Fraction(-64 * (X - 3 * Y) ** 3, (X + Y) ** 2 * Y)
    if j2 != 64 * (4 * t0 - 3) ** 3 / (t0 - 1):
        raise AssertionError("j(C_2) closed forms disagree")
    return j2, j_isogenous(1 / t0)


@dataclass(frozen=True)
class HypothesisReport:
    r: int
    aa2: int
    bbr: int
    cm: str | None
    irreducible_r_ge_11: bool | None
    irreducible_r_7: bool | None
    modularity: bool | None
    large_image: bool | None
    large_image_witness: int | None
    notes: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "Aa2": str(self.aa2),
            "Bb^r": str(self.bbr),
            "cm": self.cm,
            "irreducible_r_ge_11": self.irreducible_r_ge_11,
            "irreducible_r_7": self.irreducible_r_7,
            "modularity": self.modularity,
            "large_image": self.large_image,
            "large_image_witness": self.large_image_witness,
            "notes": list(self.notes),
        }


R11_EXCLUDED_PAIRS = frozenset(
    pair for i in range(7) for pair in ((2 ** i + 1, -1), (2 ** i - 1, 1))
)
R7_EXCLUDED_PAIRS = frozenset({(63, 1), (-63, -1), (63, -64), (-63, 64)})


def check_hypotheses(inst: EquationInstance, a: int, b: int, c: int | None = None) -> HypothesisReport:
    """Evaluate every checkable hypothesis; never raises on mathematical grounds."""
    r = inst.r
    X, Y = inst.A * a * a, inst.B * b ** r
    if c is None and inst.solution is not None:
        c = inst.solution[2]
    notes = []

    cm = None
    if b == 0:
        cm = f"Q(zeta_{r})"
    elif a == 0 and b in (1, -1):
        cm = "Q(i)"

    irr11 = None
    if r >= 11:
        cond1 = X + Y not in (1, -1)
        cond2 = (X, Y) not in R11_EXCLUDED_PAIRS
        irr11 = cond1 and cond2
        if not cond1:
            notes.append("Aa^2 + Bb^r = +-1")
        if not cond2:
            notes.append("(Aa^2, Bb^r) in {(2^i +- 1, -+1) : 0 <= i <= 6}")
    irr7 = None
    if r == 7:
        irr7 = (X, Y) not in R7_EXCLUDED_PAIRS
        if not irr7:
            notes.append("(Aa^2, Bb^7) in {(+-63, +-1), (+-63, -+64)}")
    modular = irr7 if r == 7 else irr11
    if r == 5:
        notes.append("no general modularity statement for r = 5")

    large = witness = None
    if c is not None:
        cc = inst.C * c
        if cc == 0:
            large = False
        else:
            odd = [l for l in (prime_factors(cc) if abs(cc) > 1 else []) if l not in (2, r)]
            witness = odd[0] if odd else None
            large = bool(odd) and cc % r != 0
    return HypothesisReport(r, X, Y, cm, irr11, irr7, modular, large, witness, tuple(notes))


@dataclass(frozen=True)
class IgusaInvariants:
    J2: int
    J4: int
    J6: int
    J8: int
    J10: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.J2, self.J4, self.J6, self.J8, self.J10)

    def potentially_good_at(self, q: int) -> bool:
        """Whether J_{2i}^5 / J_10^i is q-integral for i = 1..5."""
        v10 = val_q(self.J10, q)
        for i, J in enumerate(self.as_tuple(), start=1):
            vj = val_q(J, q)
            if vj is INF:
                continue
            if 5 * vj - i * v10 < 0:
                return False
        return True


def igusa_invariants_r5(a: int, b: int, c2p: int | None = None) -> tuple[IgusaInvariants, bool]:
    """Igusa invariants of y^2 = x^5 - 25bx^3 + 125b^2x - 250a, and 2-adic potential good reduction."""
    value = b ** 5 - 5 * a * a
    if c2p is not None and c2p != value:
        raise DomainError("c2p must equal -5a^2 + b^5")
    if value == 0:
        raise DegenerateCurveError("-5a^2 + b^5 = 0")
    inv = IgusaInvariants(
        J2=17500 * b ** 2,
        J4=8593750 * b ** 4,
        J6=25000000000 * a ** 2 * b - 117187500 * b ** 6,
        J8=109375000000000 * a ** 2 * b ** 3 - 18975830078125 * b ** 8,
        J10=3125000000000000 * a ** 4 - 1250000000000000 * a ** 2 * b ** 5
        + 125000000000000 * b ** 10,
    )
    return inv, inv.potentially_good_at(2)


def lmt_family(v: int) -> tuple[int, int, int]:
    """(x, y, q^alpha) with 5x^2 + (q^alpha)^2 = y^5."""
    if v == 0:
        raise DomainError("v must be nonzero")
    x = 10 * v * (80 * v ** 4 - 40 * v ** 2 + 1)
    y = 20 * v ** 2 + 1
    qa = 2000 * v ** 4 - 200 * v ** 2 + 1
    if 5 * x * x + qa * qa != y ** 5:
        raise AssertionError("LMT identity failed")
    return x, y, qa


def parametrization_check(m: int, n: int) -> tuple[int, int]:
    """(a, c^p) from coprime (m, n), not both odd."""
    if gcd(m, n) != 1:
        raise DomainError("m and n must be coprime")
    if m % 2 and n % 2:
        raise DomainError("m and n must not both be odd")
    a = 5 * n * (m ** 4 - 10 * m ** 2 * n ** 2 + 5 * n ** 4)
    cp = m * (m ** 4 - 50 * m ** 2 * n ** 2 + 125 * n ** 4)
    return a, cp
