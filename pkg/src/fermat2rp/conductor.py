"""Prime classification and conductor exponents for the Frey curve C_{2,r}(a, b).

Exponents are reported for the curve over Q_q, for the curve over K_q
(K = Q(zeta_r)^+) and for the 2-dimensional system of its Jacobian. The
Jacobian is of GL_2-type over K with g = (r-1)/2, so wherever both are known
the curve exponent over K is g times the representation exponent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import is_prime, prime_factors, val_q
from .cluster import frey_cluster_picture, inertia_orbits, tame_conductor
from .errors import DomainError, UnsupportedCaseError
from .frey import EquationInstance, build_frey_curve, general_params
from .padic import is_F_irreducible_case, padic_root_exists, wild_conductor

GOOD = "good"
MULTIPLICATIVE = "multiplicative"
POT_GOOD_AB = "potentially_good_q_divides_AB"
AT_R = "at_r"
AT_TWO = "at_two"

# rows of the conductor exponent at the prime above r, in order
R_ROWS = {
    "rA_ra_not7": "r|A, r|a, r != 7 mod 8",
    "rA_ra_7": "r|A, r|a, r = 7 mod 8",
    "rA_rna": "r|A, r does not divide a",
    "rnABCc_reducible": "r does not divide ABCc, F reducible over Q_r",
    "rnABCc_irreducible": "r does not divide ABCc, F irreducible over Q_r",
    "rB_rnA": "r|B, r does not divide A",
    "rnABc_vC1": "r does not divide ABc, v_r(C) = 1",
    "rnABc_vC2": "r does not divide ABc, v_r(C) = 2",
    "rnAB_rc_or_vC3": "r does not divide AB, r|c or v_r(C) >= 3",
    "undetermined": "r does not divide AB, r | Aa^2 + Bb^r, c unknown",
}

TWO_OUTCOMES = {"v2_ge6": 2, "outcome_2a": 5, "outcome_2c": 6}


@dataclass(frozen=True)
class PrimeCase:
    kind: str
    subcase: str | None = None

    def __str__(self):
        return self.kind if self.subcase is None else f"{self.kind}({self.subcase})"


def rep_exponent_at_r(row: str, r: int) -> int:
    """Representation conductor exponent at the prime above r, by row."""
    table = {
        "rA_ra_not7": 2,
        "rA_ra_7": 0,
        "rA_rna": (r + 5) // 2,
        "rnABCc_reducible": 2,
        "rnABCc_irreducible": 3,
        "rB_rnA": r + 2,
        "rnABc_vC1": (r + 5) // 2,
        "rnABc_vC2": 3,
        "rnAB_rc_or_vC3": 2,
    }
    if row not in table:
        raise UnsupportedCaseError(f"no conductor formula for row {row!r}")
    return table[row]


def curve_conductor_table(r: int, regime: str, base: str) -> int:
    """Conductor exponent of C(z, s) under v_q(z) = 1, v_q(s) >= (r+1)/2.

    regime is "q_ne_r", "reducible" (q = r, v_r(s) >= (r+3)/2) or
    "irreducible" (q = r, v_r(s) = (r+1)/2).
    """
    if regime == "q_ne_r":
        return r - 1
    if regime == "reducible":
        if r % 8 != 7:
            return r - 1
        return r - 3 if base == "Q" else 0
    if regime == "irreducible":
        return (3 * r - 1) // 2 if base == "Q" else (r - 1) * (r + 5) // 4
    raise DomainError(f"unknown regime {regime!r}")


def _regime(z: int, s: int, q: int, r: int) -> str:
    if q != r:
        return "q_ne_r"
    return "irreducible" if is_F_irreducible_case(z, s, q, r) else "reducible"


def classify_prime(inst: EquationInstance, a: int, b: int, c: int | None, q: int) -> PrimeCase:
    if not is_prime(q):
        raise DomainError(f"{q} is not prime")
    inst.check_coprime(a, b)
    A, B, C, r = inst.A, inst.B, inst.C, inst.r
    if c is None and inst.solution is not None:
        c = inst.solution[2]
    value = inst.value(a, b)
    if q == 2:
        if val_q(B * b ** r, 2) >= 6:
            return PrimeCase(AT_TWO, "v2_ge6")
        if (A, B, r) == (-5, 1, 5):
            if a % 2 == 0:
                return PrimeCase(AT_TWO, "outcome_2a")
            if c is not None and c % 2 == 0:
                return PrimeCase(AT_TWO, "outcome_2c")
        return PrimeCase(AT_TWO, "unknown")
    if q == r:
        if A % r == 0:
            gp = general_params(inst, a, b)
            z, s = gp.z, gp.s
            reducible = not is_F_irreducible_case(z, s, r, r)
            if reducible != (a % r == 0):
                raise AssertionError("v_r(s) threshold disagrees with r | a")
            if a % r == 0:
                return PrimeCase(AT_R, "rA_ra_7" if r % 8 == 7 else "rA_ra_not7")
            return PrimeCase(AT_R, "rA_rna")
        if B % r == 0:
            return PrimeCase(AT_R, "rB_rnA")
        if value % r:
            f = build_frey_curve(inst, a, b).f
            row = "rnABCc_reducible" if padic_root_exists(f, r) else "rnABCc_irreducible"
            return PrimeCase(AT_R, row)
        if c is None:
            return PrimeCase(AT_R, "undetermined")
        vC = val_q(C, r)
        if c % r == 0 or vC >= 3:
            return PrimeCase(AT_R, "rnAB_rc_or_vC3")
        return PrimeCase(AT_R, "rnABc_vC1" if vC == 1 else "rnABc_vC2")
    if (A * B) % q == 0:
        return PrimeCase(POT_GOOD_AB)
    if value % q == 0:
        return PrimeCase(MULTIPLICATIVE)
    return PrimeCase(GOOD)


@dataclass(frozen=True)
class ConductorReport:
    q: int
    case: PrimeCase
    target: str
    curve_exp_Q: int | None
    curve_exp_K: int | None
    rep_exp: int | None
    tame: int | None = None
    wild: int | None = None
    notes: tuple = field(default=())

    @property
    def value(self) -> int | None:
        return {"curve_Q": self.curve_exp_Q, "curve_K": self.curve_exp_K, "rep": self.rep_exp}[self.target]

    @property
    def total(self) -> int | None:
        if self.tame is None or self.wild is None:
            return self.value
        return self.tame + self.wild

    def as_dict(self) -> dict:
        def num(x):
            return "n/a" if x is None else str(x)
        return {
            "q": str(self.q),
            "case": str(self.case),
            "target": self.target,
            "value": num(self.value),
            "curve_exp_Q": num(self.curve_exp_Q),
            "curve_exp_K": num(self.curve_exp_K),
            "rep_exp": num(self.rep_exp),
            "tame": num(self.tame),
            "wild": num(self.wild),
            "notes": list(self.notes),
        }


def bottom_up_curve_exponent(z: int, s: int, q: int, r: int, base: str) -> tuple[int, int]:
    """(tame, wild) of C(z, s) over Q_q or K_q from the cluster picture and ramification."""
    pic = frey_cluster_picture(z, s, q, r, base)
    tame = tame_conductor(pic, inertia_orbits(z, s, q, r, base)).exponent
    return tame, wild_conductor(z, s, q, r, base)


def _local_curve_exponents(z: int, s: int, q: int, r: int) -> dict:
    out = {}
    regime = _regime(z, s, q, r)
    for base in ("Q", "K"):
        tame, wild = bottom_up_curve_exponent(z, s, q, r, base)
        table = curve_conductor_table(r, regime, base)
        if tame + wild != table:
            raise AssertionError(
                f"bottom-up exponent {tame}+{wild} disagrees with table value {table} "
                f"(r={r}, q={q}, regime={regime}, base={base})"
            )
        out[base] = (tame, wild)
    return out


TARGETS = ("curve_Q", "curve_K", "rep")


def conductor_exponent(inst: EquationInstance, a: int, b: int, c: int | None, q: int,
                       target: str = "rep") -> ConductorReport:
    if target not in TARGETS:
        raise DomainError(f"target must be one of {TARGETS}")
    case = classify_prime(inst, a, b, c, q)
    r = inst.r
    g = (r - 1) // 2
    base = "Q" if target == "curve_Q" else "K"

    def report(cq, ck, rep, local=None, notes=()):
        tame = wild = None
        if local is not None:
            tame, wild = local[base]
        return ConductorReport(q, case, target, cq, ck, rep, tame, wild, tuple(notes))

    if case.kind == GOOD:
        return report(0, 0, 0, {"Q": (0, 0), "K": (0, 0)})
    if case.kind == MULTIPLICATIVE:
        return report(g, g, 1, {"Q": (g, 0), "K": (g, 0)},
                      ["multiplicative: exponent 1 for the representation, g for the curve"])
    if case.kind == POT_GOOD_AB:
        if inst.A % q == 0:
            gp = general_params(inst, a, b)
            local = _local_curve_exponents(gp.z, gp.s, q, r)
            ck = sum(local["K"])
            if ck % g or ck // g != 2:
                raise AssertionError("curve exponent over K is not 2g at a prime dividing A")
            return report(sum(local["Q"]), ck, 2, local)
        return report(None, 2 * g, 2, None, ["q | B: representation exponent 2"])
    if case.kind == AT_TWO:
        if case.subcase not in TWO_OUTCOMES:
            raise UnsupportedCaseError(
                "conductor at 2 is only known when v_2(Bb^r) >= 6 or in the r = 5 application"
            )
        return report(None, None, TWO_OUTCOMES[case.subcase], None,
                      ["exponent of the representation twisted by a quadratic character"])
    # q = r
    rep = rep_exponent_at_r(case.subcase, r)
    if inst.A % r == 0:
        gp = general_params(inst, a, b)
        local = _local_curve_exponents(gp.z, gp.s, r, r)
        ck = sum(local["K"])
        if Fraction(ck, g) != rep:
            raise AssertionError(f"curve exponent {ck} over K is not g * {rep}")
        return report(sum(local["Q"]), ck, rep, local)
    return report(None, rep * g, rep)


def _split_primes_above(l: int) -> list[str]:
    """Prime ideals of Z[phi] above an odd prime l != 5, as strings."""
    if l % 5 in (1, 4):
        roots = [t for t in range(l) if (t * t - t - 1) % l == 0]
        return [f"({l}, phi - {t})" for t in roots]
    return [f"({l})"]


@dataclass(frozen=True)
class ApplicationConductor:
    s: int
    exponent_at_r5: int
    multiplicative_primes: tuple[str, ...]
    serre_level: str

    def as_dict(self) -> dict:
        return {
            "s": str(self.s),
            "exponent_at_r5": str(self.exponent_at_r5),
            "multiplicative_primes": list(self.multiplicative_primes),
            "conductor": f"q2^{self.s} * r5^2" + "".join(f" * {p}" for p in self.multiplicative_primes),
            "serre_level": self.serre_level,
        }


def application_conductor_r5(a: int, b: int, c: int, p: int | None = None) -> ApplicationConductor:
    """Conductor of the twisted representation for -5a^2 + b^5 = c^{2p} over Q(sqrt 5)."""
    inst = EquationInstance(-5, 1, 1, 5)
    inst.check_coprime(a, b)
    if p is not None and -5 * a * a + b ** 5 != c ** (2 * p):
        raise DomainError("(a, b, c) does not satisfy -5a^2 + b^5 = c^(2p)")
    if a % 2 == 0:
        s = 5
    elif c % 2 == 0:
        s = 6
    else:
        raise UnsupportedCaseError("neither 2 | a nor 2 | c")
    # twisting by the quadratic character of conductor r5 brings the untwisted
    # exponent ((r+5)/2 = 5 when 5 does not divide a) down to 2 in every case
    rep_r5 = min(conductor_exponent(inst, a, b, c, 5, "rep").rep_exp, 2)
    odd = [l for l in (prime_factors(c) if abs(c) > 1 else []) if l not in (2, 5)]
    mult = tuple(ideal for l in odd for ideal in _split_primes_above(l))
    return ApplicationConductor(s, rep_r5, mult, f"q2^{s} * r5^2")

