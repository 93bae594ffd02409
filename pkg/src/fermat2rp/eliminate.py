"""Newform elimination for -5a^2 + b^5 = c^{2p} over Q(sqrt 5).

For each newform g and prime q, B_q(g) is the product

    N(q) * Norm(a_q(g)^2 - (N(q)+1)^2) * prod_{(a,b)} Norm(a_q(g)^4 - S a_q(g)^2 + P)

where x^2 - S x + P has the squares of a Frey trace pair as roots. An exponent
p survives g only if it divides every nonzero B_q(g). Norms are taken from
the eigenvalue field to Q as resultants with its defining polynomial.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path

import sympy

from .arith import Poly, QuadElt, is_prime, prime_factors, quad_norm, quad_pow, resultant
from .errors import DataError, DomainError, ParseError
from .frobenius import ResidueFieldSpec, TracePair, frey_trace_table

DEFAULT_PRIMES = (3, 7, 11, 13, 17, 19, 23)
EXTENDED_PRIMES = tuple(q for q in range(3, 101) if is_prime(q) and q != 5)
BELOW_RANGE = frozenset({2, 3, 5})
ALL = "all"


@dataclass(frozen=True)
class Eigenvalue:
    q: int
    f: int
    coeffs: tuple[int, ...]
    prime: str | None = None

    @property
    def N(self) -> int:
        return self.q ** self.f


@dataclass(frozen=True)
class NewformRecord:
    label: str
    field_poly: Poly
    eigs: tuple[Eigenvalue, ...]

    @property
    def degree(self) -> int:
        return self.field_poly.degree

    def eigenvalues_at(self, q: int) -> list[Eigenvalue]:
        return [e for e in self.eigs if e.q == q]

    def element(self, e: Eigenvalue) -> Poly:
        """The eigenvalue as a polynomial in the generator theta of the field."""
        return Poly(e.coeffs)


def field_norm(field_poly: Poly, element: Poly) -> int:
    """Norm to Q of element(theta), theta a root of the monic field_poly."""
    if field_poly.degree == 1:
        return element(-field_poly.coeffs[0])
    reduced = element % field_poly
    if reduced.is_zero():
        return 0
    return resultant(field_poly, reduced)


def _charpoly(field_poly: Poly, element: Poly) -> sympy.Poly:
    """Characteristic polynomial of multiplication by element(theta) on the power basis."""
    d = field_poly.degree
    X = sympy.Symbol("X")
    cols = []
    for i in range(d):
        col = (element * Poly.monomial(1, i)) % field_poly
        cols.append([sympy.Rational(col[j]) for j in range(d)])
    M = sympy.Matrix(d, d, lambda j, i: cols[i][j])
    return sympy.Poly(M.charpoly(X).as_expr(), X)


def satisfies_deligne(field_poly: Poly, element: Poly, N: int) -> bool:
    """Every embedding of element(theta) is real with absolute value at most 2 sqrt N.

    Decided exactly with Sturm sequences: the characteristic polynomial has
    only real roots, and none of their squares exceeds 4N.
    """
    chi = _charpoly(field_poly, element)
    X = chi.gen
    sqf = sympy.Poly(sympy.quo(chi, sympy.gcd(chi, chi.diff(X))), X)
    if sqf.count_roots() != sqf.degree():
        return False
    # sqf(X) sqf(-X) is even; as a polynomial in Y = X^2 its roots are the squared embeddings
    even = (sqf * sqf.compose(sympy.Poly(-X, X))).as_dict()
    Y = sympy.Symbol("Y")
    g = sympy.Poly(sum(c * Y ** (m[0] // 2) for m, c in even.items()), Y)
    above = g.count_roots(4 * N, None) - (1 if g.eval(4 * N) == 0 else 0)
    return above == 0


def _parse_record(obj, line: int) -> NewformRecord:
    if not isinstance(obj, dict):
        raise ParseError("record must be a JSON object", line)
    try:
        label = str(obj["label"])
        fp = [int(c) for c in obj["field_poly"]]
        raw = obj["eigs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"missing or malformed field: {exc}", line) from exc
    if len(fp) < 2 or fp[-1] != 1:
        raise ParseError("field_poly must be monic of degree >= 1", line)
    field_poly = Poly(fp)
    eigs = []
    for item in raw:
        try:
            q, f = int(item["q"]), int(item["f"])
            coeffs = tuple(int(c) for c in item["a"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed eigenvalue entry: {exc}", line) from exc
        if not is_prime(q) or f not in (1, 2):
            raise ParseError(f"bad prime data q={q}, f={f}", line)
        if len(coeffs) > field_poly.degree:
            raise ParseError("eigenvalue has more coefficients than the field degree", line)
        eigs.append(Eigenvalue(q, f, coeffs, item.get("prime")))
    return NewformRecord(label, field_poly, tuple(eigs))


def load_newforms(path) -> list[NewformRecord]:
    """Read and validate a JSON Lines newform file."""
    records = []
    with Path(path).open(encoding="utf-8") as fh:
        for n, text in enumerate(fh, start=1):
            if not text.strip():
                continue
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", n) from exc
            rec = _parse_record(obj, n)
            for e in rec.eigs:
                if not satisfies_deligne(rec.field_poly, rec.element(e), e.N):
                    raise DataError(
                        f"line {n}: eigenvalue {list(e.coeffs)} of {rec.label} at q={e.q} "
                        f"violates |a| <= 2 sqrt({e.N})"
                    )
            records.append(rec)
    return records


def _grouped(table: dict[tuple[int, int], TracePair]) -> Counter:
    return Counter((tp.S, tp.P) for tp in table.values())


def b_q(g: NewformRecord, e: Eigenvalue, trace_table: dict[tuple[int, int], TracePair]) -> int:
    """B_q(g) for one eigenvalue entry; identical (S, P) factors are raised to their multiplicity."""
    spec = ResidueFieldSpec(e.q)
    if spec.f != e.f:
        raise DomainError(f"eigenvalue at q={e.q} has f={e.f}, residue degree is {spec.f}")
    N = e.N
    a = g.element(e)
    a2 = a * a
    a4 = a2 * a2
    out = N * field_norm(g.field_poly, a2 - (N + 1) ** 2)
    for (S, P), mult in sorted(_grouped(trace_table).items()):
        out *= field_norm(g.field_poly, a4 - a2.scale(S) + P) ** mult
    return out


@dataclass
class EliminationConfig:
    primes: tuple[int, ...] = DEFAULT_PRIMES
    extended_primes: tuple[int, ...] = EXTENDED_PRIMES
    floor: int = 5

    def __post_init__(self):
        if not self.primes:
            raise DomainError("empty prime list")
        for q in tuple(self.primes) + tuple(self.extended_primes):
            if q in (2, 5) or not is_prime(q):
                raise DomainError(f"prime list may not contain {q}")


@dataclass
class FormResult:
    label: str
    bq: list[tuple[str, int]]
    gcd: int
    survivors: object  # list of primes, or ALL
    flagged: bool = False
    extended: FormResult | None = None
    missing: tuple[int, ...] = ()

    @property
    def final_survivors(self):
        return self.extended.survivors if self.extended is not None else self.survivors

    def as_dict(self) -> dict:
        d = {
            "label": self.label,
            "Bq": [[q, decimal(v)] for q, v in self.bq],
            "gcd": decimal(self.gcd),
            "survivors": self.survivors if self.survivors == ALL else [str(p) for p in self.survivors],
            "below_range": [] if self.survivors == ALL
            else [str(p) for p in self.survivors if p in BELOW_RANGE],
            "flagged": self.flagged,
            "missing_primes": [str(q) for q in self.missing],
        }
        if self.extended is not None:
            d["extended"] = self.extended.as_dict()
        return d


@dataclass
class EliminationReport:
    forms: list[FormResult] = field(default_factory=list)

    def overall_survivors(self):
        out = set()
        for f in self.forms:
            s = f.final_survivors
            if s == ALL:
                return ALL
            out |= set(s)
        return sorted(out)

    def as_dict(self) -> dict:
        overall = self.overall_survivors()
        return {
            "forms": [f.as_dict() for f in self.forms],
            "survivors": overall if overall == ALL else [str(p) for p in overall],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)


_CHUNK_DIGITS = 1000
_CHUNK = 10 ** _CHUNK_DIGITS


def decimal(n: int) -> str:
    """Decimal string of n, also past the interpreter's int-to-str digit limit."""
    if n < 0:
        return "-" + decimal(-n)
    if n < _CHUNK:
        return str(n)
    k, powers = 0, [_CHUNK]
    while powers[-1] * powers[-1] <= n:
        powers.append(powers[-1] * powers[-1])
        k += 1

    def rec(m: int, level: int, pad: bool) -> str:
        if level < 0:
            return f"{m:0{_CHUNK_DIGITS}d}" if pad else str(m)
        hi, lo = divmod(m, powers[level])
        if hi == 0 and not pad:
            return rec(lo, level - 1, False)
        return rec(hi, level - 1, pad) + rec(lo, level - 1, True)

    return rec(n, k, False)


def _run_form(g: NewformRecord, primes) -> FormResult:
    bq, missing = [], []
    for q in primes:
        if not g.eigenvalues_at(q):
            missing.append(q)
            continue
        table = frey_trace_table(q)
        for e in sorted(g.eigenvalues_at(q), key=lambda e: (e.prime or "", e.coeffs)):
            tag = str(q) if e.prime is None else f"{q}:{e.prime}"
            bq.append((tag, b_q(g, e, table)))
    G = 0
    for _, v in bq:
        G = gcd(G, v)
    if G == 0:
        return FormResult(g.label, bq, 0, ALL, missing=tuple(missing))
    survivors = prime_factors(G) if G > 1 else []
    return FormResult(g.label, bq, G, survivors, missing=tuple(missing))


def eliminate(newforms: list[NewformRecord], config: EliminationConfig | None = None) -> EliminationReport:
    """Run the elimination; forms with survivors above the floor get a second pass on the extended list."""
    config = config or EliminationConfig()
    if not newforms:
        raise DomainError("no newforms supplied")
    report = EliminationReport()
    for g in sorted(newforms, key=lambda g: (g.label, g.field_poly.coeffs)):
        res = _run_form(g, config.primes)
        above = res.survivors == ALL or any(p > config.floor for p in res.survivors)
        if above:
            res.flagged = True
            res.extended = _run_form(g, config.extended_primes)
        report.forms.append(res)
    return report


def resultant_bound(charpoly: Poly, n: int):
    """Primes dividing Res(X^n - 1, charpoly), or None when the resultant vanishes."""
    if charpoly.lc != 1:
        raise DomainError("monic characteristic polynomial expected")
    res = resultant(Poly.monomial(1, n) - 1, charpoly)
    if res == 0:
        return None
    return set(prime_factors(res)) if abs(res) > 1 else set()


@dataclass(frozen=True)
class UnitBound:
    N: int
    unit: QuadElt
    norm: int
    primes: tuple[int, ...]

    @property
    def bound(self) -> int:
        return max(self.primes)


def unit_bound(modulus: QuadElt | None = None, cap: int = 1000) -> UnitBound:
    """Smallest N with phi^N = 1 mod ``modulus`` and phi^N totally positive.

    The modulus defaults to 8 sqrt 5, the ideal q2^3 r5. Returns the prime
    divisors of Norm(phi^N - 1).
    """
    modulus = modulus or QuadElt.sqrt5() * 8
    for N in range(1, cap + 1):
        u = quad_pow(QuadElt.phi(), N)
        if u.is_totally_positive() and u.is_congruent(QuadElt(1), modulus):
            nm = quad_norm(u - 1)
            return UnitBound(N, u, nm, tuple(prime_factors(nm)))
    raise DomainError(f"no unit found below the search cap {cap}")
