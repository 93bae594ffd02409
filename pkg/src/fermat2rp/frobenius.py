"""Point counts, genus-2 Weil data and Frobenius trace pairs in Z[phi].

Conventions: #C(F_N) = N + 1 + a1 with L(T) = 1 + a1 T + a2 T^2 + N a1 T^3 + N^2 T^4,
and the trace pair {a, a'} of the GL_2-type Jacobian satisfies
L(T) = (1 - a T + N T^2)(1 - a' T + N T^2), so t1 = a + a' = N + 1 - N1 and
n0 = a a' = a2 - 2N.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import FqElt, Poly, discriminant, QuadElt, field_elements, field_table, is_prime, roots_in_zphi
from .errors import DegenerateCurveError, DomainError, InconsistentCountsError, NotGL2ConsistentError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResidueFieldSpec:
    """Residue field of a prime of Q(sqrt 5) above q."""

    q: int

    def __post_init__(self):
        if not is_prime(self.q) or self.q == 2:
            raise DomainError(f"q = {self.q} must be an odd prime")

    @property
    def f(self) -> int:
        if self.q == 5:
            return 1
        return 1 if self.q % 5 in (1, 4) else 2

    @property
    def N(self) -> int:
        return self.q ** self.f


def _reduced_coeffs(f: Poly, q: int) -> list[int]:
    if not f.is_integral():
        raise DomainError("integer model required for reduction")
    return [c % q for c in f.coeffs]


def _check_smooth(coeffs: list[int], q: int):
    p = Poly(coeffs)
    if p.degree < 1 or p.degree % 2 == 0:
        raise DegenerateCurveError("reduction does not keep odd degree")
    if discriminant(p) % q == 0:
        raise DegenerateCurveError(
            f"singular reduction mod {q}: treat this prime as multiplicative or additive"
        )


def _count_table(coeffs: list[int], q: int, f: int) -> int:
    """sum over x of (1 + chi(f(x))) plus the point at infinity."""
    t = field_table(q, f)
    vals = t.evaluate(coeffs)
    zeros = int(np.count_nonzero(vals == 0))
    squares = int(np.count_nonzero(t.is_square[vals])) - zeros
    return zeros + 2 * squares + 1


def _count_solutions(coeffs: list[int], q: int, f: int) -> int:
    """Number of (x, y) with y^2 = f(x), from the table of square roots, plus infinity."""
    t = field_table(q, f)
    return int(t.square_count[t.evaluate(coeffs)].sum()) + 1


def count_points(f: Poly, q: int, degree: int = 1, check: bool = True) -> int:
    """Projective count of y^2 = f(x) over F_{q^degree}, degree 1 or 2.

    Odd degree models have a single point at infinity.
    """
    if q == 2:
        raise DomainError("even characteristic is not supported")
    if not is_prime(q):
        raise DomainError(f"{q} is not prime")
    if degree not in (1, 2):
        raise DomainError("only F_q and F_{q^2} are supported")
    coeffs = _reduced_coeffs(f, q)
    if check:
        _check_smooth(coeffs, q)
    return _count_table(coeffs, q, degree)


def count_points_euler(f: Poly, q: int, degree: int = 1) -> int:
    """Second counting path: scalar field elements and Euler's criterion."""
    coeffs = _reduced_coeffs(f, q)
    total = 1
    for x in field_elements(q, degree):
        acc = FqElt.make(q, degree, 0)
        for c in reversed(coeffs):
            acc = acc * x + c
        if acc.is_zero():
            total += 1
        elif acc.is_square():
            total += 2
    return total


@dataclass(frozen=True)
class WeilData:
    N: int
    N1: int
    N2: int
    a1: int
    a2: int

    def l_polynomial(self) -> Poly:
        return Poly((1, self.a1, self.a2, self.N * self.a1, self.N * self.N))


def weil_from_counts(N1: int, N2: int, N: int) -> WeilData:
    a1 = N1 - N - 1
    twice_a2 = N2 - N * N - 1 + a1 * a1
    if twice_a2 % 2:
        raise InconsistentCountsError(f"N1={N1}, N2={N2} give a non-integral a2 over F_{N}")
    if a1 * a1 > 16 * N:
        raise InconsistentCountsError(f"|a1| = {abs(a1)} exceeds 4 sqrt({N})")
    return WeilData(N, N1, N2, a1, twice_a2 // 2)


def counts_over_extension(N1_q: int, N2_q: int, q: int, k: int) -> int:
    """#C(F_{q^k}) from the counts over F_q and F_{q^2} of a genus-2 curve.

    Power sums s_k of the Frobenius eigenvalues follow from e1, e2 (with
    e3 = q e1, e4 = q^2) by Newton's identities.
    """
    s1 = q + 1 - N1_q
    s2 = q * q + 1 - N2_q
    e1 = s1
    twice_e2 = e1 * e1 - s2
    if twice_e2 % 2:
        raise InconsistentCountsError("counts over F_q and F_{q^2} are incompatible")
    e = [1, e1, twice_e2 // 2, q * e1, q * q]
    s = [4]
    for n in range(1, k + 1):
        val = sum((-1) ** (i - 1) * e[i] * s[n - i] for i in range(1, min(n, 4)))
        if n <= 4:
            val += (-1) ** (n - 1) * n * e[n]
        else:
            val += (-1) ** 3 * e[4] * s[n - 4]
        s.append(val)
    return q ** k + 1 - s[k]


def weil_data(f: Poly, spec: ResidueFieldSpec) -> WeilData:
    """Weil data of y^2 = f(x) over the residue field F_N of a prime above q."""
    q = spec.q
    if spec.f == 1:
        return weil_from_counts(count_points(f, q, 1), count_points(f, q, 2, check=False), q)
    n_q = count_points(f, q, 1)
    n_q2 = count_points(f, q, 2, check=False)
    return weil_from_counts(n_q2, counts_over_extension(n_q, n_q2, q, 4), q * q)


@dataclass(frozen=True)
class TracePair:
    """The unordered conjugate pair {a, a'}, stored as Y^2 - t1 Y + n0."""

    t1: int
    n0: int

    @property
    def S(self) -> int:
        """a^2 + a'^2."""
        return self.t1 * self.t1 - 2 * self.n0

    @property
    def P(self) -> int:
        """(a a')^2."""
        return self.n0 * self.n0

    def members(self) -> tuple[QuadElt, QuadElt]:
        roots = roots_in_zphi(self.t1, self.n0)
        if roots is None:
            raise NotGL2ConsistentError(f"Y^2 - {self.t1}Y + {self.n0} does not split in Z[phi]")
        return roots

    def is_rational(self) -> bool:
        return all(m.y == 0 for m in self.members())

    def as_dict(self) -> dict:
        a, b = self.members()
        return {"t1": str(self.t1), "n0": str(self.n0), "members": [str(a), str(b)]}


def within_weil_bound(t1: int, n0: int, N: int) -> bool:
    """Both roots of Y^2 - t1 Y + n0 are real and lie in [-2 sqrt N, 2 sqrt N]."""
    if t1 * t1 - 4 * n0 < 0 or t1 * t1 > 16 * N:
        return False
    # g(+-2 sqrt N) >= 0  <=>  4N + n0 >= 2 sqrt(N) |t1|
    lhs = 4 * N + n0
    return lhs >= 0 and lhs * lhs >= 4 * N * t1 * t1


def trace_pair(w: WeilData) -> TracePair:
    t1 = w.N + 1 - w.N1
    n0 = w.a2 - 2 * w.N
    if roots_in_zphi(t1, n0) is None:
        raise NotGL2ConsistentError(
            f"Frobenius data over F_{w.N} (t1={t1}, n0={n0}) does not factor over Z[phi]"
        )
    if not within_weil_bound(t1, n0, w.N):
        raise NotGL2ConsistentError(f"trace pair (t1={t1}, n0={n0}) violates the Weil bound")
    return TracePair(t1, n0)


def frey_r5_poly(a: int, b: int) -> Poly:
    """x^5 - 25 b x^3 + 125 b^2 x - 250 a."""
    return Poly((-250 * a, 125 * b * b, 0, -25 * b, 0, 1))


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("FERMAT2RP_THREADS", "1")))
    except ValueError:
        return 1


def _frey_counts_all_a(q: int, degree: int, b: int) -> np.ndarray:
    """Counts over F_{q^degree} of the curves for b and every a in 0..q-1 at once.

    The constant term -250a only shifts the first component of f(x), so the
    values of the a-free part are computed once and shifted per a.
    """
    t = field_table(q, degree)
    idx = t.evaluate([0, 125 * b * b, 0, -25 * b, 0, 1], t.power_table(5))
    u, v = idx % q, idx // q
    shift = (-250 * np.arange(q, dtype=np.int64)) % q
    shifted = (u[None, :] + shift[:, None]) % q + q * v[None, :]
    return t.square_count[shifted].sum(axis=1) + 1


def _traces_for_b(q: int, spec: ResidueFieldSpec, b: int) -> list[tuple[tuple[int, int], TracePair]]:
    # -5a^2 + b^5 != 0 mod q makes the reduction smooth: disc = 2^4 5^15 (-5a^2 + b^5)^2
    n_q = _frey_counts_all_a(q, 1, b)
    n_q2 = _frey_counts_all_a(q, 2, b)
    out = []
    for a in range(q):
        if (-5 * a * a + b ** 5) % q == 0:
            log.debug("q=%d: skipping singular residue pair (a, b) = (%d, %d)", q, a, b)
            continue
        n1, n2 = int(n_q[a]), int(n_q2[a])
        if spec.f == 1:
            w = weil_from_counts(n1, n2, q)
        else:
            w = weil_from_counts(n2, counts_over_extension(n1, n2, q, 4), q * q)
        out.append(((a, b), trace_pair(w)))
    return out


@lru_cache(maxsize=None)
def _frey_trace_table(q: int) -> tuple:
    spec = ResidueFieldSpec(q)
    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda b: _traces_for_b(q, spec, b), range(q)))
    else:
        chunks = [_traces_for_b(q, spec, b) for b in range(q)]
    skipped = q * q - sum(len(c) for c in chunks)
    log.info("trace table for q=%d: %d residue pairs, %d singular pairs skipped",
             q, q * q - skipped, skipped)
    return tuple(sorted(item for chunk in chunks for item in chunk))


def frey_trace_table(q: int) -> dict[tuple[int, int], TracePair]:
    """Trace pairs of x^5 - 25bx^3 + 125b^2x - 250a at a prime above q, per (a, b) mod q."""
    if q in (2, 5):
        raise DomainError("q must avoid 2 and 5")
    return dict(_frey_trace_table(q))


def special_fibre_r5(b_tilde: int) -> TracePair:
    """Trace pair of the special fibre y^2 = x^5 + b~^2 x at the prime above 5."""
    if b_tilde % 5 == 0:
        raise DomainError("b~ must be a unit mod 5")
    f = Poly((0, b_tilde * b_tilde, 0, 0, 0, 1))
    return trace_pair(weil_data(f, ResidueFieldSpec(5)))
