"""Cluster pictures, inertia orbits and the tame part of the conductor.

A picture is built from the pairwise valuations v(gamma_k - gamma_j) of the
roots. The tame exponent is 2g - |U/I| + |V/I| where U and V are the sets of
clusters singled out by the lambda-tilde / xi conditions below.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .arith import INF, prime_factors, val_q
from .errors import DomainError, ParseError, UnsupportedCaseError
from .padic import check_local_hypotheses, ramification_data, root_valuation_data


@dataclass(frozen=True)
class Cluster:
    members: frozenset
    depth: object  # Fraction, or INF for singletons

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def is_odd(self) -> bool:
        return self.size % 2 == 1

    @property
    def is_proper(self) -> bool:
        return self.size > 1


class ClusterPicture:
    """Laminar family of clusters over root indices 0..n-1, with depths."""

    def __init__(self, n: int, clusters: Iterable[Cluster]):
        self.n = n
        by_members = {}
        for c in clusters:
            by_members[c.members] = c
        for i in range(n):
            by_members.setdefault(frozenset([i]), Cluster(frozenset([i]), INF))
        self.clusters = tuple(sorted(by_members.values(), key=lambda c: (-c.size, min(c.members))))
        self._validate()
        self._parent = {}
        for c in self.clusters:
            if c.members == self.top.members:
                continue
            self._parent[c.members] = min(
                (p for p in self.clusters if c.members < p.members), key=lambda p: p.size
            )

    def _validate(self):
        top = frozenset(range(self.n))
        if not any(c.members == top for c in self.clusters):
            raise DomainError("the set of all roots must be a cluster")
        for c in self.clusters:
            if not c.members <= top or not c.members:
                raise DomainError(f"cluster {sorted(c.members)} is not a subset of the roots")
        for a in self.clusters:
            for b in self.clusters:
                if a.members & b.members and not (a.members <= b.members or b.members <= a.members):
                    raise DomainError("clusters must be nested or disjoint")
                if a.members < b.members and not a.depth > b.depth:
                    raise DomainError("depth must increase from parent to child")

    @property
    def top(self) -> Cluster:
        return self.clusters[0]

    def cluster(self, members: Iterable[int]) -> Cluster:
        key = frozenset(members)
        for c in self.clusters:
            if c.members == key:
                return c
        raise DomainError(f"{sorted(key)} is not a cluster")

    def parent(self, c: Cluster) -> Cluster | None:
        return self._parent.get(c.members)

    def children(self, c: Cluster) -> list[Cluster]:
        kids = [k for k in self.clusters if self._parent.get(k.members) == c]
        return sorted(kids, key=lambda k: min(k.members))

    def proper_clusters(self) -> list[Cluster]:
        return [c for c in self.clusters if c.is_proper]

    def is_ubereven(self, c: Cluster) -> bool:
        return not c.is_odd and all(not k.is_odd for k in self.children(c))

    def meet(self, a: Cluster, b: Cluster) -> Cluster:
        """Smallest cluster containing both."""
        both = a.members | b.members
        return min((c for c in self.clusters if both <= c.members), key=lambda c: c.size)

    def canonical(self):
        """Label-free nested form, for comparing pictures up to relabelling."""
        def form(c):
            if not c.is_proper:
                return "*"
            return (c.depth, tuple(sorted((form(k) for k in self.children(c)), key=repr)))
        return form(self.top)

    def __eq__(self, other):
        if not isinstance(other, ClusterPicture):
            return NotImplemented
        return self.n == other.n and set(self.clusters) == set(other.clusters)

    def __hash__(self):
        return hash((self.n, frozenset(self.clusters)))

    def __repr__(self):
        return f"ClusterPicture({render_ascii(self)})"


def _pairwise_lookup(pairwise, n: int) -> Callable[[int, int], Fraction]:
    if callable(pairwise):
        return pairwise
    if isinstance(pairwise, Mapping):
        return lambda k, j: pairwise[(k, j)]
    return lambda k, j: pairwise[k][j]


def build_cluster_picture(pairwise, n: int) -> ClusterPicture:
    """Cluster picture from v(gamma_k - gamma_j), given as callable, dict or matrix.

    Clusters are the sets {j : v(gamma_i - gamma_j) >= d} for every root i
    and every attained value d; the input must be symmetric and ultrametric
    (otherwise no configuration of roots realises it).
    """
    if n < 2:
        raise DomainError("need at least two roots")
    get = _pairwise_lookup(pairwise, n)
    v = {}
    for k in range(n):
        for j in range(k + 1, n):
            a, b = Fraction(get(k, j)), Fraction(get(j, k))
            if a != b:
                raise DomainError(f"pairwise valuations not symmetric at ({k}, {j})")
            v[k, j] = v[j, k] = a
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if len({i, j, k}) == 3 and v[i, k] < min(v[i, j], v[j, k]):
                    raise DomainError("pairwise valuations are not ultrametric")
    sets = set()
    for i in range(n):
        for d in {v[i, j] for j in range(n) if j != i}:
            sets.add(frozenset([i] + [j for j in range(n) if j != i and v[i, j] >= d]))
    clusters = []
    for s in sets:
        members = sorted(s)
        depth = min(v[a, b] for a in members for b in members if a < b)
        clusters.append(Cluster(s, depth))
    return ClusterPicture(n, clusters)


def frey_cluster_picture(z: int, s: int, q: int, r: int, base: str = "Q") -> ClusterPicture:
    data = root_valuation_data(z, s, q, r)
    if base == "K":
        data = data.over_K()
    elif base != "Q":
        raise DomainError(f"base must be 'Q' or 'K', got {base!r}")
    return build_cluster_picture(data.pairwise, r)


@dataclass(frozen=True)
class InertiaOrbits:
    """Partition of root indices into inertia orbits; ``blocks is None`` marks "unused"."""

    n: int
    blocks: tuple[frozenset, ...] | None

    @property
    def unused(self) -> bool:
        return self.blocks is None

    def block_of(self, i: int) -> frozenset:
        for b in self.blocks:
            if i in b:
                return b
        raise DomainError(f"root {i} is in no block")

    def stabilizer_index(self, c: Cluster) -> int:
        """[I : I_s], the size of the inertia orbit of the cluster."""
        if c.size == self.n:
            return 1
        if self.unused:
            raise UnsupportedCaseError("inertia action not determined for this prime (unused)")
        if c.size == 1:
            return len(self.block_of(next(iter(c.members))))
        if all(b <= c.members or not (b & c.members) for b in self.blocks):
            return 1
        raise UnsupportedCaseError("stabiliser index of a non-singleton cluster cut by orbits")

    def orbit_key(self, c: Cluster):
        if c.size == 1 and not self.unused:
            return self.block_of(next(iter(c.members)))
        return c.members

    def count_orbits(self, clusters: Iterable[Cluster]) -> int:
        clusters = list(clusters)
        if clusters and self.unused and any(c.size < self.n for c in clusters):
            raise UnsupportedCaseError("orbit count requested for an unused inertia action")
        return len({self.orbit_key(c) for c in clusters})


def _coset_blocks(r: int, size: int) -> tuple[frozenset, ...]:
    """Cosets of the order-``size`` subgroup of (Z/r)^*, as sets of root indices 1..r-1."""
    if (r - 1) % size:
        raise AssertionError("orbit size must divide r - 1")
    g = next(x for x in range(2, r) if all(pow(x, (r - 1) // p, r) != 1
                                              for p in prime_factors(r - 1)))
    sub = {pow(g, (r - 1) // size * k, r) for k in range(size)}
    seen, blocks = set(), []
    for j in range(1, r):
        if j not in seen:
            coset = frozenset((j * h) % r for h in sub)
            seen |= coset
            blocks.append(coset)
    return tuple(blocks)


def inertia_orbits(z: int, s: int, q: int, r: int, base: str = "Q") -> InertiaOrbits:
    """Inertia orbits on the roots gamma_0..gamma_{r-1}, from the ramification indices.

    Irreducible case: one orbit. Reducible case at q = r: the rational root
    gamma_0 is fixed and the others fall into orbits of size e(L/Q_r) (base Q)
    or e(L/K) (base K). For q != r the action is never needed and is marked
    unused.
    """
    check_local_hypotheses(z, s, q, r)
    if base not in ("Q", "K"):
        raise DomainError(f"base must be 'Q' or 'K', got {base!r}")
    if q != r:
        return InertiaOrbits(r, None)
    ram = ramification_data(z, s, q, r)
    if ram.eps2 == r:
        return InertiaOrbits(r, (frozenset(range(r)),))
    size = ram.e_L_over_Qq if base == "Q" else int(ram.e_L_over_K)
    return InertiaOrbits(r, (frozenset([0]),) + _coset_blocks(r, size))


def lambda_tilde(pic: ClusterPicture, c: Cluster) -> Fraction:
    """1/2 (#odd children * d_s + sum over roots outside s of d_{gamma ^ s})."""
    if not c.is_proper:
        raise DomainError("lambda-tilde needs a proper cluster")
    odd_children = sum(1 for k in pic.children(c) if k.is_odd)
    outside = sum(
        (pic.meet(pic.cluster([g]), c).depth for g in range(pic.n) if g not in c.members),
        Fraction(0),
    )
    return Fraction(odd_children * c.depth + outside, 2)


def xi(pic: ClusterPicture, c: Cluster, a: Fraction, orbits: InertiaOrbits) -> int:
    """max(-v_2([I : I_s] a), 0)."""
    if a == 0:
        raise DomainError("xi is undefined at 0")
    v = val_q(Fraction(a) * orbits.stabilizer_index(c), 2)
    return int(max(-v, 0))


@dataclass(frozen=True)
class TameData:
    lambda_tilde: dict
    xi_lambda: dict
    xi_depth: dict
    U: tuple
    V: tuple
    U_orbits: int
    V_orbits: int
    exponent: int


def tame_conductor(pic: ClusterPicture, orbits: InertiaOrbits) -> TameData:
    """Tame exponent 2g - |U/I| + |V/I| for an odd-degree picture."""
    if pic.n % 2 == 0:
        raise DomainError("odd number of roots expected")
    lam, xl, xd = {}, {}, {}
    for c in pic.proper_clusters():
        lam[c.members] = lambda_tilde(pic, c)
        xl[c.members] = xi(pic, c, lam[c.members], orbits)
        xd[c.members] = xi(pic, c, c.depth, orbits)
    U = tuple(
        c for c in pic.clusters
        if c.members != pic.top.members and c.is_odd
        and xl[pic.parent(c).members] <= xd[pic.parent(c).members]
    )
    V = tuple(c for c in pic.proper_clusters() if not pic.is_ubereven(c) and xl[c.members] == 0)
    nu, nv = orbits.count_orbits(U), orbits.count_orbits(V)
    return TameData(lam, xl, xd, U, V, nu, nv, (pic.n - 1) - nu + nv)


def _fmt_depth(d) -> str:
    d = Fraction(d)
    return str(d.numerator) if d.denominator == 1 else f"{d.numerator}/{d.denominator}"


def render_ascii(pic: ClusterPicture) -> str:
    """Ovals as ``( ... )_{depth}``, roots as bullets, children ordered by least root index."""
    def draw(c: Cluster) -> str:
        if not c.is_proper:
            return "•"
        inner = " ".join(draw(k) for k in pic.children(c))
        return f"( {inner} )_{{{_fmt_depth(c.depth)}}}"
    return draw(pic.top)


_TOKEN = re.compile(r"\s*(?:(\()|(\))_\{(-?\d+(?:/\d+)?)\}|(•))")


def parse_ascii(text: str) -> ClusterPicture:
    """Inverse of render_ascii; roots are labelled in order of appearance."""
    pos, stack, clusters, counter = 0, [], [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at column {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group(1):
            stack.append([])
        elif m.group(2):
            if not stack:
                raise ParseError("unbalanced ')'")
            members = stack.pop()
            if len(members) < 2:
                raise ParseError("an oval must contain at least two roots")
            clusters.append(Cluster(frozenset(members), Fraction(m.group(3))))
            if stack:
                stack[-1].extend(members)
        else:
            if not stack:
                raise ParseError("root outside any oval")
            stack[-1].append(counter)
            counter += 1
    if stack:
        raise ParseError("unbalanced '('")
    if not clusters or clusters[-1].size != counter:
        raise ParseError("the outermost oval must contain every root")
    return ClusterPicture(counter, clusters)
