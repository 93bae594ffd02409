"""Acceptance criteria, one test each; the terminal summary lists PASS/FAIL/SKIP per criterion."""

import os
import random
from math import gcd
from pathlib import Path

import pytest

from fermat2rp.arith import Poly, discriminant, val_q
from fermat2rp.cluster import frey_cluster_picture, inertia_orbits, tame_conductor
from fermat2rp.conductor import conductor_exponent
from fermat2rp.eliminate import (
    ALL,
    EliminationConfig,
    eliminate,
    load_newforms,
    resultant_bound,
    unit_bound,
)
from fermat2rp.frey import (
    EquationInstance,
    build_frey_curve,
    build_general_curve,
    frey_discriminant,
    igusa_invariants_r5,
    lmt_family,
)
from fermat2rp.frobenius import count_points, special_fibre_r5, trace_pair, weil_from_counts
from fermat2rp.padic import is_F_irreducible_case, padic_root_exists, verify_wild_chain, wild_conductor

DATA = Path(__file__).parent / "data"
R5 = EquationInstance(-5, 1, 1, 5)


def unit(rng, q, bound=60):
    while True:
        u = rng.randint(-bound, bound)
        if u % q:
            return u


def coprime_ab(rng, inst, bound=50):
    while True:
        a, b = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if gcd(inst.A * a, inst.B * b) == 1 and inst.value(a, b) != 0:
            return a, b


def test_criterion_01_frey_closed_form(criterion):
    with criterion(1, "r=5 Frey curve is x^5 - 25bx^3 + 125b^2x - 250a on 100 samples", 1.0):
        rng = random.Random(1)
        for _ in range(100):
            a, b = coprime_ab(rng, R5, 10 ** 6)
            model = build_frey_curve(R5, a, b)
            assert model.f == Poly([-250 * a, 125 * b * b, 0, -25 * b, 0, 1])


def test_criterion_02_discriminant_routes(criterion):
    with criterion(2, "closed-form discriminant equals the resultant route on 500 instances", 30.0):
        rng = random.Random(2)
        pairs = [(A, B) for A in (-7, -5, -3, -2, -1, 1, 2, 3, 6) for B in (-3, -1, 1, 2, 5, 7) if gcd(A, B) == 1]
        for i in range(500):
            r = (5, 7, 11)[i % 3]
            inst = EquationInstance(*rng.choice(pairs), 1, r)
            a, b = coprime_ab(rng, inst, 30)
            f = build_frey_curve(inst, a, b).f
            # the closed form carries the curve normalisation 2^(4g) on top of disc(f)
            assert frey_discriminant(inst, a, b) == 2 ** (2 * (r - 1)) * discriminant(f)


def table_entry(r, row, base):
    """Conductor exponents as printed for C(z, s) over Q_q and over K."""
    rows = {
        "q != r": (r - 1, r - 1),
        "reducible, r != 7 mod 8": (r - 1, r - 1),
        "reducible, r = 7 mod 8": (r - 3, 0),
        "irreducible": ((3 * r - 1) // 2, (r - 1) * (r + 5) // 4),
    }
    return rows[row][0 if base == "Q" else 1]


def test_criterion_03_conductor_tables_bottom_up(criterion):
    with criterion(3, "conductor tables rebuilt from cluster tame + wild parts, r in {5,7,11,23}", 10.0):
        seen = set()
        for r in (5, 7, 11, 23):
            rng = random.Random(r)
            reducible = "reducible, r = 7 mod 8" if r % 8 == 7 else "reducible, r != 7 mod 8"
            regimes = [("q != r", 3, 0), ("q != r", 11, 1), (reducible, r, 1), (reducible, r, 2),
                       ("irreducible", r, 0)]
            for row, q, extra in regimes:
                for _ in range(3):
                    z, s = q * unit(rng, q), q ** ((r + 1) // 2 + extra) * unit(rng, q)
                    for base in ("Q", "K"):
                        pic = frey_cluster_picture(z, s, q, r, base)
                        tame = tame_conductor(pic, inertia_orbits(z, s, q, r, base)).exponent
                        wild = wild_conductor(z, s, q, r, base)
                        assert tame + wild == table_entry(r, row, base), (r, row, base)
                seen.add(row)
        assert len(seen) == 4


def test_criterion_04_rep_exponent_consistency(criterion):
    with criterion(4, "rep exponent x (r-1)/2 matches the curve exponent over K when r | A"):
        for r in (5, 7, 11, 23):
            g = (r - 1) // 2
            inst = EquationInstance(r, 1, 1, r)
            # r does not divide a, then r | a
            rep = conductor_exponent(inst, 1, 1, None, r, "rep").rep_exp
            assert rep == (r + 5) // 2 and rep * g == table_entry(r, "irreducible", "K")
            rep = conductor_exponent(inst, r, 1, None, r, "rep").rep_exp
            if r % 8 == 7:
                assert rep == 0 and rep * g == table_entry(r, "reducible, r = 7 mod 8", "K")
            else:
                assert rep == 2 and rep * g == table_entry(r, "reducible, r != 7 mod 8", "K")


def test_criterion_05_irreducibility_dichotomy(criterion):
    with criterion(5, "irreducibility criterion agrees with p-adic root isolation, 50 samples/regime", 60.0):
        for r in (5, 7):
            rng = random.Random(50 + r)
            for q, extra in ((r, 0), (r, 1), (r, 2), (3, 0), (13, 1)):
                for _ in range(50):
                    z, s = q * unit(rng, q), q ** ((r + 1) // 2 + extra) * unit(rng, q)
                    has_root = padic_root_exists(build_general_curve(z, s, r).f, q)
                    assert has_root == (not is_F_irreducible_case(z, s, q, r))


def test_criterion_06_wild_chain(criterion):
    with criterion(6, "v_pi(u) = 0 and v_pi(u^r - u) = 1 in exact arithmetic, 20 samples per r"):
        for r in (5, 7):
            rng = random.Random(60 + r)
            for _ in range(20):
                z, s = r * unit(rng, r), r ** ((r + 1) // 2) * unit(rng, r)
                rep = verify_wild_chain(z, s, r)
                assert rep.v_pi_u == 0 and rep.v_pi_u_r_minus_u == 1


def test_criterion_07_special_fibre(criterion):
    with criterion(7, "special fibre y^2 = x^5 + b~^2 x: t1 = 0, |n0| in {0, 20}", 1.0):
        signs = set()
        for b in (1, 2, 3, 4):
            f = Poly([0, b * b, 0, 0, 0, 1])
            n1, n2 = count_points(f, 5, 1), count_points(f, 5, 2)
            pair = trace_pair(weil_from_counts(n1, n2, 5))
            assert pair == special_fibre_r5(b)
            assert pair.t1 == 0 and abs(pair.n0) in (0, 20)
            # n0 = 0 gives L = (1 + 5T^2)^2 and n0 = -20 gives (1 - 5T^2)^2: squares of X^2 + 5 and X^2 - 5
            signs.add(pair.n0)
        assert signs == {0, -20}


def test_criterion_08_auxiliary_bounds(criterion):
    with criterion(8, "Res(X^4 - 1, X^2 +- 5) primes {2,3}; unit N = 12, norm -320, p <= 5"):
        assert resultant_bound(Poly([-5, 0, 1]), 4) == {2, 3}
        assert resultant_bound(Poly([5, 0, 1]), 4) == {2, 3}
        ub = unit_bound()
        assert (ub.N, ub.norm, ub.bound) == (12, -320, 5)


def test_criterion_09_lmt_family(criterion):
    with criterion(9, "5x^2 + q^2 = y^5 along the family for 0 < |v| <= 100"):
        assert lmt_family(1) == (410, 21, 1801)
        for v in range(-100, 101):
            if v:
                x, y, qa = lmt_family(v)
                assert x == 10 * v * (80 * v ** 4 - 40 * v ** 2 + 1) and y == 20 * v * v + 1
                assert 5 * x * x + qa * qa == y ** 5


def test_criterion_10_elimination_soundness(criterion):
    with criterion(10, "planted forms survive; synthetic forms reduced to p <= 23; order-independent", 120.0):
        config = EliminationConfig(primes=(3, 7, 11, 13))
        planted = load_newforms(DATA / "planted_newforms.jsonl")
        assert all(f.final_survivors == ALL for f in eliminate(planted, config).forms)
        synthetic = load_newforms(DATA / "synthetic_newforms.jsonl")
        report = eliminate(synthetic, config)
        overall = report.overall_survivors()
        assert overall != ALL and all(p <= 23 for p in overall)
        assert eliminate(list(reversed(synthetic)), config).to_json() == report.to_json()
        assert eliminate(synthetic, config).to_json() == report.to_json()


def test_criterion_11_external_newform_data(criterion):
    path = os.environ.get("FERMAT2RP_NEWFORM_DATA")
    with criterion(11, "external level q2^5 r5^2 eigenvalue data gives survivors within {2,5,11}"):
        if not path:
            pytest.skip("set FERMAT2RP_NEWFORM_DATA to a JSON Lines eigenvalue file")
        overall = eliminate(load_newforms(path)).overall_survivors()
        assert overall != ALL and set(overall) <= {2, 5, 11}


def test_criterion_12_igusa(criterion):
    with criterion(12, "J2 = 17500 b^2 and J2^5/J10 is not 2-integral for odd b"):
        rng = random.Random(12)
        checked = 0
        while checked < 200:
            a, b = rng.randint(-10 ** 4, 10 ** 4), rng.randrange(-999, 1000, 2)
            if gcd(5 * a, b) != 1 or b ** 5 == 5 * a * a:
                continue
            inv, good = igusa_invariants_r5(a, b)
            assert inv.J2 == 17500 * b * b
            assert inv.J10 == build_frey_curve(R5, a, b).discriminant
            assert val_q(inv.J2 ** 5, 2) - val_q(inv.J10, 2) < 0 and not good
            checked += 1
