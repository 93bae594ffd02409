import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermat2rp.arith import INF, Poly, discriminant, val_q
from fermat2rp.errors import HypothesisError
from fermat2rp.frey import build_general_curve
from fermat2rp.padic import (
    RamifiedQuadElt,
    extension_discriminant_valuation,
    is_F_irreducible_case,
    newton_polygon,
    padic_root_exists,
    ramification_data,
    root_valuation_data,
    verify_wild_chain,
    wild_conductor,
)


def unit(rng, q, bound=60):
    while True:
        u = rng.randint(-bound, bound)
        if u % q:
            return u


def sample_zs(rng, q, r, extra):
    """(z, s) with v_q(z) = 1 and v_q(s) = (r+1)/2 + extra."""
    return q * unit(rng, q), q ** ((r + 1) // 2 + extra) * unit(rng, q)


def test_newton_polygon_basic():
    assert newton_polygon(Poly([-7, 0, 1]), 7).slopes() == [Fraction(-1, 2)]
    assert newton_polygon(Poly([5]), 5).segments == ()


@settings(max_examples=100)
@given(st.lists(st.integers(-10 ** 4, 10 ** 4), min_size=2, max_size=8).filter(lambda c: c[-1] and c[0]),
       st.sampled_from([2, 3, 5, 7]))
def test_newton_polygon_shape(coeffs, q):
    poly = newton_polygon(Poly(coeffs), q)
    slopes = poly.slopes()
    assert all(a < b for a, b in zip(slopes, slopes[1:]))
    assert sum(n for _, n in poly.segments) == len(coeffs) - 1
    # every point lies on or above the hull
    for i, v in poly.points:
        for (x1, y1), (x2, y2) in zip(poly.hull, poly.hull[1:]):
            if x1 <= i <= x2:
                assert v >= y1 + Fraction(y2 - y1, x2 - x1) * (i - x1)


@pytest.mark.parametrize("r", [5, 7])
def test_newton_polygon_of_reducible_F(r):
    rng = random.Random(r)
    for extra in (1, 2, 3):
        z, s = sample_zs(rng, r, r, extra)
        poly = newton_polygon(build_general_curve(z, s, r).f, r)
        vs = val_q(s, r)
        m1, mr = Fraction(r + 1, 2) - vs, Fraction(-vs, r)
        assert poly.slopes()[0] == m1
        assert m1 < mr
        assert poly.segments[0][1] == 1


def test_irreducibility_criterion_examples():
    assert is_F_irreducible_case(5 * 2, 5 ** 3 * 3, 5, 5)
    assert not is_F_irreducible_case(5 * 2, 5 ** 4 * 3, 5, 5)
    assert not is_F_irreducible_case(3 * 2, 3 ** 3, 3, 5)
    with pytest.raises(HypothesisError):
        is_F_irreducible_case(9, 5 ** 3, 3, 5)
    with pytest.raises(HypothesisError):
        is_F_irreducible_case(3, 3, 3, 5)


def test_padic_root_examples():
    assert padic_root_exists(Poly([-2, 0, 1]), 7)
    assert not padic_root_exists(Poly([-5, 0, 1]), 7)
    assert padic_root_exists(Poly([-1, 3]), 3)
    # 17 is a 2-adic square only through a Hensel lift past the first level
    assert padic_root_exists(Poly([-17, 0, 1]), 2)
    assert not padic_root_exists(Poly([-3, 0, 1]), 2)


def test_padic_root_rational_input():
    # roots 1/3 and 9: the first is not 3-integral
    assert padic_root_exists(Poly([3, -28, 3]), 3)
    assert not padic_root_exists(Poly([Fraction(1, 3), 0, -Fraction(2, 3)]), 5)


@pytest.mark.parametrize("r", [5, 7])
@pytest.mark.parametrize("q,extra", [(None, 0), (None, 1), (None, 2), (3, 0), (13, 1)])
def test_root_oracle_agrees_with_criterion(r, q, extra):
    q = q or r
    rng = random.Random(1000 * r + 10 * q + extra)
    for _ in range(20):
        z, s = sample_zs(rng, q, r, extra)
        F = build_general_curve(z, s, r).f
        assert padic_root_exists(F, q) == (not is_F_irreducible_case(z, s, q, r))


@pytest.mark.parametrize("r", [5, 7, 11])
@pytest.mark.parametrize("where,extra", [("other", 0), ("r", 0), ("r", 1)])
def test_pairwise_valuations_sum_to_discriminant(r, where, extra):
    rng = random.Random(r + extra)
    q = r if where == "r" else 3
    z, s = sample_zs(rng, q, r, extra)
    data = root_valuation_data(z, s, q, r)
    total = 2 * sum(data.pairwise(k, j) for k in range(r) for j in range(k + 1, r))
    F = build_general_curve(z, s, r).f
    assert total == val_q(discriminant(F), q)
    expected = Fraction(1, 2) if q != r else Fraction(1, r - 1) + Fraction(1, 2)
    assert data.pairwise(0, 1) == expected
    assert data.v_alpha0 == data.v_beta0 == data.v_alpha_minus_zeta_beta == Fraction(1, 2)
    assert data.v_sqrtDelta == Fraction(r, 2)


def test_ramification_examples():
    ram = ramification_data(5 * 3, 5 ** 3 * 2, 5, 5)
    assert (ram.e_E_over_Qq_omega, ram.eps1, ram.eps2, ram.e_L_over_Qq) == (2, 2, 5, 20)
    ram = ramification_data(7 * 3, 7 ** 5 * 2, 7, 7)
    assert (ram.e_E_over_Qq_omega, ram.eps1, ram.eps2, ram.e_L_over_Qq) == (1, 3, 1, 3)
    assert ramification_data(3 * 2, 3 ** 3, 3, 5).e_L_over_Qq == 2


@pytest.mark.parametrize("r", [5, 7, 11, 13])
def test_ramification_invariants(r):
    rng = random.Random(r)
    for extra in (0, 1):
        z, s = sample_zs(rng, r, r, extra)
        ram = ramification_data(z, s, r, r)
        assert ram.e_L_over_Qq % ram.eps2 == 0
        assert ram.e_L_over_K == ram.eps2 * ram.e_E_over_Qq_omega


def test_wild_conductor_examples():
    assert wild_conductor(5 * 3, 5 ** 3 * 2, 5, 5, "Q") == 3
    assert wild_conductor(5 * 3, 5 ** 3 * 2, 5, 5, "K") == 6
    assert wild_conductor(5 * 3, 5 ** 4 * 2, 5, 5, "Q") == 0
    assert wild_conductor(3 * 2, 3 ** 3, 3, 5, "Q") == 0


@pytest.mark.parametrize("r", [5, 7, 11, 23])
def test_wild_conductor_closed_forms(r):
    z, s = r * 2, r ** ((r + 1) // 2) * 3
    assert wild_conductor(z, s, r, r, "Q") == (r + 1) // 2
    assert wild_conductor(z, s, r, r, "K") == (r * r - 1) // 4


def test_extension_discriminant_valuation():
    assert extension_discriminant_valuation(7) == 10
    assert extension_discriminant_valuation(5) == 7


def test_wild_chain_example():
    rep = verify_wild_chain(5 * 3, 5 ** 3 * 2, 5)
    assert rep.v_pi_u == 0 and rep.v_pi_u_r_minus_u == 1 and rep.v_pi_w_r_minus_w >= 2
    assert rep.disc_valuation == 7
    assert verify_wild_chain(7 * 2, 7 ** 4 * 3, 7).disc_valuation == 10


def test_wild_chain_wrong_regime():
    with pytest.raises(HypothesisError):
        verify_wild_chain(5 * 3, 5 ** 4 * 2, 5)


def ramified_elements(D, r):
    comp = st.fractions(max_denominator=r ** 3).map(lambda x: x * r ** 2)
    return st.builds(lambda x, y: RamifiedQuadElt(x, y, D, r), comp, comp)


D5 = Fraction(5 * 7, 1)


@settings(max_examples=200)
@given(ramified_elements(D5, 5), ramified_elements(D5, 5), ramified_elements(D5, 5))
def test_ramified_quadratic_arithmetic(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a.is_zero() or b.is_zero():
        assert (a * b).v_pi() is INF
    else:
        assert (a * b).v_pi() == a.v_pi() + b.v_pi()
        assert (a / b) * b == a


def test_pi_squared_is_rational():
    pi = RamifiedQuadElt(0, 1, D5, 5)
    assert pi * pi == RamifiedQuadElt(D5, 0, D5, 5)
    assert pi.v_pi() == 1
    assert RamifiedQuadElt(5, 0, D5, 5).v_pi() == 2
