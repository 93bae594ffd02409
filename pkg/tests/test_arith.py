from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fermat2rp.arith import (
    INF,
    FqElt,
    Poly,
    QuadElt,
    discriminant,
    field_elements,
    field_table,
    quad_norm,
    quad_pow,
    quad_trace,
    quadratic_modulus,
    resultant,
    roots_in_zphi,
    val_q,
)

X = sympy.Symbol("X")


def to_sympy(p: Poly):
    return sum(sympy.Rational(c) * X ** i for i, c in enumerate(p.coeffs))


def sylvester_resultant(f: Poly, g: Poly):
    """det of the Sylvester matrix; sympy.resultant uses a different sign when deg f * deg g is odd."""
    n, m = f.degree, g.degree
    rows = []
    for i in range(m):
        rows.append([0] * i + list(reversed(f.coeffs)) + [0] * (m - 1 - i))
    for i in range(n):
        rows.append([0] * i + list(reversed(g.coeffs)) + [0] * (n - 1 - i))
    return sympy.Matrix(rows).det()


ints = st.integers(min_value=-50, max_value=50)
polys = st.lists(ints, min_size=2, max_size=6).filter(lambda c: c[-1] != 0).map(Poly)
rats = st.fractions(max_denominator=200).filter(lambda x: x != 0)


def test_valuation_examples():
    assert val_q(18, 3) == 2
    assert val_q(Fraction(1, 5), 5) == -1
    assert val_q(0, 7) is INF


def test_infinity_orders_above_rationals():
    assert INF > 10 ** 9
    assert INF + 3 is INF
    assert min(INF, Fraction(1, 2)) == Fraction(1, 2)


@given(rats, rats, st.sampled_from([2, 3, 5, 7]))
def test_valuation_axioms(a, b, q):
    assert val_q(a * b, q) == val_q(a, q) + val_q(b, q)
    if a + b != 0:
        assert val_q(a + b, q) >= min(val_q(a, q), val_q(b, q))


def test_resultant_examples():
    x4m1 = Poly([-1, 0, 0, 0, 1])
    assert resultant(x4m1, Poly([-5, 0, 1])) == 576
    assert resultant(x4m1, Poly([5, 0, 1])) == 576
    assert resultant(Poly([-2, 1]), Poly([-2, 1])) == 0


def test_resultant_rejects_zero():
    with pytest.raises(ValueError):
        resultant(Poly([]), Poly([1, 1]))


@settings(max_examples=80)
@given(polys, polys)
def test_resultant_matches_sylvester_determinant(f, g):
    assert resultant(f, g) == sylvester_resultant(f, g)
    sympy_value = sympy.resultant(to_sympy(f), to_sympy(g), X)
    assert abs(resultant(f, g)) == abs(sympy_value)


@settings(max_examples=60)
@given(polys, polys, polys)
def test_resultant_symmetry_and_multiplicativity(f, g, h):
    sign = (-1) ** (f.degree * g.degree)
    assert resultant(f, g) == sign * resultant(g, f)
    assert resultant(f, g * h) == resultant(f, g) * resultant(f, h)


def test_discriminant_examples():
    assert discriminant(Poly([-1, 1, 1])) == 5
    assert discriminant(Poly([-1, 0, 0, 1])) == -27


@settings(max_examples=80)
@given(polys)
def test_discriminant_matches_sympy(f):
    if f.degree >= 2:
        assert discriminant(f) == sympy.discriminant(to_sympy(f), X)


def test_frey_quintic_discriminant_is_polynomial_normalisation():
    # 2^4 5^15 16: the plain polynomial discriminant, 2^8 below the curve normalisation
    f = Poly([-250, 125, 0, -25, 0, 1])
    assert discriminant(f) == sympy.discriminant(to_sympy(f), X) == 2 ** 4 * 5 ** 15 * 16


def test_poly_division_identity():
    f, g = Poly([3, -1, 4, 1, 5]), Poly([2, 0, 1])
    q, r = f.divmod(g)
    assert q * g + r == f and r.degree < g.degree


def test_phi_power_twelve():
    u = quad_pow(QuadElt.phi(), 12)
    assert (u.x, u.y) == (89, 144)
    # 89 + 144 phi = (L12 + F12 sqrt 5) / 2 with L12 = 322, F12 = 144
    assert u.half_integers() == (322, 144)
    assert quad_norm(u - 1) == -320
    assert quad_norm(QuadElt(1)) == 1
    assert quad_norm(QuadElt.phi()) == -1


quads = st.builds(QuadElt, st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6))


@settings(max_examples=500)
@given(quads, quads, quads)
def test_quadratic_ring_laws(a, b, c):
    assert quad_norm(a * b) == quad_norm(a) * quad_norm(b)
    assert quad_trace(a + b) == quad_trace(a) + quad_trace(b)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(quads)
def test_norm_trace_formulas(e):
    assert quad_norm(e) == e.x * e.x + e.x * e.y - e.y * e.y
    assert quad_trace(e) == 2 * e.x + e.y


@given(quads)
def test_zphi_roots_of_characteristic_polynomial(e):
    roots = roots_in_zphi(quad_trace(e), quad_norm(e))
    assert roots is not None and e in roots


def test_quadratic_modulus_is_minimal_irreducible():
    for q in (3, 7, 11, 13):
        c, d = quadratic_modulus(q)
        assert all((x * x + c * x + d) % q for x in range(q))
        assert all(
            any((x * x + c2 * x + d2) % q == 0 for x in range(q))
            for c2 in range(q) for d2 in range(q) if (c2, d2) < (c, d)
        )


@pytest.mark.parametrize("q,f", [(3, 1), (3, 2), (5, 2), (7, 2), (11, 2), (13, 1)])
def test_frobenius_is_an_automorphism(q, f):
    elems = list(field_elements(q, f))
    assert len(elems) == q ** f
    for x in elems:
        assert x ** (q ** f) == x
    sample = elems[: min(len(elems), 40)]
    for x in sample:
        for y in sample:
            assert (x * y).frobenius() == x.frobenius() * y.frobenius()
            assert (x + y).frobenius() == x.frobenius() + y.frobenius()


@settings(max_examples=200)
@given(st.sampled_from([3, 7, 11]), st.data())
def test_field_axioms_in_quadratic_extension(q, data):
    comp = st.integers(0, q - 1)
    a, b, c = (FqElt.make(q, 2, data.draw(comp), data.draw(comp)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if not a.is_zero():
        assert a * a.inverse() == FqElt.make(q, 2, 1)


@pytest.mark.parametrize("q,f", [(3, 2), (7, 1), (7, 2), (11, 2)])
def test_table_squares_match_scalar_path(q, f):
    t = field_table(q, f)
    for x in field_elements(q, f):
        idx = x.value[0] + q * (x.value[1] if f == 2 else 0)
        assert bool(t.is_square[idx]) == x.is_square()
        assert t.square_count[idx] == (1 if x.is_zero() else 2 if x.is_square() else 0)
