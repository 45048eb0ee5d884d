from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from odelift.polynomial import (
    AllZeroOperator,
    DivisionByZeroPoly,
    InconsistentFactorization,
    PartialFractionTerm,
    Poly,
    RepeatedRootBeyondSupport,
    format_poly,
    gcd_and_normalize,
    parse_poly,
    parse_rational,
    partial_fractions,
    poly_gcd,
    rational_roots,
    recombine,
)

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)
polys = st.lists(rationals, max_size=6).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero)


def test_construction_trims_and_canonicalizes():
    assert Poly([1, 2, 0, 0]).coeffs == (Fraction(1), Fraction(2))
    assert Poly([0, 0]).is_zero
    assert Poly().degree() is None
    assert Poly([5]).degree() == 0
    assert Poly(["1/2", 1]).coeffs == (Fraction(1, 2), Fraction(1))


def test_basic_arithmetic_examples():
    assert Poly([1]) + Poly([0, 1]) == Poly([1, 1])
    assert Poly([0, 1]) * Poly([0, 1]) == Poly([0, 0, 1])
    assert Poly([2, 4]).scale(Fraction(1, 2)) == Poly([1, 2])
    assert Poly([1, 1]) - Poly([1, 1]) == Poly()
    assert -Poly([1, -2]) == Poly([-1, 2])
    assert Poly([1, 1]) ** 2 == Poly([1, 2, 1])


def test_derivative_examples():
    assert Poly([1, 0, -1]).derivative() == Poly([0, -2])
    assert Poly([5]).derivative().is_zero
    assert Poly([0, 0, 0, 1]).derivative() == Poly([0, 0, 3])


def test_divmod_examples():
    q, r = divmod(Poly([0, -1, 1]), Poly([0, 1]))
    assert (q, r) == (Poly([-1, 1]), Poly())
    q, r = divmod(Poly([1, 0, 1]), Poly([-1, 1]))
    assert (q, r) == (Poly([1, 1]), Poly([2]))
    # remainder theorem: x - mu divides q iff remainder is zero
    mu = Fraction(3, 2)
    q = Poly([-mu, 1]) * Poly([1, 4, 2])
    assert divmod(q, Poly([-mu, 1]))[1].is_zero
    with pytest.raises(DivisionByZeroPoly):
        divmod(Poly([1]), Poly())


def test_eval_examples():
    assert Poly([1, 0, -1])(1) == 0
    assert Poly([1, 0, -1])(Fraction(1, 2)) == Fraction(3, 4)
    legendre2 = Poly([Fraction(-1, 2), 0, Fraction(3, 2)])
    assert legendre2(0) == Fraction(-1, 2)


@given(polys, polys, polys)
def test_ring_distributivity(a, b, c):
    assert (a + b) * c == a * c + b * c


@given(polys, nonzero_polys)
def test_divmod_round_trip(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    if not r.is_zero:
        assert r.degree() < b.degree()


@given(polys, polys)
def test_derivative_product_rule(a, b):
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


@given(polys, polys, rationals, rationals)
def test_derivative_linearity(a, b, s, t):
    assert (a.scale(s) + b.scale(t)).derivative() == a.derivative().scale(s) + b.derivative().scale(t)


def test_gcd_and_normalize_examples():
    # (2x, 4x, 6x) -> common factor x and content 2
    c2, c1, c0 = gcd_and_normalize(Poly([0, 2]), Poly([0, 4]), Poly([0, 6]))
    assert (c2, c1, c0) == (Poly([1]), Poly([2]), Poly([3]))
    with pytest.raises(AllZeroOperator):
        gcd_and_normalize(Poly(), Poly(), Poly())
    # leading block is c1 when c2 = 0
    c2, c1, c0 = gcd_and_normalize(Poly(), Poly([0, 2]), Poly([4]))
    assert c1.leading_coefficient() == 1


@given(polys, polys, polys, rationals.filter(lambda c: c != 0))
def test_gcd_and_normalize_idempotent_and_scale_invariant(c2, c1, c0, c):
    if c2.is_zero and c1.is_zero and c0.is_zero:
        return
    normalized = gcd_and_normalize(c2, c1, c0)
    assert gcd_and_normalize(*normalized) == normalized
    scaled = gcd_and_normalize(c2.scale(c), c1.scale(c), c0.scale(c))
    assert scaled == normalized


def test_sigma_squared_cancellation():
    sigma = Poly([0, -1, 1])
    s2 = sigma * sigma
    base = (Poly([0, 1, 1]), Poly([2, -1]), Poly([3]))
    scaled = tuple(s2 * p for p in base)
    assert gcd_and_normalize(*scaled) == gcd_and_normalize(*base)


def test_poly_gcd():
    a = Poly([-1, 0, 1])  # (x-1)(x+1)
    b = Poly([-1, 1]) * Poly([2, 1])
    assert poly_gcd(a, b) == Poly([-1, 1])
    assert poly_gcd(Poly(), Poly()).is_zero
    assert poly_gcd(a, Poly()) == a.monic()


def test_rational_roots():
    p = Poly([0, 1]) * Poly([-1, 1]) ** 2 * Poly([Fraction(3), Fraction(2)])
    roots, leftover = rational_roots(p)
    assert roots == [(Fraction(-3, 2), 1), (Fraction(0), 1), (Fraction(1), 2)]
    assert leftover.degree() == 0
    roots, leftover = rational_roots(Poly([1, 0, 1]))  # x^2 + 1
    assert roots == []
    assert leftover == Poly([1, 0, 1])
    with pytest.raises(ValueError):
        rational_roots(Poly())


def test_partial_fractions_cover_up_examples():
    # 1/(x(x-1)) = -1/x + 1/(x-1)
    terms, poly_part = partial_fractions(Poly([1]), [(0, 1), (1, 1)])
    assert poly_part.is_zero
    assert terms == [
        PartialFractionTerm(Fraction(0), 1, Fraction(-1)),
        PartialFractionTerm(Fraction(1), 1, Fraction(1)),
    ]
    # (2x-1)/(x(x-1)) = 1/x + 1/(x-1)
    terms, _ = partial_fractions(Poly([-1, 2]), [(0, 1), (1, 1)])
    assert [t.coefficient for t in terms] == [Fraction(1), Fraction(1)]


def test_partial_fractions_with_polynomial_part_and_multiplicity():
    den_roots = [(0, 2), (1, 1)]
    den = Poly([0, 1]) ** 2 * Poly([-1, 1])
    num = Poly([3, 1]) * den + Poly([1, 2, 5])
    terms, poly_part = partial_fractions(num, den_roots, den=den)
    assert poly_part == Poly([3, 1])
    assert recombine(terms, poly_part, den) == num


def test_partial_fractions_errors():
    with pytest.raises(RepeatedRootBeyondSupport):
        partial_fractions(Poly([1]), [(0, 1), (0, 1)])
    with pytest.raises(InconsistentFactorization):
        partial_fractions(Poly([1]), [(0, 1), (1, 1)], den=Poly([0, 0, 0, 1]))


@given(
    st.lists(rationals, min_size=1, max_size=4),
    st.lists(
        st.tuples(st.fractions(min_value=-3, max_value=3, max_denominator=2), st.integers(1, 2)),
        min_size=1,
        max_size=3,
        unique_by=lambda rm: rm[0],
    ),
)
@settings(max_examples=60)
def test_partial_fractions_recombination_identity(num_coeffs, den_roots):
    num = Poly(num_coeffs)
    den = Poly([1])
    for r, m in den_roots:
        den = den * Poly([-r, 1]) ** m
    terms, poly_part = partial_fractions(num, den_roots, den=den)
    assert recombine(terms, poly_part, den) == num
    for t in terms:
        assert t.order >= 1 and t.coefficient != 0


def test_partial_fraction_term_invariants():
    with pytest.raises(ValueError):
        PartialFractionTerm(Fraction(0), 0, Fraction(1))
    with pytest.raises(ValueError):
        PartialFractionTerm(Fraction(0), 1, Fraction(0))


def test_heun_style_decomposition_matches_residues():
    # oracle: multiply back and compare coefficient by coefficient
    mu = Fraction(5, 2)
    den = Poly([0, 1]) * Poly([-1, 1]) * Poly([-mu, 1])
    num = Poly([3, -2, Fraction(1, 2)])
    terms, poly_part = partial_fractions(num, [(0, 1), (1, 1), (mu, 1)], den=den)
    assert poly_part.is_zero
    assert recombine(terms, poly_part, den) == num
    dden = den.derivative()
    for t in terms:
        assert t.coefficient == num(t.pole) / dden(t.pole)


def test_vanishing_order():
    p = Poly([0, 1]) ** 3 * Poly([1, 1])
    assert p.vanishing_order(0) == 3
    assert p.vanishing_order(-1) == 1
    assert p.vanishing_order(2) == 0
    with pytest.raises(ValueError):
        Poly().vanishing_order(0)


def test_compose_affine():
    p = Poly([1, 0, -1])  # 1 - x^2
    assert p.compose_affine(0, 1) == p
    image = p.compose_affine(1, -2)  # x -> 1 - 2t
    assert image(0) == p(1)
    assert image(Fraction(1, 2)) == p(0)


def test_parse_and_format_round_trip():
    for text in ("1, 0, -1", "0", "2/3", "-1/3, 5, 0, 7/2"):
        p = parse_poly(text)
        assert parse_poly(format_poly(p)) == p
    assert format_poly(Poly()) == "0"
    assert parse_poly(" 1 ,0 , -1 ") == Poly([1, 0, -1])


def test_parse_rational_strictness():
    assert parse_rational("-7/2") == Fraction(-7, 2)
    assert parse_rational(" 3 ") == Fraction(3)
    for bad in ("1.5", "1e3", "a", "1/0", "2/", "/3", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)
