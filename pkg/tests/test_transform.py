from __future__ import annotations

import random
from fractions import Fraction

import pytest

from odelift.hypergeom import (
    Hermite,
    HypergeomEq,
    Jacobi,
    Laguerre,
    equation_of,
    polynomial_solution,
)
from odelift.polynomial import Poly, gcd_and_normalize
from odelift.transform import (
    DegenerateTransform,
    LinearTransform,
    OdeOperator2,
    SingularSubstitution,
    affine_substitute,
    apply_operator,
    closed_form_basic,
    closed_form_check,
    closed_form_const,
    compute_bars,
    equation_operator,
    expand_determinant,
    expand_determinant_hat,
    expanded_double_bars,
)


def _random_poly(rng, degree):
    return Poly([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(degree + 1)])


def _random_equation(rng):
    sigma = Poly()
    while sigma.is_zero:
        sigma = _random_poly(rng, rng.randint(0, 2))
    tau = Poly([Fraction(rng.randint(-4, 4)), Fraction(rng.choice([1, 2, 3, -1, -2]))])
    lam = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return HypergeomEq(sigma, tau, lam)


def _random_cases(count, max_deg=3, seed=1614):
    rng = random.Random(seed)
    cases = []
    while len(cases) < count:
        eq = _random_equation(rng)
        a = _random_poly(rng, rng.randint(0, max_deg)) if rng.random() < 0.9 else Poly()
        b = _random_poly(rng, rng.randint(0, max_deg)) if rng.random() < 0.9 else Poly()
        if a.is_zero and b.is_zero:
            continue
        t = LinearTransform(a, b)
        try:
            expand_determinant(eq, t)
        except DegenerateTransform:
            continue
        cases.append((eq, t))
    return cases


def test_transform_rejects_zero_pair():
    with pytest.raises(DegenerateTransform):
        LinearTransform(Poly(), Poly())


def test_bars_identity_transform():
    eq = equation_of(Jacobi(0, 0, 2))
    bars = compute_bars(eq, LinearTransform(Poly([1]), Poly()))
    assert bars.a_bar.is_zero
    assert bars.b_bar == eq.sigma


def test_bars_laguerre_shift():
    alpha, n = Fraction(1, 2), 3
    eq = equation_of(Laguerre(alpha, n))
    bars = compute_bars(eq, LinearTransform(Poly([1]), Poly([-1])))
    assert bars.a_bar == Poly([n])
    assert bars.b_bar == Poly([1 + alpha])


def test_hat_coefficients_row_operation():
    for eq, t in _random_cases(25, seed=7):
        bars = compute_bars(eq, t)
        sigma_p = eq.sigma.derivative()
        assert bars.a_hat == bars.a_dbar - sigma_p * bars.a_bar
        assert bars.b_hat == bars.b_dbar - sigma_p * bars.b_bar


def test_expanded_double_bars_match_recursive():
    for eq, t in _random_cases(40, seed=11):
        bars = compute_bars(eq, t)
        a_dbar, b_dbar = expanded_double_bars(eq, t)
        assert (a_dbar, b_dbar) == (bars.a_dbar, bars.b_dbar)


def test_determinant_equals_hat_form():
    for eq, t in _random_cases(60, seed=13):
        assert expand_determinant(eq, t) == expand_determinant_hat(eq, t)


def test_leading_coefficient_is_sigma_squared_wronskian():
    for eq, t in _random_cases(60, seed=17):
        bars = compute_bars(eq, t)
        w = t.a * bars.b_bar - t.b * bars.a_bar
        assert expand_determinant(eq, t).c2 == eq.sigma * eq.sigma * w


def test_scaling_covariance():
    for eq, t in _random_cases(15, seed=19):
        base = expand_determinant(eq, t)
        for c in (Fraction(2), Fraction(-1), Fraction(1, 3)):
            scaled = expand_determinant(eq, LinearTransform(t.a.scale(c), t.b.scale(c)))
            c_sq = c * c
            assert scaled.c2 == base.c2.scale(c_sq)
            assert scaled.c1 == base.c1.scale(c_sq)
            assert scaled.c0 == base.c0.scale(c_sq)
            assert scaled.normalized() == base.normalized()


def test_identity_transform_is_neutral():
    rng = random.Random(23)
    identity = LinearTransform(Poly([1]), Poly())
    for _ in range(25):
        eq = _random_equation(rng)
        derived = expand_determinant(eq, identity).normalized()
        assert derived == equation_operator(eq).normalized()


def test_degenerate_transform_detected():
    # lambda = 0 makes z' satisfy a first-order equation, so (A, B) = (0, 1)
    # cannot produce a second-order operator.
    eq = HypergeomEq(Poly([0, 1]), Poly([1, -1]), 0)
    with pytest.raises(DegenerateTransform):
        expand_determinant(eq, LinearTransform(Poly(), Poly([1])))
    with pytest.raises(DegenerateTransform):
        expand_determinant_hat(eq, LinearTransform(Poly(), Poly([1])))
    with pytest.raises(DegenerateTransform):
        closed_form_const(eq, 0, 1)


def test_laguerre_shift_operator_and_solution():
    for alpha in (Fraction(0), Fraction(1, 2), Fraction(2)):
        for n in range(1, 9):
            eq = equation_of(Laguerre(alpha, n))
            t = LinearTransform(Poly([1]), Poly([-1]))
            derived = expand_determinant(eq, t).normalized()
            target = equation_operator(equation_of(Laguerre(alpha + 1, n))).normalized()
            assert derived == target
            z = polynomial_solution(Laguerre(alpha, n))
            y = z - z.derivative()
            assert y == polynomial_solution(Laguerre(alpha + 1, n))


def test_hermite_shift_operator():
    lam = Fraction(4)
    eq = HypergeomEq(Poly([1]), Poly([0, -2]), lam)
    derived = expand_determinant(eq, LinearTransform(Poly(), Poly([1]))).normalized()
    assert derived == OdeOperator2(Poly([1]), Poly([0, -2]), Poly([lam - 2])).normalized()
    # and (1, 0) reproduces the equation itself
    kept = expand_determinant(eq, LinearTransform(Poly([1]), Poly())).normalized()
    assert kept == OdeOperator2(Poly([1]), Poly([0, -2]), Poly([lam])).normalized()


def test_closed_form_basic_legendre_step_down():
    eq = HypergeomEq(Poly([1, 0, -1]), Poly([0, -2]), 6)  # z = P_2
    a = Poly([0, 2])
    op = closed_form_basic(eq, a)
    target = OdeOperator2(Poly([1, 0, -1]), Poly([0, -2]), Poly([2]))
    assert op.normalized() == target.normalized()
    z = polynomial_solution(Jacobi(0, 0, 2))
    y = a * z + eq.sigma * z.derivative()
    assert y == Poly([0, 2])  # 2 P_1
    assert apply_operator(op, y).is_zero


def test_closed_form_basic_agrees_with_determinant():
    rng = random.Random(29)
    checked = 0
    while checked < 30:
        eq = _random_equation(rng)
        a = _random_poly(rng, rng.randint(0, 3))
        try:
            basic = closed_form_basic(eq, a)
        except DegenerateTransform:
            continue
        det = expand_determinant(eq, LinearTransform(a, eq.sigma))
        assert basic.normalized() == det.normalized()
        checked += 1
        # the determinant carries exactly a sigma^2 overall factor
        s2 = eq.sigma * eq.sigma
        assert (det.c2, det.c1, det.c0) == (s2 * basic.c2, s2 * basic.c1, s2 * basic.c0)


def test_closed_form_basic_zero_a():
    eq = equation_of(Laguerre(0, 3))
    op = closed_form_basic(eq, Poly())
    # P = sigma * lambda when A = 0
    assert op.c2 == eq.sigma * (eq.sigma.scale(eq.lam))


def test_closed_form_const_hermite_cases():
    lam = Fraction(4)
    eq = HypergeomEq(Poly([1]), Poly([0, -2]), lam)
    op = closed_form_const(eq, 1, 0)
    assert op.normalized() == OdeOperator2(Poly([1]), Poly([0, -2]), Poly([lam])).normalized()
    op = closed_form_const(eq, 0, 1)
    assert op.normalized() == OdeOperator2(Poly([1]), Poly([0, -2]), Poly([lam - 2])).normalized()


def test_closed_form_const_laguerre_example():
    eq = equation_of(Laguerre(0, 2))
    op = closed_form_const(eq, 1, -1)
    assert op.normalized() == OdeOperator2(Poly([0, 1]), Poly([2, -1]), Poly([2])).normalized()
    z = polynomial_solution(Laguerre(0, 2))
    y = z - z.derivative()
    assert y == Poly([3, -3, Fraction(1, 2)])
    assert apply_operator(op, y).is_zero


def test_closed_form_const_agrees_with_determinant():
    rng = random.Random(31)
    checked = 0
    while checked < 40:
        eq = _random_equation(rng)
        a, b = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))
        if a == 0 and b == 0:
            continue
        t = LinearTransform(Poly([a]), Poly([b]))
        try:
            det = expand_determinant(eq, t)
        except DegenerateTransform:
            continue
        const = closed_form_const(eq, a, b)
        assert const.normalized() == det.normalized()
        checked += 1


def test_closed_form_check_routes():
    eq = equation_of(Laguerre(0, 2))
    agreement = closed_form_check(eq, LinearTransform(Poly([1]), Poly([-1])))
    assert (agreement.route, agreement.agree, agreement.diffs) == ("const", True, ())
    agreement = closed_form_check(eq, LinearTransform(Poly([0, 1]), eq.sigma))
    assert (agreement.route, agreement.agree) == ("basic", True)
    agreement = closed_form_check(eq, LinearTransform(Poly([0, 1]), Poly([0, 0, 1])))
    assert (agreement.route, agreement.agree) == ("none", None)


def test_apply_operator_examples():
    legendre = OdeOperator2(Poly([1, 0, -1]), Poly([0, -2]), Poly([2]))
    assert apply_operator(legendre, Poly([0, 1])).is_zero
    laguerre = OdeOperator2(Poly([0, 1]), Poly([1, -1]), Poly([2]))
    assert apply_operator(laguerre, Poly([1, -2, Fraction(1, 2)])).is_zero
    hermite = OdeOperator2(Poly([1]), Poly([0, -2]), Poly([2]))
    assert apply_operator(hermite, Poly([0, 0, 1])) == Poly([2, 0, -2])


def test_solution_transport():
    transforms = [
        LinearTransform(Poly([1]), Poly([-1])),
        LinearTransform(Poly([2, 1]), Poly([0, 1])),
        LinearTransform(Poly([0, 3]), Poly([1, 1, 1])),
    ]
    for n in range(1, 11):
        for family in (Jacobi(Fraction(1, 2), 1, n), Laguerre(2, n), Hermite(n)):
            eq = equation_of(family)
            z = polynomial_solution(family)
            for t in transforms:
                try:
                    op = expand_determinant(eq, t)
                except DegenerateTransform:
                    continue
                y = t.a * z + t.b * z.derivative()
                assert apply_operator(op, y).is_zero, (family, t)


def test_affine_substitute_identity_and_errors():
    op = OdeOperator2(Poly([1, 0, -1]), Poly([0, -2]), Poly([6])).normalized()
    assert affine_substitute(op, 0, 1) == op
    with pytest.raises(SingularSubstitution):
        affine_substitute(op, 1, 0)


def test_affine_substitute_eta_change_moves_endpoints():
    op = OdeOperator2(Poly([1, 0, -1]), Poly([0, -2]), Poly([6]))
    moved = affine_substitute(op, 1, -2)  # eta = 1 - 2x
    assert moved.c2(0) == 0 and moved.c2(1) == 0
    assert moved.c2(Fraction(1, 2)) != 0
    # solutions transport through the change of variable
    z = polynomial_solution(Jacobi(0, 0, 2))
    assert apply_operator(moved, z.compose_affine(1, -2)).is_zero


def test_affine_substitute_round_trip():
    op = OdeOperator2(Poly([1, 2, -1]), Poly([3, -2]), Poly([1, 1])).normalized()
    there = affine_substitute(op, Fraction(1, 2), Fraction(-3, 2))
    back = affine_substitute(there, Fraction(1, 3), Fraction(-2, 3))
    assert back == op
