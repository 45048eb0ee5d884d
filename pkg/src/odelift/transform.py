"""Build the second-order operator annihilating y = A z + B z'.

Given sigma z'' + tau z' + lam z = 0, repeated differentiation closes on the
pair (z, z'):

    sigma y'          = Abar z + Bbar z',   Abar = sigma A' - B lam,
                                            Bbar = sigma A + sigma B' - tau B,
    sigma (sigma y')' = Adbar z + Bdbar z', with the same recursion applied
                                            to (Abar, Bbar).

Eliminating (z, z') from the three relations is a 3x3 determinant whose
first-column expansion yields the operator triple

    c2 = sigma^2 (A Bbar - B Abar)
    c1 = sigma sigma' (A Bbar - B Abar) - sigma (A Bdbar - B Adbar)
    c0 = Abar Bdbar - Bbar Adbar

An equivalent presentation replaces the third row by (sigma^2 y'', Ahat,
Bhat) with Ahat = Adbar - sigma' Abar and Bhat = Bdbar - sigma' Bbar; being a
row operation it produces the identical triple, which the tests pin down
coefficient by coefficient.

The two closed-form special cases (B = sigma, and constant A and B) are
implemented from their displayed expansions and cross-checked against the
determinant, which is authoritative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MathError
from .hypergeom import HypergeomEq
from .polynomial import Poly, RationalLike, gcd_and_normalize


class DegenerateTransform(MathError):
    """A Bbar - B Abar = 0: y is not governed by a second-order operator."""


class SingularSubstitution(MathError):
    """Affine substitution with zero linear coefficient."""


@dataclass(frozen=True)
class LinearTransform:
    """The transform y = a z + b z' with polynomial coefficients, not both zero."""

    a: Poly
    b: Poly

    def __post_init__(self) -> None:
        if self.a.is_zero and self.b.is_zero:
            raise DegenerateTransform("transform (0, 0) is identically zero")


@dataclass(frozen=True)
class BarCoefficients:
    a_bar: Poly
    b_bar: Poly
    a_dbar: Poly
    b_dbar: Poly
    a_hat: Poly
    b_hat: Poly


@dataclass(frozen=True)
class OdeOperator2:
    """The operator y -> c2 y'' + c1 y' + c0 y with polynomial coefficients."""

    c2: Poly
    c1: Poly
    c0: Poly

    def __post_init__(self) -> None:
        if self.c2.is_zero and self.c1.is_zero and self.c0.is_zero:
            raise ValueError("operator must not be identically zero")

    def normalized(self) -> OdeOperator2:
        """Canonical representative: gcd cancelled, leading block monic."""
        return OdeOperator2(*gcd_and_normalize(self.c2, self.c1, self.c0))


def equation_operator(eq: HypergeomEq) -> OdeOperator2:
    """The defining equation itself as an operator triple."""
    return OdeOperator2(eq.sigma, eq.tau, Poly([eq.lam]))


def apply_operator(op: OdeOperator2, y: Poly) -> Poly:
    """Exact residual c2 y'' + c1 y' + c0 y; the zero polynomial iff y solves."""
    yp = y.derivative()
    return op.c2 * yp.derivative() + op.c1 * yp + op.c0 * y


def compute_bars(eq: HypergeomEq, t: LinearTransform) -> BarCoefficients:
    sigma, tau, lam = eq.sigma, eq.tau, eq.lam
    sigma_p = sigma.derivative()

    def step(a: Poly, b: Poly) -> tuple[Poly, Poly]:
        return sigma * a.derivative() - lam * b, sigma * a + sigma * b.derivative() - tau * b

    a_bar, b_bar = step(t.a, t.b)
    a_dbar, b_dbar = step(a_bar, b_bar)
    return BarCoefficients(
        a_bar=a_bar,
        b_bar=b_bar,
        a_dbar=a_dbar,
        b_dbar=b_dbar,
        a_hat=a_dbar - sigma_p * a_bar,
        b_hat=b_dbar - sigma_p * b_bar,
    )


def expanded_double_bars(eq: HypergeomEq, t: LinearTransform) -> tuple[Poly, Poly]:
    """The double-bar pair written out in sigma, tau, lam directly.

    Must agree with the recursive definition in compute_bars; kept separate so
    the agreement stays a testable claim instead of an assumption.
    """
    sigma, tau, lam = eq.sigma, eq.tau, eq.lam
    a, b = t.a, t.b
    sigma_p = sigma.derivative()
    a_dbar = (
        a.derivative().derivative() * sigma * sigma
        + sigma * a.derivative() * sigma_p
        - 2 * lam * (sigma * b.derivative())
        - lam * (a * sigma)
        + lam * (b * tau)
    )
    b_dbar = (
        2 * (a.derivative() * sigma * sigma)
        - lam * (sigma * b)
        + sigma * a * sigma_p
        + sigma * sigma * b.derivative().derivative()
        + sigma * b.derivative() * sigma_p
        - 2 * (sigma * b.derivative() * tau)
        - sigma * b * tau.derivative()
        - tau * a * sigma
        + b * tau * tau
    )
    return a_dbar, b_dbar


def _wronskian_block(eq: HypergeomEq, t: LinearTransform, bars: BarCoefficients) -> Poly:
    w = t.a * bars.b_bar - t.b * bars.a_bar
    if w.is_zero:
        raise DegenerateTransform("A Bbar - B Abar = 0 for this equation and transform")
    return w


def expand_determinant(eq: HypergeomEq, t: LinearTransform) -> OdeOperator2:
    """Un-normalized operator triple from the first-column expansion."""
    bars = compute_bars(eq, t)
    w = _wronskian_block(eq, t, bars)
    sigma = eq.sigma
    c2 = sigma * sigma * w
    c1 = sigma * sigma.derivative() * w - sigma * (t.a * bars.b_dbar - t.b * bars.a_dbar)
    c0 = bars.a_bar * bars.b_dbar - bars.b_bar * bars.a_dbar
    return OdeOperator2(c2, c1, c0)


def expand_determinant_hat(eq: HypergeomEq, t: LinearTransform) -> OdeOperator2:
    """Same operator from the hat presentation; equal to expand_determinant."""
    bars = compute_bars(eq, t)
    w = _wronskian_block(eq, t, bars)
    sigma = eq.sigma
    c2 = sigma * sigma * w
    c1 = -(sigma * (t.a * bars.b_hat - t.b * bars.a_hat))
    c0 = bars.a_bar * bars.b_hat - bars.b_bar * bars.a_hat
    return OdeOperator2(c2, c1, c0)


def closed_form_basic(eq: HypergeomEq, a: Poly) -> OdeOperator2:
    """Displayed closed forms for B = sigma: returns (sigma P, Q, R).

    Equals the determinant triple for (a, sigma) after both are normalized,
    the determinant carrying an extra overall factor sigma^2.
    """
    sigma, tau, lam = eq.sigma, eq.tau, eq.lam
    sigma_p, sigma_pp = sigma.derivative(), sigma.derivative().derivative()
    tau_p = tau.derivative()
    a_p, a_pp = a.derivative(), a.derivative().derivative()
    lam_poly = Poly([lam])

    p = a * a + a * (sigma_p - tau) + sigma * (lam_poly - a_p)
    # B = sigma makes the determinant's y'' coefficient sigma^3 P, so the
    # nondegeneracy condition A Bbar - B Abar != 0 is exactly P != 0.
    if p.is_zero:
        raise DegenerateTransform("A Bbar - B Abar = 0 for this equation and transform")
    q = (
        a_pp * sigma * sigma
        + sigma * (a * tau_p + lam * tau - lam * sigma_p - a * sigma_pp - 2 * (a * a_p))
        + a * tau * (sigma_p + a - tau)
    )
    r = (
        sigma
        * (
            a_pp * (tau - a - sigma_p)
            + a_p * (2 * a_p + sigma_pp - Poly([3 * lam]) - tau_p)
            + lam * (lam_poly + tau_p - sigma_pp)
        )
        + sigma_p * (2 * lam * a + lam * sigma_p - lam * tau - tau * a_p)
        + (a - tau) * (lam * a - a_p * tau)
    )
    return OdeOperator2(sigma * p, q, r)


def closed_form_const(eq: HypergeomEq, a: RationalLike, b: RationalLike) -> OdeOperator2:
    """Displayed closed forms for constant A, B: returns (sigma P, Q, R)."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 and b == 0:
        raise DegenerateTransform("transform (0, 0) is identically zero")
    sigma, tau, lam = eq.sigma, eq.tau, eq.lam
    sigma_p = sigma.derivative()
    tau_p = tau.derivative()

    p = sigma * (a * (a * sigma - b * tau) + Poly([lam * b * b]))
    # For constants, A Bbar - B Abar = A(A sigma - tau B) + lam B^2 = P/sigma.
    if p.is_zero:
        raise DegenerateTransform("A Bbar - B Abar = 0 for this equation and transform")
    q = sigma * sigma * (a * a * tau + (a * b) * tau_p) + sigma * (
        (lam * b * b) * tau + (lam * b * b) * sigma_p - (a * b) * (tau * tau) - (a * b) * (sigma_p * tau)
    )
    r = (lam * a * a) * (sigma * sigma) + sigma * (
        Poly([lam * lam * b * b]) - (lam * a * b) * sigma_p + (lam * b * b) * tau_p - (lam * a * b) * tau
    )
    return OdeOperator2(sigma * p, q, r)


def affine_substitute(op: OdeOperator2, p: RationalLike, q: RationalLike) -> OdeOperator2:
    """Operator in the new variable after substituting x -> p + q*x.

    Chain-rule factors 1/q and 1/q^2 are absorbed into the coefficients and
    the result is normalized.
    """
    p, q = Fraction(p), Fraction(q)
    if q == 0:
        raise SingularSubstitution("affine substitution needs a nonzero linear coefficient")
    return OdeOperator2(
        op.c2.compose_affine(p, q),
        q * op.c1.compose_affine(p, q),
        (q * q) * op.c0.compose_affine(p, q),
    ).normalized()


@dataclass(frozen=True)
class ClosedFormAgreement:
    """Comparison of a closed-form route against the determinant path.

    route is "basic" (B = sigma), "const" (constant A and B) or "none" when
    neither special case applies.  On disagreement, diffs lists
    (coefficient name, determinant value, closed-form value) for each
    differing coefficient of the normalized triples.
    """

    route: str
    agree: bool | None
    diffs: tuple[tuple[str, Poly, Poly], ...] = ()


def closed_form_check(eq: HypergeomEq, t: LinearTransform) -> ClosedFormAgreement:
    """Cross-validate the applicable displayed closed form against the
    determinant path.  The determinant value is authoritative either way."""
    if t.b == eq.sigma:
        closed = closed_form_basic(eq, t.a)
        route = "basic"
    elif (t.a.degree() in (None, 0)) and (t.b.degree() in (None, 0)):
        closed = closed_form_const(eq, t.a.coefficient(0), t.b.coefficient(0))
        route = "const"
    else:
        return ClosedFormAgreement(route="none", agree=None)
    det = expand_determinant(eq, t).normalized()
    closed = closed.normalized()
    diffs = tuple(
        (name, getattr(det, name), getattr(closed, name))
        for name in ("c2", "c1", "c0")
        if getattr(det, name) != getattr(closed, name)
    )
    return ClosedFormAgreement(route=route, agree=not diffs, diffs=diffs)
