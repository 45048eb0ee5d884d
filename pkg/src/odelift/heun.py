"""Fuchsian analysis: classify singular points and extract Heun parameters.

A second-order operator c2 y'' + c1 y' + c0 y is Heun-reducible when its
normalized form reads

    x(x-1)(x-mu) y'' + [gamma (x-1)(x-mu) + delta x(x-mu) + eps x(x-1)] y'
                     + (ab x + rho) y = 0,   mu not in {0, 1},

equivalently y'' + [gamma/x + delta/(x-1) + eps/(x-mu)] y' +
(ab x + rho)/(x(x-1)(x-mu)) y = 0.  Everything here is exact: detection is
divisibility plus partial fractions, never numeric root hunting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MathError
from .polynomial import Poly, partial_fractions, rational_roots
from .transform import OdeOperator2

ORDINARY = "ordinary"
REGULAR = "regular-singular"
IRREGULAR = "irregular-singular"


class UnresolvedFactor(MathError):
    """c2 has a factor of degree >= 2 with no rational root; its singular
    points cannot be classified in exact rational arithmetic."""


class NotHeunReducible(MathError):
    """The operator does not have the four-singular-point canonical shape."""


class ConfluentOrDegenerate(MathError):
    """The would-be third finite singular point coalesces with 0 or 1."""


@dataclass(frozen=True)
class SingularPoint:
    """A classified point; location None is the point at infinity."""

    location: Fraction | None
    kind: str
    c2_multiplicity: int


@dataclass(frozen=True)
class HeunParameters:
    gamma: Fraction
    delta: Fraction
    epsilon: Fraction
    mu: Fraction
    alpha_beta_product: Fraction
    rho: Fraction

    def infinity_exponent_quadratic(self) -> Poly:
        """Monic quadratic whose roots are the exponents at infinity,
        t^2 - (gamma+delta+epsilon-1) t + alpha*beta."""
        s = self.gamma + self.delta + self.epsilon - 1
        return Poly([self.alpha_beta_product, -s, 1])


def heun_operator(params: HeunParameters) -> OdeOperator2:
    """Canonical polynomial triple built back from the six parameters."""
    g, d, e, mu = params.gamma, params.delta, params.epsilon, params.mu
    x = Poly([0, 1])
    x1 = Poly([-1, 1])
    xmu = Poly([-mu, 1])
    return OdeOperator2(
        x * x1 * xmu,
        g * (x1 * xmu) + d * (x * xmu) + e * (x * x1),
        Poly([params.rho, params.alpha_beta_product]),
    )


def _vanishing_order(p: Poly, x0: Fraction, cap: int) -> int:
    """Vanishing order of p at x0, with the zero polynomial counted as cap."""
    if p.is_zero:
        return cap
    return p.vanishing_order(x0)


def classify_singularities(op: OdeOperator2) -> tuple[SingularPoint, ...]:
    """Classify every finite singular point of c2 plus the point at infinity.

    A c2 root x0 of multiplicity m is regular-singular iff
    m - ord(c1, x0) <= 1 and m - ord(c0, x0) <= 2, else irregular.  The point
    at infinity is at most regular iff deg c1 <= deg c2 - 1 and
    deg c0 <= deg c2 - 2; it is ordinary in the stricter case
    deg c1 = deg c2 - 1 with leading ratio exactly 2 and deg c0 <= deg c2 - 4.
    """
    if op.c2.is_zero:
        raise ValueError("cannot classify a first-order operator (c2 = 0)")
    roots, leftover = rational_roots(op.c2)
    if leftover.degree() not in (None, 0):
        raise UnresolvedFactor(f"c2 has a rational-rootless factor {leftover!r}")

    points = []
    for x0, m in roots:
        regular = (
            m - _vanishing_order(op.c1, x0, m) <= 1
            and m - _vanishing_order(op.c0, x0, m) <= 2
        )
        points.append(SingularPoint(x0, REGULAR if regular else IRREGULAR, m))

    d2 = op.c2.degree()
    d1 = op.c1.degree()
    d0 = op.c0.degree()
    at_most_regular = (d1 is None or d1 <= d2 - 1) and (d0 is None or d0 <= d2 - 2)
    ordinary = (
        d1 == d2 - 1
        and op.c1.leading_coefficient() / op.c2.leading_coefficient() == 2
        and (d0 is None or d0 <= d2 - 4)
    )
    kind = ORDINARY if ordinary else REGULAR if at_most_regular else IRREGULAR
    points.append(SingularPoint(None, kind, 0))
    return tuple(points)


def heun_reduce(op: OdeOperator2) -> HeunParameters:
    """Extract (gamma, delta, epsilon, mu, alpha*beta, rho) or refuse.

    Works on the normalized operator.  Succeeds iff c2 = x(x-1)(x-mu) with
    rational mu outside {0, 1}, c1/c2 is a pure first-order partial fraction
    over those poles, and c0 has degree at most 1.  mu inside {0, 1} is the
    confluent case and is refused with its own error.
    """
    op = op.normalized()
    c2, c1, c0 = op.c2, op.c1, op.c0
    if c2.degree() != 3:
        raise NotHeunReducible(
            f"c2 must be a cubic, got degree {c2.degree()} after normalization"
        )
    # c2 is monic after normalization; peel off the mandatory x and (x-1)
    # factors, leaving x - mu.
    if c2.coefficient(0) != 0:
        raise NotHeunReducible(f"c2 = {c2!r} is not divisible by x")
    quad = c2 // Poly([0, 1])
    if quad(1) != 0:
        raise NotHeunReducible(f"c2 = {c2!r} is not divisible by x - 1")
    linear = quad // Poly([-1, 1])
    mu = -linear.coefficient(0)
    if mu == 0 or mu == 1:
        raise ConfluentOrDegenerate("third singular point coalesces with 0 or 1")

    pole_list = [(Fraction(0), 1), (Fraction(1), 1), (mu, 1)]
    terms, poly_part = partial_fractions(c1, pole_list, den=c2)
    if not poly_part.is_zero:
        raise NotHeunReducible(f"c1/c2 has nonzero polynomial part {poly_part!r}")
    by_pole = {t.pole: t.coefficient for t in terms}
    gamma = by_pole.get(Fraction(0), Fraction(0))
    delta = by_pole.get(Fraction(1), Fraction(0))
    epsilon = by_pole.get(mu, Fraction(0))

    if not c0.is_zero and c0.degree() > 1:
        raise NotHeunReducible(f"deg c0 = {c0.degree()} > 1")
    ab = c0.coefficient(1)
    rho = c0.coefficient(0)

    if c0.is_zero and gamma + delta + epsilon == 2:
        # Exponents 0 and 1 at infinity with no y term: infinity is an
        # ordinary point, so only three singular points remain.
        raise NotHeunReducible("the point at infinity is not singular")
    return HeunParameters(gamma, delta, epsilon, mu, ab, rho)
