"""X1-Jacobi polynomials built as y = A P_k + B P_k' in the variable eta.

For parameters (g, h) off the negative half-integer ladder, set

    zeta(eta)  = (g-h)/2 eta + (g+h+1)/2
    zetat(eta) = (g-h)/2 eta + (g+h+3)/2          (zetat - zeta = 1)
    A(eta) = (h+1/2) zetat(eta) / (k+h+1/2)        degree 1
    B(eta) = (1+eta) zeta(eta) / (k+h+1/2)         degree 2

with P_k the degree-k series polynomial from hypergeom.  The resulting
y_hat has degree k+1 and satisfies a second-order equation whose rational
coefficients are cleared by multiplying through by zeta, keeping the whole
verification inside the polynomial ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .heun import ConfluentOrDegenerate
from .hypergeom import ForbiddenParameter, jacobi_series_gh, _is_negative_half_integer
from .polynomial import Poly, RationalLike
from .transform import OdeOperator2, affine_substitute


@dataclass(frozen=True)
class X1JacobiSpec:
    g: Fraction
    h: Fraction
    k: int

    def __init__(self, g: RationalLike, h: RationalLike, k: int):
        g, h = Fraction(g), Fraction(h)
        if _is_negative_half_integer(g) or _is_negative_half_integer(h):
            raise ForbiddenParameter(
                f"g={g}, h={h}: negative half-integers are excluded"
            )
        if k < 0:
            raise ForbiddenParameter("k must be nonnegative")
        if k + h + Fraction(1, 2) == 0:
            raise ForbiddenParameter(f"k + h + 1/2 = 0 for h={h}, k={k}")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "k", int(k))


@dataclass(frozen=True)
class X1Construction:
    zeta: Poly
    zeta_tilde: Poly
    a: Poly
    b: Poly
    p_k: Poly
    y_hat: Poly

    @property
    def degenerate_zeta(self) -> bool:
        """True when g = h collapsed zeta to a constant; the construction is
        still exact but the generic three-finite-singular-point picture is
        lost, so reports flag it."""
        return self.zeta.degree() != 1

    @property
    def zeta_root(self) -> Fraction | None:
        """The root of zeta, or None in the degenerate constant case."""
        if self.degenerate_zeta:
            return None
        return -self.zeta.coefficient(0) / self.zeta.coefficient(1)


def build_x1(spec: X1JacobiSpec) -> X1Construction:
    g, h, k = spec.g, spec.h, spec.k
    zeta = Poly([(g + h + 1) / 2, (g - h) / 2])
    zeta_tilde = Poly([(g + h + 3) / 2, (g - h) / 2])
    denom = k + h + Fraction(1, 2)
    a = ((h + Fraction(1, 2)) / denom) * zeta_tilde
    b = (Poly([1, 1]) * zeta) / denom
    p_k = jacobi_series_gh(g, h, k)
    return X1Construction(
        zeta=zeta,
        zeta_tilde=zeta_tilde,
        a=a,
        b=b,
        p_k=p_k,
        y_hat=a * p_k + b * p_k.derivative(),
    )


def x1_operator(spec: X1JacobiSpec) -> OdeOperator2:
    """The equation satisfied by y_hat, cleared of its zeta denominator:

        c2 = (1 - eta^2) zeta
        c1 = (h - g - (g+h+3) eta) zeta - 2 (1 - eta^2) zeta'
        c0 = -2 (h+1/2) (1 - eta) zetat' + (k(k+g+h+2) + g - h) zeta

    Equivalent to the rational-coefficient form away from zeta's root.
    """
    g, h, k = spec.g, spec.h, spec.k
    zeta = Poly([(g + h + 1) / 2, (g - h) / 2])
    zeta_tilde = Poly([(g + h + 3) / 2, (g - h) / 2])
    one_minus_sq = Poly([1, 0, -1])
    c2 = one_minus_sq * zeta
    c1 = Poly([h - g, -(g + h + 3)]) * zeta - 2 * (one_minus_sq * zeta.derivative())
    c0 = (-2 * (h + Fraction(1, 2))) * (Poly([1, -1]) * zeta_tilde.derivative()) + (
        k * (k + g + h + 2) + g - h
    ) * zeta
    return OdeOperator2(c2, c1, c0)


def x1_to_heun(spec: X1JacobiSpec) -> OdeOperator2:
    """Normalized operator after the variable change eta = 1 - 2x.

    eta = 1 maps to x = 0 and eta = -1 to x = 1; zeta's root lands on
    mu = (1 - root)/2, which must stay clear of {0, 1}.
    """
    construction = build_x1(spec)
    root = construction.zeta_root
    if root is not None and (1 - root) / 2 in (0, 1):
        raise ConfluentOrDegenerate(
            f"zeta's root {root} maps onto a hypergeometric singular point"
        )
    return affine_substitute(x1_operator(spec), 1, -2)
