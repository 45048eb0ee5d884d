"""Second-order equations sigma*z'' + tau*z' + lam*z = 0 and their classical
polynomial solutions.

The polynomial families (Jacobi, Laguerre, Hermite) are generated by their
three-term recurrences, on purpose: the recurrences share no code with the
series or operator machinery, so a zero residual cross-validates two
independent paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import MathError
from .polynomial import ONE, Poly, Rational, RationalLike, parse_rational


class InvalidEquation(MathError):
    """sigma or tau violates the degree constraints of the equation."""


class InvalidFamily(MathError):
    """Family parameters hit a vanishing denominator or are out of range."""


class ForbiddenParameter(MathError):
    """Series parameters on the excluded half-integer set."""


@dataclass(frozen=True)
class HypergeomEq:
    """The data (sigma, tau, lam) with deg sigma <= 2 and deg tau = 1."""

    sigma: Poly
    tau: Poly
    lam: Fraction

    def __init__(self, sigma: Poly, tau: Poly, lam: RationalLike):
        if sigma.is_zero or sigma.degree() > 2:
            raise InvalidEquation(f"sigma must be nonzero of degree <= 2, got {sigma!r}")
        if tau.degree() != 1:
            raise InvalidEquation(f"tau must have degree exactly 1, got {tau!r}")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "lam", Fraction(lam))


@dataclass(frozen=True)
class Jacobi:
    alpha: Fraction
    beta: Fraction
    n: int

    def __init__(self, alpha: RationalLike, beta: RationalLike, n: int):
        alpha, beta = Fraction(alpha), Fraction(beta)
        if n < 0:
            raise InvalidFamily("degree must be nonnegative")
        if n + alpha + beta + 1 == 0:
            raise InvalidFamily(f"alpha+beta+n+1 = 0 for alpha={alpha}, beta={beta}, n={n}")
        # Recurrence denominators 2m(m+a+b)(2m+a+b-2) for 2 <= m <= n.
        for m in range(2, n + 1):
            if m + alpha + beta == 0 or 2 * m + alpha + beta - 2 == 0:
                raise InvalidFamily(
                    f"recurrence denominator vanishes at m={m} for alpha={alpha}, beta={beta}"
                )
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "n", int(n))


@dataclass(frozen=True)
class Laguerre:
    alpha: Fraction
    n: int

    def __init__(self, alpha: RationalLike, n: int):
        if n < 0:
            raise InvalidFamily("degree must be nonnegative")
        object.__setattr__(self, "alpha", Fraction(alpha))
        object.__setattr__(self, "n", int(n))


@dataclass(frozen=True)
class Hermite:
    n: int

    def __init__(self, n: int):
        if n < 0:
            raise InvalidFamily("degree must be nonnegative")
        object.__setattr__(self, "n", int(n))


ClassicalFamily = Union[Jacobi, Laguerre, Hermite]


def equation_of(family: ClassicalFamily) -> HypergeomEq:
    """The (sigma, tau, lam) triple whose degree-n polynomial solution is the
    requested family member.

    Jacobi:    (1 - x^2,  b - a - (a+b+2)x,  n(n+a+b+1))
    Laguerre:  (x,        1 + a - x,         n)
    Hermite:   (1,        -2x,               2n)
    """
    match family:
        case Jacobi(alpha=a, beta=b, n=n):
            return HypergeomEq(
                Poly([1, 0, -1]), Poly([b - a, -(a + b + 2)]), Fraction(n) * (n + a + b + 1)
            )
        case Laguerre(alpha=a, n=n):
            return HypergeomEq(Poly([0, 1]), Poly([1 + a, -1]), Fraction(n))
        case Hermite(n=n):
            return HypergeomEq(Poly([1]), Poly([0, -2]), Fraction(2 * n))
    raise InvalidFamily(f"unknown family {family!r}")


def polynomial_solution(family: ClassicalFamily) -> Poly:
    """The exact degree-n member in classical normalization.

    Jacobi is pinned by P_n(1) = C(n+a, n), Laguerre by L_n(0) = C(n+a, n),
    Hermite by leading coefficient 2^n.  Generated by three-term recurrences
    only; the differential equation plays no part here.
    """
    match family:
        case Jacobi(alpha=a, beta=b, n=n):
            p_prev = ONE
            p = Poly([(a + 1) - (a + b + 2) / 2, (a + b + 2) / 2])
            if n == 0:
                return p_prev
            for m in range(2, n + 1):
                c_n = Fraction(2 * m) * (m + a + b) * (2 * m + a + b - 2)
                c_x = (2 * m + a + b - 1) * (2 * m + a + b) * (2 * m + a + b - 2)
                c_0 = (2 * m + a + b - 1) * (a * a - b * b)
                c_p = 2 * (m + a - 1) * (m + b - 1) * (2 * m + a + b)
                p_prev, p = p, (Poly([0, c_x]) * p + c_0 * p - c_p * p_prev) / c_n
            return p
        case Laguerre(alpha=a, n=n):
            p_prev, p = ONE, Poly([1 + a, -1])
            if n == 0:
                return p_prev
            for m in range(2, n + 1):
                p_prev, p = p, (Poly([2 * m - 1 + a, -1]) * p - (m - 1 + a) * p_prev) / m
            return p
        case Hermite(n=n):
            p_prev, p = ONE, Poly([0, 2])
            if n == 0:
                return p_prev
            for m in range(2, n + 1):
                p_prev, p = p, Poly([0, 2]) * p - (2 * (m - 1)) * p_prev
            return p
    raise InvalidFamily(f"unknown family {family!r}")


def pochhammer(a: RationalLike, j: int) -> Fraction:
    """Rising factorial (a)_j = a (a+1) ... (a+j-1), with (a)_0 = 1."""
    if j < 0:
        raise ValueError("pochhammer index must be nonnegative")
    a = Fraction(a)
    out = Fraction(1)
    for i in range(j):
        out *= a + i
    return out


def _is_negative_half_integer(x: Fraction) -> bool:
    return x < 0 and x.denominator == 2


def jacobi_series_gh(g: RationalLike, h: RationalLike, k: int) -> Poly:
    """Degree-k polynomial in eta from the two-parameter terminating series

        ((g+1/2)_k / k!) * sum_j [(-k)_j (k+g+h+2)_j / (j! (g+1/2)_j)] ((1-eta)/2)^j.

    Parameters on the negative half-integer ladder are rejected, as is any g
    that makes a series denominator (g+1/2)_j vanish.
    """
    g, h = Fraction(g), Fraction(h)
    if k < 0:
        raise ValueError("series degree must be nonnegative")
    if _is_negative_half_integer(g) or _is_negative_half_integer(h):
        raise ForbiddenParameter(f"g={g}, h={h}: negative half-integers are excluded")
    prefactor = pochhammer(g + Fraction(1, 2), k) / pochhammer(1, k)
    half = Poly([Fraction(1, 2), Fraction(-1, 2)])  # (1 - eta)/2
    total = Poly()
    power = ONE
    for j in range(k + 1):
        den = pochhammer(1, j) * pochhammer(g + Fraction(1, 2), j)
        if den == 0:
            raise ForbiddenParameter(f"series denominator (g+1/2)_{j} vanishes for g={g}")
        cj = pochhammer(-k, j) * pochhammer(k + g + h + 2, j) / den
        total = total + cj * power
        power = power * half
    return prefactor * total


class FitError(MathError):
    """No second-order equation of the requested shape annihilates the input."""


def fit_hypergeom_equation(z: Poly, sigma: Poly) -> HypergeomEq:
    """Solve exactly for (tau, lam) such that sigma z'' + tau z' + lam z = 0.

    tau = t0 + t1 x and lam are found by Gaussian elimination over the
    rationals from the residual's coefficient equations.  Requires deg z >= 2
    (below that the system never determines tau uniquely) and raises FitError
    when the system is inconsistent or underdetermined, which is exactly how
    a polynomial announces that it is not hypergeometric for this sigma.
    """
    zp = z.derivative()
    zpp = zp.derivative()
    if zpp.is_zero:
        raise FitError("deg z < 2: the equation is underdetermined")
    rhs_poly = sigma * zpp
    xzp = Poly([0, 1]) * zp
    width = max(len(rhs_poly.coeffs), len(zp.coeffs), len(xzp.coeffs), len(z.coeffs))
    rows = [
        [zp.coefficient(i), xzp.coefficient(i), z.coefficient(i)]
        for i in range(width)
    ]
    rhs = [-rhs_poly.coefficient(i) for i in range(width)]
    solution = _solve_exact(rows, rhs)
    if solution is None:
        raise FitError("no exact (tau, lam) fits; the polynomial is not hypergeometric here")
    t0, t1, lam = solution
    try:
        return HypergeomEq(sigma, Poly([t0, t1]), lam)
    except InvalidEquation as exc:
        raise FitError(f"fitted tau is degenerate: {exc}") from exc


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Unique exact solution of an overdetermined linear system, else None."""
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    n_unknowns = len(rows[0])
    pivots: list[int] = []
    used = [False] * len(m)
    for col in range(n_unknowns):
        pivot = next((i for i, row in enumerate(m) if not used[i] and row[col] != 0), None)
        if pivot is None:
            return None  # underdetermined
        used[pivot] = True
        pivots.append(pivot)
        prow = m[pivot]
        for i, row in enumerate(m):
            if i != pivot and row[col] != 0:
                f = row[col] / prow[col]
                for j in range(col, n_unknowns + 1):
                    row[j] -= f * prow[j]
    for i, row in enumerate(m):
        if i not in pivots and row[n_unknowns] != 0:
            return None  # inconsistent
    return [m[row][n_unknowns] / m[row][col] for col, row in enumerate(pivots)]


# -- textual family literals ---------------------------------------------------

def parse_family(text: str) -> ClassicalFamily:
    """Parse ``jacobi(a,b,n)``, ``laguerre(a,n)`` or ``hermite(n)``."""
    body = text.strip()
    name, paren, rest = body.partition("(")
    name = name.strip().lower()
    if not paren or not rest.endswith(")"):
        raise ValueError(f"not a family literal: {text!r}")
    args = [a.strip() for a in rest[:-1].split(",")]

    def _degree(s: str) -> int:
        if not s.lstrip("-").isdigit():
            raise ValueError(f"family degree must be an integer, got {s!r}")
        return int(s)

    if name == "jacobi" and len(args) == 3:
        return Jacobi(parse_rational(args[0]), parse_rational(args[1]), _degree(args[2]))
    if name == "laguerre" and len(args) == 2:
        return Laguerre(parse_rational(args[0]), _degree(args[1]))
    if name == "hermite" and len(args) == 1:
        return Hermite(_degree(args[0]))
    raise ValueError(f"not a family literal: {text!r}")


def format_family(family: ClassicalFamily) -> str:
    match family:
        case Jacobi(alpha=a, beta=b, n=n):
            return f"jacobi({a},{b},{n})"
        case Laguerre(alpha=a, n=n):
            return f"laguerre({a},{n})"
        case Hermite(n=n):
            return f"hermite({n})"
    raise InvalidFamily(f"unknown family {family!r}")
