"""Exact univariate polynomial arithmetic over the rationals.

A polynomial is a dense tuple of ``fractions.Fraction`` coefficients in
ascending order, so ``Poly([1, 0, -1])`` is 1 - x^2.  The zero polynomial is
the empty tuple and its degree is the sentinel ``None``, never -1.  All
operations are pure and exact; nothing in this module (or the package) ever
touches floating point.

The ground field is ``fractions.Fraction``, re-exported as ``Rational``.  The
stdlib type already maintains the canonical form this package relies on:
denominators are positive and numerator/denominator are always coprime.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence, Union

from .errors import MathError

Rational = Fraction

RationalLike = Union[Fraction, int, str]


class DivisionByZeroPoly(MathError):
    """Polynomial division by the zero polynomial."""


class AllZeroOperator(MathError):
    """gcd_and_normalize received (0, 0, 0), which has no canonical form."""


class RepeatedRootBeyondSupport(MathError):
    """A partial-fraction pole list declares the same root twice."""


class InconsistentFactorization(MathError):
    """Declared linear factors do not multiply to the given denominator."""


@dataclass(frozen=True)
class Poly:
    """A dense univariate polynomial with exact rational coefficients.

    >>> Poly([1, 0, -1])
    Poly('1 - x^2')
    >>> Poly([0, 0, 3]).derivative()
    Poly('6x')
    >>> Poly([]).degree() is None
    True
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def _trimmed(cls, cs: list[Fraction]) -> Poly:
        # Internal fast path: coefficients are known to be Fractions already.
        while cs and cs[-1] == 0:
            cs.pop()
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(cs))
        return obj

    # -- structure ---------------------------------------------------------

    def degree(self) -> int | None:
        """Degree of the polynomial; ``None`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coefficient(self) -> Fraction:
        """Highest-order coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, i: int) -> Fraction:
        """Coefficient of x^i, 0 when i is past the end."""
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    # -- ring arithmetic ----------------------------------------------------

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._trimmed(out)

    def __sub__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        out = list(a) + [Fraction(0)] * (len(b) - len(a))
        for i, c in enumerate(b):
            out[i] -= c
        return Poly._trimmed(out)

    def __neg__(self) -> Poly:
        return Poly._trimmed([-c for c in self.coeffs])

    def __mul__(self, other: Poly | RationalLike) -> Poly:
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly._trimmed(out)

    def __rmul__(self, other: RationalLike) -> Poly:
        return self.scale(other)

    def scale(self, c: RationalLike) -> Poly:
        c = Fraction(c)
        if c == 0:
            return ZERO
        return Poly._trimmed([c * x for x in self.coeffs])

    def __truediv__(self, c: RationalLike) -> Poly:
        return self.scale(Fraction(1) / Fraction(c))

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative polynomial power")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        """Exact quotient and remainder with deg r < deg divisor.

        >>> divmod(Poly([0, -1, 1]), Poly([0, 1]))
        (Poly('-1 + x'), Poly('0'))
        """
        if other.is_zero:
            raise DivisionByZeroPoly("division by the zero polynomial")
        q: list[Fraction] = [Fraction(0)] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        rem = list(self.coeffs)
        d = len(other.coeffs)
        lead = other.coeffs[-1]
        while len(rem) >= d:
            t = rem[-1] / lead
            pos = len(rem) - d
            q[pos] = t
            for i, c in enumerate(other.coeffs):
                rem[pos + i] -= t * c
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly._trimmed(q), Poly._trimmed(rem)

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    # -- calculus and evaluation ---------------------------------------------

    def derivative(self) -> Poly:
        return Poly._trimmed([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x0: RationalLike) -> Fraction:
        """Exact Horner evaluation."""
        x0 = Fraction(x0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def compose_affine(self, p: RationalLike, q: RationalLike) -> Poly:
        """Substitute x -> p + q*x, returning the composed polynomial."""
        p, q = Fraction(p), Fraction(q)
        lin = Poly([p, q])
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * lin + Poly([c])
        return acc

    def monic(self) -> Poly:
        if self.is_zero:
            return self
        return self.scale(Fraction(1) / self.coeffs[-1])

    def vanishing_order(self, x0: RationalLike) -> int:
        """Multiplicity of x0 as a root (0 when p(x0) != 0).

        Undefined for the zero polynomial, which vanishes to every order.
        """
        if self.is_zero:
            raise ValueError("the zero polynomial vanishes to every order")
        x0 = Fraction(x0)
        order = 0
        p = self
        while p(x0) == 0:
            p, _ = divmod(p, Poly([-x0, 1]))
            order += 1
        return order

    def __repr__(self) -> str:
        if self.is_zero:
            return "Poly('0')"
        parts: list[str] = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            sign = " - " if (c < 0 and parts) else " + " if parts else "-" if c < 0 else ""
            mag = abs(c)
            term = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            coeff = str(mag) if (i == 0 or mag != 1) else ""
            parts.append(f"{sign}{coeff}{term}")
        return f"Poly('{''.join(parts)}')"


ZERO = Poly()
ONE = Poly([1])
X = Poly([0, 1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic polynomial gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    while not b.is_zero:
        if b.degree() == 0:
            return ONE
        a, b = b, a % b
    return a.monic()


def gcd_and_normalize(c2: Poly, c1: Poly, c0: Poly) -> tuple[Poly, Poly, Poly]:
    """Canonical representative of an operator triple's projective class.

    Divides out the monic gcd of the three polynomials, then rescales so the
    first nonzero member (c2, else c1, else c0) is monic.  Idempotent, and
    invariant under scaling the triple by any nonzero rational.
    """
    if c2.is_zero and c1.is_zero and c0.is_zero:
        raise AllZeroOperator("(0, 0, 0) has no canonical form")
    g = poly_gcd(poly_gcd(c2, c1), c0)
    if g.degree() not in (None, 0):
        c2, c1, c0 = c2 // g, c1 // g, c0 // g
    for lead in (c2, c1, c0):
        if not lead.is_zero:
            s = Fraction(1) / lead.leading_coefficient()
            return c2.scale(s), c1.scale(s), c0.scale(s)
    raise AssertionError("unreachable")


def rational_roots(p: Poly) -> tuple[list[tuple[Fraction, int]], Poly]:
    """All rational roots of p with multiplicities, plus the rootless cofactor.

    Roots are returned in ascending order.  Candidates are read off the
    integer divisors of the (integer-scaled) trailing and leading
    coefficients; this is complete for rational roots and is all the Heun
    machinery needs.  Irrational and complex roots stay in the cofactor.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has every root")
    roots: list[tuple[Fraction, int]] = []

    order0 = 0
    while p.coefficient(0) == 0 and p.degree() != 0:
        p = p // X
        order0 += 1
    if order0:
        roots.append((Fraction(0), order0))

    # Scale to integer coefficients for divisor candidates.
    while p.degree() not in (None, 0):
        scale = 1
        for c in p.coeffs:
            scale = scale * c.denominator // __gcd(scale, c.denominator)
        ints = [int(c * scale) for c in p.coeffs]
        a0, an = abs(ints[0]), abs(ints[-1])
        found = None
        for num in _divisors(a0):
            for den in _divisors(an):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if p(cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        mult = 0
        while p(found) == 0:
            p = p // Poly([-found, 1])
            mult += 1
        roots.append((found, mult))
    roots.sort(key=lambda rm: rm[0])
    return roots, p


def __gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a) if a else 1


def _divisors(n: int) -> list[int]:
    if n == 0:
        return []
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


@dataclass(frozen=True)
class PartialFractionTerm:
    """One term coefficient/(x - pole)^order of a decomposition."""

    pole: Fraction
    order: int
    coefficient: Fraction

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError("partial fraction order must be >= 1")
        if self.coefficient == 0:
            raise ValueError("partial fraction coefficient must be nonzero")


def partial_fractions(
    num: Poly,
    den_roots: Sequence[tuple[RationalLike, int]],
    den: Poly | None = None,
) -> tuple[list[PartialFractionTerm], Poly]:
    """Exact decomposition of num over a product of declared linear factors.

    ``den_roots`` lists the distinct denominator roots with multiplicities;
    the denominator is their monic product.  When ``den`` is supplied it is
    checked against that product (InconsistentFactorization on mismatch);
    duplicate root entries raise RepeatedRootBeyondSupport since the declared
    support cannot carry the combined pole order.  Returns the pole terms
    (poles ascending, orders descending within a pole) and the polynomial
    part.  Summing everything back over the common denominator reproduces
    num exactly.
    """
    entries = [(Fraction(r), int(m)) for r, m in den_roots]
    seen = set()
    for r, m in entries:
        if m < 1:
            raise ValueError("multiplicity must be >= 1")
        if r in seen:
            raise RepeatedRootBeyondSupport(f"root {r} declared more than once")
        seen.add(r)

    denominator = ONE
    for r, m in entries:
        denominator = denominator * Poly([-r, 1]) ** m
    if den is not None and den.monic() != denominator:
        raise InconsistentFactorization(
            "declared linear factors do not multiply to the denominator"
        )

    poly_part, rem = divmod(num, denominator)
    terms: list[PartialFractionTerm] = []
    for r, m in sorted(entries):
        if m == 1:
            # Simple pole: the coefficient is rem(r) over the cofactor's value
            # at r, and the cofactor value is a plain product over the others.
            cof = Fraction(1)
            for s, ms in entries:
                if s != r:
                    cof *= (r - s) ** ms
            c = rem(r) / cof
            if c != 0:
                terms.append(PartialFractionTerm(r, 1, c))
            continue
        cofactor = denominator // Poly([-r, 1]) ** m
        # Taylor-expand rem/cofactor around r by exact power-series division.
        a = _taylor(rem, r, m)
        b = _taylor(cofactor, r, m)
        f = [Fraction(0)] * m
        for i in range(m):
            s = a[i]
            for l in range(1, i + 1):
                s -= b[l] * f[i - l]
            f[i] = s / b[0]
        for j in range(m, 0, -1):
            c = f[m - j]
            if c != 0:
                terms.append(PartialFractionTerm(r, j, c))
    return terms, poly_part


def _taylor(p: Poly, x0: Fraction, count: int) -> list[Fraction]:
    """First ``count`` Taylor coefficients of p around x0, exactly."""
    out: list[Fraction] = []
    rem = p
    base = Poly([-x0, 1])
    for _ in range(count):
        rem, r0 = divmod(rem, base)
        out.append(r0.coefficient(0))
    return out


def recombine(terms: Sequence[PartialFractionTerm], poly_part: Poly, den: Poly) -> Poly:
    """Numerator of (poly_part + sum of terms) over the denominator ``den``."""
    total = poly_part * den
    for t in terms:
        total = total + t.coefficient * (den // Poly([-t.pole, 1]) ** t.order)
    return total


# -- textual literals --------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    """Parse the exact literal ``p`` or ``p/q`` (no decimals, no exponents)."""
    body = text.strip()
    sign = 1
    if body.startswith(("+", "-")):
        if body[0] == "-":
            sign = -1
        body = body[1:].strip()
    num, slash, delim = body.partition("/")
    if not num.isdigit() or (slash and not delim.strip().isdigit()):
        raise ValueError(f"not a rational literal: {text!r}")
    if slash:
        q = int(delim)
        if q == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(sign * int(num), q)
    return Fraction(sign * int(num))


def parse_poly(text: str) -> Poly:
    """Parse comma-separated ascending coefficients, e.g. ``1, 0, -1``."""
    return Poly([parse_rational(part) for part in text.split(",")])


def format_poly(p: Poly) -> str:
    """Inverse of parse_poly: ``0`` for the zero polynomial."""
    if p.is_zero:
        return "0"
    return ", ".join(str(c) for c in p.coeffs)
