"""Line-oriented command line front end.

Input files are flat ``key: value`` lines with exact rational literals:

    sigma: 0, -1, 1
    tau: 1, -3
    lambda: 6
    A: 0, 2
    B: 1, 0, -1

or ``family: jacobi(0,0,2)`` in place of the sigma/tau/lambda triple, plus
``candidate:`` for verify and ``x1: x1(g,h,k)`` for the x1 command.  Reports
are the same ``key: value`` blocks separated by blank lines, rationals
printed as ``p/q`` with positive q, polynomials as ascending comma-separated
coefficients; identical inputs always produce byte-identical reports.

Exit codes: 0 success, 1 parse or usage error, 2 mathematical error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import MathError
from .exceptional import X1JacobiSpec, build_x1, x1_operator, x1_to_heun
from .heun import (
    ConfluentOrDegenerate,
    HeunParameters,
    NotHeunReducible,
    SingularPoint,
    classify_singularities,
    heun_operator,
    heun_reduce,
)
from .hypergeom import (
    ClassicalFamily,
    HypergeomEq,
    equation_of,
    format_family,
    parse_family,
    polynomial_solution,
)
from .polynomial import Poly, format_poly, parse_poly, parse_rational
from .transform import (
    ClosedFormAgreement,
    DegenerateTransform,
    LinearTransform,
    OdeOperator2,
    apply_operator,
    closed_form_basic,
    closed_form_const,
    closed_form_check,
    equation_operator,
    expand_determinant,
    expand_determinant_hat,
)

SIGMA_HEUN = Poly([0, -1, 1])  # x^2 - x, the sigma the Heun search lives on


class ParseError(Exception):
    """Input file error, with 1-based line and column."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UsageError(Exception):
    """Bad flags or a spec that does not fit the requested command."""


@dataclass(frozen=True)
class EquationSpecFile:
    """Parsed input file; unset keys are None."""

    sigma: Poly | None = None
    tau: Poly | None = None
    lam: Fraction | None = None
    a: Poly | None = None
    b: Poly | None = None
    family: ClassicalFamily | None = None
    x1: X1JacobiSpec | None = None
    candidate: Poly | None = None


_KEYS = ("sigma", "tau", "lambda", "A", "B", "family", "x1", "candidate")


def parse_spec(text: str) -> EquationSpecFile:
    """Parse the flat key: value format, validating key combinations."""
    seen: dict[str, object] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line:
            continue
        key, colon, value = raw_line.partition(":")
        if not colon:
            raise ParseError(lineno, 1, "expected 'key: value'")
        key_stripped = key.strip()
        value_column = len(key) + 2 + (len(value) - len(value.lstrip()))
        if key_stripped not in _KEYS:
            raise ParseError(lineno, 1, f"unknown key {key_stripped!r}")
        if key_stripped in seen:
            raise ParseError(lineno, 1, f"duplicate key {key_stripped!r}")
        try:
            # Structural failures are parse errors; semantic ones (forbidden
            # parameters, invalid families) stay MathError and exit with 2.
            seen[key_stripped] = _parse_value(key_stripped, value)
        except ValueError as exc:
            raise ParseError(lineno, value_column, str(exc)) from exc

    triple = [k for k in ("sigma", "tau", "lambda") if k in seen]
    if "family" in seen and triple:
        raise ParseError(0, 0, "family and sigma/tau/lambda are mutually exclusive")
    if "x1" in seen and ("family" in seen or triple):
        raise ParseError(0, 0, "x1 is mutually exclusive with the equation keys")
    if triple and len(triple) != 3:
        missing = sorted(set(("sigma", "tau", "lambda")) - set(triple))
        raise ParseError(0, 0, f"incomplete equation triple, missing {', '.join(missing)}")

    return EquationSpecFile(
        sigma=seen.get("sigma"),
        tau=seen.get("tau"),
        lam=seen.get("lambda"),
        a=seen.get("A"),
        b=seen.get("B"),
        family=seen.get("family"),
        x1=seen.get("x1"),
        candidate=seen.get("candidate"),
    )


def _parse_value(key: str, value: str):
    value = value.strip()
    if key in ("sigma", "tau", "A", "B", "candidate"):
        return parse_poly(value)
    if key == "lambda":
        return parse_rational(value)
    if key == "family":
        return parse_family(value)
    if key == "x1":
        name, paren, rest = value.partition("(")
        if name.strip().lower() != "x1" or not paren or not rest.endswith(")"):
            raise ValueError(f"not an x1 literal: {value!r}")
        args = [s.strip() for s in rest[:-1].split(",")]
        if len(args) != 3:
            raise ValueError(f"x1 literal takes (g, h, k), got {value!r}")
        if not args[2].lstrip("-").isdigit():
            raise ValueError(f"x1 degree must be an integer, got {args[2]!r}")
        return X1JacobiSpec(parse_rational(args[0]), parse_rational(args[1]), int(args[2]))
    raise AssertionError(key)


def _equation_from(spec: EquationSpecFile) -> HypergeomEq:
    if spec.family is not None:
        return equation_of(spec.family)
    if spec.sigma is None:
        raise UsageError("this command needs sigma/tau/lambda or family")
    return HypergeomEq(spec.sigma, spec.tau, spec.lam)


def _transform_from(spec: EquationSpecFile) -> LinearTransform:
    if spec.a is None and spec.b is None:
        raise UsageError("this command needs A and/or B")
    return LinearTransform(spec.a or Poly(), spec.b or Poly())


# -- report rendering ----------------------------------------------------------

def _fmt_bool(flag: bool) -> str:
    return "yes" if flag else "no"


def _echo_block(command: str, spec: EquationSpecFile, extra: list[str] = ()) -> list[str]:
    lines = [f"command: {command}", *extra]
    if spec.family is not None:
        lines.append(f"family: {format_family(spec.family)}")
        eq = equation_of(spec.family)
        lines.append(f"sigma: {format_poly(eq.sigma)}")
        lines.append(f"tau: {format_poly(eq.tau)}")
        lines.append(f"lambda: {eq.lam}")
    elif spec.sigma is not None:
        lines.append(f"sigma: {format_poly(spec.sigma)}")
        lines.append(f"tau: {format_poly(spec.tau)}")
        lines.append(f"lambda: {spec.lam}")
    if spec.a is not None:
        lines.append(f"A: {format_poly(spec.a)}")
    if spec.b is not None:
        lines.append(f"B: {format_poly(spec.b)}")
    return lines


def _operator_block(prefix: str, op: OdeOperator2) -> list[str]:
    return [
        f"{prefix}_c2: {format_poly(op.c2)}",
        f"{prefix}_c1: {format_poly(op.c1)}",
        f"{prefix}_c0: {format_poly(op.c0)}",
    ]


def _agreement_block(check: ClosedFormAgreement) -> list[str]:
    lines = [f"closed_form_route: {check.route}"]
    if check.agree is None:
        lines.append("closed_form_agreement: not-applicable")
        return lines
    lines.append(f"closed_form_agreement: {'agree' if check.agree else 'disagree'}")
    for name, det_val, closed_val in check.diffs:
        lines.append(f"diff_{name}_determinant: {format_poly(det_val)}")
        lines.append(f"diff_{name}_closed_form: {format_poly(closed_val)}")
    return lines


def _singularity_blocks(points: tuple[SingularPoint, ...]) -> list[list[str]]:
    return [
        [
            f"singular_point: {'inf' if p.location is None else p.location}",
            f"kind: {p.kind}",
            f"c2_multiplicity: {p.c2_multiplicity}",
        ]
        for p in points
    ]


def _heun_block(params: HeunParameters) -> list[str]:
    return [
        f"heun_gamma: {params.gamma}",
        f"heun_delta: {params.delta}",
        f"heun_epsilon: {params.epsilon}",
        f"heun_mu: {params.mu}",
        f"heun_alpha_beta: {params.alpha_beta_product}",
        f"heun_rho: {params.rho}",
        f"infinity_exponent_quadratic: {format_poly(params.infinity_exponent_quadratic())}",
    ]


def _residual_blocks(op: OdeOperator2, spec: EquationSpecFile, t: LinearTransform) -> list[list[str]]:
    if spec.family is None:
        return []
    z = polynomial_solution(spec.family)
    y = t.a * z + t.b * z.derivative()
    residual = apply_operator(op, y)
    block = [
        f"residual_check: {format_family(spec.family)}",
        f"residual_status: {'pass' if residual.is_zero else 'fail'}",
    ]
    if not residual.is_zero:
        block.append(f"residual: {format_poly(residual)}")
    return [block]


def _render(blocks: list[list[str]]) -> str:
    return "\n\n".join("\n".join(block) for block in blocks if block) + "\n"


# -- commands -------------------------------------------------------------------

def cmd_derive(spec: EquationSpecFile, path: str, normalize: bool) -> str:
    eq = _equation_from(spec)
    if path == "basic":
        if spec.a is None:
            raise UsageError("--path=basic needs A")
        if spec.b is not None and spec.b != eq.sigma:
            raise UsageError("--path=basic requires B = sigma (or no B at all)")
        t = LinearTransform(spec.a, eq.sigma)
        raw = closed_form_basic(eq, spec.a)
    elif path == "const":
        t = _transform_from(spec)
        if t.a.degree() not in (None, 0) or t.b.degree() not in (None, 0):
            raise UsageError("--path=const requires constant A and B")
        raw = closed_form_const(eq, t.a.coefficient(0), t.b.coefficient(0))
    else:
        t = _transform_from(spec)
        raw = expand_determinant(eq, t) if path == "det" else expand_determinant_hat(eq, t)

    blocks = [_echo_block("derive", spec, [f"path: {path}"])]
    blocks.append(_operator_block("raw", raw))
    reported = raw
    if normalize:
        reported = raw.normalized()
        blocks.append(_operator_block("normalized", reported))
    blocks.append(_agreement_block(closed_form_check(eq, t)))
    blocks.extend(_singularity_blocks(classify_singularities(reported)))
    blocks.extend(_residual_blocks(reported, spec, t))
    return _render(blocks)


def cmd_heun(spec: EquationSpecFile) -> str:
    eq = _equation_from(spec)
    t = _transform_from(spec)
    extra = []
    if eq.sigma != SIGMA_HEUN:
        extra.append("warning: sigma is not x^2 - x; reduction expects singular points 0 and 1")
    op = expand_determinant(eq, t).normalized()
    params = heun_reduce(op)

    blocks = [_echo_block("heun", spec, extra)]
    blocks.append(_operator_block("normalized", op))
    blocks.append(_heun_block(params))
    blocks.extend(_singularity_blocks(classify_singularities(op)))
    blocks.extend(_residual_blocks(op, spec, t))
    return _render(blocks)


def cmd_x1(spec: EquationSpecFile, to_heun: bool) -> str:
    if spec.x1 is None:
        raise UsageError("the x1 command needs an 'x1: x1(g, h, k)' line")
    x1 = spec.x1
    built = build_x1(x1)
    op = x1_operator(x1)
    residual = apply_operator(op, built.y_hat)

    blocks = [[
        "command: x1",
        f"x1: x1({x1.g},{x1.h},{x1.k})",
    ]]
    blocks.append([
        f"zeta: {format_poly(built.zeta)}",
        f"zeta_tilde: {format_poly(built.zeta_tilde)}",
        f"A: {format_poly(built.a)}",
        f"B: {format_poly(built.b)}",
        f"P_k: {format_poly(built.p_k)}",
        f"y_hat: {format_poly(built.y_hat)}",
        f"y_hat_degree: {built.y_hat.degree()}",
        f"degenerate_zeta: {_fmt_bool(built.degenerate_zeta)}",
    ])
    block = _operator_block("x1", op)
    block.append("residual_check: y_hat")
    block.append(f"residual_status: {'pass' if residual.is_zero else 'fail'}")
    if not residual.is_zero:
        block.append(f"residual: {format_poly(residual)}")
    blocks.append(block)

    if to_heun:
        heun_op = x1_to_heun(x1)
        blocks.append(_operator_block("heun_normalized", heun_op))
        params = heun_reduce(heun_op)
        block = _heun_block(params)
        root = built.zeta_root
        if root is not None:
            block.append(f"predicted_mu: {(1 - root) / 2}")
        blocks.append(block)
    return _render(blocks)


def cmd_verify(spec: EquationSpecFile) -> str:
    if spec.candidate is None:
        raise UsageError("verify needs a 'candidate:' line")
    eq = _equation_from(spec)
    if spec.a is not None or spec.b is not None:
        op = expand_determinant(eq, _transform_from(spec)).normalized()
    else:
        op = equation_operator(eq)
    residual = apply_operator(op, spec.candidate)

    blocks = [_echo_block("verify", spec)]
    blocks.append(_operator_block("operator", op))
    block = [
        f"candidate: {format_poly(spec.candidate)}",
        f"verify_status: {'pass' if residual.is_zero else 'fail'}",
    ]
    if not residual.is_zero:
        block.append(f"residual: {format_poly(residual)}")
    blocks.append(block)
    return _render(blocks)


def cmd_classify(spec: EquationSpecFile) -> str:
    eq = _equation_from(spec)
    if spec.a is not None or spec.b is not None:
        op = expand_determinant(eq, _transform_from(spec)).normalized()
    else:
        op = equation_operator(eq)
    blocks = [_echo_block("classify", spec)]
    blocks.append(_operator_block("operator", op))
    blocks.extend(_singularity_blocks(classify_singularities(op)))
    return _render(blocks)


# -- the Heun witness sweep ------------------------------------------------------

@dataclass(frozen=True)
class SweepHit:
    """One reducible point of the exact grid, with its extracted parameters."""

    alpha: Fraction
    beta: Fraction
    tau: Poly
    lam: Fraction
    operator: OdeOperator2
    params: HeunParameters


def _grid_values(bound: int) -> list[Fraction]:
    values = {Fraction(p, q) for p in range(-bound, bound + 1) for q in range(1, bound + 1)}
    return sorted(values)


def _on_grid(x: Fraction, bound: int) -> bool:
    return abs(x.numerator) <= bound and x.denominator <= bound


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    from math import isqrt

    num_root = isqrt(x.numerator)
    den_root = isqrt(x.denominator)
    if num_root * num_root != x.numerator or den_root * den_root != x.denominator:
        return None
    return Fraction(num_root, den_root)


def basic_determinant_reduced(eq: HypergeomEq, a: Poly) -> OdeOperator2:
    """Determinant triple for the transform (a, sigma), divided by its exact
    overall sigma^2 factor.

    For B = sigma every bar coefficient carries a factor sigma; pulling those
    out of the first-column expansion symbolically gives, with
    abar = A' - lam and bbar = A + sigma' - tau,

        c2 / sigma^2 = sigma (A bbar - sigma abar)
        c1 / sigma^2 = sigma'(A bbar - sigma abar) - (A bdbar - sigma adbar)
        c0 / sigma^2 = abar bdbar - bbar adbar

    where (adbar, bdbar) repeat the bar recursion on (abar, bbar).  This is
    the same determinant expansion with smaller polynomials; the test suite
    pins sigma^2 times this triple to expand_determinant exactly.
    """
    sigma, tau, lam = eq.sigma, eq.tau, eq.lam
    sigma_p = sigma.derivative()
    abar = a.derivative() - Poly([lam])
    bbar = a + sigma_p - tau
    adbar = sigma_p * abar + sigma * abar.derivative() - lam * bbar
    bdbar = sigma * abar + sigma_p * bbar + sigma * bbar.derivative() - tau * bbar
    p = a * bbar - sigma * abar
    if p.is_zero:
        raise DegenerateTransform("A Bbar - B Abar = 0 for this equation and transform")
    return OdeOperator2(
        sigma * p,
        sigma_p * p - (a * bdbar - sigma * adbar),
        abar * bdbar - bbar * adbar,
    )


def _reduce_candidate(alpha: Fraction, beta: Fraction, t0: Fraction,
                      t1: Fraction, lam: Fraction) -> SweepHit | None:
    eq = HypergeomEq(SIGMA_HEUN, Poly([t0, t1]), lam)
    try:
        raw = basic_determinant_reduced(eq, Poly([beta, alpha]))
        params = heun_reduce(raw)
    except (DegenerateTransform, NotHeunReducible, ConfluentOrDegenerate):
        return None
    # The round trip is exact, so rebuilding from the parameters is the
    # normalized operator itself.
    return SweepHit(alpha, beta, Poly([t0, t1]), lam, heun_operator(params), params)


def iter_heun_witnesses(bound: int):
    """Lazily yield Heun-reducible grid points for A = alpha x + beta,
    B = sigma = x^2 - x, in lexicographic (alpha, beta, tau0, tau1, lambda)
    order.

    The grid runs every rational with |numerator| <= bound and denominator
    <= bound for alpha, beta, tau's two coefficients and lambda.  A hit needs
    the determinant's normalized c2 to be a cubic x(x-1)(x-mu); writing
    P = A^2 + A(sigma' - tau) + sigma(lambda - A'), that forces either

      deg P = 1 with the x^3 coefficient of Q and x^2 coefficient of R zero
      (otherwise c1/c2 keeps a polynomial part or deg c0 > 1), or
      deg P = 2 with a rational root of P at which Q and R both vanish
      (a cancelling apparent factor).

    Those exact scalar conditions prune the grid; every surviving candidate
    runs the full determinant pipeline, which alone decides membership.
    """
    values = _grid_values(bound)
    nonzero = [v for v in values if v != 0]
    for alpha, beta, t0 in product(values, values, values):
        base_xx = alpha * alpha + alpha
        for t1 in nonzero:
            pxx_base = base_xx - alpha * t1
            px_base = 2 * alpha * beta + beta * (2 - t1) - alpha * (1 + t0) + alpha
            p0 = beta * beta - beta * (1 + t0)
            lam_star = -pxx_base
            for lam in values:
                if lam == lam_star:
                    # deg P <= 1: pipeline only when P is exactly linear and
                    # the two leading obstructions vanish.
                    if px_base - lam == 0:
                        continue
                    if not _leading_obstructions_vanish(alpha, t1, lam):
                        continue
                else:
                    root = _rational_sqrt((px_base - lam) ** 2 - 4 * (pxx_base + lam) * p0)
                    if root is None:
                        continue
                    px, pxx = px_base - lam, pxx_base + lam
                    candidates = {(-px + root) / (2 * pxx), (-px - root) / (2 * pxx)}
                    if not any(
                        _qr_vanish_at(nu, alpha, beta, t0, t1, lam) for nu in candidates
                    ):
                        continue
                hit = _reduce_candidate(alpha, beta, t0, t1, lam)
                if hit is not None:
                    yield hit


def sweep_heun_witnesses(bound: int) -> list[SweepHit]:
    """Exhaustive list form of iter_heun_witnesses."""
    return list(iter_heun_witnesses(bound))


def _leading_obstructions_vanish(alpha: Fraction, t1: Fraction, lam: Fraction) -> bool:
    """Leading coefficients of the closed-form Q (x^3) and R (x^2) for
    sigma = x^2 - x, A = alpha x + beta; both must vanish for a Heun shape."""
    q3 = alpha * (t1 - 2 - 2 * alpha) + lam * (t1 - 2) + alpha * t1 * (2 + alpha - t1)
    if q3 != 0:
        return False
    r2 = (
        alpha * (2 * alpha + 2 - 3 * lam - t1)
        + lam * (lam + t1 - 2)
        + 2 * (2 * lam * alpha + 2 * lam - lam * t1 - alpha * t1)
        + (alpha - t1) * (lam * alpha - alpha * t1)
    )
    return r2 == 0


def _qr_vanish_at(nu: Fraction, alpha: Fraction, beta: Fraction,
                  t0: Fraction, t1: Fraction, lam: Fraction) -> bool:
    """Scalar evaluation of the closed-form Q and R at nu for sigma = x^2 - x."""
    sig = nu * nu - nu
    sig_p = 2 * nu - 1
    tau = t1 * nu + t0
    a = alpha * nu + beta
    q = sig * (a * t1 + tau * lam - lam * sig_p - 2 * a - 2 * a * alpha) + a * tau * (
        sig_p + a - tau
    )
    if q != 0:
        return False
    r = (
        sig * (alpha * (2 * alpha + 2 - 3 * lam - t1) + lam * (lam + t1 - 2))
        + sig_p * (2 * lam * a + lam * sig_p - lam * tau - tau * alpha)
        + (a - tau) * (lam * a - alpha * tau)
    )
    return r == 0


def cmd_heun_sweep(bound: int) -> str:
    if bound < 1:
        raise UsageError("--sweep bound must be a positive integer")
    hits = sweep_heun_witnesses(bound)
    blocks = [[
        "command: heun",
        "mode: sweep",
        f"bound: {bound}",
        f"hits: {len(hits)}",
    ]]
    for i, hit in enumerate(hits, start=1):
        block = [
            f"hit: {i}",
            f"A: {format_poly(Poly([hit.beta, hit.alpha]))}",
            f"tau: {format_poly(hit.tau)}",
            f"lambda: {hit.lam}",
        ]
        block.extend(_operator_block("normalized", hit.operator))
        block.extend(_heun_block(hit.params))
        blocks.append(block)
    return _render(blocks)


# -- entry point ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: A003 - argparse API
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="odelift", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", default=None, help="input file (default stdin)")
        p.add_argument("--output", default=None, help="output file (default stdout)")
        return p

    derive = add("derive", "build the operator for y = A z + B z'")
    derive.add_argument("--path", choices=("det", "hat", "basic", "const"), default="det")
    derive.add_argument("--no-normalize", action="store_true")

    heun = add("heun", "reduce the derived operator to Heun form")
    heun.add_argument("--sweep", type=int, default=None, metavar="BOUND",
                      help="search the exact rational grid instead of reading input")

    x1 = add("x1", "build and verify an X1-Jacobi construction")
    x1.add_argument("--to-heun", action="store_true")

    add("verify", "apply the operator to a candidate polynomial")
    add("classify", "classify the singular points of the operator")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    try:
        if args.command == "heun" and args.sweep is not None:
            report = cmd_heun_sweep(args.sweep)
        else:
            spec = parse_spec(_read_input(args.input))
            if args.command == "derive":
                report = cmd_derive(spec, args.path, not args.no_normalize)
            elif args.command == "heun":
                report = cmd_heun(spec)
            elif args.command == "x1":
                report = cmd_x1(spec, args.to_heun)
            elif args.command == "verify":
                report = cmd_verify(spec)
            else:
                report = cmd_classify(spec)
    except (ParseError, UsageError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"input/output error: {exc}", file=sys.stderr)
        return 1
    except MathError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2

    if args.output is None:
        sys.stdout.write(report)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(report)
    return 0


def _read_input(path: str | None) -> str:
    if path is None:
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def console_main() -> None:
    raise SystemExit(main())
