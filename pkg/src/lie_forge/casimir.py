"""Differentiable expressions and numeric verification of algebra invariants.

Candidate invariants are small closed-form expressions (rational arithmetic,
powers with exact rational exponents, exp, arctg) parsed into an AST and
differentiated with forward-mode dual numbers.  The module evaluates three
bracket realizations at sampled points: the linear Poisson bracket from a
structure tensor, the ternary Jacobian bracket on R^3, and the wedge/Hodge
form driven by anchored pairs.  Exact rational data (tensors, pair matrices)
stays rational until the final evaluation at a point; only the expression
arithmetic itself runs in binary64.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import StructureConstants
from .bracket import AnchoredPair
from .exact import DimensionMismatchError, RationalVector
from .multivector import KVector, hodge_star_2, top_coefficient, wedge

Point = Sequence[float]

DEFAULT_SEED = 1729


class ExprSyntaxError(ValueError):
    """Malformed expression text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ExprDomainError(ArithmeticError):
    """Evaluation left the expression's domain at a concrete point."""

    def __init__(self, message: str, node: str, point: Tuple[float, ...]):
        super().__init__(f"{message} in '{node}' at point {point}")
        self.node = node
        self.point = point


# ---------------------------------------------------------------------------
# Expression AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Var:
    index: int  # 1-based, as written in the source text (x1, x2, ...)


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Sub:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Mul:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Div:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: Fraction


@dataclass(frozen=True)
class Exp:
    arg: "Expr"


@dataclass(frozen=True)
class Arctan:
    arg: "Expr"


Expr = Union[Const, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Arctan]


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<number>\d+(?:\.\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*/^()])"
)

_VAR_RE = re.compile(r"^x(\d+)$")

_FUNCTIONS = ("exp", "arctg")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        tokens.append((kind, match.group(), pos))
        pos = match.end()
    return tokens


class _Parser:
    """Recursive descent over the grammar

        expr   := term (('+'|'-') term)*
        term   := factor (('*'|'/') factor)*
        factor := base ('^' exponent)?
        base   := number | var | '(' expr ')' | '-' factor | func '(' expr ')'
        func   := 'exp' | 'arctg'

    where exponent is a signed rational literal, optionally parenthesized,
    so the caret binds tighter than unary minus and never consumes a general
    subexpression.
    """

    def __init__(self, text: str, dim: int):
        self.text = text
        self.dim = dim
        self.tokens = _tokenize(text)
        self.index = 0

    def _peek_op(self) -> Optional[str]:
        if self.index < len(self.tokens) and self.tokens[self.index][0] == "op":
            return self.tokens[self.index][1]
        return None

    def _next(self) -> Tuple[str, str, int]:
        if self.index >= len(self.tokens):
            raise ExprSyntaxError("unexpected end of input", len(self.text))
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def _expect_op(self, op: str) -> None:
        kind, text, pos = self._next()
        if kind != "op" or text != op:
            raise ExprSyntaxError(f"expected {op!r}, found {text!r}", pos)

    def parse(self) -> Expr:
        node = self.expr()
        if self.index < len(self.tokens):
            _, text, pos = self.tokens[self.index]
            raise ExprSyntaxError(f"unexpected trailing token {text!r}", pos)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self._peek_op() in ("+", "-"):
            op = self._next()[1]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self._peek_op() in ("*", "/"):
            op = self._next()[1]
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self) -> Expr:
        node = self.base()
        if self._peek_op() == "^":
            self._next()
            node = Pow(node, self.exponent())
        return node

    def base(self) -> Expr:
        kind, text, pos = self._next()
        if kind == "number":
            return Const(Fraction(text))
        if kind == "name":
            var = _VAR_RE.match(text)
            if var:
                index = int(var.group(1))
                if index < 1 or index > self.dim:
                    raise ExprSyntaxError(
                        f"variable {text} out of range; expected x1..x{self.dim}", pos
                    )
                return Var(index)
            if text in _FUNCTIONS:
                self._expect_op("(")
                arg = self.expr()
                self._expect_op(")")
                return Exp(arg) if text == "exp" else Arctan(arg)
            raise ExprSyntaxError(f"unknown identifier {text!r}", pos)
        if text == "(":
            node = self.expr()
            self._expect_op(")")
            return node
        if text == "-":
            return Neg(self.factor())
        raise ExprSyntaxError(f"unexpected token {text!r}", pos)

    def exponent(self) -> Fraction:
        if self._peek_op() == "(":
            self._next()
            value = self._signed_rational()
            self._expect_op(")")
            return value
        return self._signed_rational()

    def _signed_rational(self) -> Fraction:
        sign = 1
        if self._peek_op() in ("-", "+"):
            if self._next()[1] == "-":
                sign = -1
        kind, text, pos = self._next()
        if kind != "number":
            raise ExprSyntaxError(f"expected a rational exponent, found {text!r}", pos)
        value = Fraction(text)
        if self._peek_op() == "/":
            self._next()
            kind, text, pos = self._next()
            if kind != "number":
                raise ExprSyntaxError(f"expected a denominator, found {text!r}", pos)
            denom = Fraction(text)
            if denom == 0:
                raise ExprSyntaxError("zero denominator in exponent", pos)
            value /= denom
        return sign * value


def parse_expr(text: str, dim: int) -> Expr:
    """Parse expression text over variables x1..x{dim}."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    return _Parser(text, dim).parse()


# ---------------------------------------------------------------------------
# Formatting (re-parseable, AST-faithful)
# ---------------------------------------------------------------------------

_PREC_ADD = 1
_PREC_MUL = 2
_PREC_POW = 3
_PREC_BASE = 4
_PREC_ATOM = 5


def _const_precedence(value: Fraction) -> int:
    if value < 0:
        return _PREC_MUL if value.denominator == 1 else _PREC_ADD
    return _PREC_ATOM if value.denominator == 1 else _PREC_MUL


def _format(e: Expr, context: int) -> str:
    if isinstance(e, Const):
        text = str(e.value)
        return f"({text})" if _const_precedence(e.value) < context else text
    if isinstance(e, Var):
        return f"x{e.index}"
    if isinstance(e, Neg):
        text = "-" + _format(e.arg, _PREC_POW)
        return f"({text})" if _PREC_MUL < context else text
    if isinstance(e, (Add, Sub)):
        op = "+" if isinstance(e, Add) else "-"
        text = _format(e.lhs, _PREC_ADD) + op + _format(e.rhs, _PREC_ADD + 1)
        return f"({text})" if _PREC_ADD < context else text
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        text = _format(e.lhs, _PREC_MUL) + op + _format(e.rhs, _PREC_MUL + 1)
        return f"({text})" if _PREC_MUL < context else text
    if isinstance(e, Pow):
        q = e.exponent
        exp_text = str(q) if q >= 0 and q.denominator == 1 else f"({q})"
        text = _format(e.base, _PREC_BASE) + "^" + exp_text
        return f"({text})" if _PREC_POW < context else text
    if isinstance(e, Exp):
        return f"exp({_format(e.arg, 0)})"
    if isinstance(e, Arctan):
        return f"arctg({_format(e.arg, 0)})"
    raise TypeError(f"not an expression node: {e!r}")


def format_expr(e: Expr) -> str:
    """Render an AST back to text that parses to the same AST."""
    return _format(e, 0)


# ---------------------------------------------------------------------------
# Dual numbers and evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DualNumber:
    """First-order dual number: value + derivative * eps."""

    value: float
    derivative: float = 0.0

    def _coerce(self, other) -> "DualNumber":
        if isinstance(other, DualNumber):
            return other
        return DualNumber(float(other), 0.0)

    def __add__(self, other):
        o = self._coerce(other)
        return DualNumber(self.value + o.value, self.derivative + o.derivative)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return DualNumber(self.value - o.value, self.derivative - o.derivative)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return DualNumber(
            self.value * o.value, self.value * o.derivative + self.derivative * o.value
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return DualNumber(
            self.value / o.value,
            (self.derivative * o.value - self.value * o.derivative) / (o.value * o.value),
        )

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return DualNumber(-self.value, -self.derivative)

    def exp(self) -> "DualNumber":
        e = math.exp(self.value)
        return DualNumber(e, e * self.derivative)

    def atan(self) -> "DualNumber":
        return DualNumber(
            math.atan(self.value), self.derivative / (1.0 + self.value * self.value)
        )


Scalar = Union[float, DualNumber]


def _value_of(x: Scalar) -> float:
    return x.value if isinstance(x, DualNumber) else x


def _int_power(base: Scalar, k: int) -> Scalar:
    if k == 0:
        return 1.0
    result = base
    for _ in range(abs(k) - 1):
        result = result * base
    if k < 0:
        result = 1.0 / result
    return result


def _eval_node(e: Expr, values: Sequence[Scalar], point: Tuple[float, ...]) -> Scalar:
    if isinstance(e, Const):
        return float(e.value)
    if isinstance(e, Var):
        if e.index > len(values):
            raise DimensionMismatchError(
                f"expression references x{e.index} but the point has dimension {len(values)}"
            )
        return values[e.index - 1]
    if isinstance(e, Neg):
        return -_eval_node(e.arg, values, point)
    if isinstance(e, Add):
        return _eval_node(e.lhs, values, point) + _eval_node(e.rhs, values, point)
    if isinstance(e, Sub):
        return _eval_node(e.lhs, values, point) - _eval_node(e.rhs, values, point)
    if isinstance(e, Mul):
        return _eval_node(e.lhs, values, point) * _eval_node(e.rhs, values, point)
    if isinstance(e, Div):
        denom = _eval_node(e.rhs, values, point)
        if _value_of(denom) == 0.0:
            raise ExprDomainError("division by zero", format_expr(e), point)
        return _eval_node(e.lhs, values, point) / denom
    if isinstance(e, Pow):
        base = _eval_node(e.base, values, point)
        q = e.exponent
        if q.denominator == 1:
            k = int(q)
            if k < 0 and _value_of(base) == 0.0:
                raise ExprDomainError("zero base with negative exponent", format_expr(e), point)
            return _int_power(base, k)
        if _value_of(base) <= 0.0:
            raise ExprDomainError(
                "non-integer exponent requires a positive base", format_expr(e), point
            )
        qf = float(q)
        if isinstance(base, DualNumber):
            value = base.value ** qf
            return DualNumber(value, qf * base.value ** (qf - 1.0) * base.derivative)
        return base ** qf
    if isinstance(e, Exp):
        arg = _eval_node(e.arg, values, point)
        try:
            return arg.exp() if isinstance(arg, DualNumber) else math.exp(arg)
        except OverflowError:
            raise ExprDomainError("exp overflow", format_expr(e), point) from None
    if isinstance(e, Arctan):
        arg = _eval_node(e.arg, values, point)
        return arg.atan() if isinstance(arg, DualNumber) else math.atan(arg)
    raise TypeError(f"not an expression node: {e!r}")


def evaluate(e: Expr, point: Point) -> float:
    """Value of the expression at a point."""
    pt = tuple(float(x) for x in point)
    return _eval_node(e, pt, pt)


def gradient(e: Expr, point: Point) -> List[float]:
    """Forward-mode gradient, one dual-number pass per coordinate."""
    pt = tuple(float(x) for x in point)
    grad = []
    for seed in range(len(pt)):
        values = [DualNumber(x, 1.0 if i == seed else 0.0) for i, x in enumerate(pt)]
        result = _eval_node(e, values, pt)
        grad.append(result.derivative if isinstance(result, DualNumber) else 0.0)
    return grad


# ---------------------------------------------------------------------------
# Bracket evaluators
# ---------------------------------------------------------------------------

def _lie_poisson_terms(
    sc: StructureConstants, grad_f: Sequence[float], grad_g: Sequence[float], pt: Sequence[float]
) -> List[float]:
    terms = []
    for i, j, k, coeff in sc.nonzero_entries():
        common = float(coeff) * pt[k]
        # i < j entry plus its antisymmetric mirror
        term = common * (grad_f[i] * grad_g[j] - grad_f[j] * grad_g[i])
        if term != 0.0:
            terms.append(term)
    return terms


def lie_poisson_bracket(sc: StructureConstants, f: Expr, g: Expr, point: Point) -> float:
    """Linear Poisson bracket sum_{i,j,k} c[i][j][k] x_k d_i f d_j g at a point."""
    pt = tuple(float(x) for x in point)
    if len(pt) != sc.dim:
        raise DimensionMismatchError(f"point dim {len(pt)} != tensor dim {sc.dim}")
    return math.fsum(_lie_poisson_terms(sc, gradient(f, pt), gradient(g, pt), pt))


def nambu3(f1: Expr, f2: Expr, f3: Expr, point: Point) -> float:
    """Ternary bracket on R^3: the Jacobian determinant of the three gradients.

    The determinant is summed over the six signed permutation products with
    fsum, so swapping two arguments flips the sign exactly.
    """
    pt = tuple(float(x) for x in point)
    if len(pt) != 3:
        raise DimensionMismatchError(f"ternary bracket requires dimension 3, got {len(pt)}")
    rows = [gradient(f1, pt), gradient(f2, pt), gradient(f3, pt)]
    terms = []
    for perm in permutations(range(3)):
        inversions = sum(a > b for x, a in enumerate(perm) for b in perm[x + 1:])
        sign = -1.0 if inversions % 2 else 1.0
        terms.append(sign * rows[0][perm[0]] * rows[1][perm[1]] * rows[2][perm[2]])
    return math.fsum(terms)


def _exact_point(pt: Sequence[float]) -> RationalVector:
    # binary64 values convert to Fraction without loss
    return RationalVector([Fraction(x) for x in pt])


def pair_field_bivector(pairs: Sequence[AnchoredPair], pt: Sequence[float]) -> KVector:
    """The 2-vector sum of F_i(x) ^ v_i at a point, computed exactly."""
    if not pairs:
        raise ValueError("at least one anchored pair is required")
    n = pairs[0].dim
    exact_pt = _exact_point(pt)
    total = KVector(n, 2)
    for p in pairs:
        if p.dim != n:
            raise DimensionMismatchError("pairs live in different dimensions")
        image = KVector.from_vector(p.matrix.apply(exact_pt))
        anchor = KVector.from_vector(p.eigenvector)
        total = total + wedge(image, anchor)
    return total


def hodge_poisson_bracket(pairs: Sequence[AnchoredPair], f: Expr, g: Expr, point: Point) -> float:
    """Bracket evaluated as the volume coefficient of grad f ^ grad g ^ *B,
    where B sums the pair bivectors F_i(x) ^ v_i."""
    pt = tuple(float(x) for x in point)
    n = pairs[0].dim if pairs else 0
    if n < 3:
        raise DimensionMismatchError("hodge bracket requires dimension >= 3")
    if len(pt) != n:
        raise DimensionMismatchError(f"point dim {len(pt)} != pair dim {n}")
    dual = hodge_star_2(pair_field_bivector(pairs, pt))
    grad_f = KVector.from_vector(_exact_point(gradient(f, pt)))
    grad_g = KVector.from_vector(_exact_point(gradient(g, pt)))
    return float(top_coefficient(wedge(wedge(grad_f, grad_g), dual)))


def _cross(a: Sequence[float], b: Sequence[float]) -> List[float]:
    return [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]


def integrating_factor_check(
    pairs: Union[AnchoredPair, Sequence[AnchoredPair]],
    candidate: Expr,
    factor: Expr,
    point: Point,
) -> List[float]:
    """Componentwise residual grad c - l * sum_i (F_i(x) x v_i) on R^3.

    For a single pair this is the proportionality of the invariant's
    gradient to the cross-product field; handing in several pairs checks the
    same identity against the summed field (the dual of the bivector sum).
    """
    if isinstance(pairs, AnchoredPair):
        pairs = [pairs]
    if not pairs:
        raise ValueError("at least one anchored pair is required")
    pt = tuple(float(x) for x in point)
    if len(pt) != 3 or any(p.dim != 3 for p in pairs):
        raise DimensionMismatchError("integrating factor check requires dimension 3")
    grad_c = gradient(candidate, pt)
    scale = evaluate(factor, pt)
    total = [0.0, 0.0, 0.0]
    for p in pairs:
        image = [
            math.fsum(float(p.matrix.rows[r][j]) * pt[j] for j in range(3)) for r in range(3)
        ]
        anchor = [float(x) for x in p.eigenvector]
        cross = _cross(image, anchor)
        total = [t + c for t, c in zip(total, cross)]
    return [g - scale * t for g, t in zip(grad_c, total)]


# ---------------------------------------------------------------------------
# Casimir verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SampleConfig:
    """Sampling policy for numeric verification.

    The default box avoids the singular loci of the catalog expressions
    (reciprocals, rational powers, arctg quotients are all smooth on it).
    """

    samples: int = 100
    tolerance: float = 1e-9
    seed: int = DEFAULT_SEED
    box: Tuple[float, float] = (0.5, 2.0)
    max_resamples: int = 1000


@dataclass(frozen=True)
class CasimirReport:
    """Outcome of sampling the bracket of a candidate against all generators.

    A point passes when every residual satisfies
    |residual| <= tolerance * (1 + scale), with scale the largest
    intermediate product magnitude seen at that point.
    """

    candidate: str
    samples: int
    evaluated: int
    resamples: int
    max_abs_residual: float
    max_normalized_residual: float
    per_generator: Dict[str, float]
    tolerance: float
    passed: bool
    failures: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


def _sample_point(rng: random.Random, dim: int, box: Tuple[float, float]) -> Tuple[float, ...]:
    lo, hi = box
    return tuple(lo + (hi - lo) * rng.random() for _ in range(dim))


def verify_casimir(
    sc: StructureConstants, candidate: Expr, config: SampleConfig = SampleConfig()
) -> CasimirReport:
    """Sample the bracket of the candidate with every coordinate generator.

    Points where the candidate leaves its domain are resampled up to the
    configured budget; anything still failing is reported rather than
    silently dropped.
    """
    n = sc.dim
    rng = random.Random(config.seed)
    unit = [[1.0 if i == j else 0.0 for i in range(n)] for j in range(n)]
    per_generator = {f"x{j + 1}": 0.0 for j in range(n)}
    max_abs = 0.0
    max_norm = 0.0
    evaluated = 0
    resamples = 0
    failures: List[str] = []
    while evaluated < config.samples:
        pt = _sample_point(rng, n, config.box)
        try:
            grad_c = gradient(candidate, pt)
        except ExprDomainError as err:
            resamples += 1
            if resamples > config.max_resamples:
                failures.append(f"domain resample budget exhausted: {err}")
                break
            continue
        scale = 0.0
        residuals = []
        for j in range(n):
            terms = _lie_poisson_terms(sc, grad_c, unit[j], pt)
            for t in terms:
                scale = max(scale, abs(t))
            residuals.append(math.fsum(terms))
        for j, res in enumerate(residuals):
            magnitude = abs(res)
            key = f"x{j + 1}"
            per_generator[key] = max(per_generator[key], magnitude)
            max_abs = max(max_abs, magnitude)
            max_norm = max(max_norm, magnitude / (1.0 + scale))
        evaluated += 1
    passed = not failures and evaluated == config.samples and max_norm <= config.tolerance
    return CasimirReport(
        candidate=format_expr(candidate),
        samples=config.samples,
        evaluated=evaluated,
        resamples=resamples,
        max_abs_residual=max_abs,
        max_normalized_residual=max_norm,
        per_generator=per_generator,
        tolerance=config.tolerance,
        passed=passed,
        failures=tuple(failures),
    )
