"""Parse, analyse and evaluate complex-analytic integrands.

The grammar is a small closed language over one complex variable (``z`` and
``x`` are synonyms)::

    expr   := ('+'|'-')? term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' signed_integer)?
    base   := number | 'i' | 'z' | 'x' | func '(' expr ')' | '(' expr ')'
    func   := 'exp' | 'sin' | 'cos' | 'log' | 'sqrt'

Numbers accept a trailing ``i`` (``2i``, ``1.5e-3i``). ``log`` and ``sqrt``
use the principal branch, cut along the negative real axis.

Besides evaluation, this module derives the singularity structure of the
parsed function (pole locations/orders for rational building blocks, branch
points of ``log``/``sqrt`` arguments, essential singularities of e.g.
``exp(1/z)``) and computes Taylor data through Cauchy-circle quadrature.
Removable singularities are deliberately *not* cancelled: ``sin(z)/z``
declares a first-order pole at the origin, and callers wanting the analytic
form must supply it explicitly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

import numpy as np

from .errors import (
    ConvergenceError,
    DivcalcError,
    DomainError,
    ParseError,
    SingularityError,
    UnknownIdentifierError,
)

__all__ = [
    "AnalyticFunction",
    "Singularity",
    "DerivativeEstimate",
    "parse_expression",
    "evaluate",
    "derivative_at",
    "taylor_coefficient",
    "nearest_singularity_distance",
    "compile_scalar",
]

_FUNCTIONS = ("exp", "sin", "cos", "log", "sqrt")
_ENTIRE_FUNCTIONS = ("exp", "sin", "cos")
_MAX_EXPONENT = 512
# relative tolerance for clustering repeated denominator roots
_ROOT_CLUSTER_RTOL = 1e-5


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: complex


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    child: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*', '/'
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Union[Const, Var, Neg, BinOp, Pow, Call]


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def parse(self) -> Node:
        node = self._expr()
        self._skip_ws()
        if self.i < len(self.text):
            raise ParseError(f"unexpected character {self.text[self.i]!r}", self.i)
        return node

    def _skip_ws(self):
        while self.i < len(self.text) and self.text[self.i] in " \t\r\n":
            self.i += 1

    def _peek(self) -> str:
        return self.text[self.i] if self.i < len(self.text) else ""

    def _expr(self) -> Node:
        self._skip_ws()
        negate = False
        if self._peek() and self._peek() in "+-":
            negate = self._peek() == "-"
            self.i += 1
        node = self._term()
        if negate:
            node = Neg(node)
        while True:
            self._skip_ws()
            ch = self._peek()
            if ch and ch in "+-":
                self.i += 1
                rhs = self._term()
                node = BinOp(ch, node, rhs)
            else:
                return node

    def _term(self) -> Node:
        node = self._factor()
        while True:
            self._skip_ws()
            ch = self._peek()
            if ch and ch in "*/":
                self.i += 1
                rhs = self._factor()
                node = BinOp(ch, node, rhs)
            else:
                return node

    def _factor(self) -> Node:
        node = self._base()
        self._skip_ws()
        if self._peek() == "^":
            self.i += 1
            exponent = self._signed_integer()
            if abs(exponent) > _MAX_EXPONENT:
                raise ParseError(f"exponent magnitude exceeds {_MAX_EXPONENT}", self.i)
            node = Pow(node, exponent)
        return node

    def _signed_integer(self) -> int:
        self._skip_ws()
        start = self.i
        if self._peek() and self._peek() in "+-":
            self.i += 1
        if not self._peek().isdigit():
            raise ParseError("expected integer exponent", self.i)
        while self._peek().isdigit():
            self.i += 1
        return int(self.text[start : self.i])

    def _base(self) -> Node:
        self._skip_ws()
        ch = self._peek()
        if ch == "(":
            self.i += 1
            node = self._expr()
            self._skip_ws()
            if self._peek() != ")":
                raise ParseError("missing closing parenthesis", self.i)
            self.i += 1
            return node
        if ch.isdigit() or ch == ".":
            return self._number()
        if ch.isalpha():
            return self._identifier()
        if ch == "":
            raise ParseError("unexpected end of input", self.i)
        raise ParseError(f"unexpected character {ch!r}", self.i)

    def _number(self) -> Node:
        start = self.i
        text = self.text
        while self.i < len(text) and text[self.i].isdigit():
            self.i += 1
        if self._peek() == ".":
            self.i += 1
            while self.i < len(text) and text[self.i].isdigit():
                self.i += 1
        if self._peek() and self._peek() in "eE":
            mark = self.i
            self.i += 1
            if self._peek() and self._peek() in "+-":
                self.i += 1
            if self._peek().isdigit():
                while self.i < len(text) and text[self.i].isdigit():
                    self.i += 1
            else:
                self.i = mark  # 'e' belongs to a following identifier, not the number
        try:
            value = float(text[start : self.i])
        except ValueError:
            raise ParseError("malformed number", start) from None
        if self._peek() == "i":
            self.i += 1
            return Const(complex(0.0, value))
        return Const(complex(value, 0.0))

    def _identifier(self) -> Node:
        start = self.i
        while self.i < len(self.text) and (self.text[self.i].isalnum() or self.text[self.i] == "_"):
            self.i += 1
        name = self.text[start : self.i]
        if name in ("z", "x"):
            return Var()
        if name == "i":
            return Const(1j)
        if name in _FUNCTIONS:
            self._skip_ws()
            if self._peek() != "(":
                raise ParseError(f"function {name!r} requires parentheses", self.i)
            self.i += 1
            arg = self._expr()
            self._skip_ws()
            if self._peek() != ")":
                raise ParseError("missing closing parenthesis", self.i)
            self.i += 1
            return Call(name, arg)
        raise UnknownIdentifierError(f"unknown identifier {name!r}", start)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

_NUMPY_FUNCS = {
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "log": np.log,
    "sqrt": np.sqrt,
}


def _eval_array(node: Node, z: np.ndarray) -> np.ndarray:
    if isinstance(node, Const):
        return np.broadcast_to(np.asarray(node.value, dtype=complex), z.shape).copy()
    if isinstance(node, Var):
        return z
    if isinstance(node, Neg):
        return -_eval_array(node.child, z)
    if isinstance(node, BinOp):
        left = _eval_array(node.left, z)
        right = _eval_array(node.right, z)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        return left / right
    if isinstance(node, Pow):
        base = _eval_array(node.base, z)
        return base ** node.exponent
    if isinstance(node, Call):
        return _NUMPY_FUNCS[node.func](_eval_array(node.arg, z))
    raise TypeError(f"unknown node {node!r}")


# ---------------------------------------------------------------------------
# Singularity analysis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Singularity:
    """An isolated singular point of the complex extension.

    ``order`` is the pole order for ``kind == "pole"`` and 0 otherwise.
    """

    location: complex
    kind: str  # "pole" | "branch-point" | "essential"
    order: int = 0

    def __post_init__(self):
        if self.kind == "pole" and self.order < 1:
            raise DomainError("pole order must be >= 1")


_KIND_RANK = {"pole": 0, "branch-point": 1, "essential": 2}


class _Analysis(NamedTuple):
    entire: bool
    sings: tuple[Singularity, ...]
    complete: bool


def _same_location(a: complex, b: complex) -> bool:
    return abs(a - b) <= _ROOT_CLUSTER_RTOL * max(1.0, abs(a), abs(b))


def _merge_sings(groups, add_orders: bool) -> tuple[Singularity, ...]:
    merged: list[Singularity] = []
    for group in groups:
        for s in group:
            for idx, t in enumerate(merged):
                if _same_location(s.location, t.location):
                    if s.kind == "pole" and t.kind == "pole":
                        order = s.order + t.order if add_orders else max(s.order, t.order)
                        merged[idx] = Singularity(t.location, "pole", order)
                    elif _KIND_RANK[s.kind] > _KIND_RANK[t.kind]:
                        merged[idx] = Singularity(t.location, s.kind, 0)
                    break
            else:
                merged.append(s)
    return tuple(merged)


def _poly_coeffs(node: Node) -> Optional[np.ndarray]:
    """Ascending complex coefficients when the subtree is polynomial in z."""
    if isinstance(node, Const):
        return np.array([node.value], dtype=complex)
    if isinstance(node, Var):
        return np.array([0.0, 1.0], dtype=complex)
    if isinstance(node, Neg):
        c = _poly_coeffs(node.child)
        return None if c is None else -c
    if isinstance(node, BinOp):
        left = _poly_coeffs(node.left)
        right = _poly_coeffs(node.right)
        if left is None or right is None:
            return None
        if node.op in "+-":
            n = max(len(left), len(right))
            out = np.zeros(n, dtype=complex)
            out[: len(left)] += left
            out[: len(right)] += right if node.op == "+" else -right
            return out
        if node.op == "*":
            return np.convolve(left, right)
        return None  # division leaves the polynomial ring
    if isinstance(node, Pow):
        if node.exponent < 0:
            return None
        base = _poly_coeffs(node.base)
        if base is None or (len(base) - 1) * node.exponent > 128:
            return None
        out = np.array([1.0 + 0j])
        for _ in range(node.exponent):
            out = np.convolve(out, base)
        return out
    return None


def _cluster_roots(roots: np.ndarray) -> list[tuple[complex, int]]:
    clusters: list[list[complex]] = []
    for r in sorted(roots, key=lambda w: (w.real, w.imag)):
        for cluster in clusters:
            if _same_location(r, np.mean(cluster)):
                cluster.append(r)
                break
        else:
            clusters.append([r])
    return [(complex(np.mean(c)), len(c)) for c in clusters]


def _zeros_with_multiplicity(node: Node) -> Optional[list[tuple[complex, int]]]:
    """Zeros of a polynomial subtree, counted with multiplicity.

    Handles powers and products structurally so that e.g. ``(z-2)^3`` yields an
    exact triple zero instead of three clustered simple roots.
    """
    if isinstance(node, Neg):
        return _zeros_with_multiplicity(node.child)
    if isinstance(node, Pow) and node.exponent > 0:
        inner = _zeros_with_multiplicity(node.base)
        if inner is None:
            return None
        return [(loc, mult * node.exponent) for loc, mult in inner]
    if isinstance(node, BinOp) and node.op == "*":
        left = _zeros_with_multiplicity(node.left)
        right = _zeros_with_multiplicity(node.right)
        if left is None or right is None:
            return None
        out = list(left)
        for loc, mult in right:
            for idx, (loc2, mult2) in enumerate(out):
                if _same_location(loc, loc2):
                    out[idx] = (loc2, mult2 + mult)
                    break
            else:
                out.append((loc, mult))
        return out
    coeffs = _poly_coeffs(node)
    if coeffs is None:
        return None
    nonzero = np.nonzero(np.abs(coeffs) > 0.0)[0]
    if len(nonzero) == 0:
        raise DivcalcError("identically zero denominator")
    coeffs = coeffs[: nonzero[-1] + 1]
    if len(coeffs) == 1:
        return []
    roots = np.polynomial.polynomial.polyroots(coeffs)
    return _cluster_roots(np.asarray(roots, dtype=complex))


def _is_nonvanishing_entire(node: Node) -> bool:
    """Provably entire and zero-free, so safe as a denominator."""
    if isinstance(node, Const):
        return node.value != 0
    if isinstance(node, Neg):
        return _is_nonvanishing_entire(node.child)
    if isinstance(node, Call) and node.func == "exp":
        return _analyze(node.arg).entire
    if isinstance(node, BinOp) and node.op == "*":
        return _is_nonvanishing_entire(node.left) and _is_nonvanishing_entire(node.right)
    if isinstance(node, Pow) and node.exponent >= 1:
        return _is_nonvanishing_entire(node.base)
    return False


def _analyze(node: Node) -> _Analysis:
    if isinstance(node, (Const, Var)):
        return _Analysis(True, (), True)
    if isinstance(node, Neg):
        return _analyze(node.child)
    if isinstance(node, BinOp):
        if node.op == "/":
            return _analyze_division(node.left, node.right)
        left = _analyze(node.left)
        right = _analyze(node.right)
        add_orders = node.op == "*"
        return _Analysis(
            left.entire and right.entire,
            _merge_sings([left.sings, right.sings], add_orders=add_orders),
            left.complete and right.complete,
        )
    if isinstance(node, Pow):
        if node.exponent == 0:
            return _Analysis(True, (), True)
        if node.exponent < 0:
            return _analyze_division(Const(1.0 + 0j), Pow(node.base, -node.exponent))
        inner = _analyze(node.base)
        sings = tuple(
            Singularity(s.location, s.kind, s.order * node.exponent if s.kind == "pole" else 0)
            for s in inner.sings
        )
        return _Analysis(inner.entire, sings, inner.complete)
    if isinstance(node, Call):
        inner = _analyze(node.arg)
        if node.func in _ENTIRE_FUNCTIONS:
            # a pole feeding exp/sin/cos becomes an essential singularity
            sings = tuple(
                Singularity(s.location, "essential" if s.kind == "pole" else s.kind, 0)
                for s in inner.sings
            )
            return _Analysis(inner.entire, sings, inner.complete)
        # log/sqrt: branch points wherever the argument vanishes (or blows up)
        zeros = _zeros_with_multiplicity(node.arg)
        branch = tuple(Singularity(loc, "branch-point", 0) for loc, _ in (zeros or []))
        carried = tuple(
            Singularity(s.location, "branch-point" if s.kind == "pole" else s.kind, 0)
            for s in inner.sings
        )
        return _Analysis(
            False,
            _merge_sings([carried, branch], add_orders=False),
            inner.complete and zeros is not None,
        )
    raise TypeError(f"unknown node {node!r}")


def _analyze_division(num: Node, den: Node) -> _Analysis:
    top = _analyze(num)
    if _is_nonvanishing_entire(den):
        return top
    zeros = _zeros_with_multiplicity(den)
    if zeros is None:
        return _Analysis(False, top.sings, False)
    poles = tuple(Singularity(loc, "pole", mult) for loc, mult in zeros)
    if not poles:
        return top  # nonzero constant denominator
    return _Analysis(False, _merge_sings([top.sings, poles], add_orders=True), top.complete)


def _has_real_literals(node: Node) -> bool:
    if isinstance(node, Const):
        return node.value.imag == 0.0
    if isinstance(node, Var):
        return True
    if isinstance(node, Neg):
        return _has_real_literals(node.child)
    if isinstance(node, BinOp):
        return _has_real_literals(node.left) and _has_real_literals(node.right)
    if isinstance(node, Pow):
        return _has_real_literals(node.base)
    if isinstance(node, Call):
        return _has_real_literals(node.arg)
    raise TypeError(f"unknown node {node!r}")


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _format_const(value: complex) -> str:
    re, im = value.real, value.imag
    if im == 0.0:
        return repr(re) if re >= 0 else f"(-{abs(re)!r})"
    if re == 0.0:
        return f"{im!r}i" if im >= 0 else f"(-{abs(im)!r}i)"
    sign = "+" if im >= 0 else "-"
    return f"({re!r}{sign}{abs(im)!r}i)"


def _to_string(node: Node) -> str:
    if isinstance(node, Const):
        return _format_const(node.value)
    if isinstance(node, Var):
        return "z"
    if isinstance(node, Neg):
        return f"(-{_to_string(node.child)})"
    if isinstance(node, BinOp):
        return f"({_to_string(node.left)}{node.op}{_to_string(node.right)})"
    if isinstance(node, Pow):
        return f"({_to_string(node.base)}^{node.exponent})"
    if isinstance(node, Call):
        return f"{node.func}({_to_string(node.arg)})"
    raise TypeError(f"unknown node {node!r}")


# ---------------------------------------------------------------------------
# Public surface
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnalyticFunction:
    """Immutable parsed integrand with derived singularity data.

    ``entirety`` is ``"entire"`` only when the expression is provably free of
    singular points, ``"meromorphic"`` when the (complete) singularity list
    contains only poles, and ``"unknown"`` otherwise. ``complete`` records
    whether ``singularities`` provably enumerates every singular point.
    """

    ast: Node
    source: str
    singularities: tuple[Singularity, ...]
    entirety: str
    complete: bool
    real_coefficients: bool

    def __call__(self, z: complex) -> complex:
        return evaluate(self, z)

    def evaluate_array(self, z: np.ndarray) -> np.ndarray:
        """Vectorised evaluation; singular/overflowing samples yield inf/nan."""
        z = np.asarray(z, dtype=complex)
        with np.errstate(all="ignore"):
            return np.asarray(_eval_array(self.ast, z), dtype=complex)

    def to_string(self) -> str:
        """Canonical, fully parenthesised serialisation (re-parseable)."""
        return _to_string(self.ast)

    def __repr__(self) -> str:
        return f"AnalyticFunction({self.source!r})"


_CMATH_NAMES = {
    "_exp": cmath.exp,
    "_sin": cmath.sin,
    "_cos": cmath.cos,
    "_log": cmath.log,
    "_sqrt": cmath.sqrt,
}


def _scalar_source(node: Node) -> str:
    if isinstance(node, Const):
        return f"({node.value!r})"
    if isinstance(node, Var):
        return "z"
    if isinstance(node, Neg):
        return f"(-{_scalar_source(node.child)})"
    if isinstance(node, BinOp):
        return f"({_scalar_source(node.left)}{node.op}{_scalar_source(node.right)})"
    if isinstance(node, Pow):
        return f"({_scalar_source(node.base)}**{node.exponent})"
    if isinstance(node, Call):
        return f"_{node.func}({_scalar_source(node.arg)})"
    raise TypeError(f"unknown node {node!r}")


def compile_scalar(f: "AnalyticFunction"):
    """Compile the AST into a fast scalar ``complex -> complex`` callable.

    Used on pointwise quadrature hot paths; the source is generated from the
    validated AST, never from user text. Exceptions (division by zero,
    overflow in cmath) propagate to the caller.
    """
    source = f"lambda z: complex({_scalar_source(f.ast)})"
    return eval(source, dict(_CMATH_NAMES))  # noqa: S307 - generated from our own AST


def parse_expression(text: str) -> AnalyticFunction:
    """Parse an expression into an :class:`AnalyticFunction`.

    Raises :class:`ParseError` (with byte offset) on malformed input and
    :class:`UnknownIdentifierError` for identifiers outside the grammar.
    """
    ast = _Parser(text).parse()
    analysis = _analyze(ast)
    if analysis.entire:
        entirety = "entire"
    elif analysis.complete and all(s.kind == "pole" for s in analysis.sings):
        entirety = "meromorphic"
    else:
        entirety = "unknown"
    return AnalyticFunction(
        ast=ast,
        source=text,
        singularities=analysis.sings,
        entirety=entirety,
        complete=analysis.complete,
        real_coefficients=_has_real_literals(ast),
    )


def evaluate(f: AnalyticFunction, z: complex) -> complex:
    """Evaluate ``f`` at one complex point.

    Raises :class:`SingularityError` at declared singular points; overflow is
    reported through a non-finite return value rather than an exception.
    """
    z = complex(z)
    for s in f.singularities:
        if abs(z - s.location) <= 1e-12 * max(1.0, abs(s.location)):
            raise SingularityError(f"evaluation at singularity {s.location}")
    return complex(f.evaluate_array(np.array([z]))[0])


def nearest_singularity_distance(f: AnalyticFunction, center: complex) -> Optional[float]:
    """Distance from ``center`` to the nearest singularity of ``f``.

    Returns ``inf`` for entire functions and ``None`` when the singularity
    structure is unknown and the declared list is empty (never a silent
    infinity).
    """
    if f.entirety == "entire":
        return math.inf
    if f.singularities:
        return min(abs(complex(center) - s.location) for s in f.singularities)
    return None


class DerivativeEstimate(NamedTuple):
    value: complex
    abs_error_estimate: float


def default_circle_radius(f: AnalyticFunction, x0: complex) -> float:
    """Half the nearest-singularity distance, capped at 1 (0.5 when unknown)."""
    dist = nearest_singularity_distance(f, x0)
    if dist is None:
        return 0.5
    if math.isinf(dist):
        return 1.0
    return min(1.0, dist / 2.0)


def taylor_coefficient(
    f: AnalyticFunction, x0: complex, k: int, radius: Optional[float] = None
) -> DerivativeEstimate:
    """k-th Taylor coefficient of ``f`` about ``x0`` via Cauchy-circle quadrature.

    Samples the circle ``x0 + r e^{i theta}`` with the doubling trapezoid rule,
    which converges geometrically for analytic ``f``; the error estimate is the
    last doubling update.
    """
    if k < 0:
        raise DomainError("coefficient index must be >= 0")
    if radius is None:
        radius = default_circle_radius(f, x0)
    if radius <= 0:
        raise DomainError("radius must be positive")
    dist = nearest_singularity_distance(f, x0)
    if dist is not None and radius >= dist:
        raise DomainError(
            f"circle radius {radius} reaches the nearest singularity (distance {dist})"
        )
    m = 32
    while m < 2 * (k + 1):
        m *= 2
    previous = None
    while m <= 16384:
        theta = 2.0 * np.pi * np.arange(m) / m
        zs = complex(x0) + radius * np.exp(1j * theta)
        vals = f.evaluate_array(zs)
        if not np.all(np.isfinite(vals)):
            raise DomainError("singular sample on the derivative circle")
        coeff = complex(np.sum(vals * np.exp(-1j * k * theta)) / m) / radius**k
        if previous is not None:
            change = abs(coeff - previous)
            floor = 64.0 * np.finfo(float).eps * float(np.mean(np.abs(vals))) / radius**k
            if change <= max(1e-15, 1e-13 * abs(coeff), floor):
                return DerivativeEstimate(coeff, max(change, floor))
        previous = coeff
        m *= 2
    raise ConvergenceError("Cauchy-circle quadrature did not stabilise")


def derivative_at(
    f: AnalyticFunction, x0: complex, n: int, radius: Optional[float] = None
) -> DerivativeEstimate:
    """n-th derivative of ``f`` at ``x0`` (n >= 0) with a quadrature error estimate."""
    coeff = taylor_coefficient(f, x0, n, radius)
    scale = math.factorial(n)
    return DerivativeEstimate(coeff.value * scale, coeff.abs_error_estimate * scale)
