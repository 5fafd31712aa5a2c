"""Laurent polynomial invariants: parsing, evaluation and scalar features.

Single-variable polynomials are keyed by integer exponent. Two-variable
polynomials (HOMFLY-PT, Kauffman) are keyed by ``(outer, inner)`` exponent
pairs, where ``outer`` indexes the nested rows of a KnotInfo vector cell and
``inner`` the exponents inside each row.
"""

from __future__ import annotations

import ast
import math
import re
import warnings
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from .errors import (
    DataQualityWarning,
    EvaluationAtPole,
    UnparseableCell,
    WindowTooSmall,
    ZeroPolynomial,
)

LAYOUTS = ("auto", "min_max", "min_first")

DETERMINANT_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class LaurentPolynomial:
    terms: Mapping = field(default_factory=dict)
    variable_count: int = 1

    def __post_init__(self):
        if self.variable_count not in (1, 2):
            raise ValueError("variable_count must be 1 or 2")
        clean = {}
        for key, coeff in dict(self.terms).items():
            coeff = int(coeff)
            if coeff == 0:
                continue
            if self.variable_count == 1:
                key = _as_int(key)
            else:
                key = (_as_int(key[0]), _as_int(key[1]))
            clean[key] = coeff
        object.__setattr__(self, "terms", MappingProxyType(dict(sorted(clean.items()))))

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.variable_count == other.variable_count and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash((self.variable_count, tuple(self.terms.items())))

    def __repr__(self):
        return f"LaurentPolynomial({dict(self.terms)!r}, variable_count={self.variable_count})"

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_degree(self) -> int:
        if self.variable_count != 1:
            raise ValueError("min_degree is defined for single-variable polynomials")
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no degree")
        return next(iter(self.terms))

    @property
    def max_degree(self) -> int:
        if self.variable_count != 1:
            raise ValueError("max_degree is defined for single-variable polynomials")
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no degree")
        return next(reversed(self.terms))

    def shift(self, k: int) -> LaurentPolynomial:
        """Multiply by t**k (single-variable only)."""
        if self.variable_count != 1:
            raise ValueError("shift is defined for single-variable polynomials")
        return LaurentPolynomial({e + k: c for e, c in self.terms.items()})


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
        raise TypeError(f"exponent {x!r} is not an integer")
    return int(x)


@dataclass(frozen=True)
class ComplexPoint:
    re: float
    im: float

    def __post_init__(self):
        object.__setattr__(self, "re", float(self.re))
        object.__setattr__(self, "im", float(self.im))
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError("ComplexPoint components must be finite")

    def __complex__(self):
        return complex(self.re, self.im)

    def conjugate(self) -> ComplexPoint:
        return ComplexPoint(self.re, -self.im)

    def __str__(self):
        return f"{_fmt(self.re)}{'+' if self.im >= 0 else '-'}{_fmt(abs(self.im))}i"

    @classmethod
    def parse(cls, text: str) -> ComplexPoint:
        """Parse ``-0.6+0.1i``, ``-0.6+0.1j``, ``(-0.6,0.1)`` or a bare real."""
        s = text.strip().replace(" ", "")
        m = re.fullmatch(r"\(?([-+0-9.eE]+),([-+0-9.eE]+)\)?", s)
        if m:
            return cls(float(m.group(1)), float(m.group(2)))
        try:
            z = complex(s.replace("i", "j"))
        except ValueError:
            raise ValueError(f"cannot parse complex point {text!r}") from None
        return cls(z.real, z.imag)


def _fmt(x: float) -> str:
    x = 0.0 if x == 0 else x
    return f"{x:.12g}"


def as_complex(t) -> complex:
    if isinstance(t, ComplexPoint):
        return complex(t)
    return complex(t)


# ---------------------------------------------------------------------------
# parsing


def parse_polynomial(cell: str, layout: str = "auto") -> LaurentPolynomial:
    """Parse a polynomial cell.

    Accepted forms:

    * a bare integer (constant polynomial), e.g. ``"1"``;
    * KnotInfo vectors ``[min, max, c_min, ..., c_max]`` (layout ``min_max``);
    * vectors ``[min, c_min, ..., c_max]`` (layout ``min_first``);
    * explicit term lists ``[[e, c], ...]`` or ``[[i, j, c], ...]``;
    * nested two-variable vectors ``[min_i, max_i, row_min_i, ..., row_max_i]``
      where every row is itself a single-variable vector.

    With ``layout="auto"`` a flat vector is read as ``min_max`` when its
    length is consistent with that reading and as ``min_first`` otherwise.
    """
    if layout not in LAYOUTS:
        raise ValueError(f"unknown layout {layout!r}")
    text = cell.strip()
    if not text:
        raise UnparseableCell("", None, cell, "empty polynomial cell")
    try:
        value = ast.literal_eval(text)
    except (ValueError, SyntaxError):
        raise UnparseableCell("", None, cell, "not a polynomial vector") from None
    try:
        return _from_value(value, layout)
    except (TypeError, ValueError, IndexError) as exc:
        raise UnparseableCell("", None, cell, str(exc)) from None


def _check_ints(values):
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ValueError(f"non-integer entry {v!r} (only integer exponents/coefficients)")


def _from_value(value, layout) -> LaurentPolynomial:
    if isinstance(value, int) and not isinstance(value, bool):
        return LaurentPolynomial({0: value})
    if not isinstance(value, (list, tuple)):
        raise ValueError(f"unexpected literal of type {type(value).__name__}")
    if not value:
        raise ValueError("empty vector")
    if all(isinstance(v, (list, tuple)) for v in value):
        return _from_term_list(value)
    if len(value) >= 3 and any(isinstance(v, (list, tuple)) for v in value[2:]):
        _check_ints(value[:2])
        lo, hi = value[0], value[1]
        rows = value[2:]
        if len(rows) != hi - lo + 1:
            raise ValueError("nested row count does not match outer exponent range")
        terms = {}
        for i, row in zip(range(lo, hi + 1), rows):
            inner = _from_value(list(row), layout)
            if inner.variable_count != 1:
                raise ValueError("nested rows must be single-variable")
            for j, c in inner.terms.items():
                terms[(i, j)] = c
        return LaurentPolynomial(terms, variable_count=2)
    _check_ints(value)
    return LaurentPolynomial(_flat_terms(list(value), layout))


def _flat_terms(v: list[int], layout: str) -> dict[int, int]:
    if layout == "auto":
        layout = "min_max" if _fits_min_max(v) else "min_first"
    if layout == "min_max":
        if not _fits_min_max(v):
            raise ValueError("vector length inconsistent with [min, max, coefficients...] layout")
        lo, coeffs = v[0], v[2:]
    else:
        if len(v) < 2:
            raise ValueError("vector needs a minimum degree and at least one coefficient")
        lo, coeffs = v[0], v[1:]
    return {lo + k: c for k, c in enumerate(coeffs)}


def _fits_min_max(v) -> bool:
    return len(v) >= 3 and v[1] >= v[0] and len(v) == v[1] - v[0] + 3


def _from_term_list(items) -> LaurentPolynomial:
    widths = {len(it) for it in items}
    if widths == {2}:
        terms: dict = {}
        for e, c in items:
            _check_ints((e, c))
            terms[e] = terms.get(e, 0) + c
        return LaurentPolynomial(terms)
    if widths == {3}:
        terms = {}
        for i, j, c in items:
            _check_ints((i, j, c))
            terms[(i, j)] = terms.get((i, j), 0) + c
        return LaurentPolynomial(terms, variable_count=2)
    raise ValueError("term list entries must all be [exponent, coefficient] or [i, j, coefficient]")


def detect_layout(cells: Iterable[str]) -> str:
    """Choose one flat-vector layout for a whole column.

    ``min_max`` is chosen only if every flat bracketed cell fits it.
    """
    saw_flat = False
    for cell in cells:
        try:
            value = ast.literal_eval(cell.strip())
        except (ValueError, SyntaxError):
            continue
        if not isinstance(value, (list, tuple)) or not value:
            continue
        if any(isinstance(v, (list, tuple)) for v in value):
            rows = value[2:] if not all(isinstance(v, (list, tuple)) for v in value) else []
            for row in rows:
                saw_flat = True
                if not _fits_min_max(list(row)):
                    return "min_first"
            continue
        saw_flat = True
        if not _fits_min_max(list(value)):
            return "min_first"
    return "min_max" if saw_flat else "auto"


def format_polynomial(p: LaurentPolynomial) -> str:
    """Serialize in the KnotInfo ``[min, max, coefficients...]`` layout."""
    if p.variable_count == 1:
        return _format_row(p.terms)
    outer = sorted({i for i, _ in p.terms})
    if not outer:
        return "[0, 0, [0, 0, 0]]"
    rows = []
    for i in range(outer[0], outer[-1] + 1):
        rows.append(_format_row({j: c for (ii, j), c in p.terms.items() if ii == i}))
    return f"[{outer[0]}, {outer[-1]}, " + ", ".join(rows) + "]"


def _format_row(terms: Mapping[int, int]) -> str:
    if not terms:
        return "[0, 0, 0]"
    lo, hi = min(terms), max(terms)
    coeffs = [terms.get(e, 0) for e in range(lo, hi + 1)]
    return "[" + ", ".join(str(x) for x in [lo, hi, *coeffs]) + "]"


# ---------------------------------------------------------------------------
# evaluation and features


def _require_single(p: LaurentPolynomial, what: str):
    if p.variable_count != 1:
        raise ValueError(f"{what} applies only to single-variable polynomials")


def evaluate(p: LaurentPolynomial, t) -> complex:
    """Evaluate p at the complex point t with Horner's rule.

    The recursion runs over the contiguous exponent window, so absent
    exponents inside the window contribute zero steps.
    """
    _require_single(p, "evaluate")
    t = as_complex(t)
    if p.is_zero():
        return 0j
    lo, hi = p.min_degree, p.max_degree
    if lo < 0 and t == 0:
        raise EvaluationAtPole("t = 0 with negative exponents")
    acc = 0j
    for e in range(hi, lo - 1, -1):
        acc = acc * t + p.terms.get(e, 0)
    if lo:
        acc *= t**lo
    return acc


def span(p: LaurentPolynomial) -> int:
    _require_single(p, "span")
    if p.is_zero():
        raise ZeroPolynomial("span of the zero polynomial is undefined")
    return p.max_degree - p.min_degree


def determinant_feature(poly: LaurentPolynomial) -> int:
    """round(|p(-1)|); warns if the pre-rounding residual exceeds 1e-6."""
    if poly.is_zero():
        raise ZeroPolynomial("determinant of the zero polynomial is undefined")
    value = abs(evaluate(poly, -1.0))
    det = round(value)
    residual = abs(value - det)
    if residual > DETERMINANT_TOLERANCE:
        warnings.warn(
            f"|p(-1)| = {value!r} is {residual:.3g} from the nearest integer",
            DataQualityWarning,
            stacklevel=2,
        )
    return int(det)


def turaev_feature(jones: LaurentPolynomial, crossing_number: int) -> int:
    """Crossing number minus Jones span, an upper bound on Turaev genus."""
    if crossing_number < 0:
        raise ValueError("crossing number must be nonnegative")
    return int(crossing_number) - span(jones)


@dataclass(frozen=True, eq=False)
class FlattenedPolynomial:
    values: np.ndarray
    exponent_window: tuple


def flatten(p: LaurentPolynomial, window) -> FlattenedPolynomial:
    """Dense coefficient vector over ``window``.

    For a single-variable polynomial ``window = (min, max)`` and index ``i``
    holds the coefficient of ``t**(min + i)``. For two variables
    ``window = ((min_i, max_i), (min_j, max_j))`` flattened row-major.
    """
    if p.variable_count == 1:
        lo, hi = int(window[0]), int(window[1])
        if hi < lo:
            raise WindowTooSmall(f"empty window {window}")
        if not p.is_zero() and (p.min_degree < lo or p.max_degree > hi):
            raise WindowTooSmall(
                f"window {window} does not cover exponents {p.min_degree}..{p.max_degree}"
            )
        out = np.zeros(hi - lo + 1)
        for e, c in p.terms.items():
            out[e - lo] = c
        return FlattenedPolynomial(out, (lo, hi))
    (ilo, ihi), (jlo, jhi) = window
    if ihi < ilo or jhi < jlo:
        raise WindowTooSmall(f"empty window {window}")
    out = np.zeros((ihi - ilo + 1, jhi - jlo + 1))
    for (i, j), c in p.terms.items():
        if not (ilo <= i <= ihi and jlo <= j <= jhi):
            raise WindowTooSmall(f"window {window} does not cover term {(i, j)}")
        out[i - ilo, j - jlo] = c
    return FlattenedPolynomial(out.ravel(), ((ilo, ihi), (jlo, jhi)))


def exponent_window(polys: Iterable[LaurentPolynomial]):
    """Smallest window covering every polynomial (zero polynomials ignored)."""
    polys = list(polys)
    if not polys:
        raise ValueError("no polynomials")
    nvars = {p.variable_count for p in polys}
    if len(nvars) != 1:
        raise ValueError("mixed single- and two-variable polynomials")
    keys = [k for p in polys for k in p.terms]
    if nvars == {1}:
        if not keys:
            return (0, 0)
        return (min(keys), max(keys))
    if not keys:
        return ((0, 0), (0, 0))
    ii = [i for i, _ in keys]
    jj = [j for _, j in keys]
    return ((min(ii), max(ii)), (min(jj), max(jj)))


def flatten_many(polys, window=None) -> tuple[np.ndarray, tuple]:
    """Stack flattened vectors of ``polys`` over a shared window."""
    polys = list(polys)
    if window is None:
        window = exponent_window(polys)
    return np.vstack([flatten(p, window).values for p in polys]), window


def evaluate_many(polys, t) -> np.ndarray:
    """Evaluate many single-variable polynomials at one point.

    Runs Horner's rule column-wise over the shared coefficient matrix.
    """
    polys = list(polys)
    for p in polys:
        _require_single(p, "evaluate_many")
    t = as_complex(t)
    if not polys:
        return np.zeros(0, dtype=complex)
    mat, (lo, _) = flatten_many(polys)
    if lo < 0 and t == 0 and np.any(mat[:, : -lo] != 0):
        raise EvaluationAtPole("t = 0 with negative exponents")
    acc = np.zeros(len(polys), dtype=complex)
    for k in range(mat.shape[1] - 1, -1, -1):
        acc = acc * t + mat[:, k]
    if lo:
        acc = acc * t**lo
    return acc
