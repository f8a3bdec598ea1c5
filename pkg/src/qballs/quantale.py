"""Exact algebra of the integral quantales used throughout the package.

Supported families:

* ``godel``, ``product``, ``lukasiewicz`` -- the basic continuous t-norms on [0,1];
* ``ordinal_sum[lo..hi:kind, ...]`` -- ordinal sums of product/Lukasiewicz summands;
* ``lawvere`` -- ``([0, inf]^op, +, 0)``;
* ``boolean`` -- the two-element frame ``{0, 1}``.

Values are plain :class:`fractions.Fraction` objects; the Lawvere infinity is
the module constant :data:`INF`.  Every operation is a pure function of a
:class:`QuantaleSpec` and its arguments.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

__all__ = [
    "INF", "ZERO", "ONE", "Kind", "Summand", "QuantaleSpec", "IdempotentSet",
    "GODEL", "PRODUCT", "LUKASIEWICZ", "LAWVERE", "BOOLEAN",
    "parse_spec", "parse_value", "format_value", "as_value", "check_value",
    "top", "bottom", "unit", "leq", "lt", "mul", "imp", "power", "bound",
    "join", "meet", "way_below", "idempotents", "is_idempotent",
    "is_archimedean", "archimedean_probe", "order_key", "unit_grid", "carrier_grid",
]

INF = math.inf
ZERO = Fraction(0)
ONE = Fraction(1)

Value = Union[Fraction, float]


class Kind(str, enum.Enum):
    GODEL = "godel"
    PRODUCT = "product"
    LUKASIEWICZ = "lukasiewicz"
    ORDINAL_SUM = "ordinal_sum"
    LAWVERE = "lawvere"
    BOOLEAN = "boolean"


_ARCH_KINDS = (Kind.PRODUCT, Kind.LUKASIEWICZ)
_TNORM_KINDS = (Kind.GODEL, Kind.PRODUCT, Kind.LUKASIEWICZ, Kind.ORDINAL_SUM)


@dataclass(frozen=True)
class Summand:
    lo: Fraction
    hi: Fraction
    kind: Kind

    def __str__(self) -> str:
        return f"{self.lo}..{self.hi}:{self.kind.value}"


@dataclass(frozen=True)
class QuantaleSpec:
    """Symbolic description of a quantale; all algebra dispatches on it."""

    kind: Kind
    summands: tuple[Summand, ...] = ()

    def __post_init__(self) -> None:
        if self.kind is Kind.ORDINAL_SUM:
            if not self.summands:
                raise ValueError("ordinal sum needs at least one summand")
            prev_hi = ZERO
            for s in self.summands:
                if s.kind not in _ARCH_KINDS:
                    raise ValueError(f"summand kind must be product or lukasiewicz, got {s.kind.value}")
                if not (0 <= s.lo < s.hi <= 1):
                    raise ValueError(f"bad summand interval {s.lo}..{s.hi}")
                if s.lo < prev_hi:
                    raise ValueError("summands must be sorted with disjoint interiors")
                prev_hi = s.hi
        elif self.summands:
            raise ValueError(f"{self.kind.value} takes no summands")

    def __str__(self) -> str:
        if self.kind is Kind.ORDINAL_SUM:
            return "ordinal_sum[" + ", ".join(str(s) for s in self.summands) + "]"
        return self.kind.value

    @property
    def is_tnorm(self) -> bool:
        """True for the continuous t-norm families on [0,1]."""
        return self.kind in _TNORM_KINDS

    @property
    def is_lawvere(self) -> bool:
        return self.kind is Kind.LAWVERE


GODEL = QuantaleSpec(Kind.GODEL)
PRODUCT = QuantaleSpec(Kind.PRODUCT)
LUKASIEWICZ = QuantaleSpec(Kind.LUKASIEWICZ)
LAWVERE = QuantaleSpec(Kind.LAWVERE)
BOOLEAN = QuantaleSpec(Kind.BOOLEAN)

_SUMMAND_RE = re.compile(r"^\s*([0-9/]+)\s*\.\.\s*([0-9/]+)\s*:\s*([a-z_]+)\s*$")


def parse_spec(text: str) -> QuantaleSpec:
    """Parse the textual form, e.g. ``product`` or ``ordinal_sum[1/4..1/2:lukasiewicz]``."""
    text = text.strip()
    if text.startswith("ordinal_sum"):
        m = re.fullmatch(r"ordinal_sum\s*\[(.*)\]", text)
        if not m:
            raise ValueError(f"malformed ordinal sum: {text!r}")
        summands = []
        for part in m.group(1).split(","):
            sm = _SUMMAND_RE.match(part)
            if not sm:
                raise ValueError(f"malformed summand: {part!r}")
            try:
                kind = Kind(sm.group(3))
            except ValueError:
                raise ValueError(f"unknown summand kind {sm.group(3)!r}") from None
            summands.append(Summand(Fraction(sm.group(1)), Fraction(sm.group(2)), kind))
        return QuantaleSpec(Kind.ORDINAL_SUM, tuple(summands))
    try:
        kind = Kind(text)
    except ValueError:
        raise ValueError(f"unknown quantale {text!r}") from None
    if kind is Kind.ORDINAL_SUM:
        raise ValueError("ordinal_sum needs a summand list")
    return QuantaleSpec(kind)


# -- values -----------------------------------------------------------------

def check_value(spec: QuantaleSpec, v) -> None:
    """Raise ``ValueError`` unless ``v`` lies in the carrier of ``spec``."""
    if spec.kind is Kind.LAWVERE:
        if v == INF:
            return
        if isinstance(v, (int, Fraction)) and v >= 0:
            return
        raise ValueError(f"{v!r} is not in the Lawvere carrier [0, inf]")
    if not isinstance(v, (int, Fraction)) or isinstance(v, bool):
        raise ValueError(f"{v!r} is not an exact rational")
    if spec.kind is Kind.BOOLEAN:
        if v not in (0, 1):
            raise ValueError(f"{v!r} is not a boolean truth value")
    elif not 0 <= v <= 1:
        raise ValueError(f"{v!r} is outside [0, 1]")


def as_value(spec: QuantaleSpec, v) -> Value:
    """Coerce ints, strings and Fractions into a checked carrier element."""
    if isinstance(v, str):
        return parse_value(spec, v)
    if isinstance(v, float):
        if v == INF:
            check_value(spec, INF)
            return INF
        raise ValueError(f"floats are not accepted: {v!r}")
    v = Fraction(v)
    check_value(spec, v)
    return v


def parse_value(spec: QuantaleSpec, text: str) -> Value:
    t = text.strip()
    if t in ("inf", "∞", "+inf"):
        check_value(spec, INF)
        return INF
    try:
        v = Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse {text!r} as a rational") from None
    if "." in t or "e" in t.lower():
        raise ValueError(f"write rationals as p/q, not decimals: {text!r}")
    check_value(spec, v)
    return v


def format_value(v) -> str:
    return "inf" if v == INF else str(Fraction(v))


# -- lattice ----------------------------------------------------------------

def top(spec: QuantaleSpec) -> Value:
    return ZERO if spec.kind is Kind.LAWVERE else ONE


def bottom(spec: QuantaleSpec) -> Value:
    return INF if spec.kind is Kind.LAWVERE else ZERO


def unit(spec: QuantaleSpec) -> Value:
    # every supported family is integral
    return top(spec)


def leq(spec: QuantaleSpec, p, q) -> bool:
    if spec.kind is Kind.LAWVERE:
        return p >= q
    return p <= q


def lt(spec: QuantaleSpec, p, q) -> bool:
    return p != q and leq(spec, p, q)


def order_key(spec: QuantaleSpec, v):
    """Sort key realising the lattice order (ascending)."""
    return -v if spec.kind is Kind.LAWVERE else v


def bound(spec: QuantaleSpec, kind: str, values: Iterable) -> Value:
    vals = list(values)
    if not vals:
        raise ValueError("bound of an empty family; use top()/bottom() instead")
    if kind not in ("join", "meet"):
        raise ValueError(f"kind must be 'join' or 'meet', got {kind!r}")
    numeric_max = (kind == "join") != (spec.kind is Kind.LAWVERE)
    return max(vals) if numeric_max else min(vals)


def join(spec: QuantaleSpec, values: Iterable) -> Value:
    return bound(spec, "join", values)


def meet(spec: QuantaleSpec, values: Iterable) -> Value:
    return bound(spec, "meet", values)


# -- multiplication and residuum ----------------------------------------------

def _arch_mul(kind: Kind, p, q):
    if kind is Kind.PRODUCT:
        return p * q
    s = p + q - 1
    return s if s > 0 else ZERO


def _arch_imp(kind: Kind, p, q):
    if p <= q:
        return ONE
    if kind is Kind.PRODUCT:
        return q / p
    return 1 - p + q


def _ordinal_mul(summands, p, q):
    for s in summands:
        if s.lo <= p <= s.hi and s.lo <= q <= s.hi:
            w = s.hi - s.lo
            return s.lo + w * _arch_mul(s.kind, (p - s.lo) / w, (q - s.lo) / w)
    return min(p, q)


def _ordinal_imp(summands, p, q):
    if p <= q:
        return ONE
    for s in summands:
        if s.lo <= q and p <= s.hi:
            w = s.hi - s.lo
            return s.lo + w * _arch_imp(s.kind, (p - s.lo) / w, (q - s.lo) / w)
    return q


def mul(spec: QuantaleSpec, p, q) -> Value:
    k = spec.kind
    if k is Kind.GODEL or k is Kind.BOOLEAN:
        return p if p <= q else q
    if k is Kind.PRODUCT:
        return p * q
    if k is Kind.LUKASIEWICZ:
        s = p + q - 1
        return s if s > 0 else ZERO
    if k is Kind.LAWVERE:
        if p == INF or q == INF:
            return INF
        return p + q
    return _ordinal_mul(spec.summands, p, q)


def imp(spec: QuantaleSpec, p, q) -> Value:
    """Residuum: the largest ``z`` with ``mul(p, z) <= q``."""
    k = spec.kind
    if k is Kind.LAWVERE:
        if p == INF:
            return ZERO
        if q == INF:
            return INF
        d = q - p
        return d if d > 0 else ZERO
    if p <= q:
        return ONE
    if k is Kind.GODEL:
        return q
    if k is Kind.BOOLEAN:
        return ZERO
    if k is Kind.PRODUCT:
        return q / p
    if k is Kind.LUKASIEWICZ:
        return 1 - p + q
    return _ordinal_imp(spec.summands, p, q)


def power(spec: QuantaleSpec, x, n: int) -> Value:
    if n < 1:
        raise ValueError("power needs n >= 1")
    acc = x
    for _ in range(n - 1):
        acc = mul(spec, acc, x)
    return acc


def way_below(spec: QuantaleSpec, p, q) -> bool:
    if spec.kind is Kind.LAWVERE:
        return p == INF or p > q
    if spec.kind is Kind.BOOLEAN:
        return p == 0 or (p == 1 and q == 1)
    return p == 0 or p < q


# -- idempotents ----------------------------------------------------------------

@dataclass(frozen=True)
class IdempotentSet:
    """Finite union of closed intervals ``[lo, hi]`` (points have ``lo == hi``).

    Intervals are in numeric order; for the Lawvere family the points are
    ``0`` and ``inf``.
    """

    spec: QuantaleSpec
    intervals: tuple[tuple[Value, Value], ...]

    def __contains__(self, v) -> bool:
        return any(lo <= v <= hi for lo, hi in self.intervals)

    def has_nontrivial(self) -> bool:
        """Is there an idempotent strictly between bottom and top?"""
        b, t = sorted((bottom(self.spec), top(self.spec)))
        return any(hi > b and lo < t and (lo < hi or b < lo < t) for lo, hi in self.intervals)

    def has_positive_at_most(self, h) -> bool:
        """Does ``(0, h]`` contain an idempotent?  Only meaningful on [0,1]."""
        if h <= 0:
            return False
        return any(hi > 0 and lo <= h for lo, hi in self.intervals)

    def __str__(self) -> str:
        if all(lo == hi for lo, hi in self.intervals):
            return "{" + ", ".join(format_value(lo) for lo, _ in self.intervals) + "}"
        parts = []
        for lo, hi in self.intervals:
            parts.append("{" + format_value(lo) + "}" if lo == hi
                         else f"[{format_value(lo)},{format_value(hi)}]")
        return " ∪ ".join(parts)


def idempotents(spec: QuantaleSpec) -> IdempotentSet:
    k = spec.kind
    if k is Kind.GODEL:
        iv = ((ZERO, ONE),)
    elif k in (Kind.PRODUCT, Kind.LUKASIEWICZ, Kind.BOOLEAN):
        iv = ((ZERO, ZERO), (ONE, ONE))
    elif k is Kind.LAWVERE:
        iv = ((ZERO, ZERO), (INF, INF))
    else:
        out = []
        start = ZERO
        for s in spec.summands:
            out.append((start, s.lo))
            start = s.hi
        out.append((start, ONE))
        iv = tuple(out)
    return IdempotentSet(spec, iv)


def is_idempotent(spec: QuantaleSpec, b) -> bool:
    return mul(spec, b, b) == b


def _require_tnorm(spec: QuantaleSpec, what: str) -> None:
    if not spec.is_tnorm:
        raise ValueError(f"{what} is only defined for t-norms on [0,1], not {spec}")


def is_archimedean(spec: QuantaleSpec) -> bool:
    _require_tnorm(spec, "is_archimedean")
    return not idempotents(spec).has_nontrivial()


def unit_grid(denominator: int) -> list[Fraction]:
    return [Fraction(i, denominator) for i in range(denominator + 1)]


def carrier_grid(spec: QuantaleSpec, denominator: int) -> list:
    """A finite sample of the carrier: ``i/d`` on [0,1], ``{0,...,d} ∪ {inf}`` for Lawvere."""
    if spec.kind is Kind.BOOLEAN:
        return [ZERO, ONE]
    if spec.kind is Kind.LAWVERE:
        return [Fraction(i) for i in range(denominator + 1)] + [INF]
    return unit_grid(denominator)


def archimedean_probe(spec: QuantaleSpec, denominator: int = 8, n_max: int = 64):
    """Power-based cross-check of Archimedean-ness on a grid.

    Returns ``(True, None)`` when for every grid pair ``x, y`` in (0,1) some
    ``n <= n_max`` has ``x^n < y``; otherwise ``(False, (x, y))`` for the first
    pair that never drops below ``y``.  A ``True`` answer is evidence only.
    """
    _require_tnorm(spec, "archimedean_probe")
    inner = unit_grid(denominator)[1:-1]
    for x in inner:
        powers = []
        acc = x
        for _ in range(n_max):
            powers.append(acc)
            acc = mul(spec, acc, x)
        smallest = powers[-1]  # powers decrease in an integral quantale
        for y in inner:
            if not smallest < y:
                return False, (x, y)
    return True, None
