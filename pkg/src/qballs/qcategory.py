"""Q-categories, weights, sequences and their limits.

Two kinds of category are supported.  :class:`FiniteQCategory` stores an
explicit hom matrix.  :class:`GeneratedQCategory` describes a countable
carrier by a closed-form hom plus a point generator ``n -> x_n``.  Anything
that needs the whole carrier is evaluated on a truncation
``carrier(cutoff)``.

Infinite meets/joins cannot be computed from prefixes, so nets may carry
:class:`NetTails`: exact closed forms for their window infima, which are
checked against every truncation that gets computed.  Verdicts are only
certified when such declarations (or eventual constancy) back them up.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Optional, Sequence

import numpy as np

from . import quantale as qt
from .quantale import QuantaleSpec


class Status(str, enum.Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"
    NO_REFUTATION = "no-refutation"

    @property
    def exit_code(self) -> int:
        return {"certified": 0, "no-refutation": 0, "refuted": 1, "inconclusive": 2}[self.value]


@dataclass
class Verdict:
    status: Status
    witness: Any = None
    detail: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.status is Status.CERTIFIED

    @property
    def refuted(self) -> bool:
        return self.status is Status.REFUTED


# -- categories -------------------------------------------------------------------

class QCategory:
    spec: QuantaleSpec
    is_finite: bool

    def hom(self, x, y):
        raise NotImplementedError

    def carrier(self, cutoff: Optional[int] = None) -> list:
        raise NotImplementedError

    def __contains__(self, x) -> bool:
        raise NotImplementedError

    def label(self, x) -> str:
        return str(x)

    def element(self, label: str):
        """Look an element up by its printed label."""
        raise NotImplementedError

    def matrix(self, elements: Sequence) -> list[list]:
        return [[self.hom(x, y) for y in elements] for x in elements]


class FiniteQCategory(QCategory):
    """Matrix-backed category on a finite list of labels."""

    is_finite = True

    def __init__(self, spec: QuantaleSpec, labels: Sequence[Hashable], matrix: Sequence[Sequence]):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("carrier labels must be distinct")
        if len(matrix) != len(labels) or any(len(row) != len(labels) for row in matrix):
            raise ValueError(f"hom matrix must be {len(labels)}x{len(labels)}")
        self.spec = spec
        self.labels = labels
        self._index = {x: i for i, x in enumerate(labels)}
        rows = []
        for i, row in enumerate(matrix):
            try:
                rows.append(tuple(qt.as_value(spec, v) for v in row))
            except ValueError as exc:
                raise ValueError(f"hom row {labels[i]!r}: {exc}") from None
        self._m = tuple(rows)

    def hom(self, x, y):
        return self._m[self._index[x]][self._index[y]]

    def carrier(self, cutoff: Optional[int] = None) -> list:
        return list(self.labels)

    def __contains__(self, x) -> bool:
        return x in self._index

    def element(self, label: str):
        for x in self.labels:
            if str(x) == label:
                return x
        raise KeyError(f"no element labelled {label!r}")

    @property
    def rows(self) -> tuple:
        return self._m

    def __eq__(self, other) -> bool:
        return (isinstance(other, FiniteQCategory) and self.spec == other.spec
                and self.labels == other.labels and self._m == other._m)

    def __hash__(self) -> int:
        return hash((self.spec, self.labels, self._m))

    def __repr__(self) -> str:
        return f"FiniteQCategory({self.spec}, {list(self.labels)})"


class GeneratedQCategory(QCategory):
    """Countable category: named extra points plus ``point(n)`` for ``n >= start``."""

    is_finite = False

    def __init__(self, spec: QuantaleSpec, hom: Callable, point: Callable[[int], Any], *,
                 start: int = 1, extras: Sequence = (), member: Optional[Callable[[Any], bool]] = None,
                 default_cutoff: int = 50, name: str = "", params: Optional[dict] = None):
        self.spec = spec
        self._hom = hom
        self.point = point
        self.start = start
        self.extras = tuple(extras)
        self._member = member
        self.default_cutoff = default_cutoff
        self.name = name
        self.params = dict(params or {})

    def hom(self, x, y):
        return self._hom(x, y)

    def carrier(self, cutoff: Optional[int] = None) -> list:
        n = self.default_cutoff if cutoff is None else cutoff
        return list(self.extras) + [self.point(i) for i in range(self.start, n + 1)]

    def __contains__(self, x) -> bool:
        if self._member is not None:
            return self._member(x)
        return x in self.carrier()

    def label(self, x) -> str:
        return qt.format_value(x) if isinstance(x, (Fraction, int)) else str(x)

    def element(self, label: str):
        for x in self.extras:
            if self.label(x) == label:
                return x
        try:
            x = Fraction(label)
        except (ValueError, ZeroDivisionError):
            raise KeyError(f"no element labelled {label!r}") from None
        if x not in self:
            raise KeyError(f"{label} is not a point of {self.name or 'the category'}")
        return x

    def __repr__(self) -> str:
        return f"GeneratedQCategory({self.name or '?'}, {self.spec})"


# -- validation ---------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    kind: str            # "reflexivity" | "composition"
    elements: tuple
    lhs: Any
    rhs: Any

    def __str__(self) -> str:
        names = ", ".join(str(e) for e in self.elements)
        return f"{self.kind} fails at ({names}): {qt.format_value(self.lhs)} </= {qt.format_value(self.rhs)}"


@dataclass
class ValidationReport:
    elements: list
    violations: list[Violation]

    @property
    def valid(self) -> bool:
        return not self.violations


def _rank_tables(spec: QuantaleSpec, values: Sequence):
    """Rank-compress ``values`` and all their pairwise products.

    Returns ``(index, product_rank, value_rank)`` where ``index`` maps a value
    to its position in ``values`` and ranks are positions in one exact sort
    of the lattice order, so integer comparison of ranks is exact.
    """
    vals = list(values)
    prods = [[qt.mul(spec, p, q) for q in vals] for p in vals]
    pool = set(vals)
    for row in prods:
        pool.update(row)
    ordered = sorted(pool, key=lambda v: qt.order_key(spec, v))
    rank = {v: i for i, v in enumerate(ordered)}
    prod_rank = np.array([[rank[v] for v in row] for row in prods], dtype=np.int64)
    value_rank = np.array([rank[v] for v in vals], dtype=np.int64)
    return {v: i for i, v in enumerate(vals)}, prod_rank, value_rank


_INT_LIMIT = 1 << 20


def _int_parts(mat: list[list]):
    """Numerators, denominators and an infinity mask as int64 arrays, or ``None`` if too large."""
    n = len(mat)
    num = np.zeros((n, n), dtype=np.int64)
    den = np.ones((n, n), dtype=np.int64)
    inf = np.zeros((n, n), dtype=bool)
    for i, row in enumerate(mat):
        for j, v in enumerate(row):
            if v == qt.INF:
                inf[i, j] = True
                continue
            v = Fraction(v)
            if abs(v.numerator) >= _INT_LIMIT or v.denominator >= _INT_LIMIT:
                return None
            num[i, j], den[i, j] = v.numerator, v.denominator
    return num, den, inf


def _composition_failures(spec: QuantaleSpec, mat: list[list]):
    """Yield ``(x, y, z)`` index triples with ``hom(y,z) (x) hom(x,y) > hom(x,z)``.

    The basic families are decided by exact cross-multiplication in int64
    (entries are bounded so that triple products cannot overflow).  Ordinal
    sums and oversized entries go through rank tables.
    """
    n = len(mat)
    parts = None if spec.kind is qt.Kind.ORDINAL_SUM else _int_parts(mat)
    if parts is None:
        distinct = sorted({v for row in mat for v in row}, key=lambda v: qt.order_key(spec, v))
        index, prod_rank, value_rank = _rank_tables(spec, distinct)
        idx = np.array([[index[v] for v in row] for row in mat], dtype=np.int64)
        hom_rank = value_rank[idx]
        for y in range(n):
            composite = prod_rank[idx[:, y][:, None], idx[y, :][None, :]]
            for xi, zi in np.argwhere(composite > hom_rank):
                yield int(xi), y, int(zi)
        return
    p, q, inf = parts
    kind = spec.kind
    for y in range(n):
        pa, qa = p[:, y][:, None], q[:, y][:, None]     # hom(x, y)
        pb, qb = p[y, :][None, :], q[y, :][None, :]     # hom(y, z)
        if kind is qt.Kind.LAWVERE:
            finite = ~inf[:, y][:, None] & ~inf[y, :][None, :]
            short = pa * qb * q + pb * qa * q < p * qa * qb
            bad = finite & (inf | short)
        elif kind is qt.Kind.PRODUCT:
            bad = pa * pb * q > p * qa * qb
        elif kind is qt.Kind.LUKASIEWICZ:
            bad = pa * qb * q + pb * qa * q - qa * qb * q > p * qa * qb
        else:  # min: Goedel and Boolean
            bad = (pa * q > p * qa) & (pb * q > p * qb)
        for xi, zi in np.argwhere(bad):
            yield int(xi), y, int(zi)


def validate_category(C: QCategory, cutoff: Optional[int] = None, max_violations: int = 100) -> ValidationReport:
    """Check reflexivity and composition exhaustively on the (truncated) carrier."""
    spec = C.spec
    elems = C.carrier(cutoff)
    mat = C.matrix(elems)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            try:
                qt.check_value(spec, mat[i][j])
            except ValueError as exc:
                raise ValueError(f"hom({C.label(x)},{C.label(y)}): {exc}") from None
    violations: list[Violation] = []
    k = qt.unit(spec)
    for i, x in enumerate(elems):
        if not qt.leq(spec, k, mat[i][i]):
            violations.append(Violation("reflexivity", (C.label(x),), k, mat[i][i]))
    for xi, y, zi in _composition_failures(spec, mat):
        if len(violations) >= max_violations:
            break
        lhs = qt.mul(spec, mat[y][zi], mat[xi][y])
        violations.append(Violation("composition", (C.label(elems[xi]), C.label(elems[y]), C.label(elems[zi])),
                                    lhs, mat[xi][zi]))
    return ValidationReport(elems, violations)


def underlying_order(C: QCategory, cutoff: Optional[int] = None) -> set[tuple]:
    """The preorder ``x <= y`` iff ``unit <= hom(x, y)``."""
    k = qt.unit(C.spec)
    elems = C.carrier(cutoff)
    return {(x, y) for x in elems for y in elems if qt.leq(C.spec, k, C.hom(x, y))}


# -- weights --------------------------------------------------------------------------

@dataclass(frozen=True)
class Weight:
    category: QCategory
    fn: Callable[[Any], Any]
    name: str = ""

    def __call__(self, x):
        return self.fn(x)

    @classmethod
    def from_mapping(cls, category: QCategory, values: dict, name: str = "") -> "Weight":
        vals = {x: qt.as_value(category.spec, v) for x, v in values.items()}
        missing = [x for x in category.carrier() if x not in vals] if category.is_finite else []
        if missing:
            raise ValueError(f"weight {name!r} is undefined at {missing}")

        def fn(x):
            try:
                return vals[x]
            except KeyError:
                raise ValueError(f"weight {name!r} is undefined at {x!r}") from None
        return cls(category, fn, name)

    def values(self, elements: Iterable) -> dict:
        return {x: self.fn(x) for x in elements}


def representable(C: QCategory, a) -> Weight:
    return Weight(C, lambda x: C.hom(x, a), f"hom(-,{C.label(a)})")


def constant_weight(C: QCategory, value) -> Weight:
    return Weight(C, lambda x: value, f"const {qt.format_value(value)}")


def is_weight(C: QCategory, phi: Weight, cutoff: Optional[int] = None) -> tuple[bool, list]:
    """Check ``phi(y) (x) hom(x,y) <= phi(x)`` on every pair of the truncation."""
    if phi.category is not C:
        raise ValueError("weight belongs to a different category")
    spec = C.spec
    elems = C.carrier(cutoff)
    vals = [phi(x) for x in elems]
    violations = []
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            lhs = qt.mul(spec, vals[j], C.hom(x, y))
            if not qt.leq(spec, lhs, vals[i]):
                violations.append((C.label(x), C.label(y), lhs, vals[i]))
    return not violations, violations


# -- nets -------------------------------------------------------------------------------

@dataclass(frozen=True)
class NetTails:
    """Declared exact values of the infinite window infima of a sequence.

    ``cauchy_window(l)`` is ``meet_{l <= g <= m} hom(x_g, x_m)`` and
    ``cauchy_limit`` its join over ``l``.  ``weight_window(x, l)`` is
    ``meet_{m >= l} hom(x, x_m)`` (limit ``weight_limit(x)``) and
    ``coweight_window(y, l)`` is ``meet_{m >= l} hom(x_m, y)`` (limit
    ``coweight_limit(y)``).  Any field may be left out.
    """

    cauchy_window: Optional[Callable[[int], Any]] = None
    cauchy_limit: Any = None
    weight_window: Optional[Callable[[Any, int], Any]] = None
    weight_limit: Optional[Callable[[Any], Any]] = None
    coweight_window: Optional[Callable[[Any, int], Any]] = None
    coweight_limit: Optional[Callable[[Any], Any]] = None


@dataclass(frozen=True)
class Net:
    """An N-indexed sequence ``x_start, x_start+1, ...`` in a category.

    An explicit ``terms`` tuple without a generator is read as eventually
    constant at its last term.  With a ``generator`` the explicit terms (if
    any) come first and ``generator(n)`` supplies the rest; ``stable_from``
    then declares the index after which the sequence is constant.
    """

    category: QCategory
    terms: tuple = ()
    generator: Optional[Callable[[int], Any]] = None
    start: int = 1
    stable_from: Optional[int] = None
    tails: Optional[NetTails] = None
    name: str = ""

    def __post_init__(self):
        if not self.terms and self.generator is None:
            raise ValueError("empty net")
        if self.generator is None and self.stable_from is None:
            run = len(self.terms) - 1
            while run > 0 and self.terms[run - 1] == self.terms[-1]:
                run -= 1
            object.__setattr__(self, "stable_from", self.start + run)

    def term(self, n: int):
        if n < self.start:
            raise IndexError(n)
        i = n - self.start
        if i < len(self.terms):
            return self.terms[i]
        if self.generator is None:
            return self.terms[-1]
        return self.generator(n)

    def indices(self, cutoff: int) -> range:
        return range(self.start, max(cutoff, self.start) + 1)

    def prefix(self, cutoff: int) -> list:
        return [self.term(n) for n in self.indices(cutoff)]

    def stable_value(self, cutoff: int):
        """The eventual value, if constancy is declared and consistent with the prefix."""
        s = self.stable_from
        if s is None:
            return None
        a = self.term(s)
        for n in range(s, max(cutoff, s) + 1):
            if self.term(n) != a:
                raise ValueError(f"net {self.name!r} declared constant from {s} but x_{n} differs")
        return a


def _suffix_meets(spec, row: list) -> list:
    """``out[i] = meet(row[i:])``."""
    out = [None] * len(row)
    acc = None
    for i in range(len(row) - 1, -1, -1):
        acc = row[i] if acc is None else qt.meet(spec, (acc, row[i]))
        out[i] = acc
    return out


def _check_windows(spec, declared: list, truncated: list, limit, what: str) -> None:
    prev = None
    for off, (d, t) in enumerate(zip(declared, truncated)):
        if not qt.leq(spec, d, t):
            raise ValueError(f"{what}: declared window {qt.format_value(d)} exceeds the truncated "
                             f"infimum {qt.format_value(t)} at offset {off}")
        if prev is not None and not qt.leq(spec, prev, d):
            raise ValueError(f"{what}: declared windows are not monotone at offset {off}")
        if limit is not None and not qt.leq(spec, d, limit):
            raise ValueError(f"{what}: declared window {qt.format_value(d)} exceeds its limit")
        prev = d


def cauchy_windows(C: QCategory, net: Net, cutoff: int) -> list:
    """Truncated windows ``meet_{l <= g <= m <= cutoff} hom(x_g, x_m)`` for each ``l``."""
    spec = C.spec
    xs = net.prefix(cutoff)
    n = len(xs)
    out = [None] * n
    acc = None
    for i in range(n - 1, -1, -1):
        row = qt.meet(spec, [C.hom(xs[i], xs[j]) for j in range(i, n)])
        acc = row if acc is None else qt.meet(spec, (acc, row))
        out[i] = acc
    return out


def check_tails(C: QCategory, net: Net, cutoff: int, elements: Optional[Sequence] = None) -> None:
    """Raise ``ValueError`` if declared tails contradict the truncation at ``cutoff``."""
    t = net.tails
    if t is None:
        return
    spec = C.spec
    idx = list(net.indices(cutoff))
    xs = net.prefix(cutoff)
    if t.cauchy_window is not None:
        _check_windows(spec, [t.cauchy_window(n) for n in idx], cauchy_windows(C, net, cutoff),
                       t.cauchy_limit, "cauchy tail")
    elems = C.carrier(cutoff) if elements is None else elements
    if t.weight_window is not None:
        for x in elems:
            lim = t.weight_limit(x) if t.weight_limit else None
            _check_windows(spec, [t.weight_window(x, n) for n in idx],
                           _suffix_meets(spec, [C.hom(x, xm) for xm in xs]), lim,
                           f"weight tail at {C.label(x)}")
    if t.coweight_window is not None:
        for y in elems:
            lim = t.coweight_limit(y) if t.coweight_limit else None
            _check_windows(spec, [t.coweight_window(y, n) for n in idx],
                           _suffix_meets(spec, [C.hom(xm, y) for xm in xs]), lim,
                           f"coweight tail at {C.label(y)}")


@dataclass
class NetWeight:
    weight: Weight
    exact: bool
    note: str


def net_weight(C: QCategory, net: Net, cutoff: int = 50) -> NetWeight:
    """The weight ``join_l meet_{m >= l} hom(-, x_m)`` generated by ``net``."""
    a = net.stable_value(cutoff)
    if a is not None:
        return NetWeight(representable(C, a), True, f"eventually constant at {C.label(a)}")
    t = net.tails
    if t is not None and t.weight_limit is not None:
        check_tails(C, net, cutoff)
        return NetWeight(Weight(C, t.weight_limit, f"weight of {net.name}"), True, "declared tails")
    spec = C.spec
    xs = net.prefix(cutoff)
    approx = {}
    for x in C.carrier(cutoff):
        approx[x] = qt.join(spec, _suffix_meets(spec, [C.hom(x, xm) for xm in xs]))
    return NetWeight(Weight.from_mapping(C, approx, f"approx weight of {net.name}"), False,
                     f"prefix value up to index {cutoff}; inner meets are only upper bounds "
                     "of the infinite meets")


def forward_cauchy_check(C: QCategory, net: Net, cutoff: int = 50) -> Verdict:
    spec = C.spec
    k = qt.unit(spec)
    a = net.stable_value(cutoff)
    if a is not None:
        return Verdict(Status.CERTIFIED, detail={"reason": f"eventually constant at {C.label(a)}",
                                                  "window": qt.format_value(C.hom(a, a))})
    t = net.tails
    if t is not None and t.cauchy_window is not None and t.cauchy_limit is not None:
        check_tails(C, net, cutoff, elements=())
        if qt.leq(spec, k, t.cauchy_limit):
            return Verdict(Status.CERTIFIED, detail={"reason": "declared window infima reach the unit",
                                                      "limit": qt.format_value(t.cauchy_limit)})
        return Verdict(Status.REFUTED, witness=t.cauchy_limit,
                       detail={"reason": "every window infimum is bounded by the declared limit",
                               "bound": qt.format_value(t.cauchy_limit)})
    windows = cauchy_windows(C, net, cutoff)
    return Verdict(Status.INCONCLUSIVE, detail={
        "reason": "no tail declaration; truncated windows only bound the true ones from above",
        "truncated_windows": [qt.format_value(w) for w in windows[:10]]})


# -- colimits and Yoneda limits ---------------------------------------------------------------

def colimit_rhs(C: QCategory, phi: Weight, probes: Sequence, depth: Optional[int] = None) -> list:
    """``meet_x (phi(x) -> hom(x, y))`` for each probe ``y``, meet over ``carrier(depth)``."""
    spec = C.spec
    xs = C.carrier(depth)
    ph = [phi(x) for x in xs]
    return [qt.meet(spec, [qt.imp(spec, p, C.hom(x, y)) for x, p in zip(xs, ph)]) for y in probes]


def is_colimit(C: QCategory, phi: Weight, a, cutoff: Optional[int] = None,
               depth: Optional[int] = None) -> tuple[bool, list]:
    """Is ``a`` a colimit of ``phi``?  Residuals list ``(y, hom(a,y), rhs)`` per probe."""
    probes = C.carrier(cutoff)
    rhs = colimit_rhs(C, phi, probes, depth if depth is not None else cutoff)
    residuals = [(y, C.hom(a, y), r) for y, r in zip(probes, rhs)]
    return all(l == r for _, l, r in residuals), residuals


def colimit_candidates(C: QCategory, phi: Weight, cutoff: Optional[int] = None,
                       depth: Optional[int] = None) -> list:
    probes = C.carrier(cutoff)
    rhs = colimit_rhs(C, phi, probes, depth if depth is not None else cutoff)
    return [a for a in probes if all(C.hom(a, y) == r for y, r in zip(probes, rhs))]


@functools.lru_cache(maxsize=64)
def _yoneda_context(C: QCategory, net: Net, cutoff: int):
    probes = C.carrier(cutoff)
    s = net.stable_value(cutoff)
    t = net.tails
    if s is not None:
        target = [C.hom(s, y) for y in probes]
        depth = cutoff
    elif t is not None and t.coweight_limit is not None:
        check_tails(C, net, cutoff)
        target = [t.coweight_limit(y) for y in probes]
        depth = 2 * cutoff
    else:
        return None
    nw = net_weight(C, net, cutoff)
    rhs = colimit_rhs(C, nw.weight, probes, depth) if nw.exact else None
    return probes, target, rhs, s is not None


def is_yoneda_limit(C: QCategory, net: Net, a, cutoff: int = 50) -> Verdict:
    """Decide ``hom(a, y) = join_l meet_{m >= l} hom(x_m, y)`` on the probes ``carrier(cutoff)``.

    Two routes are computed: the direct formula and the colimit of the net
    weight.  Eventually constant nets make both exact and they must agree.
    With declared tails the direct route is exact and decides; the colimit
    route is reported alongside, with its meet taken over a carrier twice as
    deep as the probe set.
    """
    ctx = _yoneda_context(C, net, cutoff)
    if ctx is None:
        return Verdict(Status.INCONCLUSIVE, detail={"reason": "no tail declaration and not eventually constant"})
    probes, target, rhs, constant = ctx
    row = [C.hom(a, y) for y in probes]
    direct_bad = next(((y, l, v) for y, l, v in zip(probes, row, target) if l != v), None)
    route = {"direct": direct_bad is None}
    if rhs is not None:
        route["colimit"] = row == rhs
        if constant and route["colimit"] != route["direct"]:
            raise RuntimeError(f"colimit and direct routes disagree for {C.label(a)}")
    detail = {"routes": route, "routes_agree": len(set(route.values())) == 1, "probes": len(probes)}
    if direct_bad is None:
        return Verdict(Status.CERTIFIED, detail=detail)
    y, lhs, rhs_v = direct_bad
    detail.update(probe=C.label(y), lhs=qt.format_value(lhs), rhs=qt.format_value(rhs_v))
    return Verdict(Status.REFUTED, witness=y, detail=detail)


def yoneda_limits(C: QCategory, net: Net, cutoff: int = 50) -> Optional[list]:
    """All carrier elements certified as Yoneda limits, or ``None`` if undecidable."""
    out = []
    for a in C.carrier(cutoff):
        v = is_yoneda_limit(C, net, a, cutoff)
        if v.status is Status.INCONCLUSIVE:
            return None
        if v.certified:
            out.append(a)
    return out


# -- forward Cauchy weights on finite categories ---------------------------------------------

def _require_finite_unit_interval(C: QCategory, what: str) -> None:
    if not C.is_finite:
        raise ValueError(f"{what} needs a finite category")
    if not C.spec.is_tnorm:
        raise ValueError(f"{what} needs a t-norm on [0,1]")


def is_forward_cauchy_weight(C: QCategory, phi: Weight) -> bool:
    """Decide whether a weight on a finite category is forward Cauchy.

    Condition (i) is ``max phi = 1``.  Condition (ii) quantifies over
    ``r << 1`` and ``s_i << phi(x_i)``; on the chain [0,1] these are the
    half-open down-sets ``[0, v)`` (or ``{0}``).  A finite union of
    down-closed boxes covers such a box only if one of them does, so (ii)
    holds iff for every pair ``x_1, x_2`` some ``x`` has ``phi(x) = 1`` and
    ``phi(x_i) <= hom(x_i, x)``.
    """
    _require_finite_unit_interval(C, "is_forward_cauchy_weight")
    elems = C.carrier()
    vals = {x: phi(x) for x in elems}
    if max(vals.values()) != 1:
        return False
    tops = [x for x in elems if vals[x] == 1]
    for x1 in elems:
        for x2 in elems:
            if not any(vals[x1] <= C.hom(x1, x) and vals[x2] <= C.hom(x2, x) for x in tops):
                return False
    return True
