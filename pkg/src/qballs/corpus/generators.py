"""Built-in categories, sequences and directed families.

Each generator returns a :class:`Bundle` holding the category, the standard
net on it (if any) and a dictionary of directed families.  Countable carriers
are truncated at ``N`` points; hom values are closed forms valid on the whole
countable carrier.
"""
from __future__ import annotations

import inspect
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .. import quantale as qt
from ..formal_balls import DirectedFamily, FormalBall
from ..qcategory import FiniteQCategory, GeneratedQCategory, Net, NetTails, QCategory

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


@dataclass
class Bundle:
    name: str
    params: dict
    category: QCategory
    net: Optional[Net] = None
    families: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)


def _as_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


# -- idempotent counterexample ---------------------------------------------------------------

def gen_idempotent_counterexample(spec: qt.QuantaleSpec = qt.GODEL, b=HALF, N: int = 200) -> Bundle:
    """``X = (0, b)`` with ``hom(x, y) = min(x -> y, y -> x)`` off the diagonal.

    The sampled points are ``x_n = b n/(n+1)``, strictly increasing to the
    idempotent ``b``.  The chain ``(x_n, x_n)`` is directed and has no join.
    """
    if not spec.is_tnorm:
        raise ValueError("needs a t-norm on [0,1]")
    b = _as_fraction(b)
    if not 0 < b < 1 or not qt.is_idempotent(spec, b):
        raise ValueError(f"{qt.format_value(b)} is not an idempotent in (0,1) of {spec}")

    def hom(x, y):
        if x == y:
            return qt.ONE
        return min(qt.imp(spec, x, y), qt.imp(spec, y, x))

    def point(n: int) -> Fraction:
        return b * n / (n + 1)

    C = GeneratedQCategory(spec, hom, point, start=1, member=lambda x: isinstance(x, Fraction) and 0 < x < b,
                           default_cutoff=N, name="idempotent_counterexample",
                           params={"spec": str(spec), "b": qt.format_value(b), "N": N})
    tails = NetTails(cauchy_window=lambda l: qt.imp(spec, b, point(l)), cauchy_limit=b)
    net = Net(C, generator=point, start=1, tails=tails, name="x_n")
    chain = DirectedFamily(C, chain=lambda n: FormalBall(point(n), point(n)), start=1, r_sup=b,
                           tails=tails, name="diagonal chain")
    return Bundle("idempotent_counterexample", dict(C.params), C, net, {"chain": chain})


# -- Goedel sequence space --------------------------------------------------------------------

def _seq_point(n: int) -> Fraction:
    return 1 - Fraction(1, n)


def _seq_member(x) -> bool:
    if x == 1:
        return True
    if not isinstance(x, Fraction) or not 0 < x < 1 or x.numerator != x.denominator - 1:
        return False
    return x.denominator >= 2


def _seq_hom(x, y):
    if x == y:
        return qt.ONE
    if x == 1:
        return THIRD
    return min(x, y)


def seq_join_center(r) -> Fraction:
    """``min{x : r <= x}`` in the sequence space."""
    r = _as_fraction(r)
    if r >= 1:
        return qt.ONE
    return _seq_point(max(2, math.ceil(1 / (1 - r))))


def gen_sequence_space(N: int = 200, case2_radii=(HALF, Fraction(3, 4), Fraction(9, 10), qt.ONE),
                       case1=((qt.ONE, qt.ONE), (HALF, Fraction(3, 4)), (Fraction(2, 3), Fraction(1, 3)))) -> Bundle:
    """``{1} ∪ {1 - 1/n : n >= 2}`` over Goedel with ``hom(1, y) = 1/3`` for ``y != 1``.

    Its net ``1 - 1/n`` is forward Cauchy without a Yoneda limit.  The
    families are eventually constant ones ``case1_a_r`` (centre ``a``,
    radii ``r (n-1)/n``) and increasing ones ``case2_r`` with balls
    ``(x_n, min(r, x_n))``.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    C = GeneratedQCategory(qt.GODEL, _seq_hom, _seq_point, start=2, extras=(qt.ONE,), member=_seq_member,
                           default_cutoff=N, name="sequence_space", params={"N": N})
    tails = NetTails(
        cauchy_window=_seq_point, cauchy_limit=qt.ONE,
        weight_window=lambda x, l: THIRD if x == 1 else min(x, _seq_point(l)),
        weight_limit=lambda x: THIRD if x == 1 else x,
        coweight_window=lambda y, l: _seq_point(l) if y == 1 else min(y, _seq_point(l)),
        coweight_limit=lambda y: y,
    )
    net = Net(C, generator=_seq_point, start=2, tails=tails, name="1-1/n")
    fams = {}
    for r in case2_radii:
        r = _as_fraction(r)
        fams[f"case2_{qt.format_value(r)}"] = DirectedFamily(
            C, chain=lambda n, r=r: FormalBall(_seq_point(n), min(r, _seq_point(n))), start=2, r_sup=r,
            tails=tails if r == 1 else None, name=f"case 2, r={qt.format_value(r)}")
    for a, r in case1:
        a, r = _as_fraction(a), _as_fraction(r)
        fams[f"case1_{qt.format_value(a)}_{qt.format_value(r)}"] = DirectedFamily(
            C, chain=lambda n, a=a, r=r: FormalBall(HALF, qt.ZERO) if n == 1 else FormalBall(a, r * (n - 1) / n),
            start=1, r_sup=r, stable_from=2, name=f"case 1, a={qt.format_value(a)}, r={qt.format_value(r)}")
    expected = {k: FormalBall(seq_join_center(f.r_sup), f.r_sup) for k, f in fams.items() if k.startswith("case2")}
    expected.update({k: FormalBall(f.ball(2).center, f.r_sup) for k, f in fams.items() if k.startswith("case1")})
    return Bundle("sequence_space", {"N": N}, C, net, fams, {"expected_joins": expected})


# -- quasi-metric example ------------------------------------------------------------------------

def _qm_point(n: int) -> Fraction:
    return Fraction(1, n)


def _qm_member(x) -> bool:
    return x == 0 or (isinstance(x, Fraction) and x.numerator == 1 and x.denominator >= 2)


def _qm_dist(x, y):
    if x == 0 and y != 0:
        return HALF
    return max(qt.ZERO, y - x)


def gen_quasimetric_space(N: int = 200, constant_at=(THIRD, qt.ZERO)) -> Bundle:
    """``{0} ∪ {1/n : n >= 2}`` over Lawvere with ``d(0, y) = 1/2`` for ``y != 0``.

    The net ``1/n`` is forward Cauchy with no Yoneda limit, yet the chain
    ``(1/n, 1/n)`` has join ``(0, 0)``.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    C = GeneratedQCategory(qt.LAWVERE, _qm_dist, _qm_point, start=2, extras=(qt.ZERO,), member=_qm_member,
                           default_cutoff=N, name="quasimetric_space", params={"N": N})
    tails = NetTails(
        cauchy_window=lambda l: qt.ZERO, cauchy_limit=qt.ZERO,
        weight_window=lambda x, l: HALF if x == 0 else max(qt.ZERO, _qm_point(l) - x),
        weight_limit=lambda x: HALF if x == 0 else qt.ZERO,
        coweight_window=lambda y, l: y,
        coweight_limit=lambda y: y,
    )
    net = Net(C, generator=_qm_point, start=2, tails=tails, name="1/n")
    fams = {"chain": DirectedFamily(C, chain=lambda n: FormalBall(_qm_point(n), _qm_point(n)), start=2,
                                    r_sup=qt.ZERO, tails=tails, name="(1/n, 1/n)")}
    expected = {"chain": FormalBall(qt.ZERO, qt.ZERO)}
    for a in constant_at:
        a = _as_fraction(a)
        key = f"constant_{qt.format_value(a)}"
        fams[key] = DirectedFamily(
            C, chain=lambda n, a=a: FormalBall(qt.ZERO, qt.ONE) if n == 1 else FormalBall(a, _qm_point(n)),
            start=1, r_sup=qt.ZERO, stable_from=2, name=f"eventually at {qt.format_value(a)}")
        expected[key] = FormalBall(a, qt.ZERO)
    return Bundle("quasimetric_space", {"N": N}, C, net, fams, {"expected_joins": expected})


# -- small finite categories -----------------------------------------------------------------------

def gen_two_point(spec: qt.QuantaleSpec, q) -> FiniteQCategory:
    """``{x, y}`` with ``hom(x, y) = hom(y, x) = q``."""
    q = qt.as_value(spec, q)
    k = qt.unit(spec)
    return FiniteQCategory(spec, ("x", "y"), [[k, q], [q, k]])


def close_transitively(spec: qt.QuantaleSpec, m: list[list]) -> list[list]:
    """Raise entries via ``hom(x,z) := hom(x,z) v hom(y,z) (x) hom(x,y)`` until nothing changes."""
    n = len(m)
    m = [list(row) for row in m]
    changed = True
    while changed:
        changed = False
        for y in range(n):
            for x in range(n):
                hxy = m[x][y]
                for z in range(n):
                    c = qt.mul(spec, m[y][z], hxy)
                    if qt.lt(spec, m[x][z], c):
                        m[x][z] = c
                        changed = True
    return m


def gen_random_category(spec: qt.QuantaleSpec, size: int = 4, value_denominator: int = 8, seed: int = 0) -> FiniteQCategory:
    """A random valid category: grid values, unit diagonal, then transitive closure."""
    rng = random.Random(seed)
    grid = qt.carrier_grid(spec, value_denominator)
    k = qt.unit(spec)
    m = [[k if i == j else rng.choice(grid) for j in range(size)] for i in range(size)]
    m = close_transitively(spec, m)
    return FiniteQCategory(spec, tuple(f"p{i}" for i in range(size)), m)


GENERATORS = {
    "idempotent_counterexample": gen_idempotent_counterexample,
    "sequence_space": gen_sequence_space,
    "quasimetric_space": gen_quasimetric_space,
}


def generated_bundle(name: str, params: Optional[dict] = None) -> Bundle:
    """Build a countable example by name; ``params`` values may be strings."""
    params = dict(params or {})
    if name not in GENERATORS:
        raise KeyError(f"unknown generator {name!r}; known: {sorted(GENERATORS)}")
    accepted = inspect.signature(GENERATORS[name]).parameters
    kwargs: dict[str, Any] = {}
    for k, v in params.items():
        if k not in accepted:
            raise KeyError(f"generator {name!r} takes no parameter {k!r}")
        if k == "N":
            kwargs["N"] = int(v)
        elif k == "spec":
            kwargs["spec"] = v if isinstance(v, qt.QuantaleSpec) else qt.parse_spec(str(v))
        elif k == "b":
            kwargs["b"] = Fraction(str(v))
        else:
            raise KeyError(f"generator {name!r} takes no parameter {k!r}")
    return GENERATORS[name](**kwargs)
