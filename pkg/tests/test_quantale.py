from __future__ import annotations

import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qballs import quantale as qt

from conftest import ALL_SPECS, ORDINAL, TNORMS, TWO_SUMMANDS, unit_values, values_for


# -- independent oracles -------------------------------------------------------------------

def oracle_basic_mul(name, x, y):
    return {"godel": min(x, y), "product": x * y, "lukasiewicz": max(F(0), x + y - 1)}[name]


def oracle_ordinal_mul(summands, x, y):
    """Rescale into a shared summand, apply its t-norm, rescale back; min otherwise."""
    for lo, hi, name in summands:
        if lo <= x <= hi and lo <= y <= hi:
            u, v = (x - lo) / (hi - lo), (y - lo) / (hi - lo)
            return lo + (hi - lo) * oracle_basic_mul(name, u, v)
    return min(x, y)


def oracle_imp_on_grid(spec, x, y, grid):
    """Largest grid value z with x (x) z <= y (exact when the residuum lies on the grid)."""
    return max(z for z in grid if qt.mul(spec, x, z) <= y)


# -- examples ---------------------------------------------------------------------------------

def test_leq_examples():
    assert qt.leq(qt.GODEL, F(1, 2), F(3, 4))
    assert qt.leq(qt.LAWVERE, F(3), F(1))
    assert not qt.leq(qt.LAWVERE, F(1), F(3))
    assert all(qt.leq(qt.LAWVERE, qt.INF, x) for x in (F(0), F(5), qt.INF))


def test_mul_examples():
    assert qt.mul(qt.PRODUCT, F(1, 2), F(1, 2)) == F(1, 4)
    assert qt.mul(qt.LUKASIEWICZ, F(7, 10), F(1, 2)) == F(1, 5)
    assert qt.mul(ORDINAL, F(3, 8), F(3, 8)) == F(1, 4)
    assert qt.mul(ORDINAL, F(1, 8), F(3, 8)) == F(1, 8)
    assert qt.mul(qt.LAWVERE, F(2), F(3)) == F(5)
    assert qt.mul(qt.LAWVERE, qt.INF, F(3)) == qt.INF


def test_imp_examples():
    assert qt.imp(qt.GODEL, F(1, 2), F(3, 4)) == 1
    assert qt.imp(qt.PRODUCT, F(1, 2), F(1, 4)) == F(1, 2)
    assert qt.imp(qt.LUKASIEWICZ, F(3, 10), F(1, 5)) == F(9, 10)


def test_lawvere_infinity_conventions():
    L = qt.LAWVERE
    assert qt.mul(L, qt.INF, F(0)) == qt.INF
    assert qt.imp(L, qt.INF, qt.INF) == 0
    assert qt.imp(L, F(2), qt.INF) == qt.INF
    assert qt.imp(L, F(3), F(1)) == 0
    assert qt.imp(L, F(1), F(3)) == 2


def test_power_examples():
    assert qt.power(qt.GODEL, F(1, 2), 10) == F(1, 2)
    x = F(1, 2)
    assert qt.power(qt.PRODUCT, x, 3) == x * x * x
    acc = F(3, 4)
    for _ in range(3):
        acc = max(F(0), acc + F(3, 4) - 1)
    assert qt.power(qt.LUKASIEWICZ, F(3, 4), 4) == acc == 0
    assert qt.power(qt.PRODUCT, F(2, 3), 1) == F(2, 3)
    with pytest.raises(ValueError):
        qt.power(qt.PRODUCT, F(1, 2), 0)


def test_bound_examples():
    assert qt.bound(qt.GODEL, "join", [F(1, 4), F(1, 2), F(1, 3)]) == F(1, 2)
    assert qt.bound(qt.LAWVERE, "join", [F(3), F(1), F(2)]) == F(1)
    assert qt.bound(qt.GODEL, "meet", [F(1, 4), F(1, 2)]) == F(1, 4)
    with pytest.raises(ValueError):
        qt.bound(qt.GODEL, "join", [])


def test_way_below_examples():
    assert qt.way_below(qt.GODEL, F(0), F(0))
    assert not qt.way_below(qt.GODEL, F(1, 2), F(1, 2))
    assert qt.way_below(qt.GODEL, F(1, 4), F(1, 2))
    assert qt.way_below(qt.LAWVERE, qt.INF, F(0))
    assert qt.way_below(qt.LAWVERE, F(2), F(1))
    assert not qt.way_below(qt.LAWVERE, F(1), F(1))
    assert qt.way_below(qt.BOOLEAN, F(1), F(1))


def test_idempotent_examples():
    assert str(qt.idempotents(qt.PRODUCT)) == "{0, 1}"
    assert str(qt.idempotents(qt.GODEL)) == "[0,1]"
    assert str(qt.idempotents(ORDINAL)) == "[0,1/4] ∪ [1/2,1]"
    assert str(qt.idempotents(qt.LAWVERE)) == "{0, inf}"


@pytest.mark.parametrize("spec", [ORDINAL, TWO_SUMMANDS, qt.GODEL, qt.PRODUCT, qt.LUKASIEWICZ])
def test_idempotents_match_grid_scan(spec):
    idem = qt.idempotents(spec)
    for d in range(1, 65):
        for i in range(d + 1):
            x = F(i, d)
            assert (x in idem) == (qt.mul(spec, x, x) == x), x


def test_archimedean_classification():
    assert not qt.is_archimedean(qt.GODEL)
    assert qt.is_archimedean(qt.PRODUCT)
    assert qt.is_archimedean(qt.LUKASIEWICZ)
    assert not qt.is_archimedean(ORDINAL)
    assert F(1, 4) in qt.idempotents(ORDINAL)
    with pytest.raises(ValueError):
        qt.is_archimedean(qt.LAWVERE)


@pytest.mark.parametrize("spec", TNORMS)
def test_archimedean_probe_agrees(spec):
    ok, witness = qt.archimedean_probe(spec)
    assert ok == qt.is_archimedean(spec)
    if not ok:
        x, y = witness
        assert qt.power(spec, x, 64) >= y


# -- closed forms against oracles ----------------------------------------------------------------

@given(unit_values(), unit_values())
def test_basic_mul_matches_oracle(x, y):
    for name, spec in (("godel", qt.GODEL), ("product", qt.PRODUCT), ("lukasiewicz", qt.LUKASIEWICZ)):
        assert qt.mul(spec, x, y) == oracle_basic_mul(name, x, y)


@given(unit_values(), unit_values())
def test_ordinal_mul_matches_oracle(x, y):
    assert qt.mul(ORDINAL, x, y) == oracle_ordinal_mul([(F(1, 4), F(1, 2), "lukasiewicz")], x, y)
    assert qt.mul(TWO_SUMMANDS, x, y) == oracle_ordinal_mul(
        [(F(0), F(1, 3), "product"), (F(1, 2), F(1), "lukasiewicz")], x, y)


@pytest.mark.parametrize("spec", [qt.GODEL, qt.LUKASIEWICZ, ORDINAL])
def test_imp_matches_grid_maximum(spec):
    # on denominator 32 these residua stay on the grid, so the grid max is exact
    grid = qt.unit_grid(32)
    for x, y in itertools.product(grid, repeat=2):
        assert qt.imp(spec, x, y) == oracle_imp_on_grid(spec, x, y, grid)


# -- algebraic laws ---------------------------------------------------------------------------------

@pytest.mark.parametrize("spec", TNORMS)
def test_adjunction_exhaustive_grid(spec):
    grid = qt.unit_grid(32)
    bad = 0
    for p, r in itertools.product(grid, repeat=2):
        i = qt.imp(spec, p, r)
        for q in grid:
            bad += (qt.mul(spec, p, q) <= r) != (q <= i)
    assert bad == 0


def test_adjunction_lawvere_grid():
    grid = qt.carrier_grid(qt.LAWVERE, 8)
    L = qt.LAWVERE
    for p, q, r in itertools.product(grid, repeat=3):
        assert qt.leq(L, qt.mul(L, p, q), r) == qt.leq(L, q, qt.imp(L, p, r))


@pytest.mark.parametrize("spec", TNORMS)
def test_continuity_identity(spec):
    grid = qt.unit_grid(32)
    for x, y in itertools.product(grid, repeat=2):
        assert qt.mul(spec, x, qt.imp(spec, x, y)) == min(x, y)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=str)
def test_laws_hold(spec):
    @given(values_for(spec), values_for(spec), values_for(spec), values_for(spec))
    def check(p, q, r, s):
        m = qt.mul
        assert m(spec, p, q) == m(spec, q, p)
        assert m(spec, m(spec, p, q), r) == m(spec, p, m(spec, q, r))
        assert m(spec, qt.unit(spec), p) == p
        assert qt.leq(spec, m(spec, p, q), qt.meet(spec, [p, q]))
        if qt.leq(spec, q, r):
            assert qt.leq(spec, m(spec, p, q), m(spec, p, r))
        assert m(spec, p, qt.join(spec, [q, r, s])) == qt.join(spec, [m(spec, p, q), m(spec, p, r), m(spec, p, s)])
        if spec.is_tnorm:
            assert m(spec, p, qt.meet(spec, [q, r, s])) == qt.meet(spec, [m(spec, p, q), m(spec, p, r), m(spec, p, s)])
        # adjunction on random triples
        assert qt.leq(spec, m(spec, p, q), r) == qt.leq(spec, q, qt.imp(spec, p, r))
    check()


@pytest.mark.parametrize("spec", ALL_SPECS, ids=str)
def test_way_below_properties(spec):
    @given(values_for(spec), values_for(spec), values_for(spec))
    def check(p, q, q2):
        if qt.way_below(spec, p, q):
            assert qt.leq(spec, p, q)
            if qt.leq(spec, q, q2):
                assert qt.way_below(spec, p, q2)
    check()


@given(unit_values(), st.integers(1, 12))
def test_power_decreases(x, n):
    for spec in TNORMS:
        assert qt.power(spec, x, n + 1) <= qt.power(spec, x, n)


@pytest.mark.parametrize("spec", TNORMS)
def test_archimedean_iff_no_interior_idempotent(spec):
    interior = [x for x in qt.unit_grid(64)[1:-1] if x in qt.idempotents(spec)]
    assert qt.is_archimedean(spec) == (not interior)


# -- parsing and values ----------------------------------------------------------------------------

@pytest.mark.parametrize("text", ["godel", "product", "lukasiewicz", "boolean", "lawvere",
                                  "ordinal_sum[1/4..1/2:lukasiewicz]",
                                  "ordinal_sum[0..1/3:product, 1/2..1:lukasiewicz]"])
def test_spec_text_round_trip(text):
    assert qt.parse_spec(str(qt.parse_spec(text))) == qt.parse_spec(text)


@pytest.mark.parametrize("text", ["gödel", "ordinal_sum[]", "ordinal_sum[1/2..1/4:product]",
                                  "ordinal_sum[0..1/2:godel]", "ordinal_sum[0..1/2:product,1/4..1:product]",
                                  "ordinal_sum"])
def test_bad_specs_rejected(text):
    with pytest.raises(ValueError):
        qt.parse_spec(text)


def test_values_are_checked():
    assert qt.parse_value(qt.LAWVERE, "inf") == qt.INF
    assert qt.parse_value(qt.GODEL, "3/4") == F(3, 4)
    for spec, bad in ((qt.GODEL, "0.5"), (qt.GODEL, "3/2"), (qt.GODEL, "inf"), (qt.BOOLEAN, "1/2"),
                      (qt.LAWVERE, "-1"), (qt.PRODUCT, "x")):
        with pytest.raises(ValueError):
            qt.parse_value(spec, bad)
    with pytest.raises(ValueError):
        qt.as_value(qt.GODEL, 0.5)
    assert qt.format_value(qt.INF) == "inf" and qt.format_value(F(2, 4)) == "1/2"
