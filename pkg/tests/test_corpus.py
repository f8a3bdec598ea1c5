from __future__ import annotations

import itertools
from fractions import Fraction as F

import pytest

from qballs import quantale as qt
from qballs.corpus import (SUITES, gen_idempotent_counterexample, gen_quasimetric_space, gen_random_category,
                           gen_sequence_space, gen_two_point, generated_bundle, run_suite)
from qballs.corpus.generators import close_transitively
from qballs.corpus.suites import archi_fc_scan
from qballs.formal_balls import ball_leq, directed_check, property_r_decide
from qballs.qcategory import validate_category

from conftest import ALL_SPECS, ORDINAL, TNORMS

GENERATORS = [gen_idempotent_counterexample, gen_sequence_space, gen_quasimetric_space]


# -- generators -------------------------------------------------------------------------------------------

@pytest.mark.parametrize("gen", GENERATORS, ids=lambda g: g.__name__)
def test_generators_valid_at_small_cutoffs(gen):
    C = gen(N=200).category
    for cutoff in (2, 3, 10, 57, 200):
        assert validate_category(C, cutoff).valid


@pytest.mark.parametrize("gen", GENERATORS, ids=lambda g: g.__name__)
def test_generators_valid_at_cutoff_500(gen):
    rep = validate_category(gen(N=500).category, 500)
    assert rep.valid and len(rep.elements) >= 499


def test_idempotent_example_closed_form():
    g = gen_idempotent_counterexample(N=300)
    C, fam = g.category, g.families["chain"]
    balls = [fam.ball(n) for n in range(1, 301)]
    for n, m in itertools.combinations(range(300), 2):
        bn, bm = balls[n], balls[m]
        assert bn.radius == min(bm.radius, C.hom(bn.center, bm.center))
        # oracle: hom(x_n, x_m) = x_n for n < m, from min(x_n -> x_m, x_m -> x_n) = min(1, x_n)
        assert C.hom(bn.center, bm.center) == bn.center
    assert balls[0] == (F(1, 4), F(1, 4)) and balls[2] == (F(3, 8), F(3, 8))


def test_idempotent_example_other_idempotent_and_spec():
    g = gen_idempotent_counterexample(ORDINAL, F(1, 4), 50)
    assert validate_category(g.category, 50).valid
    assert directed_check(g.families["chain"], 50).certified
    assert g.params == {"spec": str(ORDINAL), "b": "1/4", "N": 50}


@pytest.mark.parametrize("spec,b", [(qt.PRODUCT, F(1, 2)), (qt.GODEL, F(1)), (qt.GODEL, F(0)),
                                    (ORDINAL, F(3, 8)), (qt.LAWVERE, F(1, 2))])
def test_idempotent_example_rejects_bad_b(spec, b):
    with pytest.raises(ValueError):
        gen_idempotent_counterexample(spec, b, 10)


def test_sequence_and_quasimetric_need_two_points():
    for gen in (gen_sequence_space, gen_quasimetric_space):
        with pytest.raises(ValueError):
            gen(N=1)


def test_sequence_space_hom_values():
    C = gen_sequence_space(20).category
    assert C.hom(F(1), F(1, 2)) == F(1, 3)
    assert C.hom(F(1, 2), F(1)) == F(1, 2)
    assert C.hom(F(2, 3), F(3, 4)) == F(2, 3)
    assert C.hom(F(3, 4), F(3, 4)) == 1
    assert C.carrier(5) == [F(1), F(1, 2), F(2, 3), F(3, 4), F(4, 5)]


def test_quasimetric_distances():
    C = gen_quasimetric_space(20).category
    assert C.hom(F(0), F(1, 3)) == F(1, 2)
    assert C.hom(F(1, 3), F(0)) == 0
    assert C.hom(F(1, 3), F(1, 2)) == F(1, 6)
    assert C.hom(F(1, 2), F(1, 3)) == 0


@pytest.mark.parametrize("spec", ALL_SPECS, ids=str)
def test_random_category_deterministic_and_closed(spec):
    for seed in range(10):
        a = gen_random_category(spec, 5, 8, seed)
        b = gen_random_category(spec, 5, 8, seed)
        assert a.rows == b.rows and a.labels == b.labels
        assert close_transitively(spec, a.rows) == [list(r) for r in a.rows]
        assert all(a.hom(x, x) == qt.unit(spec) for x in a.carrier())
    assert len({gen_random_category(spec, 5, 8, seed).rows for seed in range(10)}) > 1


def test_random_product_denominator_16_has_property_r():
    for seed in range(20):
        assert property_r_decide(gen_random_category(qt.PRODUCT, 4, 16, seed))[0]


def test_two_point_examples():
    assert not property_r_decide(gen_two_point(qt.GODEL, F(1, 2)))[0]
    assert property_r_decide(gen_two_point(qt.PRODUCT, F(1, 2)))[0]
    for spec in TNORMS:
        assert property_r_decide(gen_two_point(spec, F(1)))[0]
    L = gen_two_point(qt.LAWVERE, F(3))
    assert validate_category(L).valid and L.hom("x", "y") == 3


def test_generated_bundle_params():
    b = generated_bundle("idempotent_counterexample", {"b": "1/2", "N": "20", "spec": "godel"})
    assert b.category.default_cutoff == 20
    with pytest.raises(KeyError):
        generated_bundle("nope")
    with pytest.raises(KeyError):
        generated_bundle("sequence_space", {"b": "1/2"})


def test_case1_families_stable():
    g = gen_sequence_space(30)
    fam = g.families["case1_1/2_3/4"]
    assert fam.ball(1) == (F(1, 2), 0) and fam.ball(2) == (F(1, 2), F(3, 8))
    assert ball_leq(g.category, fam.ball(5), fam.ball(6))


# -- archimedean fact scan -------------------------------------------------------------------------------

def test_archi_fc_scan_counts():
    for spec in (qt.PRODUCT, qt.LUKASIEWICZ):
        assert archi_fc_scan(spec, 32)[0] == 0
    bad, first = archi_fc_scan(qt.GODEL, 32)
    assert bad > 0
    # oracle: Goedel violations are exactly 0 < r <= min(s,t), t < (s -> r); with r <= s, s -> r is 1 iff s <= r
    grid = qt.unit_grid(32)
    expected = sum(1 for r, s, t in itertools.product(grid, repeat=3)
                   if 0 < r <= min(s, t) and t < (1 if s <= r else r))
    assert bad == expected
    half = F(1, 2)
    assert half <= qt.mul(qt.GODEL, half, half) and half < qt.imp(qt.GODEL, half, half)


# -- suites -------------------------------------------------------------------------------------------------

SMALL = {
    "suite_prop_archi_fc": {"denominator": "16"},
    "suite_prop_4_6": {"count": "40"},
    "suite_cor_equiv": {"N": "20"},
    "suite_lemma_bphi": {"count": "12"},
    "suite_mainlemma": {"count": "10", "N": "20"},
    "suite_finite_yoneda": {"count": "4"},
    "suite_example_idempotent": {"N": "30"},
    "suite_example_sequence_space": {"N": "30"},
    "suite_example_quasimetric": {"N": "30"},
}


def test_small_params_cover_every_suite():
    assert set(SMALL) == set(SUITES)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_suite_passes(name):
    rep = run_suite(name, SMALL[name])
    failing = [c for c in rep["checks"] if not c["passed"]]
    assert rep["passed"] and not failing, failing
    ids = [c["id"] for c in rep["checks"]]
    assert ids == sorted(ids) and ids
    assert rep["suite"] == name


def test_suite_reports_deterministic():
    assert run_suite("suite_prop_4_6", {"count": "15", "seed": "7"}) == run_suite("suite_prop_4_6", {"count": "15", "seed": "7"})


def test_suite_errors():
    with pytest.raises(KeyError):
        run_suite("suite_nope")
    with pytest.raises(KeyError):
        run_suite("suite_cor_equiv", {"bogus": "1"})
    with pytest.raises(ValueError):
        run_suite("suite_cor_equiv", {"N": "abc"})


def test_suite_records_goedel_violation():
    rep = run_suite("suite_prop_archi_fc", {"specs": "godel", "denominator": "8"})
    by_id = {c["id"]: c for c in rep["checks"]}
    assert by_id["godel: violation at r=s=t=1/2"]["passed"]
    assert "witness" in by_id["godel: fact scan (violations expected)"]
