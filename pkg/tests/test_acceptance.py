"""Acceptance criteria, one function each, at exact (zero) tolerance.

Run with pytest (a summary section lists one PASS/FAIL line per criterion) or
directly: ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import time
from fractions import Fraction as F

import pytest

from qballs import quantale as qt
from qballs.corpus import gen_idempotent_counterexample, gen_quasimetric_space, gen_random_category, gen_sequence_space, \
    gen_two_point
from qballs.formal_balls import (DirectedFamily, FormalBall, bphi, directed_check, join_certify, mainlemma_suite,
                                 probe_grid, property_r_decide, property_r_grid, radius_grid, refute_join)
from qballs.qcategory import (Status, colimit_candidates, forward_cauchy_check, is_forward_cauchy_weight, net_weight,
                              representable, yoneda_limits)

from conftest import ACCEPTANCE_LINES

ORDINAL = qt.parse_spec("ordinal_sum[1/4..1/2:lukasiewicz]")
FOUR = [qt.GODEL, qt.PRODUCT, qt.LUKASIEWICZ, ORDINAL]
HALF = F(1, 2)


def criterion_1():
    start = time.perf_counter()
    grid = qt.unit_grid(32)
    bad = 0
    for spec in FOUR:
        for p, r in itertools.product(grid, repeat=2):
            i = qt.imp(spec, p, r)
            bad += sum((qt.mul(spec, p, q) <= r) != (q <= i) for q in grid)
    dt = time.perf_counter() - start
    return bad == 0 and dt < 10, f"{bad} adjunction violations over 4 specs x 33^3 triples in {dt:.2f}s"


def criterion_2():
    grid = qt.unit_grid(32)
    bad = sum(qt.mul(spec, x, qt.imp(spec, x, y)) != min(x, y)
              for spec in FOUR for x, y in itertools.product(grid, repeat=2))
    return bad == 0, f"{bad} violations of x (x) (x -> y) = min(x, y)"


def criterion_3():
    got = [qt.is_archimedean(s) for s in FOUR]
    want = [False, True, True, False]
    return got == want and sum(got) == 2, f"godel, product, lukasiewicz, ordinal sum -> {got}"


def criterion_4():
    start = time.perf_counter()
    N = 200
    g = gen_idempotent_counterexample(qt.GODEL, HALF, N)
    C, fam = g.category, g.families["chain"]
    directed = directed_check(fam, N).certified
    fc = forward_cauchy_check(C, fam.centers(), N)
    not_fc = fc.refuted and fc.witness == HALF
    depth = N + 1
    # i/16 centres must lie in the carrier (0, 1/2)
    centres = sorted(set(C.carrier(N)) | {F(i, 16) for i in range(1, 8)})
    survivors = 0
    n = 0
    for x in centres:
        for r in qt.unit_grid(16):
            n += 1
            w = refute_join(C, fam, FormalBall(x, r), depth)
            if w is None or not w.recheck(fam, depth):
                survivors += 1
    dt = time.perf_counter() - start
    ok = directed and not_fc and survivors == 0 and dt < 30
    return ok, (f"directed={directed}, not forward Cauchy with bound {fc.detail.get('bound')}, "
                f"{n - survivors}/{n} candidates refuted with rechecked witnesses in {dt:.2f}s")


def criterion_5():
    N = 200
    g = gen_sequence_space(N)
    C, net = g.category, g.net
    fc = forward_cauchy_check(C, net, N).certified
    nw = net_weight(C, net, N)
    values = nw.exact and nw.weight(F(1)) == F(1, 3) and all(
        nw.weight(1 - F(1, k)) == 1 - F(1, k) for k in range(2, N + 1))
    cands = colimit_candidates(C, nw.weight, N, 2 * N)
    points = C.carrier(N)
    probes = probe_grid(C, N, radius_grid(C.spec, 16, [f.r_sup for f in g.families.values()]))
    joins = []
    for key, fam in sorted(g.families.items()):
        if key.startswith("case2"):
            # oracle: a = min{x : r <= x} over the points (1 is always a point)
            a = min(x for x in points if fam.r_sup <= x)
        else:
            a = fam.ball(fam.stable_from).center
        v = join_certify(C, fam, FormalBall(a, fam.r_sup), probes, 2 * N + 1)
        joins.append(v.status is Status.CERTIFIED)
    ok = fc and values and cands == [] and all(joins)
    return ok, (f"forward Cauchy={fc}, weight exact={values}, colimit candidates={len(cands)}, "
                f"{sum(joins)}/{len(joins)} joins certified against {len(probes)} probes")


def criterion_6():
    N = 200
    g = gen_quasimetric_space(N)
    C, fam = g.category, g.families["chain"]
    probes = probe_grid(C, N)
    depth = 2 * N + 1
    zero = FormalBall(F(0), F(0))
    join_ok = join_certify(C, fam, zero, probes, depth).status is Status.CERTIFIED
    others = [p for p in probes if p != zero]
    refuted = 0
    for p in others:
        v = join_certify(C, fam, p, probes, depth)
        refuted += v.status is Status.REFUTED and v.witness.recheck(fam, depth)
    lims = yoneda_limits(C, g.net, N)
    ok = join_ok and refuted == len(others) and lims == []
    return ok, f"(0,0) certified={join_ok}, {refuted}/{len(others)} other probes refuted, Yoneda limits={lims}"


def criterion_7():
    count = 500
    parts, ok = [], True
    for spec in FOUR:
        accepted = unsound = 0
        for seed in range(count):
            C = gen_random_category(spec, 4, 8, seed)
            dec = property_r_decide(C)[0]
            accepted += dec
            unsound += dec and property_r_grid(C).refuted
        ok &= unsound == 0
        if spec in (qt.PRODUCT, qt.LUKASIEWICZ):
            ok &= accepted == count
        parts.append(f"{spec}: {accepted}/{count} accepted, {unsound} unsound")
    gadget = gen_two_point(qt.GODEL, HALF)
    rejected = not property_r_decide(gadget)[0] and property_r_grid(gadget).refuted
    ok &= rejected
    return ok, "; ".join(parts) + f"; godel gadget rejected by both={rejected}"


def criterion_8():
    grid = qt.unit_grid(32)

    def violations(spec):
        return [(r, s, t) for r, s, t in itertools.product(grid, repeat=3)
                if 0 < r <= qt.mul(spec, s, t) and not t >= qt.imp(spec, s, r)]

    arch = {s.kind.value: len(violations(s)) for s in (qt.PRODUCT, qt.LUKASIEWICZ)}
    godel = violations(qt.GODEL)
    ok = all(v == 0 for v in arch.values()) and (HALF, HALF, HALF) in godel
    return ok, f"violations {arch}; godel has (1/2,1/2,1/2)={(HALF, HALF, HALF) in godel}"


def criterion_9():
    specs = FOUR
    weights = bad = 0
    for seed in range(100):
        spec = specs[seed % len(specs)]
        C = gen_random_category(spec, 3, 8, seed)
        for a in C.carrier():
            weights += 1
            phi = representable(C, a)
            if not is_forward_cauchy_weight(C, phi):
                bad += 1
                continue
            B = bphi(C, phi)
            # oracle: the join-meet reconstruction must return hom(-, a) exactly
            if not B.directed.certified or B.reconstruction != {x: C.hom(x, a) for x in C.carrier()}:
                bad += 1
    return bad == 0, f"{weights - bad}/{weights} representable weights on 100 categories round-trip"


def criterion_10():
    defects = 0
    for seed in range(100):
        C = gen_random_category(qt.PRODUCT, 3, 8, seed)
        a = C.carrier()[seed % 3]
        fam = DirectedFamily(C, chain=lambda n, a=a: FormalBall(a, F(n, n + 1)), r_sup=F(1), stable_from=1)
        rep = mainlemma_suite(C, fam, a, 10)
        defects += rep.forward != "holds" or rep.backward != "holds"
    g = gen_sequence_space(60)
    C = g.category
    reps = [mainlemma_suite(C, g.families["case2_1"], a, 60) for a in C.carrier(60)[:12]]
    seq_ok = all(not r.defects and r.backward == "skipped" and not r.property_r for r in reps)
    ok = defects == 0 and seq_ok
    return ok, f"product: {100 - defects}/100 both directions; godel sequence space forward-only, no defects={seq_ok}"


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 11)}


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, detail = CRITERIA[k]()
    ACCEPTANCE_LINES[k] = f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(ACCEPTANCE_LINES[k])
    assert ok, detail


if __name__ == "__main__":
    import sys
    failed = 0
    for k, fn in CRITERIA.items():
        ok, detail = fn()
        failed += not ok
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}", flush=True)
    sys.exit(1 if failed else 0)
