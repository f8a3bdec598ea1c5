"""Executable suites: instance-level checks of the main results.

Every suite returns a report ``{"suite", "params", "passed", "checks"}``
whose checks are sorted by id.  A check records ``passed`` and a short
``detail``; failing checks carry a ``witness`` where one exists.
"""
from __future__ import annotations

import inspect
import itertools
from fractions import Fraction
from typing import Any, Callable

from .. import quantale as qt
from ..formal_balls import (DirectedFamily, FormalBall, bphi, directed_check, join_certify, join_via_yoneda,
                            mainlemma_suite, probe_grid, property_r_decide, property_r_grid,
                            radius_grid, refute_join)
from ..qcategory import (Status, Weight, colimit_candidates, forward_cauchy_check, is_forward_cauchy_weight,
                         is_weight, net_weight, representable, validate_category, yoneda_limits)
from .generators import (gen_idempotent_counterexample, gen_quasimetric_space, gen_random_category,
                         gen_sequence_space, gen_two_point)

TNORM_SPECS = "godel,product,lukasiewicz,ordinal_sum[1/4..1/2:lukasiewicz]"


def _specs(text: str) -> list[qt.QuantaleSpec]:
    # commas also separate summands inside brackets, so split at top level only
    out, depth, cur = [], 0, ""
    for ch in text:
        depth += ch == "["
        depth -= ch == "]"
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [qt.parse_spec(s) for s in out if s.strip()]


class _Checks:
    def __init__(self):
        self.items: list[dict] = []

    def add(self, cid: str, passed: bool, detail: str = "", witness: Any = None) -> bool:
        entry = {"id": cid, "passed": bool(passed), "detail": detail}
        if witness is not None:
            entry["witness"] = witness
        self.items.append(entry)
        return passed

    def report(self, name: str, params: dict) -> dict:
        checks = sorted(self.items, key=lambda c: c["id"])
        return {"suite": name, "params": {k: str(v) for k, v in params.items()},
                "passed": all(c["passed"] for c in checks), "checks": checks}


def _fmt(v) -> str:
    return qt.format_value(v)


# -- "0 < r <= s (x) t  implies  t >= s -> r" ---------------------------------------------------

def archi_fc_scan(spec: qt.QuantaleSpec, denominator: int = 32) -> tuple[int, list]:
    """Count grid triples with ``0 < r <= s (x) t`` but ``t < s -> r``; the first few are returned."""
    grid = qt.unit_grid(denominator)
    bad, first = 0, []
    for s in grid:
        for t in grid:
            m = qt.mul(spec, s, t)
            for r in grid:
                if r == 0:
                    continue
                if r > m:
                    break
                if t < qt.imp(spec, s, r):
                    bad += 1
                    if len(first) < 5:
                        first.append((r, s, t))
    return bad, first


def suite_prop_archi_fc(specs: str = TNORM_SPECS, denominator: int = 32) -> _Checks:
    ch = _Checks()
    half = Fraction(1, 2)
    for spec in _specs(specs):
        arch = qt.is_archimedean(spec)
        bad, first = archi_fc_scan(spec, denominator)
        expect = "no violations" if arch else "violations"
        ch.add(f"{spec}: fact scan ({expect} expected)", (bad == 0) == arch,
               f"{bad} violating triples (r,s,t)",
               [[_fmt(v) for v in w] for w in first] or None)
        if spec.kind is qt.Kind.GODEL:
            ok = qt.mul(spec, half, half) >= half and half < qt.imp(spec, half, half)
            ch.add(f"{spec}: violation at r=s=t=1/2", ok, f"1/2 -> 1/2 = {_fmt(qt.imp(spec, half, half))}")
        probe_ok, _ = qt.archimedean_probe(spec)
        ch.add(f"{spec}: power probe agrees with idempotent criterion", probe_ok == arch,
               f"idempotents {qt.idempotents(spec)}")
    return ch


# -- property (R) on random categories ----------------------------------------------------------------

def suite_prop_4_6(specs: str = TNORM_SPECS, count: int = 500, size: int = 4, denominator: int = 8,
                   seed: int = 0) -> _Checks:
    ch = _Checks()
    for spec in _specs(specs):
        arch = qt.is_archimedean(spec)
        accepted = unsound = 0
        witness = None
        for i in range(count):
            C = gen_random_category(spec, size, denominator, seed + i)
            ok, _ = property_r_decide(C)
            accepted += ok
            if ok and property_r_grid(C).refuted:
                unsound += 1
                witness = witness or seed + i
        ch.add(f"{spec}: grid never refutes an accepted instance", unsound == 0,
               f"{accepted}/{count} accepted by the idempotent criterion", witness)
        if arch:
            ch.add(f"{spec}: every instance has property (R)", accepted == count, f"{accepted}/{count}")
    g = gen_two_point(qt.GODEL, Fraction(1, 2))
    dec, w = property_r_decide(g)
    grid = property_r_grid(g)
    ch.add("godel two-point q=1/2: rejected by both", not dec and grid.refuted,
           f"decide witness {w}; grid {grid.status.value} {grid.detail.get('reason', '')}")
    for spec in (qt.PRODUCT, qt.LUKASIEWICZ):
        g = gen_two_point(spec, Fraction(1, 2))
        ch.add(f"{spec} two-point q=1/2: accepted by both",
               property_r_decide(g)[0] and not property_r_grid(g).refuted)
    return ch


# -- the three worked examples ---------------------------------------------------------------------

def check_idempotent_example(ch: _Checks, N: int, prefix: str = "idempotent example") -> None:
    g = gen_idempotent_counterexample(qt.GODEL, Fraction(1, 2), N)
    C, fam = g.category, g.families["chain"]
    ch.add(f"{prefix}: category valid", validate_category(C, N).valid)
    ch.add(f"{prefix}: chain directed", directed_check(fam, N).certified)
    fc = forward_cauchy_check(C, fam.centers(), N)
    ch.add(f"{prefix}: centres not forward Cauchy, bound 1/2", fc.refuted and fc.witness == Fraction(1, 2),
           fc.detail.get("reason", ""))
    depth = N + 1
    centres = list(C.carrier(N)) + [Fraction(i, 16) for i in range(1, 8)]
    failures = []
    for x in centres:
        for r in qt.unit_grid(16):
            w = refute_join(C, fam, FormalBall(x, r), depth)
            if w is None or not w.recheck(fam, depth):
                failures.append((_fmt(x), _fmt(r)))
    ch.add(f"{prefix}: every candidate join refuted", not failures,
           f"{len(centres) * 17} candidates, depth {depth}", failures[:5] or None)


def check_sequence_space(ch: _Checks, N: int, prefix: str = "sequence space") -> None:
    g = gen_sequence_space(N)
    C, net = g.category, g.net
    ch.add(f"{prefix}: category valid", validate_category(C, N).valid)
    ch.add(f"{prefix}: net forward Cauchy", forward_cauchy_check(C, net, N).certified)
    nw = net_weight(C, net, N)
    vals_ok = nw.exact and nw.weight(qt.ONE) == Fraction(1, 3) and all(
        nw.weight(1 - Fraction(1, k)) == 1 - Fraction(1, k) for k in range(2, N + 1))
    ch.add(f"{prefix}: net weight exact, 1/3 at 1 and 1-1/k at 1-1/k", vals_ok, nw.note)
    ch.add(f"{prefix}: net weight is a weight", is_weight(C, nw.weight, N)[0])
    cands = colimit_candidates(C, nw.weight, N, 2 * N)
    ch.add(f"{prefix}: no colimit of the net weight", not cands, f"candidates {cands}")
    lims = yoneda_limits(C, net, N)
    ch.add(f"{prefix}: no Yoneda limit", lims == [], f"limits {lims}")
    radii = radius_grid(C.spec, 16, [f.r_sup for f in g.families.values()])
    probes = probe_grid(C, N, radii)
    for key, fam in sorted(g.families.items()):
        exp = g.notes["expected_joins"][key]
        v = join_certify(C, fam, exp, probes, 2 * N + 1)
        ch.add(f"{prefix}: {key} joins at {exp.show(C)}", v.status is Status.CERTIFIED, v.evidence[-1])


def check_quasimetric(ch: _Checks, N: int, prefix: str = "quasi-metric space") -> None:
    g = gen_quasimetric_space(N)
    C, net = g.category, g.net
    ch.add(f"{prefix}: category valid", validate_category(C, N).valid)
    ch.add(f"{prefix}: net forward Cauchy", forward_cauchy_check(C, net, N).certified)
    lims = yoneda_limits(C, net, N)
    ch.add(f"{prefix}: no Yoneda limit among carrier candidates", lims == [], f"limits {lims}")
    probes = probe_grid(C, N)
    depth = 2 * N + 1
    for key, fam in sorted(g.families.items()):
        exp = g.notes["expected_joins"][key]
        v = join_certify(C, fam, exp, probes, depth)
        ch.add(f"{prefix}: {key} joins at {exp.show(C)}", v.status is Status.CERTIFIED, v.evidence[-1])
    fam = g.families["chain"]
    survivors = [p.show(C) for p in probes
                 if p != FormalBall(qt.ZERO, qt.ZERO) and join_certify(C, fam, p, probes, depth).status is not Status.REFUTED]
    ch.add(f"{prefix}: every other probe refuted as join of the chain", not survivors,
           f"{len(probes) - 1} candidates", survivors[:5] or None)


def suite_cor_equiv(N: int = 60) -> _Checks:
    """Both failure modes of the equivalence under Goedel, and the Archimedean side."""
    ch = _Checks()
    check_idempotent_example(ch, N, "godel, idempotent example")
    check_sequence_space(ch, N, "godel, sequence space")
    check_quasimetric(ch, N, "lawvere, quasi-metric space")
    g = gen_sequence_space(N)
    fam = g.families["case2_1"]
    join, v = join_via_yoneda(g.category, fam, N)
    ch.add("godel, sequence space: Yoneda route to the join is unavailable", join is None and v.status is Status.INCONCLUSIVE,
           v.detail.get("reason", ""))
    return ch


def suite_example_idempotent(N: int = 200) -> _Checks:
    ch = _Checks()
    check_idempotent_example(ch, N)
    return ch


def suite_example_sequence_space(N: int = 200) -> _Checks:
    ch = _Checks()
    check_sequence_space(ch, N)
    return ch


def suite_example_quasimetric(N: int = 200) -> _Checks:
    ch = _Checks()
    check_quasimetric(ch, N)
    return ch


# -- forward Cauchy weights and B(phi) ------------------------------------------------------------

def suite_lemma_bphi(specs: str = TNORM_SPECS, count: int = 100, size: int = 3, denominator: int = 8,
                     seed: int = 0) -> _Checks:
    ch = _Checks()
    spec_list = _specs(specs)
    fails = []
    total = 0
    for i in range(count):
        spec = spec_list[i % len(spec_list)]
        C = gen_random_category(spec, size, denominator, seed + i)
        for a in C.carrier():
            phi = representable(C, a)
            total += 1
            if not is_forward_cauchy_weight(C, phi):
                fails.append((seed + i, a, "not forward Cauchy"))
                continue
            b = bphi(C, phi)
            if not b.directed.certified:
                fails.append((seed + i, a, "not directed"))
            elif not b.matches:
                fails.append((seed + i, a, "reconstruction differs"))
    ch.add("representable weights: forward Cauchy, B(phi) directed, reconstruction exact", not fails,
           f"{total} weights on {count} categories", [list(map(str, f)) for f in fails[:5]] or None)
    g = gen_two_point(qt.GODEL, Fraction(1, 2))
    one = Weight(g, lambda x: qt.ONE, "const 1")
    ch.add("godel two-point, constant 1: not forward Cauchy", not is_forward_cauchy_weight(g, one))
    return ch


def exploratory_finite_yoneda(spec: qt.QuantaleSpec, C, denominator: int = 4) -> tuple[int, list]:
    """Enumerate grid weights on a small finite category; return (#forward Cauchy, those without colimit)."""
    elems = C.carrier()
    grid = qt.unit_grid(denominator)
    n_fc, missing = 0, []
    for vals in itertools.product(grid, repeat=len(elems)):
        phi = Weight.from_mapping(C, dict(zip(elems, vals)))
        if not is_weight(C, phi)[0] or not is_forward_cauchy_weight(C, phi):
            continue
        n_fc += 1
        if not colimit_candidates(C, phi):
            missing.append(vals)
    return n_fc, missing


def suite_finite_yoneda(specs: str = TNORM_SPECS, count: int = 40, size: int = 3, denominator: int = 4,
                        seed: int = 0) -> _Checks:
    """Exploratory: do forward Cauchy grid weights on small finite categories have colimits?"""
    ch = _Checks()
    for spec in _specs(specs):
        n_fc, missing = 0, []
        for i in range(count):
            C = gen_random_category(spec, size, denominator, seed + i)
            k, m = exploratory_finite_yoneda(spec, C, denominator)
            n_fc += k
            missing += [(seed + i, [_fmt(v) for v in vals]) for vals in m]
        ch.add(f"{spec}: forward Cauchy grid weights have colimits", not missing,
               f"{n_fc} forward Cauchy weights on {count} categories", missing[:5] or None)
    return ch


# -- the main lemma ---------------------------------------------------------------------------------

def suite_mainlemma(count: int = 100, size: int = 3, denominator: int = 8, seed: int = 0, N: int = 60) -> _Checks:
    ch = _Checks()
    defects = []
    for i in range(count):
        C = gen_random_category(qt.PRODUCT, size, denominator, seed + i)
        a = C.carrier()[i % size]
        fam = DirectedFamily(C, chain=lambda n, a=a: FormalBall(a, Fraction(n, n + 1)), start=1, r_sup=qt.ONE,
                             stable_from=1, name=f"constant at {a}")
        rep = mainlemma_suite(C, fam, a, 10)
        if rep.forward != "holds" or rep.backward != "holds":
            defects.append((seed + i, rep.forward, rep.backward))
    ch.add("product: both directions on eventually constant chains", not defects,
           f"{count} instances", [list(map(str, d)) for d in defects[:5]] or None)
    g = gen_sequence_space(N)
    C = g.category
    fam = g.families["case2_1"]
    has_r, w = property_r_decide(C, N)
    ch.add("godel sequence space: property (R) fails", not has_r, f"witness {w and tuple(C.label(v) for v in w)}")
    reports = [mainlemma_suite(C, fam, a, N) for a in C.carrier(N)[:12]]
    bad = [r for r in reports if r.defects or r.backward != "skipped"]
    joins = [C.label(r.candidate) for r in reports if r.join is Status.CERTIFIED]
    ch.add("godel sequence space: only (1)=>(2) asserted, no defects", not bad,
           f"join certified at {joins}; Yoneda limit at none")
    return ch


# -- registry ---------------------------------------------------------------------------------------

SUITES: dict[str, Callable[..., _Checks]] = {
    "suite_prop_archi_fc": suite_prop_archi_fc,
    "suite_prop_4_6": suite_prop_4_6,
    "suite_cor_equiv": suite_cor_equiv,
    "suite_lemma_bphi": suite_lemma_bphi,
    "suite_mainlemma": suite_mainlemma,
    "suite_finite_yoneda": suite_finite_yoneda,
    "suite_example_idempotent": suite_example_idempotent,
    "suite_example_sequence_space": suite_example_sequence_space,
    "suite_example_quasimetric": suite_example_quasimetric,
}


def run_suite(name: str, params: dict | None = None) -> dict:
    """Run a named suite; ``params`` values may be strings and are coerced to the defaults' types."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    fn = SUITES[name]
    defaults = {k: p.default for k, p in inspect.signature(fn).parameters.items()}
    kwargs = {}
    for k, v in (params or {}).items():
        if k not in defaults:
            raise KeyError(f"suite {name!r} has no parameter {k!r}; known: {', '.join(defaults)}")
        kwargs[k] = type(defaults[k])(v)
    used = {**defaults, **kwargs}
    return fn(**kwargs).report(name, used)
