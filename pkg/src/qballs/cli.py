"""Command-line front end.

Exit status: 0 when the checks pass or the query is true, 1 on a refutation
or a false answer, 2 when the verdict is inconclusive, 3 on input errors.
"""
from __future__ import annotations

import argparse
import inspect
import json
import sys
from typing import Optional

from . import quantale as qt
from .corpus import SUITES, run_suite
from .document import DocumentError, Workspace, parse_ball, read_document
from .formal_balls import (ball_leq, directed_check, join_certify, join_via_yoneda, probe_grid,
                           property_r_decide, property_r_grid, radius_grid, refute_join)
from .qcategory import (Status, colimit_candidates, forward_cauchy_check, is_forward_cauchy_weight, is_weight,
                        is_yoneda_limit, validate_category, yoneda_limits)

OK, FALSE, INCONCLUSIVE, INPUT_ERROR = 0, 1, 2, 3


class Result:
    def __init__(self, command: str):
        self.command = command
        self.lines: list[str] = []
        self.data: dict = {}
        self.code = OK

    def say(self, line: str) -> None:
        self.lines.append(line)

    def finish(self, code: int, **data) -> "Result":
        self.code = code
        self.data.update(data)
        return self

    def as_dict(self) -> dict:
        return {"command": self.command, "exit_code": self.code, "lines": self.lines, **self.data}


def _fmt(v) -> str:
    return qt.format_value(v)


def _cutoff(ws: Workspace, args) -> Optional[int]:
    return args.cutoff if args.cutoff is not None else getattr(ws.category, "default_cutoff", None)


def _element(ws: Workspace, label: str):
    try:
        return ws.category.element(label)
    except KeyError as exc:
        raise DocumentError(exc.args[0]) from None


def _status_code(status: Status) -> int:
    return status.exit_code


# -- commands ------------------------------------------------------------------------------------------

def cmd_validate(args, res: Result) -> Result:
    ws = read_document(args.file)
    rep = validate_category(ws.category, _cutoff(ws, args))
    res.say(f"{len(rep.elements)} elements checked")
    for v in rep.violations:
        res.say(str(v))
    res.say("valid" if rep.valid else f"invalid: {len(rep.violations)} violation(s)")
    return res.finish(OK if rep.valid else FALSE, valid=rep.valid, violations=[str(v) for v in rep.violations])


def adjunction_violations(spec: qt.QuantaleSpec, denominator: int) -> list:
    grid = qt.carrier_grid(spec, denominator)
    bad = []
    for p in grid:
        for r in grid:
            i = qt.imp(spec, p, r)
            for q in grid:
                if qt.leq(spec, qt.mul(spec, p, q), r) != qt.leq(spec, q, i):
                    bad.append((p, q, r))
    return bad


def cmd_quantale_analyze(args, res: Result) -> Result:
    try:
        spec = qt.parse_spec(args.spec)
    except ValueError as exc:
        raise DocumentError(f"quantale: {exc}") from None
    idem = qt.idempotents(spec)
    res.say(f"quantale: {spec}")
    data: dict = {"idempotents": str(idem)}
    if spec.is_tnorm:
        arch = qt.is_archimedean(spec)
        probe, witness = qt.archimedean_probe(spec)
        res.say(f"Archimedean: {'yes' if arch else 'no'}; idempotents: {idem}")
        res.say("power probe: " + ("every grid power drops below every grid value" if probe else
                                    f"{_fmt(witness[0])}^n stays >= {_fmt(witness[1])} for n <= 64"))
        data["archimedean"] = arch
    else:
        res.say(f"Archimedean: n/a (not a t-norm); idempotents: {idem}")
    den = args.grid_denominator or (8 if spec.is_lawvere else 32)
    bad = adjunction_violations(spec, den)
    res.say(f"adjunction: {len(bad)} violation(s) on the denominator-{den} grid")
    for p, q, r in bad[:5]:
        res.say(f"  p={_fmt(p)} q={_fmt(q)} r={_fmt(r)}")
    return res.finish(OK if not bad else FALSE, adjunction_violations=len(bad), **data)


def cmd_ball_leq(args, res: Result) -> Result:
    ws = read_document(args.file)
    C = ws.category
    b1 = parse_ball(C, f"{args.x},{args.r}", "first ball")
    b2 = parse_ball(C, f"{args.y},{args.s}", "second ball")
    ok = ball_leq(C, b1, b2)
    rhs = qt.mul(C.spec, b2.radius, C.hom(b1.center, b2.center))
    res.say(f"{b1.show(C)} <= {b2.show(C)}: {'true' if ok else 'false'} "
            f"(radius {_fmt(b1.radius)} vs {_fmt(rhs)})")
    return res.finish(OK if ok else FALSE, holds=ok)


def cmd_weight(args, res: Result) -> Result:
    ws = read_document(args.file)
    C = ws.category
    phi = ws.get("weights", args.weight)
    cutoff = _cutoff(ws, args)
    if args.action == "check":
        ok, viol = is_weight(C, phi, cutoff)
        res.say(f"weight inequality: {'holds' if ok else 'fails'}")
        for x, y, lhs, rhs in viol[:10]:
            res.say(f"  at ({x},{y}): {_fmt(lhs)} </= {_fmt(rhs)}")
        data = {"is_weight": ok}
        if ok and C.is_finite and C.spec.is_tnorm:
            fc = is_forward_cauchy_weight(C, phi)
            res.say(f"forward Cauchy: {'yes' if fc else 'no'}")
            data["forward_cauchy"] = fc
        return res.finish(OK if ok else FALSE, **data)
    depth = None if C.is_finite else 2 * cutoff
    cands = colimit_candidates(C, phi, cutoff, depth)
    labels = [C.label(a) for a in cands]
    res.say(f"colimits: {', '.join(labels) if labels else 'none'}")
    if cands:
        return res.finish(OK, colimits=labels)
    if C.is_finite:
        return res.finish(FALSE, colimits=[])
    res.say(f"(only the truncation at {cutoff} was searched)")
    return res.finish(INCONCLUSIVE, colimits=[])


def cmd_net(args, res: Result) -> Result:
    ws = read_document(args.file)
    C = ws.category
    net = ws.get("nets", args.net)
    cutoff = _cutoff(ws, args) or len(net.terms) + 1
    if args.action == "cauchy":
        v = forward_cauchy_check(C, net, cutoff)
        res.say(f"forward Cauchy: {v.status.value} ({v.detail.get('reason', '')})")
        return res.finish(_status_code(v.status), status=v.status.value,
                          detail={k: str(x) for k, x in v.detail.items()})
    if args.candidate is not None:
        a = _element(ws, args.candidate)
        v = is_yoneda_limit(C, net, a, cutoff)
        line = f"{C.label(a)} is a Yoneda limit: {v.status.value}"
        if v.refuted:
            line += f" (at probe {v.detail['probe']}: {v.detail['lhs']} != {v.detail['rhs']})"
        res.say(line)
        return res.finish(_status_code(v.status), status=v.status.value)
    lims = yoneda_limits(C, net, cutoff)
    if lims is None:
        res.say("Yoneda limits: inconclusive (no tail declaration)")
        return res.finish(INCONCLUSIVE, limits=None)
    labels = [C.label(a) for a in lims]
    res.say(f"Yoneda limits: {', '.join(labels) if labels else 'none among carrier candidates'}")
    return res.finish(OK if labels else FALSE, limits=labels)


def cmd_family(args, res: Result) -> Result:
    ws = read_document(args.file)
    C = ws.category
    fam = ws.get("families", args.family)
    cutoff = _cutoff(ws, args) or 50
    depth = 2 * cutoff + 1
    if args.action == "directed":
        v = directed_check(fam, cutoff)
        res.say(f"directed: {v.status.value}" + (f" ({v.detail['reason']})" if v.refuted else ""))
        return res.finish(_status_code(v.status), status=v.status.value)
    cand = parse_ball(C, args.candidate, "--candidate") if args.candidate else None
    if args.action == "refute":
        if cand is None:
            raise DocumentError("family refute needs --candidate")
        w = refute_join(C, fam, cand, depth)
        if w is None:
            res.say(f"no member up to index {depth} escapes {cand.show(C)}")
            return res.finish(INCONCLUSIVE, witness=None)
        res.say(f"refuted: {w.describe(C)}")
        return res.finish(FALSE, witness=w.index)
    if cand is None:
        join, v = join_via_yoneda(C, fam, cutoff)
        if join is None:
            res.say(f"join via Yoneda limit: {v.status.value} ({v.detail.get('reason', '')})")
            return res.finish(INCONCLUSIVE, join=None)
        res.say(f"join via Yoneda limit: {join.show(C)}")
        return res.finish(OK, join=join.show(C))
    den = args.grid_denominator or 16
    extra = [cand.radius] + ([fam.r_sup] if fam.r_sup is not None else [b.radius for b in fam.balls])
    probes = probe_grid(C, cutoff, radius_grid(C.spec, den, extra))
    v = join_certify(C, fam, cand, probes, depth)
    for line in v.evidence:
        res.say(line)
    res.say(f"join {cand.show(C)}: {v.status.value}")
    return res.finish(_status_code(v.status), status=v.status.value)


def cmd_property_r(args, res: Result) -> Result:
    ws = read_document(args.file)
    C = ws.category
    cutoff = _cutoff(ws, args)
    try:
        if args.mode == "decide":
            ok, w = property_r_decide(C, cutoff)
            if ok:
                res.say("property (R): holds")
                return res.finish(OK, holds=True)
            pair = [C.label(w[0]), C.label(w[1])]
            res.say(f"property (R): fails; witness ({pair[0]},{pair[1]}) with hom {_fmt(C.hom(*w))}")
            return res.finish(FALSE, holds=False, witness=pair)
        v = property_r_grid(C, cutoff=cutoff)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    if v.refuted:
        d = v.detail
        res.say(f"property (R): refuted at s={d['s']}, t={d['t']}, pair ({d['pair'][0]},{d['pair'][1]}): {d['reason']}")
        return res.finish(FALSE, status=v.status.value, witness=list(d["pair"]))
    res.say("property (R): no refutation on the grid (not a proof)")
    return res.finish(OK, status=v.status.value)


def cmd_corpus(args, res: Result) -> Result:
    params = {}
    for item in args.param or []:
        if "=" not in item:
            raise DocumentError(f"--param expects k=v, got {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = v.strip()
    if args.seed is not None and "seed" not in params and args.suite in SUITES:
        if "seed" in inspect.signature(SUITES[args.suite]).parameters:
            params["seed"] = str(args.seed)
    if args.cutoff is not None and "N" not in params and args.suite in SUITES:
        if "N" in inspect.signature(SUITES[args.suite]).parameters:
            params["N"] = str(args.cutoff)
    try:
        rep = run_suite(args.suite, params)
    except (KeyError, ValueError) as exc:
        raise DocumentError(exc.args[0] if exc.args else str(exc)) from None
    for c in rep["checks"]:
        res.say(f"[{'pass' if c['passed'] else 'FAIL'}] {c['id']}" + (f": {c['detail']}" if c["detail"] else ""))
        if not c["passed"] and "witness" in c:
            res.say(f"    witness: {c['witness']}")
    n_pass = sum(c["passed"] for c in rep["checks"])
    res.say(f"{rep['suite']}: {n_pass}/{len(rep['checks'])} checks passed")
    return res.finish(OK if rep["passed"] else FALSE, report=rep)


# -- parser --------------------------------------------------------------------------------------------

def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--seed", type=int, default=d, help="seed for randomised suites")
    p.add_argument("--cutoff", type=int, default=d, help="truncation for generated carriers")
    p.add_argument("--grid-denominator", type=int, default=d, help="denominator of radius / value grids")
    p.add_argument("--report", default=d, help="write a JSON report to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qballs", description="Quantale-enriched categories and formal balls.")
    _add_globals(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the category axioms")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("quantale", parents=[common], help="analyse a quantale")
    qs = p.add_subparsers(dest="action", required=True)
    pa = qs.add_parser("analyze", parents=[common])
    pa.add_argument("spec")
    pa.set_defaults(func=cmd_quantale_analyze)

    p = sub.add_parser("ball", parents=[common], help="formal-ball order")
    bs = p.add_subparsers(dest="action", required=True)
    pb = bs.add_parser("leq", parents=[common])
    for name in ("file", "x", "r", "y", "s"):
        pb.add_argument(name)
    pb.set_defaults(func=cmd_ball_leq)

    p = sub.add_parser("weight", parents=[common], help="weights and colimits")
    p.add_argument("action", choices=["check", "colimit"])
    p.add_argument("file")
    p.add_argument("--weight", required=True)
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("net", parents=[common], help="forward Cauchy nets and Yoneda limits")
    p.add_argument("action", choices=["cauchy", "limit"])
    p.add_argument("file")
    p.add_argument("--net", required=True)
    p.add_argument("--candidate")
    p.set_defaults(func=cmd_net)

    p = sub.add_parser("family", parents=[common], help="directed families of formal balls")
    p.add_argument("action", choices=["directed", "join", "refute"])
    p.add_argument("file")
    p.add_argument("--family", required=True)
    p.add_argument("--candidate", help='a ball "(a,r)"')
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("property-r", parents=[common], help="property (R)")
    p.add_argument("file")
    p.add_argument("--mode", choices=["decide", "grid"], default="decide")
    p.set_defaults(func=cmd_property_r)

    p = sub.add_parser("corpus", parents=[common], help="built-in suites")
    cs = p.add_subparsers(dest="action", required=True)
    pr = cs.add_parser("run", parents=[common])
    pr.add_argument("suite", help=", ".join(sorted(SUITES)))
    pr.add_argument("--param", action="append", metavar="K=V")
    pr.set_defaults(func=cmd_corpus)
    return parser


def run(argv: Optional[list[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    res = Result(args.command + (f" {args.action}" if getattr(args, "action", None) else ""))
    try:
        args.func(args, res)
    except ValueError as exc:   # DocumentError included
        res.finish(INPUT_ERROR, error=str(exc))
        print(f"error: {exc}", file=sys.stderr)
    for line in res.lines:
        print(line, file=out)
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(res.as_dict(), fh, indent=2, sort_keys=True, default=str)
            fh.write("\n")
    return res.code


def main() -> None:
    sys.exit(run())
