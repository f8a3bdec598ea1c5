"""JSON workspace documents.

A finite document::

    {"quantale": "godel",
     "carrier": ["x", "y"],
     "hom": [["1", "1/2"], ["1/2", "1"]],
     "weights": {"phi": {"x": "1", "y": "1/2"}},
     "nets": {"s": ["x", "y"]},
     "families": {"F": [["x", "1/2"], ["y", "1"]],
                  "G": {"generator": "constant_chain", "params": {"center": "y"}, "r_sup": "1"}}}

Values are strings (``p/q`` or ``inf``) so that nothing passes through
binary floats.  Explicit nets are eventually constant at their last term.

A generated document replaces ``quantale``/``carrier``/``hom`` by
``{"generator": name, "params": {...}}``; its standard net is available as
``default``, the net weight as ``net_weight`` and the built-in families
under their own names.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from . import quantale as qt
from .corpus.generators import Bundle, generated_bundle
from .formal_balls import DirectedFamily, FormalBall
from .qcategory import FiniteQCategory, Net, QCategory, Weight


class DocumentError(ValueError):
    """A malformed document; the message names the offending location."""


@dataclass
class Workspace:
    category: QCategory
    weights: dict = field(default_factory=dict)
    nets: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    bundle: Optional[Bundle] = None

    def get(self, section: str, name: str):
        table = getattr(self, section)
        if name not in table:
            known = ", ".join(sorted(table)) or "none"
            raise DocumentError(f"{section}: no entry {name!r} (known: {known})")
        return table[name]


def _value(spec, text, where: str):
    if not isinstance(text, str):
        raise DocumentError(f"{where}: values must be strings like \"1/2\" or \"inf\", got {text!r}")
    try:
        return qt.parse_value(spec, text)
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def _element(C: QCategory, label, where: str):
    try:
        return C.element(str(label))
    except KeyError as exc:
        raise DocumentError(f"{where}: {exc.args[0]}") from None


def parse_ball(C: QCategory, text: str, where: str = "ball") -> FormalBall:
    """Parse ``"(a,r)"`` (parentheses optional)."""
    inner = text.strip()
    if inner.startswith("(") and inner.endswith(")"):
        inner = inner[1:-1]
    parts = inner.rsplit(",", 1)
    if len(parts) != 2:
        raise DocumentError(f"{where}: expected \"(centre,radius)\", got {text!r}")
    return FormalBall(_element(C, parts[0].strip(), where), _value(C.spec, parts[1].strip(), where))


def _finite_category(doc: dict) -> FiniteQCategory:
    for key in ("quantale", "carrier", "hom"):
        if key not in doc:
            raise DocumentError(f"missing field {key!r}")
    try:
        spec = qt.parse_spec(doc["quantale"])
    except (ValueError, TypeError) as exc:
        raise DocumentError(f"quantale: {exc}") from None
    carrier = doc["carrier"]
    if not isinstance(carrier, list) or not carrier or not all(isinstance(x, str) for x in carrier):
        raise DocumentError("carrier: expected a nonempty list of string labels")
    if len(set(carrier)) != len(carrier):
        raise DocumentError("carrier: labels must be distinct")
    hom = doc["hom"]
    n = len(carrier)
    if not isinstance(hom, list) or len(hom) != n:
        raise DocumentError(f"hom: expected {n} rows")
    rows = []
    for i, row in enumerate(hom):
        if not isinstance(row, list) or len(row) != n:
            raise DocumentError(f"hom[{i}]: expected {n} entries")
        rows.append([_value(spec, v, f"hom[{i}][{j}]") for j, v in enumerate(row)])
    return FiniteQCategory(spec, carrier, rows)


def _family(C: QCategory, name: str, entry, bundle: Optional[Bundle]) -> DirectedFamily:
    where = f"families.{name}"
    if isinstance(entry, list):
        if not entry:
            raise DocumentError(f"{where}: empty family")
        balls = []
        for i, b in enumerate(entry):
            if not isinstance(b, list) or len(b) != 2:
                raise DocumentError(f"{where}[{i}]: expected [centre, radius]")
            balls.append(FormalBall(_element(C, b[0], f"{where}[{i}]"), _value(C.spec, b[1], f"{where}[{i}]")))
        return DirectedFamily(C, balls=tuple(balls), name=name)
    if not isinstance(entry, dict) or "generator" not in entry:
        raise DocumentError(f"{where}: expected a ball list or {{generator, params, r_sup}}")
    gen = entry["generator"]
    params = entry.get("params", {})
    r_sup = _value(C.spec, entry["r_sup"], f"{where}.r_sup") if "r_sup" in entry else None
    if gen == "constant_chain":
        if "center" not in params or r_sup is None:
            raise DocumentError(f"{where}: constant_chain needs params.center and r_sup")
        a = _element(C, params["center"], f"{where}.params.center")
        if C.spec.kind is qt.Kind.BOOLEAN:
            step = lambda n: r_sup
        elif C.spec.is_lawvere:
            # radii r_sup + 1/n decrease to r_sup in the numeric order
            step = (lambda n: r_sup + Fraction(1, n)) if r_sup != qt.INF else (lambda n: qt.INF)
        else:
            step = lambda n: r_sup * Fraction(n, n + 1)
        return DirectedFamily(C, chain=lambda n: FormalBall(a, step(n)), start=1, r_sup=r_sup, stable_from=1,
                              name=name)
    if gen == "builtin":
        if bundle is None:
            raise DocumentError(f"{where}: builtin families need a generated category")
        key = params.get("name", name)
        if key not in bundle.families:
            raise DocumentError(f"{where}: no builtin family {key!r} (known: {', '.join(sorted(bundle.families))})")
        fam = bundle.families[key]
        if r_sup is not None and r_sup != fam.r_sup:
            raise DocumentError(f"{where}: declared r_sup {qt.format_value(r_sup)} differs from "
                                f"the builtin {qt.format_value(fam.r_sup)}")
        return fam
    raise DocumentError(f"{where}: unknown family generator {gen!r}")


def load_document(doc: dict) -> Workspace:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    bundle = None
    if "generator" in doc:
        try:
            bundle = generated_bundle(doc["generator"], doc.get("params", {}))
        except (KeyError, ValueError) as exc:
            raise DocumentError(f"generator: {exc.args[0] if exc.args else exc}") from None
        C = bundle.category
    else:
        C = _finite_category(doc)
    ws = Workspace(C, bundle=bundle)
    if bundle is not None and bundle.net is not None:
        ws.nets["default"] = bundle.net
        tails = bundle.net.tails
        if tails is not None and tails.weight_limit is not None:
            ws.weights["net_weight"] = Weight(C, tails.weight_limit, "net_weight")
        ws.families.update(bundle.families)
    for name, vals in (doc.get("weights") or {}).items():
        if not isinstance(vals, dict):
            raise DocumentError(f"weights.{name}: expected a mapping label -> value")
        mapping = {_element(C, k, f"weights.{name}"): _value(C.spec, v, f"weights.{name}.{k}") for k, v in vals.items()}
        try:
            ws.weights[name] = Weight.from_mapping(C, mapping, name)
        except ValueError as exc:
            raise DocumentError(f"weights.{name}: {exc}") from None
    for name, terms in (doc.get("nets") or {}).items():
        if not isinstance(terms, list) or not terms:
            raise DocumentError(f"nets.{name}: expected a nonempty label list")
        ws.nets[name] = Net(C, terms=tuple(_element(C, t, f"nets.{name}[{i}]") for i, t in enumerate(terms)), name=name)
    for name, entry in (doc.get("families") or {}).items():
        ws.families[name] = _family(C, name, entry, bundle)
    return ws


def read_document(path) -> Workspace:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return load_document(doc)


def dump_category(C: FiniteQCategory) -> dict:
    """Serialise a finite category; ``load_document`` inverts this exactly."""
    return {
        "quantale": str(C.spec),
        "carrier": [str(x) for x in C.labels],
        "hom": [[qt.format_value(v) for v in row] for row in C.rows],
    }


def dump_workspace(C: FiniteQCategory, weights: Optional[dict] = None, nets: Optional[dict] = None,
                   families: Optional[dict] = None) -> dict:
    doc: dict[str, Any] = dump_category(C)
    if weights:
        doc["weights"] = {k: {str(x): qt.format_value(w(x)) for x in C.carrier()} for k, w in weights.items()}
    if nets:
        doc["nets"] = {k: [str(x) for x in n.terms] for k, n in nets.items()}
    if families:
        out = {}
        for k, f in families.items():
            if f.is_chain:
                raise ValueError(f"family {k!r} is a generator chain; only explicit lists serialise")
            out[k] = [[str(b.center), qt.format_value(b.radius)] for b in f.balls]
        doc["families"] = out
    return doc
