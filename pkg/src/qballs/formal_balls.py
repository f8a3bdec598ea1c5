"""The formal-ball preorder of a Q-category.

A formal ball is a pair ``(x, r)``; ``(x, r) <= (y, s)`` iff
``r <= s (x) hom(x, y)``.  Joins of infinite directed families cannot be
verified against all of **B**X, so join verdicts are issued against explicit
probe sets and refutations carry witnesses that can be re-checked.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, NamedTuple, Optional, Sequence

import numpy as np

from . import quantale as qt
from .qcategory import (Net, NetTails, QCategory, Status, Verdict, Weight, forward_cauchy_check,
                        is_forward_cauchy_weight, is_yoneda_limit, yoneda_limits)


class FormalBall(NamedTuple):
    center: Any
    radius: Any

    def show(self, C: Optional[QCategory] = None) -> str:
        c = C.label(self.center) if C is not None else str(self.center)
        return f"({c},{qt.format_value(self.radius)})"


def ball_leq(C: QCategory, b1: FormalBall, b2: FormalBall) -> bool:
    spec = C.spec
    return qt.leq(spec, b1.radius, qt.mul(spec, b2.radius, C.hom(b1.center, b2.center)))


def _ball_sides(C: QCategory, b1: FormalBall, b2: FormalBall):
    return b1.radius, qt.mul(C.spec, b2.radius, C.hom(b1.center, b2.center))


def radius_grid(spec: qt.QuantaleSpec, denominator: int = 16, extra: Sequence = ()) -> list:
    """Default radii: ``i/denominator`` (plus ``inf`` on Lawvere) and instance values."""
    vals = set(qt.unit_grid(denominator))
    if spec.is_lawvere:
        vals.add(qt.INF)
    elif spec.kind is qt.Kind.BOOLEAN:
        vals = {qt.ZERO, qt.ONE}
    vals.update(extra)
    return sorted(vals, key=lambda v: qt.order_key(spec, v))


# -- directed families --------------------------------------------------------------------------

@dataclass(frozen=True)
class DirectedFamily:
    """A finitely described subset of **B**X.

    Either an explicit tuple of ``balls`` or a ``chain`` generator
    ``n -> (x_n, r_n)`` for ``n >= start``.  Chains declare ``r_sup``, the
    join of their radii; ``stable_from`` declares that centres are constant
    from that index on.  ``tails`` are passed to the centre net.
    """

    category: QCategory
    balls: tuple = ()
    chain: Optional[Callable[[int], FormalBall]] = None
    start: int = 1
    r_sup: Any = None
    stable_from: Optional[int] = None
    tails: Optional[NetTails] = None
    name: str = ""

    def __post_init__(self):
        if not self.balls and self.chain is None:
            raise ValueError("empty family")
        if self.chain is not None and self.r_sup is None:
            raise ValueError("a chain must declare r_sup")

    @property
    def is_chain(self) -> bool:
        return self.chain is not None

    def ball(self, n: int) -> FormalBall:
        if self.chain is not None:
            return self.chain(n)
        return self.balls[n]

    def indices(self, depth: int) -> range:
        if self.chain is None:
            return range(len(self.balls))
        return range(self.start, max(depth, self.start) + 1)

    def prefix(self, depth: int) -> tuple[tuple[int, FormalBall], ...]:
        return _prefix(self, depth)

    def centers(self) -> Net:
        if self.chain is None:
            raise ValueError("only chains have a centre net")
        return Net(self.category, generator=lambda n: self.chain(n).center, start=self.start,
                   stable_from=self.stable_from, tails=self.tails, name=f"centres of {self.name}")


@functools.lru_cache(maxsize=256)
def _prefix(F: DirectedFamily, depth: int) -> tuple:
    return tuple((n, F.ball(n)) for n in F.indices(depth))


def directed_check(F: DirectedFamily, depth: int = 50) -> Verdict:
    """Chains: monotonicity of the first ``depth`` balls.  Lists: pairwise upper bounds."""
    C = F.category
    spec = C.spec
    if F.is_chain:
        pre = F.prefix(depth)
        for n, b in pre:
            if not qt.leq(spec, b.radius, F.r_sup):
                raise ValueError(f"radius of ball {n} exceeds the declared r_sup")
        for (n, b), (m, c) in zip(pre, pre[1:]):
            if not ball_leq(C, b, c):
                return Verdict(Status.REFUTED, witness=(n, m),
                               detail={"reason": f"ball {n} is not below ball {m}"})
        return Verdict(Status.CERTIFIED, detail={"checked": len(pre)})
    balls = list(F.balls)
    le = _leq_matrix(C, balls)
    common = (le.astype(np.int64) @ le.T.astype(np.int64)) > 0
    bad = np.argwhere(~common)
    if len(bad):
        i, j = (int(v) for v in bad[0])
        return Verdict(Status.REFUTED, witness=(i, j),
                       detail={"reason": f"{balls[i].show(C)} and {balls[j].show(C)} have no upper bound in the family"})
    return Verdict(Status.CERTIFIED, detail={"checked": len(balls)})


def _leq_matrix(C: QCategory, balls: Sequence[FormalBall]) -> np.ndarray:
    return np.array([[ball_leq(C, b, c) for c in balls] for b in balls], dtype=bool)


@functools.lru_cache(maxsize=256)
def _chain_is_monotone(F: DirectedFamily, depth: int) -> bool:
    return directed_check(F, depth).certified


def is_upper_bound(F: DirectedFamily, ball: FormalBall, depth: int) -> bool:
    """Is ``ball`` above every member (explicit lists) or the depth-``depth`` prefix (chains)?

    For a chain whose centres are declared constant from ``stable_from`` the
    test is exact: the tail lies below ``ball`` iff ``r_sup`` does, since the
    radii join to ``r_sup``.  For other chains the prefix is monotone, so its
    last ball dominates it.
    """
    C = F.category
    if not F.is_chain:
        return all(ball_leq(C, b, ball) for b in F.balls)
    s = F.stable_from
    if s is not None:
        head = all(ball_leq(C, F.ball(n), ball) for n in range(F.start, s))
        a = F.ball(s).center
        return head and ball_leq(C, FormalBall(a, F.r_sup), ball)
    if _chain_is_monotone(F, depth):
        return ball_leq(C, F.ball(max(depth, F.start)), ball)
    return all(ball_leq(C, b, ball) for _, b in F.prefix(depth))


# -- refutation witnesses and join verdicts ------------------------------------------------------

@dataclass(frozen=True)
class RefutationWitness:
    """Why a candidate is not a join.

    ``kind == "member"``: family member ``index`` is not below the candidate.
    ``kind == "upper_bound"``: ``probe`` is an upper bound the candidate is not below.
    """

    kind: str
    candidate: FormalBall
    lhs: Any
    rhs: Any
    index: Optional[int] = None
    probe: Optional[FormalBall] = None

    def recheck(self, F: DirectedFamily, depth: int) -> bool:
        """Re-verify the witness from scratch."""
        C = F.category
        if self.kind == "member":
            b = F.ball(self.index)
            return not ball_leq(C, b, self.candidate)
        return is_upper_bound(F, self.probe, depth) and not ball_leq(C, self.candidate, self.probe)

    def describe(self, C: QCategory) -> str:
        if self.kind == "member":
            return (f"member {self.index} is not below {self.candidate.show(C)}: "
                    f"{qt.format_value(self.lhs)} </= {qt.format_value(self.rhs)}")
        return (f"{self.candidate.show(C)} is not below upper bound {self.probe.show(C)}: "
                f"{qt.format_value(self.lhs)} </= {qt.format_value(self.rhs)}")


@dataclass
class JoinVerdict:
    status: Status
    candidate: FormalBall
    witness: Optional[RefutationWitness] = None
    evidence: list = field(default_factory=list)


def refute_join(C: QCategory, F: DirectedFamily, candidate: FormalBall, depth: int = 50) -> Optional[RefutationWitness]:
    """First member index ``m <= depth`` not below ``candidate``, or ``None``."""
    for n, b in F.prefix(depth):
        if not ball_leq(C, b, candidate):
            lhs, rhs = _ball_sides(C, b, candidate)
            return RefutationWitness("member", candidate, lhs, rhs, index=n)
    return None


def join_certify(C: QCategory, F: DirectedFamily, candidate: FormalBall, probes: Sequence[FormalBall],
                 depth: int = 50) -> JoinVerdict:
    """Certify ``candidate`` as a join against ``probes``, or refute it with a witness.

    ``depth`` should exceed the centres used by the probes; otherwise a probe
    can bound a short prefix without bounding the family.
    """
    evidence = []
    w = refute_join(C, F, candidate, depth)
    if w is not None:
        return JoinVerdict(Status.REFUTED, candidate, w, [w.describe(C)])
    evidence.append(f"{candidate.show(C)} bounds the prefix of depth {depth}")
    n_upper = 0
    for p in probes:
        if not is_upper_bound(F, p, depth):
            continue
        n_upper += 1
        if not ball_leq(C, candidate, p):
            lhs, rhs = _ball_sides(C, candidate, p)
            w = RefutationWitness("upper_bound", candidate, lhs, rhs, probe=p)
            evidence.append(w.describe(C))
            return JoinVerdict(Status.REFUTED, candidate, w, evidence)
    evidence.append(f"below all {n_upper} upper bounds among {len(probes)} probes")
    return JoinVerdict(Status.CERTIFIED, candidate, None, evidence)


def probe_grid(C: QCategory, cutoff: Optional[int] = None, radii: Optional[Sequence] = None) -> list[FormalBall]:
    radii = radius_grid(C.spec) if radii is None else radii
    return [FormalBall(x, r) for x in C.carrier(cutoff) for r in radii]


def radii_imply_cauchy(F: DirectedFamily, depth: int = 50) -> Verdict:
    """Check ``hom(x_m, x_g) >= r_l`` for ``l <= m <= g <= depth`` and conclude what it licenses.

    With ``r_sup = 1`` the centres are forward Cauchy.  On an Archimedean
    t-norm with ``r_sup > 0`` the bound ``hom(x_l, x_m) >= r_m -> r_l`` gives
    window infima at least ``r_sup -> r_l``, which tend to 1.
    """
    if not F.is_chain:
        raise ValueError("radii_imply_cauchy needs a chain")
    C = F.category
    spec = C.spec
    pre = F.prefix(depth)
    running = None
    for i, (m, bm) in enumerate(pre):
        running = bm.radius if running is None else qt.join(spec, (running, bm.radius))
        for g, bg in pre[i:]:
            if not qt.leq(spec, running, C.hom(bm.center, bg.center)):
                return Verdict(Status.REFUTED, witness=(m, g),
                               detail={"reason": f"hom(x_{m}, x_{g}) is below an earlier radius"})
    detail = {"kernel": "holds", "depth": len(pre)}
    if F.r_sup == qt.top(spec):
        detail["reason"] = "radii join to the unit"
        return Verdict(Status.CERTIFIED, detail=detail)
    if spec.is_tnorm and qt.is_archimedean(spec) and F.r_sup > 0:
        positive = [(n, b) for n, b in pre if b.radius > 0]
        for i, (l, bl) in enumerate(positive):
            for m, bm in positive[i:]:
                if not C.hom(bl.center, bm.center) >= qt.imp(spec, bm.radius, bl.radius):
                    return Verdict(Status.REFUTED, witness=(l, m),
                                   detail={"reason": "Archimedean residuum bound fails"})
        detail["reason"] = "Archimedean t-norm: windows are bounded below by r_sup -> r_l, which tends to 1"
        detail["window_lower_bounds"] = [qt.format_value(qt.imp(spec, F.r_sup, b.radius)) for _, b in positive[:5]]
        return Verdict(Status.CERTIFIED, detail=detail)
    detail["reason"] = "radii do not join to the unit; the centres need not be forward Cauchy"
    return Verdict(Status.INCONCLUSIVE, detail=detail)


def join_via_yoneda(C: QCategory, F: DirectedFamily, cutoff: int = 50,
                    candidate: Optional[FormalBall] = None) -> tuple[Optional[FormalBall], Verdict]:
    """Join ``(a, r_sup)`` from a Yoneda limit ``a`` of the centres, when one exists."""
    net = F.centers()
    fc = forward_cauchy_check(C, net, cutoff)
    if not fc.certified:
        fc2 = radii_imply_cauchy(F, cutoff)
        if not fc2.certified:
            return None, Verdict(Status.INCONCLUSIVE, detail={"reason": "centres not certified forward Cauchy"})
    limits = yoneda_limits(C, net, cutoff)
    detail: dict = {}
    if candidate is not None:
        detail["candidate_upper_bound"] = all(ball_leq(C, b, candidate) for _, b in F.prefix(cutoff))
    if not limits:
        detail["reason"] = "no Yoneda limit found among carrier candidates"
        return None, Verdict(Status.INCONCLUSIVE, detail=detail)
    a = limits[0]
    join = FormalBall(a, F.r_sup)
    bad = next((n for n, b in F.prefix(cutoff) if not ball_leq(C, b, join)), None)
    if bad is not None:
        raise RuntimeError(f"member {bad} is not below the Yoneda join {join.show(C)}")
    detail.update(yoneda_limit=C.label(a), reason="upper bound verified on the prefix")
    return join, Verdict(Status.CERTIFIED, witness=join, detail=detail)


# -- the directed set B(phi) ------------------------------------------------------------------------

@dataclass
class BPhi:
    family: DirectedFamily
    directed: Verdict
    reconstruction: dict
    matches: bool


def _top_radius(C: QCategory, phi: Weight, grid: Sequence) -> Fraction:
    """A radius below 1 but above every value < 1 that matters for the slice."""
    spec = C.spec
    elems = C.carrier()
    pool = [v for v in grid if v < 1]
    pool += [C.hom(x, y) for x in elems for y in elems if C.hom(x, y) < 1]
    for x in elems:
        v = phi(x)
        if v < 1:
            pool.append(v)
        pool += [qt.imp(spec, v, r) for r in grid if 0 < r < v]
    m = max(pool, default=qt.ZERO)
    return (m + 1) / 2


def reconstruct_weight(F: DirectedFamily) -> dict:
    """``join_d meet_{e >= d} hom(-, centre(e))`` over an explicit directed family."""
    C = F.category
    spec = C.spec
    balls = list(F.balls)
    le = _leq_matrix(C, balls)
    out = {}
    for x in C.carrier():
        h = [C.hom(x, b.center) for b in balls]
        out[x] = qt.join(spec, [qt.meet(spec, [h[j] for j in range(len(balls)) if le[i, j]])
                                for i in range(len(balls))])
    return out


def bphi(C: QCategory, phi: Weight, radius_grid_: Optional[Sequence] = None) -> BPhi:
    """The slice ``{(x, r) : r in grid, r << phi(x)}`` of **B**phi, with its postcondition checks.

    Without an explicit grid the default radii are used, plus instance values
    and one radius strictly between every relevant value and 1, so that the
    slice has a greatest element up to isomorphism.
    """
    if not is_forward_cauchy_weight(C, phi):
        raise ValueError("weight is not forward Cauchy")
    spec = C.spec
    elems = C.carrier()
    if radius_grid_ is None:
        extra = {phi(x) for x in elems} | {C.hom(x, y) for x in elems for y in elems}
        grid = radius_grid(spec, 16, extra)
        grid = sorted(set(grid) | {_top_radius(C, phi, grid)})
    else:
        grid = list(radius_grid_)
    balls = tuple(FormalBall(x, r) for x in elems for r in grid if qt.way_below(spec, r, phi(x)))
    fam = DirectedFamily(C, balls=balls, name="B(phi)")
    directed = directed_check(fam)
    recon = reconstruct_weight(fam)
    matches = all(recon[x] == phi(x) for x in elems)
    return BPhi(fam, directed, recon, matches)


# -- property (R) ------------------------------------------------------------------------------------

def _require_tnorm(C: QCategory, what: str) -> None:
    if not C.spec.is_tnorm:
        raise ValueError(f"{what} is stated for t-norms on [0,1], not {C.spec}")


def property_r_decide(C: QCategory, cutoff: Optional[int] = None) -> tuple[bool, Optional[tuple]]:
    """Property (R) via idempotents: no ``hom(x,y) < 1`` may lie above a positive idempotent."""
    _require_tnorm(C, "property (R)")
    idem = qt.idempotents(C.spec)
    for x in C.carrier(cutoff):
        for y in C.carrier(cutoff):
            h = C.hom(x, y)
            if h < 1 and idem.has_positive_at_most(h):
                return False, (x, y)
    return True, None


DEFAULT_TRIAL_R = (Fraction(1, 2), Fraction(3, 4), Fraction(15, 16))


@functools.lru_cache(maxsize=200_000)
def _breaks(spec: qt.QuantaleSpec, s, t, h, r1) -> bool:
    """Does ``(x, t (x) r') <= (y, s)  <=>  (x, r') <= (y, t -> s)`` fail when ``hom(x,y) = h``?"""
    left = qt.mul(spec, t, r1) <= qt.mul(spec, s, h)
    right = r1 <= qt.mul(spec, qt.imp(spec, t, s), h)
    return left != right


def property_r_grid(C: QCategory, st_grid: Optional[Sequence] = None, rprime_grid: Optional[Sequence] = None,
                    trial_r: Sequence = DEFAULT_TRIAL_R, cutoff: Optional[int] = None) -> Verdict:
    """Search for a refutation of property (R) on finite grids.

    Refuted at ``(s, t)`` when every trial ``r`` admits ``x, y`` and a grid
    ``r' >= r`` breaking the biconditional.  Finding nothing proves nothing.
    """
    _require_tnorm(C, "property (R)")
    spec = C.spec
    if st_grid is None:
        vals = [Fraction(i, 4) for i in range(1, 5)]
        st_grid = [(s, t) for s in vals for t in vals if s <= t]
    rprimes = sorted(set(qt.unit_grid(16) if rprime_grid is None else rprime_grid) | {qt.ONE}, reverse=True)
    elems = C.carrier(cutoff)
    by_h: dict = {}
    for x in elems:
        for y in elems:
            by_h.setdefault(C.hom(x, y), (x, y))
    need = max(trial_r)
    for s, t in st_grid:
        if not 0 < s <= t:
            raise ValueError(f"grid pair ({s}, {t}) violates 0 < s <= t")
        for h, (x, y) in by_h.items():
            # rprimes run downward, so the first break found is the largest one
            hit = next((r1 for r1 in rprimes if r1 >= need and _breaks(spec, s, t, h, r1)), None)
            if hit is not None:
                return Verdict(Status.REFUTED, witness=(x, y), detail={
                    "s": qt.format_value(s), "t": qt.format_value(t), "r_prime": qt.format_value(hit),
                    "pair": (C.label(x), C.label(y)), "hom": qt.format_value(h),
                    "reason": f"r'={qt.format_value(hit)} breaks the biconditional for every trial r <= {qt.format_value(need)}"})
    return Verdict(Status.NO_REFUTATION, detail={"pairs": len(st_grid), "trials": [qt.format_value(r) for r in trial_r]})


@dataclass
class ExpansionReport:
    at_one: bool
    for_all: bool
    for_some: bool
    hypothesis: str      # "satisfied" | "violated"
    divergence: Optional[str] = None

    @property
    def agree(self) -> bool:
        return self.at_one == self.for_all == self.for_some


def expansion_check(C: QCategory, x, y, s_grid: Sequence) -> ExpansionReport:
    """Compare ``(x,1) <= (y,1)``, ``for all s``, ``for some s`` of ``(x,s) <= (y,s)`` (``s != 0``)."""
    spec = C.spec
    has_r, _ = property_r_decide(C)
    grid = [s for s in s_grid if s != qt.bottom(spec)]
    if not grid:
        raise ValueError("s_grid needs a nonzero element")
    hits = {s: ball_leq(C, FormalBall(x, s), FormalBall(y, s)) for s in grid}
    one = qt.top(spec)
    rep = ExpansionReport(ball_leq(C, FormalBall(x, one), FormalBall(y, one)), all(hits.values()),
                          any(hits.values()), "satisfied" if has_r else "violated")
    if not rep.agree:
        true_s = [qt.format_value(s) for s, v in hits.items() if v]
        false_s = [qt.format_value(s) for s, v in hits.items() if not v]
        rep.divergence = f"holds for s in {true_s}, fails for s in {false_s}"
        if has_r:
            raise RuntimeError(f"expansion equivalence broken under property (R): {rep.divergence}")
    return rep


# -- the main lemma on instances ---------------------------------------------------------------------

@dataclass
class MainLemmaReport:
    candidate: Any
    yoneda: Status
    join: Status
    property_r: bool
    forward: str            # "holds" | "vacuous" | "DEFECT"
    backward: str           # "holds" | "vacuous" | "skipped" | "DEFECT"

    @property
    def defects(self) -> list[str]:
        return [d for d, v in (("(1)=>(2)", self.forward), ("(2)=>(1)", self.backward)) if v == "DEFECT"]


def mainlemma_suite(C: QCategory, F: DirectedFamily, a, cutoff: int = 50,
                    probes: Optional[Sequence[FormalBall]] = None, depth: Optional[int] = None) -> MainLemmaReport:
    """Check both directions of "Yoneda limit  <=>  (a, 1) is a join" on one instance.

    The backward direction is asserted only when property (R) holds.
    """
    if F.r_sup != qt.top(C.spec):
        raise ValueError("mainlemma_suite needs r_sup equal to the unit")
    depth = 2 * cutoff + 1 if depth is None else depth
    probes = probe_grid(C, cutoff) if probes is None else probes
    y = is_yoneda_limit(C, F.centers(), a, cutoff).status
    j = join_certify(C, F, FormalBall(a, qt.top(C.spec)), probes, depth).status
    has_r = property_r_decide(C, cutoff)[0] if C.spec.is_tnorm else False
    if y is Status.CERTIFIED:
        forward = "holds" if j is Status.CERTIFIED else "DEFECT"
    else:
        forward = "vacuous"
    if not has_r:
        backward = "skipped"
    elif j is Status.CERTIFIED:
        backward = "holds" if y is Status.CERTIFIED else "DEFECT"
    else:
        backward = "vacuous"
    return MainLemmaReport(a, y, j, has_r, forward, backward)
