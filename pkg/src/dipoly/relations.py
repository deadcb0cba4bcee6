"""Mechanical checks of the identities relating the digraph polynomials.

Each identity is a function yielding :class:`Comparison` records (label, lhs,
rhs) for one digraph.  :func:`run_identity` sweeps a corpus, :func:`falsify`
searches for and shrinks a counterexample.  Identities flagged ``claim=True``
are statements under test: their documented outcome may be a failure, and the
harness reports whether the observed outcome matches.
"""
from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence

from . import oracle
from .corpus import exhaustive_by_size, random_digraph
from .digraph import Digraph, Graph
from .engine import (
    POLYNOMIALS,
    XI,
    Engine,
    PriorityPolicy,
    divisible_by_t_minus_one_times,
    labelled_arcs,
    multiarc_reduce,
    pi_sink_rec,
    pi_source_rec,
    pi_vertex_rec,
    random_arc_order,
    sigma_vertex_rec,
    xi_general_rec,
)
from .polynomial import ZERO, MultiPoly, falling_factorial, t, x

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


class Comparison(NamedTuple):
    label: str
    lhs: Any
    rhs: Any
    extra: Optional[dict] = None


def _jsonable(value):
    if isinstance(value, MultiPoly):
        return value.to_json_terms()
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return value


@dataclass
class CheckReport:
    identity: str
    status: str
    witness: Optional[Digraph] = None
    lhs: Any = None
    rhs: Any = None
    graphs_tested: int = 0
    detail: str = ""
    claim: bool = False
    expected: str = PASS
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def as_documented(self) -> bool:
        return self.status == SKIPPED or self.status == self.expected

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "status": self.status,
            "claim": self.claim,
            "expected": self.expected,
            "as_documented": self.as_documented,
            "graphs_tested": self.graphs_tested,
            "witness": self.witness.to_dict() if self.witness is not None else None,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "detail": self.detail,
            "extra": {k: _jsonable(v) for k, v in self.extra.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        tag = self.status.upper()
        head = f"[{tag}] {self.identity}: {self.graphs_tested} graph(s)"
        if self.claim:
            verdict = "as documented" if self.as_documented else "NOT as documented"
            head += f" (claim under test, expected {self.expected}: {verdict})"
        lines = [head]
        if self.detail:
            lines.append(f"    {self.detail}")
        if self.witness is not None:
            lines.append(f"    witness: {self.witness.to_json()}")
            lines.append(f"    lhs: {self.lhs}")
            lines.append(f"    rhs: {self.rhs}")
        for k, v in self.extra.items():
            lines.append(f"    {k}: {v}")
        return "\n".join(lines)


@dataclass
class Context:
    """Shared state for a sweep: the engine and the knobs of randomized identities."""

    engine: Engine = field(default_factory=Engine)
    seed: int = 0
    points: int = 5
    trials: int = 10

    def rng(self, d: Digraph) -> random.Random:
        # depends only on the seed and the graph, so re-checks see the same draws
        return random.Random(f"{self.seed}:{d.to_json()}")


# -- per-graph comparisons ---------------------------------------------------


def projection_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    eng = ctx.engine
    sp, sh, ph = eng.sigma_pi(d), eng.sigma_hat(d), eng.pi_hat(d)
    yield Comparison("sigma = [y^1] sigma-hat", eng.sigma(d), sh.coeff_of("y", 1))
    yield Comparison("pi = [y^1] pi-hat", eng.pi(d), ph.coeff_of("y", 1))
    yield Comparison("sigma-hat = sigma-pi(x, y, 0)", sh, sp.subs(z=0))
    yield Comparison("pi-hat = sigma-pi(x, 0, y)", ph, sp.subs(y=0).rename("z", "y"))


def projection_enum_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    sp = oracle.sigma_pi_enum(d)
    sh, ph = oracle.sigma_hat_enum(d), oracle.pi_hat_enum(d)
    yield Comparison("sigma = [y^1] sigma-hat", oracle.sigma_enum(d), sh.coeff_of("y", 1))
    yield Comparison("pi = [y^1] pi-hat", oracle.pi_enum(d), ph.coeff_of("y", 1))
    yield Comparison("sigma-hat = sigma-pi(x, y, 0)", sh, sp.subs(z=0))
    yield Comparison("pi-hat = sigma-pi(x, 0, y)", ph, sp.subs(y=0).rename("z", "y"))


def geo_from_sigma_pi(sp: MultiPoly, n: int) -> MultiPoly:
    return sp.subs(z=1).reverse_in_x(n)


def geo_transform_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    eng = ctx.engine
    yield Comparison("x^n sigma-pi(1/x, y, 1) = geo-cover", geo_from_sigma_pi(eng.sigma_pi(d), d.n), eng.geo_cover(d))


def cover_from_geo(geo: MultiPoly) -> MultiPoly:
    """Swap the power basis in x for the falling-factorial basis."""
    total = ZERO
    for (et, ex, ey, ez), c in geo.items():
        total = total + falling_factorial(ex) * MultiPoly.monomial(c, t=et, y=ey, z=ez)
    return total


def cover_from_geo_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    eng = ctx.engine
    yield Comparison("cover from geo-cover coefficients", cover_from_geo(eng.geo_cover(d)), eng.cover(d))


def agreement_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    for name in POLYNOMIALS:
        if name == "xi":
            continue
        yield Comparison(f"{name}: rec = enum", ctx.engine.compute(name, d), oracle.enum_poly(name, d))


def xi_explicit_pairs(statistic: str):
    def pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
        yield Comparison(f"xi rec = explicit[{statistic}]", ctx.engine.xi(d), oracle.xi_explicit(d, statistic))

    return pairs


def multiarc_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    for u, v in itertools.combinations(range(d.n), 2):
        if d.adj[u][v] + d.adj[v][u] == 0:
            continue
        r = multiarc_reduce(d, u, v)
        yield Comparison(f"sigma reduction at ({u},{v}) n={r.n} m={r.m}",
                         oracle.sigma_enum(d), r.combine(oracle.sigma_enum, cycle_term=True))
        yield Comparison(f"pi reduction at ({u},{v}) n={r.n} m={r.m}",
                         oracle.pi_enum(d), r.combine(oracle.pi_enum, cycle_term=False))


def source_sink_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    for v in range(d.n):
        yield Comparison(f"pi_{v}+ rec = enum", pi_source_rec(d, v), oracle.pi_source_enum(d, v))
        yield Comparison(f"pi_{v}- rec = enum", pi_sink_rec(d, v), oracle.pi_sink_enum(d, v))


def undirected_pairs_for_graph(g: Graph) -> Iterator[Comparison]:
    dg = g.orient()
    sg, pg = oracle.undirected_enum(g)
    yield Comparison("sigma(D(G)) = 2 sigma(G) + |E| x^2", oracle.sigma_enum(dg),
                     2 * sg + MultiPoly.monomial(len(g.edges), x=2))
    yield Comparison("pi(D(G)) = 2 pi(G)", oracle.pi_enum(dg), 2 * pg)


def undirected_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    return undirected_pairs_for_graph(Graph.underlying(d))


def vertex_decomposition_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    sigma = ctx.engine.sigma(d)
    for v in range(d.n):
        if not d.adj[v][v]:
            yield Comparison(f"sigma vertex decomposition at v={v}", sigma,
                             sigma_vertex_rec(d, v, ctx.engine), {"vertex": v})


def vertex_decomposition_gap_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    """The sigma vertex formula overshoots by exactly x times the spurious cycles of ``D / v``."""
    sigma = ctx.engine.sigma(d)
    for v in range(d.n):
        if not d.adj[v][v]:
            gap = sigma_vertex_rec(d, v, ctx.engine) - sigma
            yield Comparison(f"sigma vertex formula gap at v={v}", gap,
                             x * oracle.spurious_cycle_enum(d, v), {"vertex": v})


def vertex_decomposition_pi_gap_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    """The pi vertex formula overshoots by exactly x times the spurious paths of ``D / v``."""
    pi = ctx.engine.pi(d)
    for v in range(d.n):
        if not d.adj[v][v]:
            gap = pi_vertex_rec(d, v, ctx.engine) - pi
            yield Comparison(f"pi vertex formula gap at v={v}", gap,
                             x * oracle.spurious_path_enum(d, v), {"vertex": v})


def vertex_decomposition_pi_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    pi = ctx.engine.pi(d)
    for v in range(d.n):
        if not d.adj[v][v]:
            yield Comparison(f"pi vertex decomposition at v={v}", pi,
                             pi_vertex_rec(d, v, ctx.engine), {"vertex": v})


# -- co-reduction ------------------------------------------------------------


def _rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def admissible_points(rng: random.Random, count: int) -> List[Dict[str, Fraction]]:
    """Distinct rational points with ``x, y != 0`` and ``y, z != 1``."""
    points: List[Dict[str, Fraction]] = []
    while len(points) < count:
        p = {"x": _rational(rng), "y": _rational(rng), "z": _rational(rng)}
        if p["x"] == 0 or p["y"] in (0, 1) or p["z"] == 1 or p in points:
            continue
        points.append(p)
    return points


def _fmt_point(p) -> str:
    return "(" + ", ".join(f"{k}={p[k]}" for k in ("x", "y", "z")) + ")"


def forward_substitution(p: Dict[str, Fraction]) -> Dict[str, Fraction]:
    """``(x, y, z) -> (q, x q, x (y - 1) q)`` with ``q = (y - 1)/(z - 1)``."""
    q = (p["y"] - 1) / (p["z"] - 1)
    return {"x": q, "y": p["x"] * q, "z": p["x"] * (p["y"] - 1) * q}


def backward_substitution(p: Dict[str, Fraction]) -> Dict[str, Fraction]:
    """``(x, y, z) -> (y/x, (y + z)/y, z/(x y) + 1)``."""
    return {
        "x": p["y"] / p["x"],
        "y": (p["y"] + p["z"]) / p["y"],
        "z": p["z"] / (p["x"] * p["y"]) + 1,
    }


def coreduction_values(d: Digraph, xi: MultiPoly, sp: MultiPoly, p: Dict[str, Fraction],
                       direction: str) -> Optional[Comparison]:
    n = d.n
    if direction in ("forward", "statement"):
        if p["z"] == 1:
            return None
        q = (p["y"] - 1) / (p["z"] - 1)
        xi_val = xi.eval(forward_substitution(p))
        sp_val = sp.eval(p)
        if direction == "forward":
            return Comparison(f"forward at {_fmt_point(p)}: xi(q, xq, x(y-1)q) = q^n sigma-pi",
                              xi_val, q ** n * sp_val)
        return Comparison(f"statement at {_fmt_point(p)}: sigma-pi = q^n xi(q, xq, x(y-1)q)",
                          sp_val, q ** n * xi_val)
    if direction == "backward":
        if p["x"] == 0 or p["y"] == 0:
            return None
        return Comparison(f"backward at {_fmt_point(p)}: xi = x^n sigma-pi(y/x, (y+z)/y, z/(xy)+1)",
                          xi.eval(p), p["x"] ** n * sp.eval(backward_substitution(p)))
    raise ValueError(f"unknown direction {direction!r}")


def coreduction_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    xi, sp = ctx.engine.xi(d), ctx.engine.sigma_pi(d)
    for p in admissible_points(ctx.rng(d), ctx.points):
        for direction in ("forward", "backward"):
            yield coreduction_values(d, xi, sp, p, direction)


def coreduction_statement_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    xi, sp = ctx.engine.xi(d), ctx.engine.sigma_pi(d)
    for p in admissible_points(ctx.rng(d), ctx.points):
        yield coreduction_values(d, xi, sp, p, "statement")


def check_coreduction(d: Digraph, points: Sequence[Dict[str, Any]], direction: str = "both",
                      engine: Optional[Engine] = None) -> CheckReport:
    """Evaluate the co-reduction substitutions exactly at the given points.

    ``direction`` is ``"forward"``, ``"backward"``, ``"both"`` or ``"statement"``
    (the prefactor on the opposite side, kept as a claim).
    Points excluded for a direction are skipped with a reason; one failing point
    fails the report.
    """
    eng = engine or Engine()
    xi, sp = eng.xi(d), eng.sigma_pi(d)
    dirs = ("forward", "backward") if direction == "both" else (direction,)
    skipped, checked = [], 0
    name = "coreduction" if direction != "statement" else "coreduction-statement"
    for raw in points:
        p = {k: Fraction(raw[k]) for k in ("x", "y", "z")}
        for dr in dirs:
            cmp = coreduction_values(d, xi, sp, p, dr)
            if cmp is None:
                skipped.append(f"{dr} skipped at {_fmt_point(p)}: substitution undefined")
                continue
            checked += 1
            if cmp.lhs != cmp.rhs:
                return CheckReport(name, FAIL, d, cmp.lhs, cmp.rhs, 1, cmp.label,
                                   claim=direction == "statement",
                                   expected=FAIL if direction == "statement" else PASS)
    status = PASS if checked else SKIPPED
    return CheckReport(name, status, graphs_tested=1, detail="; ".join(skipped) or f"{checked} evaluations",
                       claim=direction == "statement", expected=FAIL if direction == "statement" else PASS)


# -- order independence ------------------------------------------------------


def confluence_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    """The arc elimination polynomial under ``ctx.trials`` seeded arc-order policies."""
    rng = ctx.rng(d)
    ref = Engine(PriorityPolicy(rng.getrandbits(32))).eliminate(d, XI)
    for _ in range(ctx.trials - 1):
        policy = PriorityPolicy(rng.getrandbits(32))
        yield Comparison(f"xi under {policy!r}", ref, Engine(policy).eliminate(d, XI))


def degenerate_pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
    """At ``y = z = 0`` the t-recurrence collapses to ``t^|E| x^|V|``."""
    order = random_arc_order(d, ctx.rng(d))
    val = xi_general_rec(d, order, y_value=ZERO, z_value=ZERO)
    yield Comparison("xi-hat(t, x, 0, 0) = t^|E| x^|V|", val,
                     MultiPoly.monomial(1, t=d.num_arcs, x=d.n), {"order": order})


def swapped_orders(d: Digraph) -> Iterator[tuple]:
    """Pairs of arc orders differing only by which of two arcs goes first."""
    arcs = [(i, j) for _, i, j in labelled_arcs(d)]
    for a, b in itertools.combinations(range(len(arcs)), 2):
        if arcs[a] == arcs[b]:
            continue
        rest = [arcs[k] for k in range(len(arcs)) if k not in (a, b)]
        yield [arcs[a], arcs[b]] + rest, [arcs[b], arcs[a]] + rest


def well_definedness_pairs(t_value: Optional[Fraction] = None):
    """Compare the t-recurrence under swapped leading arcs; ``t_value=None`` keeps t symbolic."""
    tv = t if t_value is None else MultiPoly.const(t_value)

    def pairs(d: Digraph, ctx: Context) -> Iterator[Comparison]:
        for o1, o2 in swapped_orders(d):
            a = xi_general_rec(d, o1, t_value=tv)
            b = xi_general_rec(d, o2, t_value=tv)
            yield Comparison("xi-hat under two arc orders", a, b, {"order_1": o1, "order_2": o2})

    return pairs


def probe_well_definedness(d: Digraph, t_value: Optional[Fraction] = None, trials: int = 10,
                           seed: int = 0) -> CheckReport:
    """Run the t-recurrence under ``trials`` random arc orders.

    ``t_value=1``: every order must agree.  Symbolic ``t`` (``None``): every order
    must agree once ``y = z = 0`` (value ``t^|E| x^|V|``), and any disagreement of
    the full values must carry a factor ``(t - 1) z`` or ``(t - 1) y``.  Other
    numeric ``t``: disagreements are reported as the expected witness.
    """
    rng = random.Random(f"{seed}:{d.to_json()}")
    orders = [random_arc_order(d, rng) for _ in range(trials)]
    tv = t if t_value is None else MultiPoly.const(t_value)
    values = [xi_general_rec(d, o, t_value=tv) for o in orders]
    name = f"well-definedness(t={'t' if t_value is None else t_value})"
    expected = PASS if t_value is None or t_value == 1 else FAIL
    extra: Dict[str, Any] = {}
    for k in range(1, trials):
        if values[k] != values[0]:
            diff = values[0] - values[k]
            extra = {"order_1": orders[0], "order_2": orders[k], "difference": str(diff)}
            if t_value == 1:
                return CheckReport(name, FAIL, d, values[0], values[k], 1, "orders disagree at t=1",
                                   extra=extra)
            if t_value is None and not (
                divisible_by_t_minus_one_times(diff, "z") or divisible_by_t_minus_one_times(diff, "y")
            ):
                return CheckReport(name, FAIL, d, values[0], values[k], 1,
                                   "difference lacks a (t-1)z or (t-1)y factor", extra=extra)
            if t_value is not None:
                return CheckReport(name, FAIL, d, values[0], values[k], 1,
                                   "orders disagree", expected=expected, extra=extra)
            break
    if t_value is None:
        target = MultiPoly.monomial(1, t=d.num_arcs, x=d.n)
        for o in orders:
            val = xi_general_rec(d, o, y_value=ZERO, z_value=ZERO)
            if val != target:
                return CheckReport(name, FAIL, d, val, target, 1, "y=z=0 value differs", extra={"order": o})
        detail = "all orders agree at y=z=0"
        if extra:
            detail += "; full values differ by a (t-1)-multiple"
        return CheckReport(name, PASS, graphs_tested=1, detail=detail, extra=extra)
    return CheckReport(name, PASS, graphs_tested=1, detail=f"{trials} orders agree", expected=expected)


def find_order_dependence(max_n: int = 4, t_value: Optional[Fraction] = None, max_mult: int = 1,
                          budget_seconds: float = 30.0) -> CheckReport:
    """Smallest digraph (by vertices, then arcs) with two arc orders giving different values."""
    ident = Identity(
        f"well-definedness(t={'t' if t_value is None else t_value})",
        well_definedness_pairs(t_value), claim=True, expected=FAIL,
    )
    start = time.monotonic()
    tested = 0
    for d in exhaustive_by_size(max_n, max_mult):
        if time.monotonic() - start > budget_seconds:
            break
        tested += 1
        mm = first_mismatch(ident.pairs(d, Context()))
        if mm is not None:
            diff = mm.lhs - mm.rhs
            extra = dict(mm.extra or {})
            extra["difference"] = str(diff)
            if t_value is None:
                extra["factor"] = (
                    "(t-1)z" if divisible_by_t_minus_one_times(diff, "z")
                    else "(t-1)y" if divisible_by_t_minus_one_times(diff, "y") else "none"
                )
            return CheckReport(ident.name, FAIL, d, mm.lhs, mm.rhs, tested, mm.label,
                               claim=True, expected=FAIL, extra=extra)
    return CheckReport(ident.name, PASS, graphs_tested=tested, detail="no order dependence found",
                       claim=True, expected=FAIL)


# -- identity registry -------------------------------------------------------


@dataclass(frozen=True)
class Identity:
    name: str
    pairs: Callable[[Digraph, Context], Iterable[Comparison]]
    claim: bool = False
    expected: str = PASS
    note: str = ""


IDENTITIES: Dict[str, Identity] = {
    ident.name: ident
    for ident in (
        Identity("agreement", agreement_pairs),
        Identity("projections", projection_pairs),
        Identity("projections-enum", projection_enum_pairs),
        Identity("geo-cover-transform", geo_transform_pairs),
        Identity("cover-from-geo", cover_from_geo_pairs),
        Identity("multiarc", multiarc_pairs),
        Identity("source-sink", source_sink_pairs),
        Identity("undirected", undirected_pairs),
        Identity("coreduction", coreduction_pairs),
        Identity("confluence", confluence_pairs),
        Identity("degenerate", degenerate_pairs),
        Identity("xi-corrected", xi_explicit_pairs(oracle.CORRECTED), claim=True, expected=PASS,
                 note="explicit formula subtracting every cycle component of A"),
        Identity("xi-literal", xi_explicit_pairs(oracle.LITERAL), claim=True, expected=FAIL,
                 note="explicit formula subtracting only the loops of A; breaks on the 2-cycle"),
        Identity("vertex-decomposition", vertex_decomposition_pairs, claim=True, expected=FAIL,
                 note="counts spurious cycles of D/v that use two or more added arcs"),
        Identity("vertex-decomposition-gap", vertex_decomposition_gap_pairs,
                 note="formula minus sigma equals x times cycles of D/v through two or more added arcs"),
        Identity("vertex-decomposition-pi-gap", vertex_decomposition_pi_gap_pairs,
                 note="formula minus pi equals x times paths of D/v through two or more added arcs"),
        Identity("vertex-decomposition-pi", vertex_decomposition_pi_pairs, claim=True, expected=FAIL,
                 note="counts paths of D/v through two or more added arcs; holds on every digraph with at most 3 vertices"),
        Identity("coreduction-statement", coreduction_statement_pairs, claim=True, expected=FAIL,
                 note="prefactor on the printed side; already fails on E_1"),
    )
}


def get_identity(name: str, t_value: Optional[Fraction] = None) -> Identity:
    if name == "well-definedness":
        return Identity(
            f"well-definedness(t={'t' if t_value is None else t_value})",
            well_definedness_pairs(t_value),
            claim=True,
            expected=PASS if t_value == 1 else FAIL,
        )
    try:
        return IDENTITIES[name]
    except KeyError:
        known = sorted(IDENTITIES) + ["well-definedness"]
        raise ValueError(f"unknown identity {name!r}; choose from {known}") from None


def first_mismatch(pairs: Iterable[Comparison]) -> Optional[Comparison]:
    for cmp in pairs:
        if cmp is not None and cmp.lhs != cmp.rhs:
            return cmp
    return None


def run_identity(ident: Identity, corpus: Iterable[Digraph], ctx: Optional[Context] = None) -> CheckReport:
    """Check ``ident`` on every graph; stop at the first mismatch."""
    ctx = ctx or Context()
    tested = 0
    for d in corpus:
        tested += 1
        mm = first_mismatch(ident.pairs(d, ctx))
        if mm is not None:
            return CheckReport(ident.name, FAIL, d, mm.lhs, mm.rhs, tested, mm.label,
                               claim=ident.claim, expected=ident.expected, extra=dict(mm.extra or {}))
    return CheckReport(ident.name, PASS, graphs_tested=tested, detail=ident.note,
                       claim=ident.claim, expected=ident.expected)


def _report_for(ident: Identity, d: Digraph, ctx: Context) -> CheckReport:
    return run_identity(ident, [d], ctx)


def check_projections(d: Digraph, engine: Optional[Engine] = None) -> CheckReport:
    return _report_for(IDENTITIES["projections"], d, Context(engine or Engine()))


def check_geo_cover_transform(d: Digraph, engine: Optional[Engine] = None) -> CheckReport:
    return _report_for(IDENTITIES["geo-cover-transform"], d, Context(engine or Engine()))


def check_cover_from_geo(d: Digraph, engine: Optional[Engine] = None) -> CheckReport:
    return _report_for(IDENTITIES["cover-from-geo"], d, Context(engine or Engine()))


def check_undirected(g: Graph) -> CheckReport:
    mm = first_mismatch(undirected_pairs_for_graph(g))
    if mm is not None:
        return CheckReport("undirected", FAIL, g.orient(), mm.lhs, mm.rhs, 1, mm.label)
    return CheckReport("undirected", PASS, graphs_tested=1)


def check_vertex_decomposition(d: Digraph, v: int, which: str = "sigma",
                               engine: Optional[Engine] = None) -> CheckReport:
    """Compare the vertex formula at ``v`` with the true polynomial; failures are findings."""
    eng = engine or Engine()
    if which == "sigma":
        lhs, rhs = eng.sigma(d), sigma_vertex_rec(d, v, eng)
        name = "vertex-decomposition"
    elif which == "pi":
        lhs, rhs = eng.pi(d), pi_vertex_rec(d, v, eng)
        name = "vertex-decomposition-pi"
    else:
        raise ValueError("which must be 'sigma' or 'pi'")
    ident = IDENTITIES[name]
    if lhs != rhs:
        return CheckReport(name, FAIL, d, lhs, rhs, 1, f"vertex {v}", claim=True, expected=ident.expected,
                           extra={"vertex": v})
    return CheckReport(name, PASS, graphs_tested=1, detail=f"vertex {v}", claim=True, expected=ident.expected)


def check_xi_explicit_mode(corpus: Iterable[Digraph], engine: Optional[Engine] = None) -> Dict[str, CheckReport]:
    graphs = list(corpus)
    ctx = Context(engine or Engine())
    return {mode: run_identity(IDENTITIES[f"xi-{mode}"], graphs, ctx) for mode in oracle.XI_MODES}


# -- counterexample search ---------------------------------------------------


def shrink(d: Digraph, fails: Callable[[Digraph], bool]) -> Digraph:
    """Greedily drop vertices, then single arcs, while ``fails`` stays true."""
    changed = True
    while changed:
        changed = False
        for v in range(d.n):
            cand = d.vertex_delete(v)
            if fails(cand):
                d, changed = cand, True
                break
        if changed:
            continue
        for i, j, _ in list(d.arcs()):
            cand = d.arc_delete(i, j)
            if fails(cand):
                d, changed = cand, True
                break
    return d


def falsify(identity: str | Identity, max_n: int = 5, max_mult: int = 2, budget_seconds: float = 60.0,
            seed: int = 0, max_random: int = 2000, exhaustive_n: int = 3,
            t_value: Optional[Fraction] = None, points: int = 5, trials: int = 10) -> CheckReport:
    """Search for a counterexample: exhaustively up to ``exhaustive_n`` vertices, then at random.

    A witness is shrunk greedily and re-verified with a cache-free engine before it
    is reported.  Deterministic for a fixed seed unless the time budget cuts the
    search short.
    """
    ident = get_identity(identity, t_value) if isinstance(identity, str) else identity
    ctx = Context(Engine(), seed=seed, points=points, trials=trials)
    start = time.monotonic()
    tested = 0

    def over_budget() -> bool:
        return time.monotonic() - start > budget_seconds

    def candidates() -> Iterator[Digraph]:
        yield from exhaustive_by_size(min(exhaustive_n, max_n), min(max_mult, 2))
        rng = random.Random(seed)
        for _ in range(max_random):
            yield random_digraph(rng, max_n, max_mult)

    witness = None
    for d in candidates():
        if over_budget():
            break
        tested += 1
        if first_mismatch(ident.pairs(d, ctx)) is not None:
            witness = d
            break

    if witness is None:
        detail = f"no counterexample among {tested} digraphs"
        if over_budget():
            detail += " (time budget reached)"
        return CheckReport(ident.name, PASS, graphs_tested=tested, detail=detail,
                           claim=ident.claim, expected=ident.expected)

    witness = shrink(witness, lambda g: first_mismatch(ident.pairs(g, ctx)) is not None)
    fresh = Context(Engine(cache=False), seed=seed, points=points, trials=trials)
    mm = first_mismatch(ident.pairs(witness, fresh))
    if mm is None:  # pragma: no cover - would indicate a cache bug
        raise AssertionError(f"witness {witness.to_json()} did not re-verify without the cache")
    extra = dict(mm.extra or {})
    extra["reverified_without_cache"] = True
    if isinstance(mm.lhs, MultiPoly) and "order_1" in extra and t_value is None:
        diff = mm.lhs - mm.rhs
        extra["difference"] = str(diff)
    return CheckReport(ident.name, FAIL, witness, mm.lhs, mm.rhs, tested, mm.label,
                       claim=ident.claim, expected=ident.expected, extra=extra)
