"""Deletion / contraction / extraction recurrences with memoization.

Every polynomial that satisfies a linear arc recurrence is described by an
:class:`EliminationScheme` and evaluated by :meth:`Engine.eliminate`.  The
cycle and path polynomials are additive rather than multiplicative over
components and carry a constant term, so they get their own recursion
(:meth:`Engine.sigma`, :meth:`Engine.pi`) in which loops are always
eliminated first.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .digraph import Digraph, PreconditionError
from .polynomial import ONE, ZERO, MultiPoly, falling_factorial, t, x, y, z

OrderPolicy = Callable[[Digraph], Tuple[int, int]]


@dataclass(frozen=True)
class EliminationScheme:
    name: str
    loop_del: MultiPoly
    loop_con: MultiPoly
    dele: MultiPoly
    con: MultiPoly
    ext: MultiPoly
    initial: Callable[[int], MultiPoly]
    multiplicative: bool = True


@lru_cache(maxsize=None)
def _x_power(n: int) -> MultiPoly:
    return x ** n


@lru_cache(maxsize=None)
def _falling(n: int) -> MultiPoly:
    return falling_factorial(n)


def _one(n: int) -> MultiPoly:
    return ONE


SIGMA_HAT = EliminationScheme("sigma-hat", ONE, x * y, ONE, x, -x, _one)
PI_HAT = EliminationScheme("pi-hat", ONE, ZERO, ONE, x, x * (y - 1), _one)
SIGMA_PI = EliminationScheme("sigma-pi", ONE, x * y, ONE, x, x * (z - 1), _one)
GEO_COVER = EliminationScheme("geo-cover", ONE, y, ONE, ONE, ZERO, _x_power)
# the falling-factorial basis is not multiplicative: C(E_1 + E_1) = x^2 - x
COVER = EliminationScheme("cover", ONE, y, ONE, ONE, ZERO, _falling, multiplicative=False)
# loop contraction and loop extraction give the same graph, hence y + z
XI = EliminationScheme("xi", ONE, y + z, ONE, y, z, _x_power)

SCHEMES: Dict[str, EliminationScheme] = {
    s.name: s for s in (SIGMA_HAT, PI_HAT, SIGMA_PI, GEO_COVER, COVER, XI)
}


# -- arc order policies ------------------------------------------------------


def default_policy(d: Digraph) -> Tuple[int, int]:
    """First loop if there is one, else the lexicographically smallest arc."""
    for v in range(d.n):
        if d.adj[v][v]:
            return v, v
    for i, j, _ in d.arcs():
        return i, j
    raise PreconditionError("digraph has no arcs")


class PriorityPolicy:
    """Pick the present arc slot of highest rank in a seeded random ranking of index pairs.

    The ranking is a fixed function of the current labelling, so within a run the
    choice is deterministic; different seeds visit arcs in different orders.
    """

    def __init__(self, seed: int, size: int = 16):
        rng = random.Random(seed)
        pairs = [(i, j) for i in range(size) for j in range(size)]
        rng.shuffle(pairs)
        self.seed = seed
        self.size = size
        self.rank = {p: r for r, p in enumerate(pairs)}

    def __call__(self, d: Digraph) -> Tuple[int, int]:
        big = len(self.rank)
        best = min(
            ((i, j) for i, j, _ in d.arcs()),
            key=lambda p: (self.rank.get(p, big), p),
            default=None,
        )
        if best is None:
            raise PreconditionError("digraph has no arcs")
        return best

    def __repr__(self) -> str:
        return f"PriorityPolicy(seed={self.seed})"


class RandomChoicePolicy:
    """Uniformly random arc slot at every step (fresh draw per call)."""

    def __init__(self, seed: int):
        self.seed = seed
        self.rng = random.Random(seed)

    def __call__(self, d: Digraph) -> Tuple[int, int]:
        slots = [(i, j) for i, j, _ in d.arcs()]
        if not slots:
            raise PreconditionError("digraph has no arcs")
        return self.rng.choice(slots)

    def __repr__(self) -> str:
        return f"RandomChoicePolicy(seed={self.seed})"


# -- engine ------------------------------------------------------------------


@dataclass
class EngineStats:
    calls: int = 0
    arc_steps: int = 0
    hits: int = 0
    misses: int = 0
    peak_cache: int = 0

    @property
    def lookups(self) -> int:
        return self.hits + self.misses

    def as_dict(self) -> dict:
        return {
            "calls": self.calls,
            "arc_steps": self.arc_steps,
            "hits": self.hits,
            "misses": self.misses,
            "peak_cache": self.peak_cache,
        }


class Engine:
    """Recurrence evaluator with a private memo cache keyed on (scheme, canonical key).

    The cache lives as long as the engine, so repeated queries on isomorphic
    graphs are answered from it.  ``cache=False`` turns memoization off entirely.
    """

    def __init__(self, policy: Optional[OrderPolicy] = None, cache: bool = True):
        self.policy = policy or default_policy
        self.use_cache = cache
        self._cache: Dict[Tuple[str, bytes], MultiPoly] = {}
        self.stats = EngineStats()

    def clear(self) -> None:
        self._cache.clear()
        self.stats = EngineStats()

    def engine_stats(self) -> EngineStats:
        return replace(self.stats)

    def _lookup(self, key):
        if not self.use_cache:
            return None
        hit = self._cache.get(key)
        if hit is None:
            self.stats.misses += 1
        else:
            self.stats.hits += 1
        return hit

    def _store(self, key, value: MultiPoly) -> MultiPoly:
        if self.use_cache:
            self._cache[key] = value
            if len(self._cache) > self.stats.peak_cache:
                self.stats.peak_cache = len(self._cache)
        return value

    # -- generic elimination ---------------------------------------------

    def eliminate(self, d: Digraph, scheme: EliminationScheme) -> MultiPoly:
        self.stats.calls += 1
        if not d.has_arcs():
            return scheme.initial(d.n)
        if scheme.multiplicative:
            parts = d.component_vertex_sets()
            if len(parts) > 1:
                result = ONE
                for vs in parts:
                    result = result * self.eliminate(d.induced(vs), scheme)
                return result
        key = (scheme.name, d.canonical_key())
        hit = self._lookup(key)
        if hit is not None:
            return hit

        self.stats.arc_steps += 1
        u, v = self.policy(d)
        if u == v:
            terms = [(scheme.loop_del, d.arc_delete, ), (scheme.loop_con, d.arc_contract)]
        else:
            terms = [(scheme.dele, d.arc_delete), (scheme.con, d.arc_contract), (scheme.ext, d.arc_extract)]
        result = ZERO
        for coeff, op in terms:
            if coeff:
                result = result + coeff * self.eliminate(op(u, v), scheme)
        return self._store(key, result)

    def sigma_hat(self, d: Digraph) -> MultiPoly:
        return self.eliminate(d, SIGMA_HAT)

    def pi_hat(self, d: Digraph) -> MultiPoly:
        return self.eliminate(d, PI_HAT)

    def sigma_pi(self, d: Digraph) -> MultiPoly:
        return self.eliminate(d, SIGMA_PI)

    def geo_cover(self, d: Digraph) -> MultiPoly:
        return self.eliminate(d, GEO_COVER)

    def cover(self, d: Digraph) -> MultiPoly:
        return self.eliminate(d, COVER)

    def xi(self, d: Digraph) -> MultiPoly:
        return self.eliminate(d, XI)

    # -- cycle and path polynomials --------------------------------------

    def _additive(self, d: Digraph, kind: str) -> MultiPoly:
        self.stats.calls += 1
        if not d.has_arcs():
            return ZERO
        parts = d.component_vertex_sets()
        if len(parts) > 1:
            result = ZERO
            for vs in parts:
                if len(vs) > 1 or d.adj[vs[0]][vs[0]]:
                    result = result + self._additive(d.induced(vs), kind)
            return result
        key = (kind, d.canonical_key())
        hit = self._lookup(key)
        if hit is not None:
            return hit

        self.stats.arc_steps += 1
        loops = d.loops()
        if loops:
            # loops go first so the non-loop case never sees a loop on its endpoints
            v = loops[0]
            rest = self._additive(d.arc_delete(v, v), kind)
            result = rest + x if kind == "sigma" else rest
        else:
            u, v = self.policy(d)
            result = (
                self._additive(d.arc_delete(u, v), kind)
                + x * self._additive(d.arc_contract(u, v), kind)
                - x * self._additive(d.arc_extract(u, v), kind)
            )
            if kind == "pi":
                result = result + x
        return self._store(key, result)

    def sigma(self, d: Digraph) -> MultiPoly:
        return self._additive(d, "sigma")

    def pi(self, d: Digraph) -> MultiPoly:
        return self._additive(d, "pi")

    def compute(self, name: str, d: Digraph) -> MultiPoly:
        fn = {
            "sigma": self.sigma,
            "pi": self.pi,
            "sigma-hat": self.sigma_hat,
            "pi-hat": self.pi_hat,
            "sigma-pi": self.sigma_pi,
            "geo-cover": self.geo_cover,
            "cover": self.cover,
            "xi": self.xi,
        }.get(name)
        if fn is None:
            raise ValueError(f"unknown polynomial {name!r}")
        return fn(d)


POLYNOMIALS = ("sigma", "pi", "sigma-hat", "pi-hat", "sigma-pi", "geo-cover", "cover", "xi")


def _engine(engine: Optional[Engine]) -> Engine:
    return engine if engine is not None else Engine()


def sigma_rec(d: Digraph, engine: Optional[Engine] = None) -> MultiPoly:
    return _engine(engine).sigma(d)


def pi_rec(d: Digraph, engine: Optional[Engine] = None) -> MultiPoly:
    return _engine(engine).pi(d)


def sigma_hat_rec(d: Digraph, engine: Optional[Engine] = None) -> MultiPoly:
    return _engine(engine).sigma_hat(d)


def pi_hat_rec(d: Digraph, engine: Optional[Engine] = None) -> MultiPoly:
    return _engine(engine).pi_hat(d)


def sigma_pi_rec(d: Digraph, engine: Optional[Engine] = None) -> MultiPoly:
    return _engine(engine).sigma_pi(d)


def geo_cover_rec(d: Digraph, engine: Optional[Engine] = None) -> MultiPoly:
    return _engine(engine).geo_cover(d)


def cover_rec(d: Digraph, engine: Optional[Engine] = None) -> MultiPoly:
    return _engine(engine).cover(d)


def xi_rec(d: Digraph, engine: Optional[Engine] = None) -> MultiPoly:
    return _engine(engine).xi(d)


def eliminate(d: Digraph, scheme: EliminationScheme, policy: Optional[OrderPolicy] = None,
              cache: bool = True) -> MultiPoly:
    return Engine(policy, cache).eliminate(d, scheme)


# -- multi-arc reduction -----------------------------------------------------


@dataclass(frozen=True)
class MultiArcReduction:
    d1: Digraph  # d3 plus one arc (u, v)
    d2: Digraph  # d3 plus one arc (v, u)
    d3: Digraph  # every arc between u and v removed
    n: int  # multiplicity of (u, v)
    m: int  # multiplicity of (v, u)

    def combine(self, f: Callable[[Digraph], MultiPoly], cycle_term: bool) -> MultiPoly:
        total = self.n * f(self.d1) + self.m * f(self.d2) - (self.n + self.m - 1) * f(self.d3)
        if cycle_term:
            total = total + MultiPoly.monomial(self.n * self.m, x=2)
        return total


def multiarc_reduce(d: Digraph, u: int, v: int) -> MultiArcReduction:
    if u == v:
        raise PreconditionError("multi-arc reduction needs two distinct vertices")
    n, m = d.adj[u][v], d.adj[v][u]
    if n + m < 1:
        raise PreconditionError(f"no arcs between {u} and {v}")
    d3 = d.remove_arcs_between(u, v)
    return MultiArcReduction(d3.arc_add(u, v), d3.arc_add(v, u), d3, n, m)


# -- source/sink path polynomials and vertex decomposition -------------------


def _shift(u: int, removed: int) -> int:
    return u - 1 if u > removed else u


def pi_source_rec(d: Digraph, v: int) -> MultiPoly:
    """Paths starting at ``v``: one per out-arc, plus an out-arc followed by a path in ``d - v``.

    Loops at ``v`` start no path and are left out of the out-degree.
    """
    rest = d.vertex_delete(v)
    total = ZERO
    for u, a in enumerate(d.adj[v]):
        if a and u != v:
            total = total + a * (x + x * pi_source_rec(rest, _shift(u, v)))
    return total


def pi_sink_rec(d: Digraph, v: int) -> MultiPoly:
    rest = d.vertex_delete(v)
    total = ZERO
    for u in range(d.n):
        a = d.adj[u][v]
        if a and u != v:
            total = total + a * (x + x * pi_sink_rec(rest, _shift(u, v)))
    return total


def sigma_vertex_rec(d: Digraph, v: int, engine: Optional[Engine] = None) -> MultiPoly:
    """Value of ``(1 - x) sigma(D - v) + x sigma(D / v)``; not guaranteed to equal sigma(D)."""
    eng = _engine(engine)
    return (1 - x) * eng.sigma(d.vertex_delete(v)) + x * eng.sigma(d.vertex_contract(v))


def pi_vertex_rec(d: Digraph, v: int, engine: Optional[Engine] = None) -> MultiPoly:
    """Value of ``(1 - x) pi(D - v) + x pi(D / v) + pi_v+(D) + pi_v-(D)``."""
    eng = _engine(engine)
    return (
        (1 - x) * eng.pi(d.vertex_delete(v))
        + x * eng.pi(d.vertex_contract(v))
        + pi_source_rec(d, v)
        + pi_sink_rec(d, v)
    )


# -- the t-parameterised arc elimination recurrence --------------------------


LabelledArc = Tuple[int, int, int]  # (id, tail, head)


def labelled_arcs(d: Digraph) -> List[LabelledArc]:
    """Individual arcs with ids ``0..|E|-1``, parallel copies consecutive."""
    out = []
    for i, j, a in d.arcs():
        for _ in range(a):
            out.append((len(out), i, j))
    return out


def arc_order_ids(d: Digraph, order: Sequence[Sequence[int]]) -> List[int]:
    """Translate an order given as ``(tail, head)`` pairs into arc ids.

    The order must list every arc exactly once; the k-th mention of a slot names
    its k-th parallel copy.
    """
    slots: Dict[Tuple[int, int], List[int]] = {}
    for aid, i, j in labelled_arcs(d):
        slots.setdefault((i, j), []).append(aid)
    ids = []
    for pair in order:
        key = (pair[0], pair[1])
        if not slots.get(key):
            raise PreconditionError(f"arc {key} is not available in the digraph at this point of the order")
        ids.append(slots[key].pop(0))
    leftover = [k for k, v in slots.items() if v]
    if leftover:
        raise PreconditionError(f"order omits arcs {leftover}")
    return ids


def random_arc_order(d: Digraph, rng: random.Random) -> List[Tuple[int, int]]:
    pairs = [(i, j) for _, i, j in labelled_arcs(d)]
    rng.shuffle(pairs)
    return pairs


def xi_general_rec(
    d: Digraph,
    order: Optional[Sequence[Sequence[int]]] = None,
    *,
    t_value: MultiPoly = t,
    x_value: MultiPoly = x,
    y_value: MultiPoly = y,
    z_value: MultiPoly = z,
) -> MultiPoly:
    """Evaluate ``t*P(D-e) + y*P(D/e) + z*P(D+e)`` strictly along ``order``.

    Arcs removed as a side effect of earlier steps are skipped.  Components are
    never split: arc-less leaves evaluate to ``x^|V|``, which is what the
    multiplicative base case gives.  Substituting numbers for ``t``, ``y`` or ``z``
    (as constant polynomials) prunes branches whose coefficient vanishes.
    """
    arcs = labelled_arcs(d)
    ids = list(range(len(arcs))) if order is None else arc_order_ids(d, order)
    pos = {aid: p for p, aid in enumerate(ids)}
    tv, xv, yv, zv = (MultiPoly.promote(v) for v in (t_value, x_value, y_value, z_value))
    memo: Dict[tuple, MultiPoly] = {}
    powers: Dict[int, MultiPoly] = {}

    def leaf(nv: int) -> MultiPoly:
        if nv not in powers:
            powers[nv] = xv ** nv
        return powers[nv]

    def rec(verts: frozenset, state: Tuple[LabelledArc, ...]) -> MultiPoly:
        if not state:
            return leaf(len(verts))
        key = (verts, state)
        if key in memo:
            return memo[key]
        aid, u, v = min(state, key=lambda a: pos[a[0]])
        deleted = tuple(a for a in state if a[0] != aid)
        if u == v:
            reduced = (verts - {u}, tuple(a for a in state if u not in (a[1], a[2])))
            parts = [(tv, (verts, deleted)), (yv + zv, reduced)]
        else:
            # merged vertex keeps the label u: drop out-arcs of u and in-arcs of v, then retail v -> u
            contracted = tuple(
                (a, u if b == v else b, c) for a, b, c in state if b != u and c != v
            )
            extracted = tuple(a for a in state if not {a[1], a[2]} & {u, v})
            parts = [
                (tv, (verts, deleted)),
                (yv, (verts - {v}, contracted)),
                (zv, (verts - {u, v}, extracted)),
            ]
        result = ZERO
        for coeff, (vs, st) in parts:
            if coeff:
                result = result + coeff * rec(vs, st)
        memo[key] = result
        return result

    return rec(frozenset(range(d.n)), tuple(arcs))


def divisible_by_t_minus_one_times(p: MultiPoly, var: str) -> bool:
    """True when ``(t - 1) * var`` divides ``p``: every term carries ``var`` and ``p(t=1) = 0``."""
    if p.is_zero():
        return True
    i = "txyz".index(var)
    return all(e[i] >= 1 for e, _ in p.items()) and p.subs(t=1).is_zero()
