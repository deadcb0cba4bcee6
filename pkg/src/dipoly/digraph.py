"""Multidigraphs with loops, stored as an immutable multiplicity matrix.

Vertices are ``0..n-1``.  Parallel arcs are never individually identified;
``adj[i][j]`` is the number of arcs from ``i`` to ``j``.
"""
from __future__ import annotations

import itertools
import json
from typing import Iterable, Iterator, List, NamedTuple, Sequence, Tuple

Matrix = Tuple[Tuple[int, ...], ...]

# exhaustive canonical labelling is used up to this many vertices
CANON_EXACT_MAX_N = 8


class DigraphError(ValueError):
    pass


class PreconditionError(DigraphError):
    """An operation was applied to an arc or vertex that does not qualify."""


class UnsupportedInputError(DigraphError):
    """The operation is deliberately undefined for this input."""


class ParseError(DigraphError):
    pass


class Arc(NamedTuple):
    tail: int
    head: int

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


def _freeze(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(a) for a in row) for row in rows)


class Digraph:
    __slots__ = ("n", "adj", "_key", "_hash")

    def __init__(self, n: int, adj: Sequence[Sequence[int]] | None = None):
        if n < 0:
            raise DigraphError("vertex count must be nonnegative")
        if adj is None:
            adj = [[0] * n for _ in range(n)]
        mat = _freeze(adj)
        if len(mat) != n or any(len(row) != n for row in mat):
            raise DigraphError(f"adjacency matrix must be {n}x{n}")
        if any(a < 0 for row in mat for a in row):
            raise DigraphError("arc multiplicities must be nonnegative")
        self.n = n
        self.adj = mat
        self._key = None
        self._hash = None

    @classmethod
    def _trusted(cls, n: int, mat: Matrix) -> "Digraph":
        d = cls.__new__(cls)
        d.n = n
        d.adj = mat
        d._key = None
        d._hash = None
        return d

    @classmethod
    def empty(cls, n: int) -> "Digraph":
        return cls._trusted(n, tuple((0,) * n for _ in range(n)))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Sequence[int]]) -> "Digraph":
        """Build from ``(tail, head)`` or ``(tail, head, multiplicity)`` entries; repeats accumulate."""
        mat = [[0] * n for _ in range(n)]
        for arc in arcs:
            if len(arc) == 2:
                u, v = arc
                m = 1
            elif len(arc) == 3:
                u, v, m = arc
            else:
                raise DigraphError(f"bad arc entry {arc!r}")
            if not (0 <= u < n and 0 <= v < n):
                raise DigraphError(f"arc ({u}, {v}) out of range for n={n}")
            if m < 0:
                raise DigraphError(f"negative multiplicity on arc ({u}, {v})")
            mat[u][v] += m
        return cls(n, mat)

    # -- basic queries -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Digraph({self.to_json()})"

    @property
    def num_arcs(self) -> int:
        return sum(map(sum, self.adj))

    def multiplicity(self, u: int, v: int) -> int:
        return self.adj[u][v]

    def arcs(self) -> Iterator[Tuple[int, int, int]]:
        """Yield ``(tail, head, multiplicity)`` for every nonzero slot, row-major."""
        for i, row in enumerate(self.adj):
            for j, a in enumerate(row):
                if a:
                    yield i, j, a

    def support(self) -> List[Arc]:
        return [Arc(i, j) for i, j, _ in self.arcs()]

    def loops(self) -> List[int]:
        return [i for i in range(self.n) if self.adj[i][i]]

    def has_arcs(self) -> bool:
        return any(any(row) for row in self.adj)

    def out_degree(self, v: int) -> int:
        return sum(self.adj[v])

    def in_degree(self, v: int) -> int:
        return sum(row[v] for row in self.adj)

    def out_neighbors(self, v: int) -> List[int]:
        return [w for w, a in enumerate(self.adj[v]) if a]

    def in_neighbors(self, v: int) -> List[int]:
        return [u for u in range(self.n) if self.adj[u][v]]

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise PreconditionError(f"vertex {v} out of range for n={self.n}")

    def _check_arc(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if self.adj[u][v] < 1:
            raise PreconditionError(f"no arc ({u}, {v}) to operate on")

    # -- arc operations ----------------------------------------------------

    def arc_delete(self, u: int, v: int) -> "Digraph":
        """Remove one arc ``(u, v)``; parallel copies survive."""
        self._check_arc(u, v)
        rows = [list(r) for r in self.adj]
        rows[u][v] -= 1
        return Digraph._trusted(self.n, _freeze(rows))

    def arc_contract(self, u: int, v: int) -> "Digraph":
        """Merge ``u`` and ``v``; the merged vertex keeps the in-arcs of ``u`` and out-arcs of ``v``.

        The merged vertex takes the position of ``u``.  Arcs ``(v, u)`` become loops.
        Contracting a loop removes its vertex.
        """
        self._check_arc(u, v)
        if u == v:
            return self._drop({u})
        n = self.n
        keep = [i for i in range(n) if i != v]
        # the merged vertex sits at u's index and takes v's out-row; column u keeps
        # u's in-arcs, and its diagonal entry picks up the (v, u) arcs as loops
        rows = tuple(tuple(self.adj[v if i == u else i][j] for j in keep) for i in keep)
        return Digraph._trusted(n - 1, rows)

    def arc_extract(self, u: int, v: int) -> "Digraph":
        """Remove both endpoints of ``(u, v)`` and every arc touching them."""
        self._check_arc(u, v)
        return self._drop({u, v})

    def arc_add(self, u: int, v: int, count: int = 1) -> "Digraph":
        self._check_vertex(u)
        self._check_vertex(v)
        rows = [list(r) for r in self.adj]
        rows[u][v] += count
        if rows[u][v] < 0:
            raise PreconditionError(f"multiplicity of ({u}, {v}) would become negative")
        return Digraph._trusted(self.n, _freeze(rows))

    def remove_arcs_between(self, u: int, v: int) -> "Digraph":
        """Drop every arc ``(u, v)`` and ``(v, u)``."""
        rows = [list(r) for r in self.adj]
        rows[u][v] = 0
        rows[v][u] = 0
        return Digraph._trusted(self.n, _freeze(rows))

    # -- vertex operations -------------------------------------------------

    def _drop(self, gone) -> "Digraph":
        keep = [i for i in range(self.n) if i not in gone]
        return Digraph._trusted(len(keep), tuple(tuple(self.adj[i][j] for j in keep) for i in keep))

    def induced(self, vertices: Sequence[int]) -> "Digraph":
        """Subgraph induced on ``vertices``, relabelled in the given order."""
        return Digraph._trusted(
            len(vertices), tuple(tuple(self.adj[i][j] for j in vertices) for i in vertices)
        )

    def vertex_delete(self, v: int) -> "Digraph":
        self._check_vertex(v)
        return self._drop({v})

    def vertex_contract(self, v: int) -> "Digraph":
        """Delete ``v`` and add ``adj[u][v] * adj[v][w]`` arcs ``u -> w`` for all ``u, w != v``."""
        self._check_vertex(v)
        if self.adj[v][v]:
            raise UnsupportedInputError(f"vertex contraction at {v} is undefined: {v} carries a loop")
        keep = [i for i in range(self.n) if i != v]
        rows = tuple(
            tuple(self.adj[i][j] + self.adj[i][v] * self.adj[v][j] for j in keep) for i in keep
        )
        return Digraph._trusted(self.n - 1, rows)

    def permute(self, order: Sequence[int]) -> "Digraph":
        """Relabel so that new vertex ``k`` is old vertex ``order[k]``."""
        if sorted(order) != list(range(self.n)):
            raise DigraphError("order must be a permutation of the vertices")
        return self.induced(order)

    # -- composition -------------------------------------------------------

    def disjoint_union(self, other: "Digraph") -> "Digraph":
        n1, n2 = self.n, other.n
        rows = [row + (0,) * n2 for row in self.adj]
        rows += [(0,) * n1 + row for row in other.adj]
        return Digraph._trusted(n1 + n2, tuple(rows))

    def component_vertex_sets(self) -> List[List[int]]:
        """Weakly connected components as sorted vertex lists, ordered by smallest vertex."""
        n = self.n
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, row in enumerate(self.adj):
            for j, a in enumerate(row):
                if a and i != j:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[max(ri, rj)] = min(ri, rj)
        groups: dict = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def components(self) -> List["Digraph"]:
        return [self.induced(vs) for vs in self.component_vertex_sets()]

    # -- canonical form ----------------------------------------------------

    def canonical_key(self) -> bytes:
        """Memoization key: isomorphism-invariant up to ``CANON_EXACT_MAX_N`` vertices.

        Larger graphs get a deterministic relabelling by refined degree signature,
        which is sound (equal key implies isomorphic) but may separate isomorphic graphs.
        """
        if self._key is None:
            order = canonical_order(self)
            m = self.induced(order).adj
            body = b"".join(_encode_row(row) for row in m)
            self._key = self.n.to_bytes(2, "big") + body
        return self._key

    def canonical_form(self) -> "Digraph":
        return self.induced(canonical_order(self))

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "arcs": [[i, j, a] for i, j, a in self.arcs()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.num_arcs}"]
        for i, j, a in self.arcs():
            lines.extend([f"{i} {j}"] * a)
        return "\n".join(lines) + "\n"


def _encode_row(row: Sequence[int]) -> bytes:
    if all(a < 255 for a in row):
        return bytes(row)
    # escape large multiplicities so keys stay injective
    out = bytearray()
    for a in row:
        if a < 255:
            out.append(a)
        else:
            raw = a.to_bytes((a.bit_length() + 7) // 8, "big")
            out += bytes([255, len(raw)]) + raw
    return bytes(out)


# -- canonical labelling ---------------------------------------------------


def _refine(d: Digraph, colors: List[int]) -> List[int]:
    """Colour refinement to a stable partition; colours are ranks of invariant signatures."""
    n, adj = d.n, d.adj
    num = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            outs = sorted((adj[v][w], colors[w]) for w in range(n) if adj[v][w] and w != v)
            ins = sorted((adj[u][v], colors[u]) for u in range(n) if adj[u][v] and u != v)
            sigs.append((colors[v], adj[v][v], tuple(outs), tuple(ins)))
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == num:
            return new
        colors, num = new, len(ranks)


def _cells(colors: List[int]) -> List[List[int]]:
    cells: dict = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return [cells[c] for c in sorted(cells)]


def canonical_order(d: Digraph) -> List[int]:
    """Vertex order producing the canonical matrix of ``d``.

    Up to ``CANON_EXACT_MAX_N`` vertices this runs an individualisation-refinement
    search over every branch and keeps the lexicographically smallest matrix, so
    isomorphic graphs get identical matrices.  Above that it returns the refined
    colour order with ties broken by vertex index.
    """
    n = d.n
    if n <= 1:
        return list(range(n))
    base = _refine(d, [0] * n)
    if n > CANON_EXACT_MAX_N:
        return [v for cell in _cells(base) for v in cell]

    best_mat = None
    best_order: List[int] = []
    adj = d.adj

    def search(colors: List[int]) -> None:
        nonlocal best_mat, best_order
        cells = _cells(colors)
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            mat = tuple(tuple(adj[i][j] for j in order) for i in order)
            if best_mat is None or mat < best_mat:
                best_mat, best_order = mat, order
            return
        # individualise each vertex of the first non-singleton cell
        for v in target:
            nc = [2 * c for c in colors]
            nc[v] -= 1  # v sorts just before the rest of its cell
            search(_refine(d, nc))

    search(base)
    return best_order


# -- undirected simple graphs ----------------------------------------------


class Graph:
    """Simple undirected graph: no loops, no multi-edges."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        es = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DigraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise DigraphError("simple graphs have no loops")
            e = (min(u, v), max(u, v))
            if e in es:
                raise DigraphError(f"repeated edge {e}")
            es.add(e)
        self.n = n
        self.edges = tuple(sorted(es))

    def __repr__(self) -> str:
        return f"Graph({self.n}, {list(self.edges)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and (self.n, self.edges) == (other.n, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def neighbors(self, v: int) -> List[int]:
        return [b if a == v else a for a, b in self.edges if v in (a, b)]

    def orient(self) -> Digraph:
        """Replace each edge by two opposite arcs."""
        return Digraph.from_arcs(self.n, [a for u, v in self.edges for a in ((u, v), (v, u))])

    @classmethod
    def underlying(cls, d: Digraph) -> "Graph":
        """Simple graph with an edge wherever ``d`` has an arc in either direction (loops dropped)."""
        es = {(min(i, j), max(i, j)) for i, j, _ in d.arcs() if i != j}
        return cls(d.n, es)

    @classmethod
    def all_graphs(cls, n: int) -> Iterator["Graph"]:
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            yield cls(n, [p for k, p in enumerate(pairs) if mask >> k & 1])


# -- parsing ---------------------------------------------------------------


def parse_json(text: str) -> Digraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict) or "n" not in data:
        raise ParseError('JSON digraph must be an object with key "n"')
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError(f'"n" must be a nonnegative integer, got {n!r}')
    arcs = data.get("arcs", [])
    if not isinstance(arcs, list):
        raise ParseError('"arcs" must be a list')
    mat = [[0] * n for _ in range(n)]
    for k, entry in enumerate(arcs):
        if (
            not isinstance(entry, list)
            or len(entry) not in (2, 3)
            or not all(isinstance(a, int) and not isinstance(a, bool) for a in entry)
        ):
            raise ParseError(f"arcs[{k}]: expected [tail, head] or [tail, head, multiplicity], got {entry!r}")
        u, v = entry[0], entry[1]
        m = entry[2] if len(entry) == 3 else 1
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"arcs[{k}]: vertex out of range in {entry!r} (n={n})")
        if m < 0:
            raise ParseError(f"arcs[{k}]: negative multiplicity in {entry!r}")
        mat[u][v] += m
    return Digraph(n, mat)


def parse_edge_list(text: str) -> Digraph:
    lines = [(no, ln.split()) for no, ln in enumerate(text.splitlines(), 1)]
    lines = [(no, toks) for no, toks in lines if toks and not toks[0].startswith("#")]
    if not lines:
        raise ParseError("empty edge list: expected header line 'n m'")

    def ints(no, toks):
        if len(toks) != 2:
            raise ParseError(f"line {no}: expected two integers, got {' '.join(toks)!r}")
        try:
            return int(toks[0]), int(toks[1])
        except ValueError:
            bad = next(t for t in toks if not t.lstrip("-").isdigit())
            raise ParseError(f"line {no}: bad token {bad!r}") from None

    no, head = lines[0]
    n, m = ints(no, head)
    if n < 0 or m < 0:
        raise ParseError(f"line {no}: header values must be nonnegative")
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} arcs but {len(body)} arc lines follow")
    mat = [[0] * n for _ in range(n)]
    for no, toks in body:
        u, v = ints(no, toks)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {no}: arc ({u}, {v}) out of range for n={n}")
        mat[u][v] += 1
    return Digraph(n, mat)


def parse(text: str) -> Digraph:
    """Auto-detect JSON (leading ``{``) or edge-list text."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_edge_list(text)


def serialize(d: Digraph) -> str:
    return d.to_json()


# -- named graphs ----------------------------------------------------------


def E(n: int) -> Digraph:
    """Arc-less digraph on ``n`` vertices."""
    return Digraph.empty(n)


def loop_graph(mult: int = 1) -> Digraph:
    return Digraph(1, [[mult]])


def directed_cycle(k: int) -> Digraph:
    if k == 1:
        return loop_graph()
    return Digraph.from_arcs(k, [(i, (i + 1) % k) for i in range(k)])


def directed_path(k: int) -> Digraph:
    """Directed path with ``k`` vertices (``k - 1`` arcs)."""
    return Digraph.from_arcs(k, [(i, i + 1) for i in range(k - 1)])


def complete_digraph(k: int, loops: bool = False) -> Digraph:
    return Digraph(k, [[1 if (i != j or loops) else 0 for j in range(k)] for i in range(k)])


def graph_w() -> Digraph:
    """Five vertices ``u1, u2, v, w1, w2`` = ``0, 1, 2, 3, 4``: two triangles through ``v``."""
    u1, u2, v, w1, w2 = range(5)
    return Digraph.from_arcs(5, [(u1, v), (u2, v), (v, w1), (v, w2), (w1, u2), (w2, u1)])
