"""Simple directed and undirected graphs on vertices ``1..n``.

All public functions speak 1-based vertex labels. Graphs are frozen after
construction, so the cached adjacency views below are safe to share.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import networkx as nx
import numpy as np


class GraphError(ValueError):
    """Raised for graphs that violate the simple, loop-free invariants."""


class GraphParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"{message} at line {lineno}")


@dataclass(frozen=True)
class Digraph:
    """Simple loop-free digraph. ``arcs`` holds ordered pairs ``(i, j)``."""

    n: int
    arcs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        arcs = frozenset((int(i), int(j)) for i, j in self.arcs)
        for i, j in arcs:
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise GraphError(f"arc ({i}, {j}) out of range 1..{self.n}")
        object.__setattr__(self, "arcs", arcs)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def _out(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for i, j in self.arcs:
            out[i].append(j)
        return {v: tuple(sorted(ws)) for v, ws in out.items()}

    @cached_property
    def _in_degree(self) -> dict[int, int]:
        deg = dict.fromkeys(self.vertices, 0)
        for _, j in self.arcs:
            deg[j] += 1
        return deg

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        """Out-neighbourhoods as bitmasks, index ``v - 1`` and bit ``w - 1``."""
        return tuple(sum(1 << (w - 1) for w in self._out[v]) for v in self.vertices)

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise GraphError(f"vertex {v} out of range 1..{self.n}")

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._out[v]

    def in_degree(self, v: int) -> int:
        self._check_vertex(v)
        return self._in_degree[v]

    def sources(self) -> frozenset[int]:
        """Vertices of in-degree zero."""
        return frozenset(v for v, d in self._in_degree.items() if d == 0)

    def is_symmetric(self) -> bool:
        return all((j, i) in self.arcs for i, j in self.arcs)

    def adjacency(self) -> np.ndarray:
        """0/1 matrix ``A`` with ``A[i, j] = 1`` iff ``(j, i)`` is an arc.

        This is the transposed convention of the qualitative class, so ``A``
        itself conforms to the pattern of the graph.
        """
        A = np.zeros((self.n, self.n))
        for i, j in self.arcs:
            A[j - 1, i - 1] = 1.0
        return A

    def laplacian(self) -> np.ndarray:
        """``L = diag(A 1) - A`` with ``A`` from :meth:`adjacency`; ``-L`` conforms."""
        A = self.adjacency()
        return np.diag(A.sum(axis=1)) - A


@dataclass(frozen=True)
class UndirectedGraph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        edges = set()
        for i, j in self.edges:
            i, j = int(i), int(j)
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise GraphError(f"edge {{{i}, {j}}} out of range 1..{self.n}")
            edges.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(edges))

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)


def lift_undirected(H: UndirectedGraph) -> Digraph:
    """Replace every edge by the two opposite arcs."""
    arcs = set()
    for i, j in H.edges:
        arcs.add((i, j))
        arcs.add((j, i))
    return Digraph(H.n, frozenset(arcs))


def reachable_from(G: Digraph, sources: Iterable[int]) -> frozenset[int]:
    """All vertices reachable by a directed path from ``sources`` (inclusive)."""
    seen = set()
    for s in sources:
        G._check_vertex(s)
        seen.add(s)
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for w in G.out_neighbors(u):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def is_ditree(G: Digraph) -> bool:
    """True iff the underlying undirected graph is a tree.

    Antiparallel arcs count as two parallel edges, i.e. a cycle.
    """
    if len(G.arcs) != G.n - 1:
        return False
    underlying = {(min(i, j), max(i, j)) for i, j in G.arcs}
    if len(underlying) != len(G.arcs):
        return False
    graph = nx.Graph()
    graph.add_nodes_from(G.vertices)
    graph.add_edges_from(underlying)
    return nx.is_connected(graph)


# -- generators ---------------------------------------------------------------


def gen_path(n: int) -> UndirectedGraph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return UndirectedGraph(n, frozenset((i, i + 1) for i in range(1, n)))


def gen_cycle(n: int) -> UndirectedGraph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return UndirectedGraph(n, frozenset((i, i % n + 1) for i in range(1, n + 1)))


def gen_complete(n: int) -> UndirectedGraph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return UndirectedGraph(n, frozenset((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def gen_circulant(n: int, offsets: Iterable[int]) -> UndirectedGraph:
    """Vertex ``i`` joined to ``i +/- s (mod n)`` for every offset ``s``."""
    offsets = sorted(set(int(s) for s in offsets))
    if n < 2:
        raise GraphError("circulant needs n >= 2")
    for s in offsets:
        if not 1 <= s <= n / 2:
            raise GraphError(f"offset {s} outside 1..{n // 2}")
    edges = set()
    for i in range(n):
        for s in offsets:
            a, b = i + 1, (i + s) % n + 1
            edges.add((min(a, b), max(a, b)))
    return UndirectedGraph(n, frozenset(edges))


def gen_random_digraph(n: int, arc_probability: float, seed: int) -> Digraph:
    """Each ordered pair ``(i, j)``, ``i != j``, kept independently."""
    if not 0.0 <= arc_probability <= 1.0:
        raise GraphError("arc_probability must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    keep = rng.random(len(pairs)) < arc_probability
    return Digraph(n, frozenset(p for p, k in zip(pairs, keep) if k))


def gen_random_ditree(n: int, seed: int, orientation: str = "any") -> Digraph:
    """Uniform labelled tree (Pruefer code) with oriented edges.

    ``orientation="any"`` flips a fair coin per edge; ``"out"`` orients every
    edge away from vertex 1, giving an out-arborescence.
    """
    if n < 1:
        raise GraphError("ditree needs n >= 1")
    if orientation not in ("any", "out"):
        raise ValueError(f"unknown orientation {orientation!r}")
    rng = np.random.default_rng(seed)
    if n == 1:
        return Digraph(1)
    if n == 2:
        tree = nx.path_graph(2)
    else:
        tree = nx.from_prufer_sequence(rng.integers(0, n, size=n - 2).tolist())
    if orientation == "out":
        arcs = {(u + 1, v + 1) for u, v in nx.bfs_edges(tree, 0)}
    else:
        arcs = set()
        for (u, v), flip in zip(sorted(tree.edges()), rng.random(n - 1) < 0.5):
            arcs.add((v + 1, u + 1) if flip else (u + 1, v + 1))
    return Digraph(n, frozenset(arcs))


# -- edge-list text format ----------------------------------------------------


def parse_edge_list(text: str, directed: bool = True) -> Digraph | UndirectedGraph:
    """Parse ``i j`` lines, optional ``n <count>`` header, ``#`` comments."""
    n = None
    pairs: list[tuple[int, int]] = []
    seen = set()
    first_content = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if first_content and tokens[0] == "n":
            first_content = False
            if len(tokens) != 2 or not tokens[1].isdigit() or int(tokens[1]) < 1:
                raise GraphParseError(lineno, "malformed header")
            n = int(tokens[1])
            continue
        first_content = False
        if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
            raise GraphParseError(lineno, "malformed line")
        i, j = int(tokens[0]), int(tokens[1])
        if i == 0 or j == 0:
            raise GraphParseError(lineno, "vertex index 0")
        if i == j:
            raise GraphParseError(lineno, "self-loop")
        key = (i, j) if directed else (min(i, j), max(i, j))
        if key in seen:
            raise GraphParseError(lineno, "duplicate arc" if directed else "duplicate edge")
        seen.add(key)
        pairs.append((i, j))
        if n is not None and max(i, j) > n:
            raise GraphParseError(lineno, f"vertex exceeds header count {n}")
    if n is None:
        if not pairs:
            raise GraphParseError(0, "empty graph without header")
        n = max(max(p) for p in pairs)
    if directed:
        return Digraph(n, frozenset(pairs))
    return UndirectedGraph(n, frozenset(pairs))


def to_edge_list(graph: Digraph | UndirectedGraph) -> str:
    pairs = graph.arcs if isinstance(graph, Digraph) else graph.edges
    lines = [f"n {graph.n}"] + [f"{i} {j}" for i, j in sorted(pairs)]
    return "\n".join(lines) + "\n"
