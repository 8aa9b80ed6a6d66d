"""Minimum path covers of ditrees and the leaders they induce."""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Digraph, GraphError, is_ditree


@dataclass(frozen=True)
class PathCover:
    paths: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.paths)

    def validate(self, G: Digraph) -> None:
        """Raise ``ValueError`` unless the paths are induced, disjoint and cover ``G``."""
        seen: list[int] = [v for p in self.paths for v in p]
        if sorted(seen) != list(G.vertices):
            raise ValueError("paths are not a partition of the vertex set")
        for p in self.paths:
            pos = {v: i for i, v in enumerate(p)}
            for a, b in zip(p, p[1:]):
                if (a, b) not in G.arcs:
                    raise ValueError(f"({a}, {b}) is not an arc")
            for a, b in G.arcs:
                if a in pos and b in pos and pos[b] - pos[a] != 1:
                    raise ValueError(f"path {p} is not induced: arc ({a}, {b})")

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.paths]


def _paths_from_links(n: int, links: dict[int, int]) -> tuple[tuple[int, ...], ...]:
    heads = set(links.values())
    paths = []
    for v in range(1, n + 1):
        if v in heads:
            continue
        path = [v]
        while path[-1] in links:
            path.append(links[path[-1]])
        paths.append(tuple(path))
    return tuple(sorted(paths))


def minimal_path_cover(T: Digraph) -> PathCover:
    """Exact minimum path cover by branch and bound over arc selections.

    A cover is a set of arcs with in- and out-degree at most one; its size is
    ``n`` minus the number of arcs chosen. In a ditree every such selection is
    a disjoint union of induced paths. Among optimal covers the
    lexicographically least sorted path list is returned.
    """
    if not is_ditree(T):
        raise GraphError("minimal_path_cover requires a ditree")
    arcs = sorted(T.arcs)
    best_count = 0  # all-singletons cover
    best_key = _paths_from_links(T.n, {})
    links: dict[int, int] = {}
    has_in: set[int] = set()

    def bound(idx: int) -> int:
        tails = {u for u, v in arcs[idx:] if u not in links and v not in has_in}
        heads = {v for u, v in arcs[idx:] if u not in links and v not in has_in}
        return len(links) + min(len(tails), len(heads))

    def search(idx: int) -> None:
        nonlocal best_count, best_key
        if bound(idx) < best_count:
            return
        if idx == len(arcs):
            key = _paths_from_links(T.n, links)
            if len(links) > best_count or key < best_key:
                best_count, best_key = len(links), key
            return
        u, v = arcs[idx]
        if u not in links and v not in has_in:
            links[u] = v
            has_in.add(v)
            search(idx + 1)
            del links[u]
            has_in.discard(v)
        search(idx + 1)

    search(0)
    cover = PathCover(best_key)
    cover.validate(T)
    return cover


def path_cover_number(T: Digraph) -> int:
    return len(minimal_path_cover(T))


def leaders_from_cover(cover: PathCover) -> frozenset[int]:
    """Initial points of the cover's paths."""
    return frozenset(p[0] for p in cover.paths)
