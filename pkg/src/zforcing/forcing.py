"""Color-change rule, derived sets, and exact zero forcing number search.

A black vertex with exactly one white out-neighbour turns that neighbour
black. Closures are computed on bitmasks; the chronicle-producing path
applies one force at a time, always the lexicographically smallest
applicable ``(u, v)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .graphs import Digraph, GraphError

Force = tuple[int, int]


class BudgetExhausted(RuntimeError):
    """Subset search stopped early; sizes below ``lower_bound`` were ruled out."""

    def __init__(self, lower_bound: int, subsets_examined: int):
        self.lower_bound = lower_bound
        self.subsets_examined = subsets_examined
        super().__init__(
            f"subset budget exhausted after {subsets_examined} subsets; "
            f"zero forcing number >= {lower_bound} (inconclusive)"
        )


@dataclass(frozen=True)
class ZfsSearchResult:
    zfn: int
    witness: frozenset[int]
    subsets_examined: int


def _validated(G: Digraph, vertices: Iterable[int]) -> frozenset[int]:
    vs = frozenset(int(v) for v in vertices)
    for v in vs:
        if not 1 <= v <= G.n:
            raise GraphError(f"vertex {v} out of range 1..{G.n}")
    return vs


def _to_mask(vs: Iterable[int]) -> int:
    return sum(1 << (v - 1) for v in vs)


def _from_mask(mask: int) -> frozenset[int]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def _closure_mask(out_masks: tuple[int, ...], black: int) -> int:
    changed = True
    while changed:
        changed = False
        for u, nbrs in enumerate(out_masks):
            if not (black >> u) & 1:
                continue
            white = nbrs & ~black
            if white and not white & (white - 1):
                black |= white
                changed = True
    return black


def applicable_forces(G: Digraph, coloring: Iterable[int]) -> list[Force]:
    black = _validated(G, coloring)
    forces = []
    for u in sorted(black):
        white = [w for w in G.out_neighbors(u) if w not in black]
        if len(white) == 1:
            forces.append((u, white[0]))
    return forces


def derived_set(G: Digraph, coloring: Iterable[int]) -> tuple[frozenset[int], list[Force]]:
    """Return the derived set of ``coloring`` and the chronicle that built it."""
    black = set(_validated(G, coloring))
    chronicle: list[Force] = []
    while True:
        forces = applicable_forces(G, black)
        if not forces:
            return frozenset(black), chronicle
        u, v = forces[0]
        black.add(v)
        chronicle.append((u, v))


def derived_mask(G: Digraph, coloring: Iterable[int]) -> frozenset[int]:
    """Derived set without the chronicle; fast path for searches."""
    return _from_mask(_closure_mask(G.out_masks, _to_mask(_validated(G, coloring))))


def replay_chronicle(G: Digraph, initial: Iterable[int], forces: Iterable[Force]) -> frozenset[int]:
    """Replay ``forces`` from ``initial``, raising ``ValueError`` on an illegal step."""
    black = set(_validated(G, initial))
    for step, (u, v) in enumerate(forces):
        if u not in black:
            raise ValueError(f"step {step}: {u} is not black")
        if v in black:
            raise ValueError(f"step {step}: {v} is already black")
        white = [w for w in G.out_neighbors(u) if w not in black]
        if white != [v]:
            raise ValueError(f"step {step}: {v} is not the unique white out-neighbour of {u}")
        black.add(v)
    return frozenset(black)


def is_zfs(G: Digraph, Z: Iterable[int]) -> bool:
    full = (1 << G.n) - 1
    return _closure_mask(G.out_masks, _to_mask(_validated(G, Z))) == full


def _candidates(G: Digraph, size: int) -> Iterator[int]:
    """Masks of ``size``-subsets that contain every source, in lex order."""
    mandatory = sorted(G.sources())
    rest = [v for v in G.vertices if v not in G.sources()]
    k = size - len(mandatory)
    if k < 0 or k > len(rest):
        return
    base = _to_mask(mandatory)
    for combo in combinations(rest, k):
        yield base | _to_mask(combo)


def zfs_of_size(G: Digraph, size: int, limit: int | None = None) -> list[frozenset[int]]:
    """All zero forcing sets of exactly ``size`` vertices, lexicographic, capped at ``limit``."""
    full = (1 << G.n) - 1
    found = []
    for mask in _candidates(G, size):
        if _closure_mask(G.out_masks, mask) == full:
            found.append(_from_mask(mask))
            if limit is not None and len(found) >= limit:
                break
    return found


def zero_forcing_number(G: Digraph, budget: int | None = None) -> ZfsSearchResult:
    """Exact zero forcing number by cardinality-ascending enumeration.

    Every vertex of in-degree zero is forced into the candidate, since nothing
    can ever turn it black. The witness is the lexicographically least
    minimum zero forcing set. ``budget`` caps the number of subsets tested;
    hitting it raises :class:`BudgetExhausted`.
    """
    full = (1 << G.n) - 1
    examined = 0
    out_masks = G.out_masks
    for size in range(len(G.sources()), G.n + 1):
        for mask in _candidates(G, size):
            if budget is not None and examined >= budget:
                raise BudgetExhausted(size, examined)
            examined += 1
            if _closure_mask(out_masks, mask) == full:
                return ZfsSearchResult(size, _from_mask(mask), examined)
    raise AssertionError("the full vertex set is always forcing")


def enumerate_minimal_zfs(G: Digraph, limit: int) -> list[frozenset[int]]:
    if limit < 1:
        raise ValueError("limit must be >= 1")
    return zfs_of_size(G, zero_forcing_number(G).zfn, limit)
