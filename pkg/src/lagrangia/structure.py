"""Left-compression (shifting), clique detection, and enumeration of
left-compressed families.

A family is left-compressed exactly when it is closed downward under the
coordinatewise dominance order on sorted r-sets, so enumeration is ideal
(down-set) enumeration and the membership test only needs to look one
cover step down: covers in dominance order are single-coordinate
decrements by 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

from .core import (
    Edge,
    Hypergraph,
    binomial,
    colex_key,
    colex_rank,
    edge_mask,
    mask_to_edge,
)


def dominance_le(a: Sequence[int], b: Sequence[int]) -> bool:
    """True when sorted r-set a is coordinatewise <= sorted r-set b."""
    if len(a) != len(b):
        raise ValueError(f"arity mismatch: {len(a)} vs {len(b)}")
    return all(x <= y for x, y in zip(a, b))


def _cover_predecessors(edge: Edge) -> Iterator[Edge]:
    """Sets directly below ``edge`` in dominance order.

    Decrement one coordinate by 1; the result is valid only when it
    does not collide with the previous coordinate.
    """
    present = set(edge)
    for v in edge:
        if v - 1 >= 1 and v - 1 not in present:
            yield tuple(sorted(present - {v} | {v - 1}))


def is_left_compressed(g: Hypergraph) -> bool:
    """Whether every set dominated by an edge is itself an edge.

    Checking cover predecessors suffices: a family closed one step down
    is closed all the way down.
    """
    edges = g.edges
    for mask in edges:
        for pred in _cover_predecessors(mask_to_edge(mask)):
            if edge_mask(pred) not in edges:
                return False
    return True


@dataclass(frozen=True)
class CompressionTrace:
    """Shift-by-shift record of a compression run.

    ``steps`` lists (edge-before, edge-after) replacements; each one
    strictly decreases the colex rank of the replaced edge, which is
    what guarantees termination. ``fixed_point`` is true when the input
    needed no steps at all.
    """

    steps: tuple[tuple[Edge, Edge], ...]
    fixed_point: bool


def _best_shift(edge: Edge, edges: set[int]) -> Edge | None:
    """Colex-smallest single-coordinate replacement not already present."""
    present = set(edge)
    best: Edge | None = None
    for v in edge:
        for i in range(1, v):
            if i in present:
                continue
            cand = tuple(sorted(present - {v} | {i}))
            if edge_mask(cand) in edges:
                continue
            if best is None or colex_key(cand) < colex_key(best):
                best = cand
            break  # smaller i means smaller colex result for this v
    return best


def compress(g: Hypergraph) -> tuple[Hypergraph, CompressionTrace]:
    """Shift edges left until the family is left-compressed.

    Repeatedly replaces an edge with the colex-smallest absent set
    reachable by lowering a single vertex, scanning edges in colex
    order, until no edge can move. Edge count is preserved; the fixed
    point is left-compressed because a family with no feasible
    single-vertex shift is closed under dominance covers.
    """
    edges = set(g.edges)
    steps: list[tuple[Edge, Edge]] = []
    changed = True
    while changed:
        changed = False
        for mask in sorted(edges, key=lambda m: colex_key(mask_to_edge(m))):
            if mask not in edges:
                continue
            edge = mask_to_edge(mask)
            target = _best_shift(edge, edges)
            if target is not None:
                edges.remove(mask)
                edges.add(edge_mask(target))
                steps.append((edge, target))
                changed = True
    out = Hypergraph(g.r, g.n, frozenset(edges))
    return out, CompressionTrace(tuple(steps), fixed_point=not steps)


def _initial_segment_clique(g: Hypergraph, t: int) -> bool:
    """Whether [t] spans a complete subgraph."""
    if t > g.n:
        return False
    return all(
        edge_mask(c) in g.edges for c in combinations(range(1, t + 1), g.r)
    )


def _max_clique_size(g: Hypergraph, stop_at: int | None = None) -> int:
    """Branch-and-bound maximum clique; stops early at ``stop_at``.

    A clique of size k extends by vertex v only if every (r-1)-subset
    of the clique forms an edge with v, which is an O(1) bitmask lookup
    per subset.
    """
    r = g.r
    edges = g.edges
    best = r - 1
    if not edges:
        return best
    verts = list(g.non_isolated())

    def can_extend(clique: tuple[int, ...], v: int) -> bool:
        if len(clique) < r - 1:
            return True
        bit = 1 << (v - 1)
        return all(edge_mask(sub) | bit in edges for sub in combinations(clique, r - 1))

    def rec(clique: tuple[int, ...], cands: list[int]) -> bool:
        nonlocal best
        if len(clique) > best:
            best = len(clique)
            if stop_at is not None and best >= stop_at:
                return True
        for idx, v in enumerate(cands):
            if len(clique) + (len(cands) - idx) <= best:
                break
            grown = clique + (v,)
            nxt = [w for w in cands[idx + 1 :] if can_extend(grown, w)]
            if rec(grown, nxt):
                return True
        return False

    rec((), verts)
    return best


def clique_number(g: Hypergraph) -> int:
    """Largest t with every r-subset of some t-set present; r-1 if no edges."""
    return _max_clique_size(g)


def maximum_cliques(g: Hypergraph) -> list[tuple[int, ...]]:
    """All vertex sets attaining the clique number, ascending; [] if no edges."""
    if not g.edges:
        return []
    size = _max_clique_size(g)
    verts = g.non_isolated()
    out = []
    for sub in combinations(verts, size):
        if all(edge_mask(c) in g.edges for c in combinations(sub, g.r)):
            out.append(sub)
    return out


def contains_clique(g: Hypergraph, t: int) -> bool:
    """Whether the clique number is at least t.

    For a left-compressed graph any clique shifts onto an initial
    segment, so testing [t] alone is definitive; otherwise falls back
    to branch-and-bound with early exit.
    """
    if t < g.r:
        raise ValueError(f"need t >= r, got t={t}, r={g.r}")
    if t > g.n:
        return False
    if is_left_compressed(g):
        return _initial_segment_clique(g, t)
    return _max_clique_size(g, stop_at=t) >= t


# ---------------------------------------------------------------------------
# Enumeration: left-compressed families = down-sets of dominance order.
# Colex order is a linear extension of dominance, so every down-set is
# generated exactly once by adding elements in increasing colex order,
# admitting an element only when its cover predecessors are all chosen.
# ---------------------------------------------------------------------------

def _colex_universe(t: int, r: int) -> list[Edge]:
    return sorted(combinations(range(1, t + 1), r), key=colex_key)


def _cover_masks(elements: list[Edge]) -> list[int]:
    """Per element, a bitmask (over element indices) of its cover predecessors."""
    index = {e: i for i, e in enumerate(elements)}
    out = []
    for e in elements:
        pm = 0
        for pred in _cover_predecessors(e):
            if pred not in index:
                raise ValueError(
                    f"universe is not closed downward: {e} covers {pred} which is absent"
                )
            pm |= 1 << index[pred]
        out.append(pm)
    return out


def _ideals(preds: list[int], m: int) -> Iterator[int]:
    """Chosen-index bitmasks of all m-element down-sets, in DFS order."""
    if m == 0:
        yield 0
        return
    n = len(preds)

    def rec(start: int, chosen: int, need: int) -> Iterator[int]:
        for j in range(start, n - need + 1):
            if preds[j] & ~chosen:
                continue
            grown = chosen | (1 << j)
            if need == 1:
                yield grown
            else:
                yield from rec(j + 1, grown, need - 1)

    yield from rec(0, 0, m)


def _reflect(edge: Edge, t: int) -> Edge:
    return tuple(sorted(t + 1 - v for v in edge))


def enumerate_left_compressed(
    t: int, r: int, m: int, *, universe: Sequence[Edge] | None = None
) -> Iterator[Hypergraph]:
    """All left-compressed r-graphs on [t] with m edges, each once.

    Deterministic order. ``universe``, when given, must be a
    downward-closed set of r-subsets of [t]; enumeration is then
    restricted to families inside it (still left-compressed as graphs).

    For the full universe and m past the halfway point, enumeration
    runs on complements: reflection v -> t+1-v reverses dominance, so
    m-element down-sets correspond bijectively to (C(t,r)-m)-element
    down-sets.
    """
    if r < 2:
        raise ValueError("uniformity r must be >= 2")
    if t < r:
        raise ValueError(f"need t >= r, got t={t}, r={r}")
    restricted = universe is not None
    if restricted:
        elements = sorted({tuple(sorted(e)) for e in universe}, key=colex_key)
        for e in elements:
            if len(e) != r or e[0] < 1 or e[-1] > t:
                raise ValueError(f"universe member {e} is not an r-subset of [{t}]")
    else:
        elements = _colex_universe(t, r)
    total = len(elements)
    if not 0 <= m <= total:
        raise ValueError(f"need 0 <= m <= {total}, got m={m}")
    preds = _cover_masks(elements)

    if not restricted and m > total // 2:
        # Complement path: enumerate the small side, reflect back.
        refl_index = {e: i for i, e in enumerate(elements)}
        refl = [refl_index[_reflect(e, t)] for e in elements]
        full = (1 << total) - 1
        for small in _ideals(preds, total - m):
            anti = 0
            for j in range(total):
                if small >> j & 1:
                    anti |= 1 << refl[j]
            yield _from_indices(elements, full & ~anti, t, r)
        return

    for chosen in _ideals(preds, m):
        yield _from_indices(elements, chosen, t, r)


def _from_indices(elements: list[Edge], chosen: int, t: int, r: int) -> Hypergraph:
    masks = frozenset(
        edge_mask(elements[j]) for j in range(len(elements)) if chosen >> j & 1
    )
    return Hypergraph(r, t, masks)


def count_left_compressed(t: int, r: int, m: int, *, universe: Sequence[Edge] | None = None) -> int:
    """Number of left-compressed r-graphs on [t] with m edges."""
    return sum(1 for _ in enumerate_left_compressed(t, r, m, universe=universe))
