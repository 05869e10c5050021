"""Brute-force ground-truth oracles for minor and s-minor containment.

``has_minor`` explores the closure of one-vertex smoothings (component
deletions are normalized to the end of a witness, where they commute).
``has_s_minor`` exhausts even-valency edge subsets, suppressing valency-2
vertices.  Both are desk-scale oracles, not production deciders.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations

from .core import (
    CIRCLE,
    FramedFourGraph,
    SmoothingChoice,
    all_smoothings,
    components,
    components_with_vertices,
    delete_component,
    fingerprint,
    is_isomorphic,
    smooth,
)


@dataclass(frozen=True)
class ComponentDeletion:
    """Remove the ``index``-th component (``components`` ordering) of the
    current graph."""

    index: int


MinorStep = SmoothingChoice | ComponentDeletion


@dataclass(frozen=True)
class MinorWitness:
    """A replayable reduction: smoothings first, component deletions last."""

    steps: tuple[MinorStep, ...]
    source: str
    target: str


@dataclass(frozen=True)
class SMinorWitness:
    """An even-valency subgraph reduction.

    ``kept_edges`` are (half-edge, half-edge) pairs of the host; vertices
    keeping two ends are suppressed, vertices keeping none are dropped, and
    ``deleted_components`` are then removed from the reduced graph.
    """

    kept_edges: tuple[tuple[int, int], ...]
    suppressed_vertices: tuple[int, ...]
    deleted_components: tuple[int, ...]
    source: str
    target: str


# ---------------------------------------------------------------------------
# replay


def replay_minor(g: FramedFourGraph, witness: MinorWitness) -> FramedFourGraph:
    """Apply the witness steps to ``g`` and return the resulting graph."""
    cur = g
    for step in witness.steps:
        if isinstance(step, SmoothingChoice):
            cur = smooth(cur, step)
        elif isinstance(step, ComponentDeletion):
            cur = delete_component(cur, step.index)
        else:
            raise TypeError(f"unknown step {step!r}")
    return cur


def replay_s_minor(g: FramedFourGraph, witness: SMinorWitness) -> FramedFourGraph:
    reduced = _reduce_to_even_subgraph(g, witness.kept_edges)
    cur = reduced
    for index in witness.deleted_components:
        cur = delete_component(cur, index)
    return cur


# ---------------------------------------------------------------------------
# minor search


def _deletions_to_match(state: FramedFourGraph, pattern: FramedFourGraph):
    """Indices (descending) of state components to delete so that the rest is
    isomorphic to ``pattern``, or None when impossible."""
    need = Counter(sub.canonical for sub in components(pattern))
    drop = []
    for i, sub in enumerate(components(state)):
        key = sub.canonical
        if need[key] > 0:
            need[key] -= 1
        else:
            drop.append(i)
    if any(need.values()):
        return None
    return tuple(sorted(drop, reverse=True))


_REACH: dict = {}


def _reachable_component_keys(comp: FramedFourGraph) -> frozenset:
    """Canonical keys of every connected graph reachable from the connected
    ``comp`` by smoothings (components of intermediate graphs included)."""
    key = comp.canonical
    cached = _REACH.get(key)
    if cached is not None:
        return cached
    acc = {key}
    for _, child in all_smoothings(comp):
        for sub in components(child):
            acc |= _reachable_component_keys(sub)
    result = frozenset(acc)
    _REACH[key] = result
    return result


def has_minor(g: FramedFourGraph, pattern: FramedFourGraph) -> MinorWitness | None:
    """Search the smoothing/deletion closure of ``g`` for ``pattern``.

    Breadth-first over smoothings with isomorphism-class memoization, so the
    returned witness uses a minimum number of smoothings; the component
    deletions that remain are appended in replay-safe (descending) order.
    """
    if pattern.vertex_count > g.vertex_count:
        return None
    pat_comps = components(pattern)
    if len(pat_comps) == 1:
        pkey = pat_comps[0].canonical
        if not any(pkey in _reachable_component_keys(c) for c in components(g)):
            return None

    start_key = g.canonical
    info = {start_key: (None, None, g)}
    queue = deque([g])
    while queue:
        cur = queue.popleft()
        drop = _deletions_to_match(cur, pattern)
        if drop is not None:
            steps: list[MinorStep] = [ComponentDeletion(i) for i in drop]
            key = cur.canonical
            while True:
                parent_key, step, _ = info[key]
                if parent_key is None:
                    break
                steps.insert(0, step)
                key = parent_key
            witness = MinorWitness(tuple(steps), fingerprint(g), fingerprint(pattern))
            if not is_isomorphic(replay_minor(g, witness), pattern):  # pragma: no cover
                raise AssertionError("minor witness failed to replay")
            return witness
        if cur.vertex_count <= pattern.vertex_count:
            continue
        for choice, child in all_smoothings(cur):
            ck = child.canonical
            if ck not in info:
                info[ck] = (cur.canonical, choice, child)
                queue.append(child)
    return None


# ---------------------------------------------------------------------------
# s-minor search


def _reduce_to_even_subgraph(g: FramedFourGraph, kept_edges) -> FramedFourGraph:
    """Keep the given edges, keep valency-4 vertices, suppress valency-2
    vertices (treating them as transparent), drop valency-0 vertices.

    Host free circles are kept; chains of kept edges closing up through
    suppressed vertices only become new free circles.  Raises ValueError when
    some vertex would keep an odd number of edge ends.
    """
    kept_partner: dict[int, int] = {}
    for h, p in kept_edges:
        if g.pairing[h] != p:
            raise ValueError(f"({h}, {p}) is not an edge of the host")
        kept_partner[h] = p
        kept_partner[p] = h
    degree = [0] * g.vertex_count
    for h in kept_partner:
        degree[h // 4] += 1
    if any(d not in (0, 2, 4) for d in degree):
        raise ValueError("kept subgraph must have even valency at every vertex")

    survivors = [v for v in range(g.vertex_count) if degree[v] == 4]
    suppressed = [v for v in range(g.vertex_count) if degree[v] == 2]
    link: dict[int, int] = {}
    for v in suppressed:
        a, b = (h for h in range(4 * v, 4 * v + 4) if h in kept_partner)
        link[a] = b
        link[b] = a

    old2new = {v: i for i, v in enumerate(survivors)}
    visited: set[int] = set()
    pairing = [-1] * (4 * len(survivors))

    def renum(h: int) -> int:
        return 4 * old2new[h // 4] + h % 4

    for v in survivors:
        for h in range(4 * v, 4 * v + 4):
            if pairing[renum(h)] != -1:
                continue
            p = kept_partner[h]
            while p // 4 not in old2new:
                visited.add(p)
                q = link[p]
                visited.add(q)
                p = kept_partner[q]
            pairing[renum(h)] = renum(p)
            pairing[renum(p)] = renum(h)

    circles = 0
    for x in link:
        if x in visited:
            continue
        cur = x
        while True:
            visited.add(cur)
            nxt = link[cur]
            visited.add(nxt)
            cur = kept_partner[nxt]
            if cur == x:
                break
        circles += 1

    return FramedFourGraph(tuple(pairing), g.free_circles + circles)


def has_s_minor(g: FramedFourGraph, pattern: FramedFourGraph) -> SMinorWitness | None:
    """Exhaust even-valency edge subsets of ``g`` looking for ``pattern``.

    Subsets are tried largest-first, so ``has_s_minor(g, g)`` returns the
    identity witness.
    """
    edges = g.edges()
    pat_key = Counter(sub.canonical for sub in components(pattern))
    for size in range(len(edges), -1, -1):
        for kept in combinations(edges, size):
            degree = [0] * g.vertex_count
            for h, p in kept:
                degree[h // 4] += 1
                degree[p // 4] += 1
            if any(d not in (0, 2, 4) for d in degree):
                continue
            reduced = _reduce_to_even_subgraph(g, kept)
            drop = _deletions_to_match(reduced, pattern)
            if drop is None:
                continue
            witness = SMinorWitness(
                kept_edges=tuple(kept),
                suppressed_vertices=tuple(
                    v for v in range(g.vertex_count) if degree[v] == 2
                ),
                deleted_components=drop,
                source=fingerprint(g),
                target=fingerprint(pattern),
            )
            if not is_isomorphic(replay_s_minor(g, witness), pattern):  # pragma: no cover
                raise AssertionError("s-minor witness failed to replay")
            return witness
    return None
