"""Half-edge model of framed 4-valent graphs and their local moves.

A graph is stored as a fixed-point-free involution on half-edge slots.
Vertex ``v`` owns the four slots ``4*v .. 4*v+3``; slot ``s`` is opposite
slot ``s ^ 2``, so the framing is structural rather than stored.  Vertex-free
circle components are a plain counter.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property


def opposite_slot(s: int) -> int:
    return s ^ 2


def adjacent_slots(s: int) -> tuple[int, int]:
    """The two slots at the same vertex that are not ``s`` and not opposite it."""
    return ((s ^ 1), (s ^ 3)) if s ^ 1 < s ^ 3 else ((s ^ 3), (s ^ 1))


class Pairing(Enum):
    """The two ways of gluing a vertex's four slots into adjacent pairs."""

    A = ((0, 1), (2, 3))
    B = ((0, 3), (1, 2))

    @property
    def slot_partner(self) -> tuple[int, int, int, int]:
        # partner slot under the gluing, indexed by slot
        return (1, 0, 3, 2) if self is Pairing.A else (3, 2, 1, 0)

    @classmethod
    def from_slot_pairs(cls, pairs) -> "Pairing":
        key = frozenset(frozenset(p) for p in pairs)
        for member in cls:
            if frozenset(frozenset(p) for p in member.value) == key:
                return member
        raise ValueError(f"not an adjacent slot pairing: {pairs!r}")

    @property
    def other(self) -> "Pairing":
        return Pairing.B if self is Pairing.A else Pairing.A


@dataclass(frozen=True)
class SmoothingChoice:
    """Resolve one vertex by gluing its slots per ``pairing``."""

    vertex: int
    pairing: Pairing


@dataclass(frozen=True)
class SourceSinkStructure:
    """Edge orientation with one opposite pair incoming, the other outgoing.

    ``incoming[h]`` is True when the edge through half-edge ``h`` is directed
    toward the vertex owning ``h``.  Free circles carry one orientation bit each.
    """

    incoming: tuple[bool, ...]
    circle_orientations: tuple[bool, ...]


@dataclass(frozen=True)
class FramedFourGraph:
    """A framed 4-valent graph, possibly with vertex-free circle components.

    ``pairing`` matches every half-edge slot with the slot at the other end of
    its edge.  Loops are allowed, including loops joining two slots of the
    same vertex.
    """

    pairing: tuple[int, ...]
    free_circles: int = 0

    def __post_init__(self):
        n4 = len(self.pairing)
        if n4 % 4 != 0:
            raise ValueError("pairing length must be a multiple of 4")
        if self.free_circles < 0:
            raise ValueError("free_circles must be >= 0")
        for h, p in enumerate(self.pairing):
            if not 0 <= p < n4 or p == h or self.pairing[p] != h:
                raise ValueError("pairing must be a fixed-point-free involution")

    # -- basic accessors ---------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.pairing) // 4

    @property
    def edge_count(self) -> int:
        return len(self.pairing) // 2

    @property
    def half_edge_count(self) -> int:
        return len(self.pairing)

    def partner(self, h: int) -> int:
        return self.pairing[h]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (h, partner) pairs with h < partner."""
        return [(h, p) for h, p in enumerate(self.pairing) if h < p]

    @property
    def is_empty(self) -> bool:
        return not self.pairing and self.free_circles == 0

    @cached_property
    def canonical(self) -> tuple:
        """Isomorphism-invariant key: sorted component encodings + circle count."""
        encodings = sorted(
            _canonical_encoding(sub.pairing) for sub, _ in _vertex_components(self)
        )
        return (tuple(encodings), self.free_circles)

    def __repr__(self):  # compact; pairing is an implementation detail
        return f"FramedFourGraph(vertices={self.vertex_count}, circles={self.free_circles})"


EMPTY_GRAPH = FramedFourGraph((), 0)
CIRCLE = FramedFourGraph((), 1)


# ---------------------------------------------------------------------------
# smoothing


def smooth(g: FramedFourGraph, choice: SmoothingChoice) -> FramedFourGraph:
    """Resolve ``choice.vertex``, gluing its slots per ``choice.pairing``.

    Gluings that close a chain of edges onto itself with no remaining vertex
    contact become free circles.  ``g`` is not mutated.
    """
    v = choice.vertex
    if not 0 <= v < g.vertex_count:
        raise ValueError(f"unknown vertex {v}")
    base = 4 * v
    glue = {}
    for s, t in choice.pairing.value:
        glue[base + s] = base + t
        glue[base + t] = base + s

    old = g.pairing

    def renum(h: int) -> int:
        return h - 4 if h >= base + 4 else h

    new_pairing = [-1] * (len(old) - 4)
    seen_at_v = set()
    for h in range(len(old)):
        if base <= h < base + 4 or new_pairing[renum(h)] != -1:
            continue
        p = old[h]
        while base <= p < base + 4:
            seen_at_v.add(p)
            q = glue[p]
            seen_at_v.add(q)
            p = old[q]
        new_pairing[renum(h)] = renum(p)
        new_pairing[renum(p)] = renum(h)

    # chains living entirely on v close up into circles
    new_circles = 0
    for start in range(base, base + 4):
        if start in seen_at_v:
            continue
        cur = start
        while True:
            seen_at_v.add(cur)
            nxt = old[cur]
            seen_at_v.add(nxt)
            cur = glue[nxt]
            if cur == start:
                break
        new_circles += 1

    return FramedFourGraph(tuple(new_pairing), g.free_circles + new_circles)


def all_smoothings(g: FramedFourGraph) -> list[tuple[SmoothingChoice, FramedFourGraph]]:
    """Every one-step smoothing: two children per vertex."""
    out = []
    for v in range(g.vertex_count):
        for pairing in (Pairing.A, Pairing.B):
            choice = SmoothingChoice(v, pairing)
            out.append((choice, smooth(g, choice)))
    return out


# ---------------------------------------------------------------------------
# connectivity


def _vertex_components(g: FramedFourGraph) -> list[tuple[FramedFourGraph, tuple[int, ...]]]:
    """Vertex-bearing components with their original vertex ids, circles stripped."""
    n = g.vertex_count
    seen = [False] * n
    comps = []
    for v0 in range(n):
        if seen[v0]:
            continue
        stack, group = [v0], []
        seen[v0] = True
        while stack:
            v = stack.pop()
            group.append(v)
            for s in range(4):
                w = g.pairing[4 * v + s] // 4
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        group.sort()
        old2new = {v: i for i, v in enumerate(group)}
        pairing = []
        for v in group:
            for s in range(4):
                p = g.pairing[4 * v + s]
                pairing.append(4 * old2new[p // 4] + p % 4)
        comps.append((FramedFourGraph(tuple(pairing), 0), tuple(group)))
    return comps


def components_with_vertices(g: FramedFourGraph) -> list[tuple[FramedFourGraph, tuple[int, ...]]]:
    """Connected components paired with their original vertex ids.

    Vertex components come first (ordered by smallest vertex), then one
    entry per free circle with an empty vertex tuple.
    """
    comps = _vertex_components(g)
    comps.extend((CIRCLE, ()) for _ in range(g.free_circles))
    return comps


def components(g: FramedFourGraph) -> list[FramedFourGraph]:
    """Connected components; each free circle is its own component."""
    return [sub for sub, _ in components_with_vertices(g)]


def is_connected(g: FramedFourGraph) -> bool:
    return len(components(g)) == 1


def delete_component(g: FramedFourGraph, index: int) -> FramedFourGraph:
    """Remove the ``index``-th component (per ``components`` ordering)."""
    comps = components_with_vertices(g)
    if not 0 <= index < len(comps):
        raise ValueError(f"no component {index}")
    _, verts = comps[index]
    if not verts:
        return FramedFourGraph(g.pairing, g.free_circles - 1)
    dead = set(verts)
    keep = [v for v in range(g.vertex_count) if v not in dead]
    old2new = {v: i for i, v in enumerate(keep)}
    pairing = []
    for v in keep:
        for s in range(4):
            p = g.pairing[4 * v + s]
            pairing.append(4 * old2new[p // 4] + p % 4)
    return FramedFourGraph(tuple(pairing), g.free_circles)


def disjoint_union(g1: FramedFourGraph, g2: FramedFourGraph) -> FramedFourGraph:
    off = len(g1.pairing)
    pairing = g1.pairing + tuple(p + off for p in g2.pairing)
    return FramedFourGraph(pairing, g1.free_circles + g2.free_circles)


# ---------------------------------------------------------------------------
# source-sink structures


def source_sink_structures(g: FramedFourGraph) -> list[SourceSinkStructure]:
    """All edge orientations that are source-sink at every vertex.

    Found by seeding one orientation bit per connected component and
    propagating the vertex constraint; an empty list means none exists.
    For a vertex, ``b=True`` orients slots {0,2} incoming and {1,3} outgoing.
    """
    n = g.vertex_count
    # parity constraint between vertices u, w joined by an edge at slots s, t:
    #   b_u XOR b_w == 1 XOR parity(s) XOR parity(t)
    comp_assignments: list[list[dict[int, bool]]] = []
    seen = [False] * n
    for v0 in range(n):
        if seen[v0]:
            continue
        assign = {v0: True}
        seen[v0] = True
        stack = [v0]
        ok = True
        while stack:
            u = stack.pop()
            for s in range(4):
                p = g.pairing[4 * u + s]
                w, t = divmod(p, 4)
                want = assign[u] ^ bool(1 ^ (s & 1) ^ (t & 1))
                if w in assign:
                    if assign[w] != want:
                        ok = False
                        break
                else:
                    assign[w] = want
                    seen[w] = True
                    stack.append(w)
            if not ok:
                break
        if not ok:
            return []
        flipped = {u: not b for u, b in assign.items()}
        comp_assignments.append([assign, flipped])

    def incoming_of(bits: dict[int, bool]) -> tuple[bool, ...]:
        return tuple(bits[h // 4] ^ bool(h & 1) for h in range(len(g.pairing)))

    structures = []
    total = len(comp_assignments)
    for mask in range(1 << total):
        merged: dict[int, bool] = {}
        for i, options in enumerate(comp_assignments):
            merged.update(options[(mask >> i) & 1])
        for circ_mask in range(1 << g.free_circles):
            circles = tuple(bool((circ_mask >> i) & 1) for i in range(g.free_circles))
            structures.append(SourceSinkStructure(incoming_of(merged), circles))
    return structures


def has_source_sink_structure(g: FramedFourGraph) -> bool:
    return bool(source_sink_structures(g))


# ---------------------------------------------------------------------------
# canonical form / isomorphism


def _canonical_encoding(pairing: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically minimal half-edge encoding of a connected graph.

    Minimizes the relabeled involution over all traversal-coherent
    relabelings: every root half-edge, and at each vertex every slot
    re-indexing that maps the entry slot to 0 and preserves the opposite
    pairing.  The minimum over this isomorphism-invariant family is a
    complete invariant, since the encoding reconstructs the graph.
    """
    n4 = len(pairing)
    if n4 == 0:
        return ()
    best: list[int] | None = None

    def search(root: int, o1: int, o3: int):
        nonlocal best
        rv, rs = divmod(root, 4)
        # frames[k] = tuple new_slot -> old_slot for new vertex k
        frames = [(rs, o1, rs ^ 2, o3)]
        vert_old = [rv]
        vert_new = {rv: 0}
        enc: list[int] = []

        def rec(i: int, tight: bool):
            # tight: enc[0:i] equals best[0:i]; pruning is sound only then
            nonlocal best
            if i == n4:
                if best is None or enc < best:
                    best = list(enc)
                return
            newv, news = divmod(i, 4)
            if newv >= len(vert_old):
                raise ValueError("graph is not connected")
            old_h = 4 * vert_old[newv] + frames[newv][news]
            p = pairing[old_h]
            pv, ps = divmod(p, 4)
            if pv in vert_new:
                k = vert_new[pv]
                val = 4 * k + frames[k].index(ps)
                if tight:
                    if val > best[i]:
                        return
                    if val < best[i]:
                        tight = False
                enc.append(val)
                rec(i + 1, tight)
                enc.pop()
                return
            # discover pv entering at slot ps; two adjacent slot orderings
            k = len(vert_old)
            val = 4 * k
            if tight:
                if val > best[i]:
                    return
                if val < best[i]:
                    tight = False
            a, b = adjacent_slots(ps)
            vert_new[pv] = k
            vert_old.append(pv)
            enc.append(val)
            for x, y in ((a, b), (b, a)):
                frames.append((ps, x, ps ^ 2, y))
                rec(i + 1, tight)
                frames.pop()
            enc.pop()
            vert_old.pop()
            del vert_new[pv]

        rec(0, best is not None)

    for root in range(n4):
        rs = root % 4
        a, b = adjacent_slots(rs)
        for o1, o3 in ((a, b), (b, a)):
            search(root, o1, o3)
    return tuple(best)


def canonical_form(g: FramedFourGraph) -> tuple:
    return g.canonical


def is_isomorphic(g1: FramedFourGraph, g2: FramedFourGraph) -> bool:
    """Framing-respecting isomorphism: preserves incidence and the opposite
    relation at every vertex, and matches free-circle counts."""
    return g1.canonical == g2.canonical


def fingerprint(g: FramedFourGraph) -> str:
    """Short, isomorphism-invariant digest of a graph."""
    return hashlib.sha256(repr(g.canonical).encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# named graphs


def _realize_with_steps(word, framings) -> tuple[FramedFourGraph, tuple[int, ...]]:
    """Realize a framed chord word and return the core-circle traversal.

    Passage one of a chord enters slot 0 and exits slot 1; passage two enters
    slot 2 (framing 0, straight re-entry) or slot 3 (framing 1) and exits the
    remaining slot.  Consecutive word positions are joined by edges; the
    returned steps are the exit half-edges position by position.
    """
    word = tuple(word)
    if not word:
        return CIRCLE, ()
    order: list = []
    positions: dict = {}
    for i, lab in enumerate(word):
        positions.setdefault(lab, []).append(i)
        if lab not in order:
            order.append(lab)
    if any(len(ps) != 2 for ps in positions.values()):
        raise ValueError("each chord label must occur exactly twice")
    vertex_of = {lab: i for i, lab in enumerate(order)}
    in_slot = {}
    out_slot = {}
    for lab, (i, j) in positions.items():
        f = framings[lab]
        if f not in (0, 1):
            raise ValueError(f"framing of {lab!r} must be 0 or 1")
        in_slot[i], out_slot[i] = 0, 1
        in_slot[j], out_slot[j] = (2, 3) if f == 0 else (3, 2)
    m = len(word)
    pairing = [-1] * (2 * m)
    steps = []
    for p in range(m):
        q = (p + 1) % m
        h1 = 4 * vertex_of[word[p]] + out_slot[p]
        h2 = 4 * vertex_of[word[q]] + in_slot[q]
        pairing[h1] = h2
        pairing[h2] = h1
        steps.append(h1)
    return FramedFourGraph(tuple(pairing), 0), tuple(steps)


def _graph_from_chords(word, framings) -> FramedFourGraph:
    return _realize_with_steps(word, framings)[0]


def odd_gon(k: int) -> FramedFourGraph:
    """The framed 4-graph of a (2k+1)-chord diagram whose interlacement is a
    (2k+1)-cycle, with the first chord framed 1 and all others framed 0."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 2 * k + 1
    word = [0] * (2 * n)
    for i in range(n):
        word[2 * i] = i + 1
        word[(2 * i + 3) % (2 * n)] = i + 1
    framings = {i + 1: (1 if i == 0 else 0) for i in range(n)}
    return _graph_from_chords(word, framings)


_ODD_GON_RE = re.compile(r"^odd_gon\((\d+)\)$")


def named_graph(name: str) -> FramedFourGraph:
    """Canonical obstruction graphs by name.

    * ``gamma``: one vertex whose two loops each join opposite slots.
    * ``gamma1``: the graph of the diagram ``1 1 2 2`` with framings 1 1.
    * ``delta``: the graph of the diagram ``1 2 3 1 2 3`` with framings 0 0 0.
    * ``odd_gon(k)``: see :func:`odd_gon`.
    """
    if name == "gamma":
        return FramedFourGraph((2, 3, 0, 1), 0)
    if name == "gamma1":
        return _graph_from_chords((1, 1, 2, 2), {1: 1, 2: 1})
    if name == "delta":
        return _graph_from_chords((1, 2, 3, 1, 2, 3), {1: 0, 2: 0, 3: 0})
    m = _ODD_GON_RE.match(name)
    if m:
        return odd_gon(int(m.group(1)))
    raise ValueError(f"unknown graph name {name!r}")
