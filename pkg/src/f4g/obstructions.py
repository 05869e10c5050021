"""Planarity and projective-plane checkerboard embeddability deciders.

Both deciders work per connected component through a rotating circuit's
framed chord diagram.  Planarity holds iff no chord is framed 1 and the
interlacement graph is bipartite.  Checkerboard embeddability into the
projective plane reduces to a constrained 2-coloring of an auxiliary graph H
on the chords, with every framing-1 chord forced onto the Moebius side.
Negative verdicts carry obstruction evidence that ``materialize_obstruction``
turns into an explicit, replay-validated smoothing sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .core import (
    FramedFourGraph,
    SmoothingChoice,
    components,
    fingerprint,
    is_isomorphic,
    named_graph,
    smooth,
)
from .circuits import (
    FramedChordDiagram,
    RotatingCircuit,
    TraversalSplitError,
    _trace_curves,
    change_transitions,
    chord_diagram,
    interlacement_graph,
    linked,
    rotating_circuit,
)
from .minors import MinorWitness, has_minor, replay_minor


# ---------------------------------------------------------------------------
# verdict types


@dataclass(frozen=True)
class Obstruction:
    """Negative evidence: which obstruction graph, and the chords exhibiting it."""

    kind: str  # "gamma" | "delta" | "gamma1"
    chords: tuple[int, ...]
    witness: Optional[MinorWitness] = None


@dataclass(frozen=True)
class ComponentPlanarity:
    planar: bool
    circuit: RotatingCircuit
    diagram: FramedChordDiagram
    bipartition: Optional[tuple[tuple[int, ...], tuple[int, ...]]]
    obstruction: Optional[Obstruction]


@dataclass(frozen=True)
class PlanarityVerdict:
    planar: bool
    components: tuple[ComponentPlanarity, ...]

    @property
    def obstruction(self) -> Optional[Obstruction]:
        for comp in self.components:
            if comp.obstruction is not None:
                return comp.obstruction
        return None


@dataclass(frozen=True)
class ComponentRp2:
    embeddable: bool
    planar: bool
    circuit: RotatingCircuit
    diagram: FramedChordDiagram
    split: Optional[tuple[tuple[int, ...], tuple[int, ...]]]  # (D1, D2)
    obstruction: Optional[Obstruction]


@dataclass(frozen=True)
class Rp2Verdict:
    embeddable: bool
    components: tuple[ComponentRp2, ...]
    multi: bool

    @property
    def obstruction(self) -> Optional[Obstruction]:
        for comp in self.components:
            if comp.obstruction is not None:
                return comp.obstruction
        return None


@dataclass(frozen=True)
class HGraph:
    """Auxiliary graph on the chords of a diagram.

    Chords are joined when they cannot share a side of the split: a linked
    pair with a framing-0 member, or an unlinked pair of framing-1 chords.
    Framing-1 chords are forced onto the D2 (Moebius) side.
    """

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    forced: frozenset[int]

    def adjacency(self) -> dict:
        adj: dict = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj


@dataclass(frozen=True)
class TwoColoring:
    d1: tuple[int, ...]
    d2: tuple[int, ...]


@dataclass(frozen=True)
class ColoringConflict:
    """Why a forced 2-coloring fails: an odd cycle of H, or an odd-length
    path joining two forced vertices."""

    kind: str  # "odd_cycle" | "forced_path"
    chords: tuple[int, ...]


@dataclass(frozen=True)
class TransverseCyclePair:
    """Two edge-disjoint closed walks crossing transversally at one vertex.

    Each walk is a tuple of exit half-edges; both pass straight through
    ``vertex`` (one via slots 0/2, the other via 1/3) and meet every other
    shared vertex tangentially.
    """

    vertex: int
    cycle_a: tuple[int, ...]
    cycle_b: tuple[int, ...]


# ---------------------------------------------------------------------------
# small graph helpers (adjacency dicts over sortable vertices)


def _two_color(adj: dict) -> Optional[dict]:
    """Proper 2-coloring (0/1) of every component, or None when non-bipartite.
    Components are seeded color 0 at their smallest vertex."""
    color: dict = {}
    for root in sorted(adj):
        if root in color:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            u = queue.pop()
            for w in sorted(adj[u]):
                if w not in color:
                    color[w] = color[u] ^ 1
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def _extract_simple_odd_cycle(walk: list) -> tuple:
    pos: dict = {}
    for i, x in enumerate(walk):
        if x in pos:
            j = pos[x]
            inner = walk[j:i]
            outer = walk[:j] + walk[i:]
            return _extract_simple_odd_cycle(inner if len(inner) % 2 else outer)
        pos[x] = i
    return tuple(walk)


def minimal_odd_cycle(adj: dict) -> Optional[tuple]:
    """A shortest odd cycle, as a tuple of vertices in cyclic order."""
    best: Optional[tuple] = None
    for root in sorted(adj):
        dist = {root: 0}
        parent: dict = {root: None}
        order = [root]
        qi = 0
        while qi < len(order):
            u = order[qi]
            qi += 1
            for w in sorted(adj[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    order.append(w)
        for u in order:
            for w in sorted(adj[u]):
                if u < w and w in dist and dist[u] == dist[w]:
                    if best is not None and dist[u] + dist[w] + 1 >= len(best):
                        continue
                    up, wp = [], []
                    x = u
                    while x is not None:
                        up.append(x)
                        x = parent[x]
                    x = w
                    while x is not None:
                        wp.append(x)
                        x = parent[x]
                    walk = up[::-1] + wp[:-1]  # root..u, w..(child of root)
                    cyc = _extract_simple_odd_cycle(walk)
                    if best is None or len(cyc) < len(best):
                        best = cyc
    return best


def _shortest_path(adj: dict, src, dst) -> list:
    parent = {src: None}
    queue = [src]
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        if u == dst:
            break
        for w in sorted(adj[u]):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    path = []
    x = dst
    while x is not None:
        path.append(x)
        x = parent[x]
    return path[::-1]


def _cycle_order(adj: dict) -> Optional[tuple]:
    """Vertex order of a graph that is a single cycle; None otherwise."""
    nodes = sorted(adj)
    if len(nodes) < 3 or any(len(adj[v]) != 2 for v in nodes):
        return None
    start = nodes[0]
    order = [start]
    prev, cur = None, start
    while True:
        nxt = sorted(w for w in adj[cur] if w != prev)
        step = nxt[0] if nxt else prev
        if step == start:
            break
        order.append(step)
        prev, cur = cur, step
        if len(order) > len(nodes):
            return None
    return tuple(order) if len(order) == len(nodes) else None


# ---------------------------------------------------------------------------
# planarity


def is_planar(g: FramedFourGraph) -> PlanarityVerdict:
    """Decide planarity per component.

    A component with a framing-1 chord in its diagram is non-planar with
    obstruction kind ``gamma``; an all-framing-0 component is planar iff its
    interlacement graph is bipartite, a minimal odd cycle being the ``delta``
    evidence and the 2-coloring the planar witness.
    """
    records = []
    for sub in components(g):
        circuit = rotating_circuit(sub)
        diagram = chord_diagram(circuit)
        ones = sorted(lab for lab in diagram.labels if diagram.framing(lab) == 1)
        if ones:
            records.append(
                ComponentPlanarity(
                    False, circuit, diagram, None, Obstruction("gamma", (ones[0],))
                )
            )
            continue
        adj = {lab: set(nb) for lab, nb in interlacement_graph(diagram).items()}
        color = _two_color(adj)
        if color is None:
            cyc = minimal_odd_cycle(adj)
            records.append(
                ComponentPlanarity(
                    False, circuit, diagram, None, Obstruction("delta", cyc)
                )
            )
        else:
            part = (
                tuple(sorted(v for v, c in color.items() if c == 0)),
                tuple(sorted(v for v, c in color.items() if c == 1)),
            )
            records.append(ComponentPlanarity(True, circuit, diagram, part, None))
    return PlanarityVerdict(all(r.planar for r in records), tuple(records))


# ---------------------------------------------------------------------------
# the two-cycle witness


def gamma_s_minor_witness(g: FramedFourGraph) -> Optional[TransverseCyclePair]:
    """Search for two edge-disjoint cycles crossing transversally at exactly
    one vertex (straight through it, turning tangentially wherever else they
    meet).  Exists iff the graph is non-planar."""
    pairing = g.pairing
    n4 = len(pairing)
    for v in range(g.vertex_count):
        base = 4 * v
        used = [False] * n4
        for s in range(4):
            used[base + s] = True

        trail_a: list[int] = []
        trail_b: list[int] = []
        a_vertices: set[int] = set()

        def exits(s: int) -> tuple[int, int, int]:
            return (s ^ 1, s ^ 3, s ^ 2)  # adjacent first, straight last

        def walk_b(arrival: int) -> bool:
            if arrival == base + 1:
                return True
            w, s = divmod(arrival, 4)
            for t in exits(s):
                e = 4 * w + t
                if used[e]:
                    continue
                if t == s ^ 2 and w in a_vertices:
                    continue  # a second transverse crossing
                used[e] = used[pairing[e]] = True
                trail_b.append(e)
                if walk_b(pairing[e]):
                    return True
                trail_b.pop()
                used[e] = used[pairing[e]] = False
            return False

        def start_b() -> bool:
            e = base + 3
            arrival = pairing[e]
            if arrival == base + 1:
                trail_b.append(e)
                return True
            if arrival // 4 == v or used[arrival]:
                return False
            used[arrival] = True
            trail_b.append(e)
            if walk_b(arrival):
                return True
            trail_b.pop()
            used[arrival] = False
            return False

        def walk_a(arrival: int) -> bool:
            if arrival == base:
                a_vertices.clear()
                a_vertices.update(h // 4 for h in trail_a)
                a_vertices.update(pairing[h] // 4 for h in trail_a)
                a_vertices.discard(v)
                return start_b()
            w, s = divmod(arrival, 4)
            if w == v:
                return False
            for t in exits(s):
                e = 4 * w + t
                if used[e]:
                    continue
                used[e] = used[pairing[e]] = True
                trail_a.append(e)
                if walk_a(pairing[e]):
                    return True
                trail_a.pop()
                used[e] = used[pairing[e]] = False
            return False

        e0 = base + 2
        arrival0 = pairing[e0]
        if arrival0 // 4 == v and arrival0 != base:
            continue  # slot 2 loops onto a reserved slot; no straight passage
        trail_a.append(e0)
        if arrival0 != base:
            used[arrival0] = True
        if walk_a(arrival0):
            return TransverseCyclePair(v, tuple(trail_a), tuple(trail_b))
    return None


# ---------------------------------------------------------------------------
# the H graph and its forced coloring


def build_H(d: FramedChordDiagram) -> HGraph:
    """Edges join chords that must take different sides: linked pairs with a
    framing-0 member, and unlinked framing-1 pairs.  Framing-1 chords are
    forced."""
    labels = d.labels
    edges = set()
    for i, a in enumerate(labels):
        for b in labels[i + 1 :]:
            fa, fb = d.framing(a), d.framing(b)
            is_linked = linked(d, a, b)
            if (is_linked and 0 in (fa, fb)) or (not is_linked and fa == fb == 1):
                edges.add((a, b) if a <= b else (b, a))
    forced = frozenset(lab for lab in labels if d.framing(lab) == 1)
    return HGraph(labels, frozenset(edges), forced)


def forced_two_coloring(h: HGraph) -> Union[TwoColoring, ColoringConflict]:
    """2-color H with every forced vertex on D2 and neighbors apart.

    Failure returns a minimal odd cycle of H, or a shortest odd-length path
    between two forced vertices that a bipartition cannot reconcile.
    """
    adj = h.adjacency()
    color = _two_color(adj)
    if color is None:
        return ColoringConflict("odd_cycle", minimal_odd_cycle(adj))

    # group vertices by component to orient each coloring
    comp_of: dict = {}
    for root in sorted(adj):
        if root in comp_of:
            continue
        comp_of[root] = root
        stack = [root]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in comp_of:
                    comp_of[w] = root
                    stack.append(w)

    comps: dict = {}
    for vtx, root in comp_of.items():
        comps.setdefault(root, []).append(vtx)

    d1: list = []
    d2: list = []
    for root in sorted(comps):
        members = sorted(comps[root])
        forced_here = [vtx for vtx in members if vtx in h.forced]
        if forced_here:
            want = color[forced_here[0]]
            clash = [vtx for vtx in forced_here if color[vtx] != want]
            if clash:
                path = _shortest_path(adj, forced_here[0], clash[0])
                best = path
                for src in forced_here:
                    for dst in forced_here:
                        if color[src] == color[dst]:
                            continue
                        cand = _shortest_path(adj, src, dst)
                        if len(cand) < len(best) or (
                            len(cand) == len(best) and cand < best
                        ):
                            best = cand
                return ColoringConflict("forced_path", tuple(best))
            d2.extend(vtx for vtx in members if color[vtx] == want)
            d1.extend(vtx for vtx in members if color[vtx] != want)
        else:
            # free component: put the smallest vertex's class on the disc side
            want = color[members[0]]
            d1.extend(vtx for vtx in members if color[vtx] == want)
            d2.extend(vtx for vtx in members if color[vtx] != want)
    return TwoColoring(tuple(sorted(d1)), tuple(sorted(d2)))


def check_split(
    d: FramedChordDiagram, d1: tuple[int, ...], d2: tuple[int, ...]
) -> bool:
    """Validate the projective-plane split conditions directly:

    all framing-1 chords lie in D2; framing-0 chords of D1 are pairwise
    unlinked; framing-1 chords of D2 are pairwise linked; framing-0 chords of
    D2 are unlinked with every other chord of D2.
    """
    if sorted(d1 + d2) != sorted(d.labels):
        return False
    if any(d.framing(lab) == 1 for lab in d1):
        return False
    for i, a in enumerate(d1):
        for b in d1[i + 1 :]:
            if linked(d, a, b):
                return False
    for i, a in enumerate(d2):
        for b in d2[i + 1 :]:
            fa, fb = d.framing(a), d.framing(b)
            if fa == 1 and fb == 1:
                if not linked(d, a, b):
                    return False
            elif linked(d, a, b):
                return False
    return True


# ---------------------------------------------------------------------------
# the projective-plane decider


def _component_planar(diagram: FramedChordDiagram) -> bool:
    if any(b == 1 for b in diagram.framing_bits):
        return False
    adj = {lab: set(nb) for lab, nb in interlacement_graph(diagram).items()}
    return _two_color(adj) is not None


def _classify_conflict(d: FramedChordDiagram, conflict: ColoringConflict) -> str:
    if conflict.kind == "odd_cycle" and all(
        d.framing(lab) == 0 for lab in conflict.chords
    ):
        return "delta"
    return "gamma1"


def rp2_checkerboard_embeddable(g: FramedFourGraph, multi: bool = False) -> Rp2Verdict:
    """Decide checkerboard embeddability into the projective plane.

    Per component: build H from a rotating circuit's diagram and run the
    forced 2-coloring; success yields the (D1, D2) split, failure an
    obstruction (``delta`` for an all-framing-0 odd cycle, else ``gamma1``).

    With ``multi=True`` the whole graph is additionally required to have at
    most one non-planar component, since disjoint Moebius parts cannot
    coexist; by default components are judged independently.
    """
    records = []
    for sub in components(g):
        circuit = rotating_circuit(sub)
        diagram = chord_diagram(circuit)
        result = forced_two_coloring(build_H(diagram))
        planar = _component_planar(diagram)
        if isinstance(result, TwoColoring):
            records.append(
                ComponentRp2(
                    True, planar, circuit, diagram, (result.d1, result.d2), None
                )
            )
        else:
            kind = _classify_conflict(diagram, result)
            records.append(
                ComponentRp2(
                    False,
                    planar,
                    circuit,
                    diagram,
                    None,
                    Obstruction(kind, result.chords),
                )
            )
    embeddable = all(r.embeddable for r in records)
    if multi and embeddable:
        embeddable = sum(1 for r in records if not r.planar) <= 1
    return Rp2Verdict(embeddable, tuple(records), multi)


# ---------------------------------------------------------------------------
# materializing obstructions


class _Reducer:
    """Tracks a graph and a rotating circuit through smoothings and circuit
    changes, accumulating replayable steps."""

    def __init__(self, g: FramedFourGraph, circuit: RotatingCircuit):
        self.graph = g
        self.circuit = circuit
        self.steps: list[SmoothingChoice] = []

    @property
    def diagram(self) -> FramedChordDiagram:
        return chord_diagram(self.circuit)

    def delete_chords(self, labels) -> None:
        """Smooth away chords; each deletion uses the circuit's transition at
        the vertex, which splices the vertex out of the same traversal."""
        vertices = sorted(
            (self.circuit.vertex_of_chord(lab) for lab in labels), reverse=True
        )
        transitions = dict(self.circuit.transitions)
        for v in vertices:
            choice = SmoothingChoice(v, transitions[v])
            self.graph = smooth(self.graph, choice)
            self.steps.append(choice)
            transitions = {
                (w if w < v else w - 1): p for w, p in transitions.items() if w != v
            }
        if self.graph.vertex_count:
            assignment = [transitions[w] for w in range(self.graph.vertex_count)]
            curves = _trace_curves(self.graph, assignment)
            if len(curves) != 1:  # pragma: no cover - splicing keeps one curve
                raise AssertionError("chord deletion split the traversal")
            self.circuit = RotatingCircuit(self.graph, curves[0])
        else:
            self.circuit = rotating_circuit(self.graph)

    def change(self, labels) -> None:
        vertices = [self.circuit.vertex_of_chord(lab) for lab in labels]
        self.circuit = change_transitions(self.circuit, vertices)


def _unlinked_forced_pair(d: FramedChordDiagram):
    ones = [lab for lab in d.labels if d.framing(lab) == 1]
    for i, a in enumerate(ones):
        for b in ones[i + 1 :]:
            if not linked(d, a, b):
                return (a, b)
    return None


def _gon_cycle(d: FramedChordDiagram):
    """Cycle order of a diagram whose interlacement graph is one cycle."""
    adj = {lab: set(nb) for lab, nb in interlacement_graph(d).items()}
    return _cycle_order(adj)


def _reduce_pgon_tail(red: _Reducer) -> bool:
    """Shrink an odd-gon diagram with at most one framing-1 chord down to the
    obstruction graph: joint circuit changes at the two chords after the
    distinguished one, deleting them, until 3 chords remain."""
    guard = 0
    while True:
        guard += 1
        if guard > red.diagram.n_chords + 64:  # pragma: no cover
            return False
        d = red.diagram
        cyc = _gon_cycle(d)
        if cyc is None or len(cyc) % 2 == 0:
            return False
        ones = [lab for lab in cyc if d.framing(lab) == 1]
        if len(ones) > 1:
            return False
        if ones:
            i = cyc.index(ones[0])
            cyc = cyc[i:] + cyc[:i]
        if len(cyc) == 3:
            if not ones:
                return is_isomorphic(red.graph, named_graph("delta"))
            # flip at the framing-1 chord; its linked partners become an
            # unlinked framing-1 pair, then drop the flipped chord
            red.change((cyc[0],))
            red.delete_chords((cyc[0],))
            return is_isomorphic(red.graph, named_graph("gamma1"))
        try:
            red.change((cyc[1], cyc[2]))
        except TraversalSplitError:  # pragma: no cover - linked neighbors merge
            return False
        red.delete_chords((cyc[1], cyc[2]))


def _reduce_conflict(red: _Reducer, kind: str) -> bool:
    """Drive a reduced diagram to its obstruction graph.

    Handles in turn: an unlinked framing-1 pair (delete the rest), odd-gon
    diagrams (shrink), fresh odd-cycle conflicts (restrict to the cycle), and
    forced-path conflicts (re-encode by a circuit change at a forced endpoint,
    which rewrites its neighborhood and exposes one of the other cases).
    """
    seen = set()
    while True:
        d = red.diagram
        pair = _unlinked_forced_pair(d)
        if kind == "gamma1" and pair is not None:
            red.delete_chords([lab for lab in d.labels if lab not in pair])
            return True
        cyc = _gon_cycle(d)
        if cyc is not None and len(cyc) % 2 == 1:
            ones = [lab for lab in cyc if d.framing(lab) == 1]
            if len(ones) <= 1:
                return _reduce_pgon_tail(red)
        state = (red.graph.canonical, tuple(sorted(red.circuit.transitions.items())))
        if state in seen:
            return False
        seen.add(state)
        conflict = forced_two_coloring(build_H(d))
        if isinstance(conflict, TwoColoring):
            return False
        if conflict.kind == "odd_cycle":
            keep = set(conflict.chords)
            red.delete_chords([lab for lab in d.labels if lab not in keep])
            continue
        endpoint = conflict.chords[0]
        try:
            red.change((endpoint,))
        except TraversalSplitError:  # pragma: no cover - forced chords merge
            return False


def materialize_obstruction(
    g: FramedFourGraph,
    obstruction: Union[Obstruction, ColoringConflict],
    circuit: Optional[RotatingCircuit] = None,
) -> MinorWitness:
    """Turn obstruction evidence into an explicit smoothing sequence from
    ``g`` to the named obstruction graph, validated by replay.

    Evidence chords must belong to the diagram of ``circuit`` (the
    deterministic rotating circuit when omitted).  Structured reductions
    follow the chord-deletion and circuit-change moves; if a non-standard
    conflict resists them, a brute-force minor search supplies the sequence.
    """
    if isinstance(obstruction, ColoringConflict):
        circ = circuit if circuit is not None else rotating_circuit(g)
        d = chord_diagram(circ)
        kind = _classify_conflict(d, obstruction)
        obstruction = Obstruction(kind, obstruction.chords)
    if g.vertex_count == 0 or len(components(g)) != 1:
        raise ValueError("obstructions are materialized per vertex component")
    circ = circuit if circuit is not None else rotating_circuit(g)
    d = chord_diagram(circ)
    labels = set(d.labels)
    if not set(obstruction.chords) <= labels:
        raise ValueError("conflict does not match the graph's diagram")
    if obstruction.kind == "gamma":
        (star,) = obstruction.chords
        if d.framing(star) != 1:
            raise ValueError("conflict does not match the graph's diagram")
    elif obstruction.kind not in ("delta", "gamma1"):
        raise ValueError(f"unknown obstruction kind {obstruction.kind!r}")

    target = named_graph(obstruction.kind)
    red = _Reducer(g, circ)
    ok = False
    if obstruction.kind == "gamma":
        red.delete_chords([lab for lab in d.labels if lab not in obstruction.chords])
        ok = is_isomorphic(red.graph, target)
    else:
        pair = _unlinked_forced_pair(d)
        if obstruction.kind == "gamma1" and pair is not None:
            red.delete_chords([lab for lab in d.labels if lab not in pair])
            ok = is_isomorphic(red.graph, target)
        else:
            red.delete_chords(
                [lab for lab in d.labels if lab not in set(obstruction.chords)]
            )
            ok = _reduce_conflict(red, obstruction.kind) and is_isomorphic(
                red.graph, target
            )

    if ok:
        witness = MinorWitness(
            tuple(red.steps), fingerprint(g), fingerprint(target)
        )
    else:
        # conflicts outside the structured reductions (e.g. forced paths):
        # fall back to the exhaustive oracle at desk scale
        witness = has_minor(g, target)
        if witness is None:
            raise ValueError(
                f"no {obstruction.kind} reduction found; "
                "conflict does not match the graph's diagram"
            )
    if not is_isomorphic(replay_minor(g, witness), target):  # pragma: no cover
        raise AssertionError("materialized witness failed to replay")
    return witness
