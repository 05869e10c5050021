"""Rotating circuits and the framed-chord-diagram encoding of 4-graphs.

A rotating circuit traverses every edge of a connected component once and
always exits a vertex through a slot adjacent (never opposite) to the entry
slot.  Encoding the two passages of each vertex as a chord on the traversal
circle, with framing 0 exactly when the two entry slots are opposite, yields
a framed chord diagram; ``realize`` inverts the encoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .core import (
    CIRCLE,
    FramedFourGraph,
    Pairing,
    _graph_from_chords,
    components,
    opposite_slot,
)


class TraversalSplitError(ValueError):
    """Changing a transition would break the traversal into two closed curves."""


# ---------------------------------------------------------------------------
# framed chord diagrams


@dataclass(frozen=True)
class FramedChordDiagram:
    """Cyclic word of chord endpoint labels plus one framing bit per chord.

    ``word`` lists the 2n endpoints around the oriented core circle; each
    label occurs exactly twice.  ``framing_bits`` are ordered by the first
    occurrence of each label.  The empty diagram (core circle only) is valid.
    """

    word: tuple[int, ...]
    framing_bits: tuple[int, ...]

    def __post_init__(self):
        counts: dict = {}
        for lab in self.word:
            counts[lab] = counts.get(lab, 0) + 1
        bad = [lab for lab, c in counts.items() if c != 2]
        if bad:
            raise ValueError(f"labels must occur exactly twice: {bad}")
        if len(self.framing_bits) != len(counts):
            raise ValueError("one framing bit per chord is required")
        if any(b not in (0, 1) for b in self.framing_bits):
            raise ValueError("framing bits must be 0 or 1")

    @classmethod
    def of(cls, word, framings) -> "FramedChordDiagram":
        """Build from a word plus either a label->bit mapping or a bit sequence
        ordered by first occurrence."""
        word = tuple(word)
        labels = _first_occurrence(word)
        if hasattr(framings, "keys"):
            if set(framings.keys()) != set(labels):
                raise ValueError("framings must cover exactly the chord labels")
            bits = tuple(framings[lab] for lab in labels)
        else:
            bits = tuple(framings)
        return cls(word, bits)

    @classmethod
    def from_text(cls, word_text: str, framing_text: str = "") -> "FramedChordDiagram":
        """Parse e.g. ``from_text("1 2 1 2", "0 0")``."""
        word = tuple(int(tok) for tok in word_text.split())
        bits = tuple(int(tok) for tok in framing_text.split())
        return cls(word, bits)

    @property
    def labels(self) -> tuple[int, ...]:
        return _first_occurrence(self.word)

    @property
    def n_chords(self) -> int:
        return len(self.framing_bits)

    @cached_property
    def framings(self) -> dict[int, int]:
        return dict(zip(self.labels, self.framing_bits))

    def framing(self, label) -> int:
        try:
            return self.framings[label]
        except KeyError:
            raise ValueError(f"unknown chord {label!r}") from None

    def endpoints(self, label) -> tuple[int, int]:
        pos = tuple(i for i, lab in enumerate(self.word) if lab == label)
        if len(pos) != 2:
            raise ValueError(f"unknown chord {label!r}")
        return pos

    @cached_property
    def canonical(self) -> tuple:
        """Equivalence key: minimal (word, bits) over rotations and relabeling.

        The core circle's orientation is part of the data, so reflections are
        not quotiented out.
        """
        if not self.word:
            return ((), ())
        best = None
        m = len(self.word)
        fr = self.framings
        for r in range(m):
            rotated = self.word[r:] + self.word[:r]
            relabel: dict = {}
            new_word = []
            for lab in rotated:
                if lab not in relabel:
                    relabel[lab] = len(relabel) + 1
                new_word.append(relabel[lab])
            bits = tuple(fr[lab] for lab in sorted(relabel, key=relabel.get))
            key = (tuple(new_word), bits)
            if best is None or key < best:
                best = key
        return best

    def __str__(self):
        word = " ".join(map(str, self.word))
        bits = " ".join(map(str, self.framing_bits))
        return f"[{word} | {bits}]" if self.word else "[empty]"


EMPTY_DIAGRAM = FramedChordDiagram((), ())


def _first_occurrence(word) -> tuple:
    seen: list = []
    for lab in word:
        if lab not in seen:
            seen.append(lab)
    return tuple(seen)


def diagrams_equivalent(d1: FramedChordDiagram, d2: FramedChordDiagram) -> bool:
    """Combinatorial equivalence: cyclic rotation plus chord relabeling."""
    return d1.canonical == d2.canonical


def linked(d: FramedChordDiagram, a, b) -> bool:
    """True iff the endpoints of ``b`` separate the endpoints of ``a`` on the
    core circle, i.e. the labels alternate ``a b a b`` cyclically."""
    if a == b:
        raise ValueError("linkedness needs two distinct chords")
    i, j = d.endpoints(a)
    k, l = d.endpoints(b)
    return (i < k < j) != (i < l < j)


def interlacement_graph(d: FramedChordDiagram) -> dict:
    """Simple graph over chord labels with an edge for every linked pair."""
    labels = d.labels
    adj: dict = {lab: set() for lab in labels}
    for idx, a in enumerate(labels):
        for b in labels[idx + 1 :]:
            if linked(d, a, b):
                adj[a].add(b)
                adj[b].add(a)
    return {lab: frozenset(nbrs) for lab, nbrs in adj.items()}


def delete_chord(d: FramedChordDiagram, a) -> FramedChordDiagram:
    """Subdiagram with chord ``a`` and its endpoints removed."""
    d.endpoints(a)  # raises on unknown chord
    word = tuple(lab for lab in d.word if lab != a)
    fr = d.framings
    return FramedChordDiagram.of(word, {lab: fr[lab] for lab in word})


def realize(d: FramedChordDiagram) -> FramedFourGraph:
    """Restore the framed 4-graph of a diagram: one vertex per chord, a free
    circle for the empty diagram.  Inverse to ``chord_diagram`` up to
    isomorphism."""
    return _graph_from_chords(d.word, d.framings)


def realization_circuit(d: FramedChordDiagram) -> RotatingCircuit:
    """The rotating circuit traced by ``realize(d)``'s core circle.

    Its chord diagram reproduces ``d`` with labels renumbered by first
    occurrence, so evidence expressed in those labels transfers directly to
    the realized graph."""
    from .core import _realize_with_steps

    g, steps = _realize_with_steps(d.word, d.framings)
    return RotatingCircuit(g, steps)


# ---------------------------------------------------------------------------
# rotating circuits


@dataclass(frozen=True)
class RotatingCircuit:
    """A closed traversal of one connected component.

    ``steps`` holds the exit half-edge of every traversal step; the step
    travels its edge and arrives at ``graph.pairing[steps[i]]``.  For a
    vertex-free circle component ``steps`` is empty: the circuit is the
    circle itself.
    """

    graph: FramedFourGraph
    steps: tuple[int, ...]

    def __post_init__(self):
        g = self.graph
        if not self.steps:
            if g.vertex_count != 0 or g.free_circles != 1:
                raise ValueError("empty circuit is only valid for a single circle")
            return
        if g.free_circles != 0:
            raise ValueError("circuit component cannot carry free circles")
        edges = sorted(min(h, g.pairing[h]) for h in self.steps)
        if edges != sorted(min(h, p) for h, p in g.edges()):
            raise ValueError("steps must traverse every edge exactly once")
        for i, h in enumerate(self.steps):
            arrive = g.pairing[self.steps[i - 1]]
            if arrive // 4 != h // 4:
                raise ValueError("consecutive steps must share a vertex")
            if h % 4 in (arrive % 4, opposite_slot(arrive % 4)):
                raise ValueError("circuit must exit via an adjacent slot")

    @property
    def is_circle(self) -> bool:
        return not self.steps

    @cached_property
    def passages(self) -> tuple[tuple[int, int, int], ...]:
        """Per position: (vertex, entry slot, exit slot)."""
        g = self.graph
        out = []
        for i, h in enumerate(self.steps):
            arrive = g.pairing[self.steps[i - 1]]
            out.append((h // 4, arrive % 4, h % 4))
        return tuple(out)

    @cached_property
    def transitions(self) -> dict[int, Pairing]:
        """The adjacent slot pairing each vertex uses in this traversal."""
        slots: dict[int, list] = {}
        for v, s_in, s_out in self.passages:
            slots.setdefault(v, []).append((s_in, s_out))
        return {v: Pairing.from_slot_pairs(ps) for v, ps in slots.items()}

    def transition(self, v: int) -> Pairing:
        return self.transitions[v]

    @cached_property
    def chord_order(self) -> tuple[int, ...]:
        """Vertices in order of first passage; chord label k is vertex
        ``chord_order[k-1]``."""
        seen: list = []
        for v, _, _ in self.passages:
            if v not in seen:
                seen.append(v)
        return tuple(seen)

    @property
    def chord_to_vertex(self) -> dict[int, int]:
        return {i + 1: v for i, v in enumerate(self.chord_order)}

    def vertex_of_chord(self, label: int) -> int:
        return self.chord_to_vertex[label]

    def edge_steps(self) -> tuple[tuple[int, bool], ...]:
        """Steps as (edge id, forward?) with edge id = smaller half-edge."""
        g = self.graph
        return tuple((min(h, g.pairing[h]), h < g.pairing[h]) for h in self.steps)


def chord_diagram(c: RotatingCircuit) -> FramedChordDiagram:
    """Encode a circuit: one chord per vertex, endpoints in passage order,
    framing 0 exactly for vertices whose two entry slots are opposite."""
    if c.is_circle:
        return EMPTY_DIAGRAM
    label_of = {v: i + 1 for i, v in enumerate(c.chord_order)}
    word = tuple(label_of[v] for v, _, _ in c.passages)
    entries: dict[int, list] = {}
    for v, s_in, _ in c.passages:
        entries.setdefault(v, []).append(s_in)
    framings = {}
    for v, (e1, e2) in entries.items():
        framings[label_of[v]] = 0 if e1 == opposite_slot(e2) else 1
    return FramedChordDiagram.of(word, framings)


def _trace_curves(g: FramedFourGraph, assignment) -> list[tuple[int, ...]]:
    """Closed curves induced by a transition assignment, one normalized
    directed representative per curve."""
    pairing = g.pairing
    n4 = len(pairing)
    nxt = [0] * n4
    for h in range(n4):
        p = pairing[h]
        v, s = divmod(p, 4)
        nxt[h] = 4 * v + assignment[v].slot_partner[s]
    seen = [False] * n4
    cycles = []
    for h0 in range(n4):
        if seen[h0]:
            continue
        cyc = []
        h = h0
        while not seen[h]:
            seen[h] = True
            cyc.append(h)
            h = nxt[h]
        cycles.append(tuple(cyc))

    def rotated_min(cyc: tuple[int, ...]) -> tuple[int, ...]:
        i = cyc.index(min(cyc))
        return cyc[i:] + cyc[:i]

    # each undirected curve appears as two directed cycles (mutual reversals)
    curves: dict = {}
    for cyc in cycles:
        key = frozenset(cyc) | frozenset(pairing[h] for h in cyc)
        cand = rotated_min(cyc)
        prev = curves.get(key)
        if prev is None or cand < prev:
            curves[key] = cand
    return list(curves.values())


def _assignment_of(c: RotatingCircuit) -> list[Pairing]:
    return [c.transitions[v] for v in range(c.graph.vertex_count)]


def rotating_circuit(g: FramedFourGraph) -> RotatingCircuit:
    """A deterministic rotating circuit of a connected graph.

    Starts from the all-A transition assignment and repeatedly flips the
    lowest vertex where two distinct curves meet; each flip merges them, so
    the loop ends with a single closed curve.
    """
    if len(components(g)) != 1:
        raise ValueError("graph is not connected")
    if g.vertex_count == 0:
        return RotatingCircuit(g, ())
    n = g.vertex_count
    assignment = [Pairing.A] * n
    while True:
        curves = _trace_curves(g, assignment)
        if len(curves) == 1:
            return RotatingCircuit(g, curves[0])
        curve_of = {}
        for ci, cyc in enumerate(curves):
            for h in cyc:
                curve_of[h] = ci
                curve_of[g.pairing[h]] = ci
        for v in range(n):
            if len({curve_of[4 * v + s] for s in range(4)}) > 1:
                assignment[v] = assignment[v].other
                break
        else:  # pragma: no cover - impossible for connected graphs
            raise AssertionError("no merging vertex found on a connected graph")


def all_rotating_circuits(g: FramedFourGraph) -> list[RotatingCircuit]:
    """Every rotating circuit: one per transition assignment whose curves
    form a single closed traversal.  Cost 2^n over the component's vertices."""
    if len(components(g)) != 1:
        raise ValueError("graph is not connected")
    if g.vertex_count == 0:
        return [RotatingCircuit(g, ())]
    out = []
    for assignment in product((Pairing.A, Pairing.B), repeat=g.vertex_count):
        curves = _trace_curves(g, assignment)
        if len(curves) == 1:
            out.append(RotatingCircuit(g, curves[0]))
    return out


def change_transitions(c: RotatingCircuit, vertices) -> RotatingCircuit:
    """Switch the transition at every vertex in ``vertices`` jointly.

    Raises :class:`TraversalSplitError` when the rewired curves no longer
    form a single closed traversal.
    """
    if c.is_circle:
        raise ValueError("a circle circuit has no vertices")
    assignment = _assignment_of(c)
    vs = set(vertices)
    for v in vs:
        if not 0 <= v < c.graph.vertex_count:
            raise ValueError(f"unknown vertex {v}")
        assignment[v] = assignment[v].other
    curves = _trace_curves(c.graph, assignment)
    if len(curves) != 1:
        raise TraversalSplitError(
            f"transition change at {sorted(vs)} splits the traversal into "
            f"{len(curves)} closed curves"
        )
    return RotatingCircuit(c.graph, curves[0])


def change_transition(c: RotatingCircuit, v: int) -> RotatingCircuit:
    """Switch the transition pattern at one vertex; errors when the
    alternative transition splits the traversal."""
    return change_transitions(c, (v,))
