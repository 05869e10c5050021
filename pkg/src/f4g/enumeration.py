"""Exhaustive enumeration of framed chord diagrams and the cross-check
harness pitting the deciders against the brute-force minor oracles."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .circuits import FramedChordDiagram, realize
from .core import named_graph
from .minors import has_minor
from .obstructions import gamma_s_minor_witness, is_planar, rp2_checkerboard_embeddable


def matchings(n_chords: int):
    """All perfect matchings of 2*n points, as tuples of position pairs."""
    points = list(range(2 * n_chords))

    def rec(free):
        if not free:
            yield ()
            return
        a = free[0]
        for bi in range(1, len(free)):
            b = free[bi]
            rest = free[1:bi] + free[bi + 1 :]
            for tail in rec(rest):
                yield ((a, b),) + tail

    yield from rec(points)


def word_of_matching(matching) -> tuple[int, ...]:
    word = [0] * (2 * len(matching))
    for label, (a, b) in enumerate(matching, start=1):
        word[a] = label
        word[b] = label
    return tuple(word)


def labeled_diagrams(n_chords: int):
    """Every labeled framed diagram with exactly ``n_chords`` chords."""
    for matching in matchings(n_chords):
        word = word_of_matching(matching)
        for bits in product((0, 1), repeat=n_chords):
            yield FramedChordDiagram(word, bits)


def diagram_classes(max_chords: int, min_chords: int = 0) -> list[FramedChordDiagram]:
    """One representative per combinatorial-equivalence class, for every
    chord count in ``min_chords..max_chords`` (0 chords = the empty diagram)."""
    reps: list[FramedChordDiagram] = []
    seen = set()
    for n in range(min_chords, max_chords + 1):
        for d in labeled_diagrams(n):
            key = d.canonical
            if key not in seen:
                seen.add(key)
                reps.append(d)
    return reps


def labeled_count(n_chords: int) -> int:
    """Labeled matchings times framings: (2n-1)!! * 2^n."""
    total = 1
    for k in range(2 * n_chords - 1, 0, -2):
        total *= k
    return total << n_chords


@dataclass
class Disagreement:
    diagram: FramedChordDiagram
    question: str
    decider: bool
    oracle: bool


@dataclass
class VerificationReport:
    max_chords: int
    classes: int = 0
    labeled: int = 0
    disagreements: list[Disagreement] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements


def verify_deciders(max_chords: int) -> VerificationReport:
    """Cross-check both deciders against the minor-engine oracles over every
    framed chord diagram with at most ``max_chords`` chords.

    Planarity is triangulated three ways: the decider, absence of the
    two-cycle witness, and absence of both planarity obstruction minors.
    """
    gamma = named_graph("gamma")
    delta = named_graph("delta")
    gamma1 = named_graph("gamma1")
    report = VerificationReport(max_chords)
    report.labeled = sum(labeled_count(n) for n in range(max_chords + 1))
    for d in diagram_classes(max_chords):
        report.classes += 1
        g = realize(d)
        planar = is_planar(g).planar
        no_two_cycle = gamma_s_minor_witness(g) is None
        no_planar_minor = has_minor(g, gamma) is None and has_minor(g, delta) is None
        if planar != no_two_cycle:
            report.disagreements.append(
                Disagreement(d, "planar vs two-cycle witness", planar, no_two_cycle)
            )
        if planar != no_planar_minor:
            report.disagreements.append(
                Disagreement(d, "planar vs minor oracle", planar, no_planar_minor)
            )
        embeddable = rp2_checkerboard_embeddable(g).embeddable
        no_rp2_minor = has_minor(g, delta) is None and has_minor(g, gamma1) is None
        if embeddable != no_rp2_minor:
            report.disagreements.append(
                Disagreement(d, "rp2 vs minor oracle", embeddable, no_rp2_minor)
            )
    return report
