"""The ``fcd`` text format for framed chord diagrams.

A file is one header line ``fcd 1``, then one block per component:

    n <count>
    <2*count chord labels, each of 1..count exactly twice>
    <count framing bits, ordered by first occurrence of each label>

and an optional trailing ``circles <k>`` line for vertex-free circles.
UTF-8, LF line endings.
"""

from __future__ import annotations

import re

from .circuits import FramedChordDiagram, realize
from .core import CIRCLE, EMPTY_GRAPH, FramedFourGraph, disjoint_union

MAGIC = "fcd 1"


class DiagramParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _tokens(text: str):
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", text)]


def parse_diagram(text: str) -> tuple[list[FramedChordDiagram], int]:
    """Parse a DiagramFile into its component diagrams and circle count."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].strip() != MAGIC:
        raise DiagramParseError(f"bad magic; expected {MAGIC!r}", 1)

    diagrams: list[FramedChordDiagram] = []
    circles = 0
    i = 1
    saw_circles = False
    while i < len(lines):
        toks = _tokens(lines[i])
        if not toks:
            i += 1
            continue
        head = toks[0][0]
        if head == "n":
            if saw_circles:
                raise DiagramParseError("component block after circles line", i + 1)
            if len(toks) != 2 or not toks[1][0].isdigit():
                raise DiagramParseError("expected 'n <count>'", i + 1)
            count = int(toks[1][0])
            if i + 2 >= len(lines):
                raise DiagramParseError("truncated component block", i + 1)
            word_toks = _tokens(lines[i + 1])
            if len(word_toks) != 2 * count:
                raise DiagramParseError(
                    f"expected {2 * count} labels, found {len(word_toks)}", i + 2
                )
            word = []
            for tok, col in word_toks:
                if not tok.isdigit() or int(tok) < 1:
                    raise DiagramParseError(
                        f"label {tok!r} is not a positive integer", i + 2, col
                    )
                word.append(int(tok))
            seen: dict[int, int] = {}
            for tok, col in word_toks:
                seen[int(tok)] = seen.get(int(tok), 0) + 1
            for lab, cnt in seen.items():
                if cnt != 2:
                    raise DiagramParseError(
                        f"label {lab} occurs {cnt} times (expected 2)", i + 2
                    )
            if seen and set(seen) != set(range(1, count + 1)):
                raise DiagramParseError(
                    f"labels must be 1..{count}", i + 2
                )
            bit_toks = _tokens(lines[i + 2])
            if len(bit_toks) != count:
                raise DiagramParseError(
                    f"expected {count} framing bits, found {len(bit_toks)}", i + 3
                )
            bits = []
            for tok, col in bit_toks:
                if tok not in ("0", "1"):
                    raise DiagramParseError(
                        f"framing bit {tok!r} is not 0 or 1", i + 3, col
                    )
                bits.append(int(tok))
            diagrams.append(FramedChordDiagram(tuple(word), tuple(bits)))
            i += 3
        elif head == "circles":
            if saw_circles:
                raise DiagramParseError("duplicate circles line", i + 1)
            if len(toks) != 2 or not toks[1][0].isdigit():
                raise DiagramParseError("expected 'circles <k>'", i + 1)
            circles = int(toks[1][0])
            saw_circles = True
            i += 1
        else:
            raise DiagramParseError(
                f"unexpected content {head!r}", i + 1, toks[0][1]
            )
    return diagrams, circles


def serialize_diagram(diagrams, circles: int = 0) -> str:
    """Emit a DiagramFile; chord labels are normalized to 1..count by first
    occurrence, making files order-canonical."""
    out = [MAGIC]
    for d in diagrams:
        relabel = {lab: i + 1 for i, lab in enumerate(d.labels)}
        out.append(f"n {d.n_chords}")
        out.append(" ".join(str(relabel[lab]) for lab in d.word))
        out.append(" ".join(str(b) for b in d.framing_bits))
    if circles:
        out.append(f"circles {circles}")
    return "\n".join(out) + "\n"


def graph_of(diagrams, circles: int = 0) -> FramedFourGraph:
    """Disjoint union of the realized components plus free circles."""
    g = EMPTY_GRAPH
    for d in diagrams:
        g = disjoint_union(g, realize(d))
    for _ in range(circles):
        g = disjoint_union(g, CIRCLE)
    return g


def load_graph(text: str) -> FramedFourGraph:
    diagrams, circles = parse_diagram(text)
    return graph_of(diagrams, circles)
