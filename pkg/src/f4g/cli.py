"""Command-line interface.

Subcommands: ``check planar``, ``check rp2 [--multi]``, ``circuit``,
``minor``, ``sminor``, ``enumerate``.  Exit codes: 0 when the property holds
or a containment is found, 1 when it fails or nothing is found, 2 on input
errors.  ``--json`` emits a certificate document, ``--quiet`` suppresses
output.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stdout

from . import certificates
from .circuits import chord_diagram, realize, rotating_circuit
from .core import FramedFourGraph, named_graph
from .diagram_io import DiagramParseError, graph_of, parse_diagram
from .enumeration import labeled_count, verify_deciders
from .minors import has_minor, has_s_minor
from .obstructions import is_planar, rp2_checkerboard_embeddable

PATTERN_NAMES = ("gamma", "delta", "gamma1")


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse from calling sys.exit directly
        raise CliError(message)


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON certificate")
    common.add_argument("--quiet", action="store_true", help="suppress output")

    parser = _Parser(prog="f4g", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide a property of a diagram file")
    check_sub = check.add_subparsers(dest="property", required=True)
    planar = check_sub.add_parser("planar", parents=[common])
    planar.add_argument("file")
    rp2 = check_sub.add_parser("rp2", parents=[common])
    rp2.add_argument("file")
    rp2.add_argument(
        "--multi",
        action="store_true",
        help="require at most one non-planar component overall",
    )

    circuit = sub.add_parser("circuit", parents=[common], help="print a rotating circuit")
    circuit.add_argument("file")

    minor = sub.add_parser("minor", parents=[common], help="minor containment")
    minor.add_argument("file")
    minor.add_argument("--pattern", required=True)

    sminor = sub.add_parser("sminor", parents=[common], help="s-minor containment")
    sminor.add_argument("file")
    sminor.add_argument("--pattern", required=True)

    enum = sub.add_parser("enumerate", parents=[common], help="enumerate small diagrams")
    enum.add_argument("--chords", type=int, required=True)
    enum.add_argument(
        "--verify",
        action="store_true",
        help="cross-check the deciders against the minor oracles",
    )
    return parser


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}")


def _load(path: str):
    text = _read(path)
    diagrams, circles = parse_diagram(text)
    return diagrams, circles, graph_of(diagrams, circles)


def _pattern_graph(spec: str) -> tuple[str, FramedFourGraph]:
    if spec in PATTERN_NAMES:
        return spec, named_graph(spec)
    try:
        _, _, g = _load(spec)
    except (CliError, DiagramParseError) as exc:
        raise CliError(f"unknown pattern {spec!r}: {exc}")
    return spec, g


def _emit(args, doc: dict, lines: list) -> None:
    if args.quiet:
        return
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _fmt_chords(chords) -> str:
    return "{" + ", ".join(map(str, chords)) + "}"


def _cmd_check_planar(args) -> int:
    _, _, g = _load(args.file)
    verdict = is_planar(g)
    lines = []
    for idx, comp in enumerate(verdict.components):
        if comp.diagram.word == ():
            lines.append(f"component {idx}: circle, planar")
        elif comp.planar:
            p1, p2 = comp.bipartition
            lines.append(
                f"component {idx}: planar, bipartition "
                f"{_fmt_chords(p1)} / {_fmt_chords(p2)}"
            )
        else:
            obs = comp.obstruction
            lines.append(
                f"component {idx}: non-planar, obstruction {obs.kind}, "
                f"chords {_fmt_chords(obs.chords)}"
            )
    lines.append(f"planar: {'yes' if verdict.planar else 'no'}")
    _emit(args, certificates.planarity_certificate(g, verdict) if args.json else {}, lines)
    return 0 if verdict.planar else 1


def _cmd_check_rp2(args) -> int:
    _, _, g = _load(args.file)
    verdict = rp2_checkerboard_embeddable(g, multi=args.multi)
    lines = []
    for idx, comp in enumerate(verdict.components):
        if comp.embeddable:
            d1, d2 = comp.split
            lines.append(
                f"component {idx}: embeddable, split D1={_fmt_chords(d1)} "
                f"D2={_fmt_chords(d2)}"
            )
        else:
            obs = comp.obstruction
            lines.append(
                f"component {idx}: not embeddable, obstruction {obs.kind}, "
                f"chords {_fmt_chords(obs.chords)}"
            )
    if args.multi:
        non_planar = sum(1 for comp in verdict.components if not comp.planar)
        lines.append(f"non-planar components: {non_planar} (at most 1 allowed)")
    lines.append(f"rp2 checkerboard embeddable: {'yes' if verdict.embeddable else 'no'}")
    _emit(args, certificates.rp2_certificate(g, verdict) if args.json else {}, lines)
    return 0 if verdict.embeddable else 1


def _cmd_circuit(args) -> int:
    diagrams, circles, g = _load(args.file)
    records = []
    lines = []
    idx = 0
    for d in diagrams:
        sub = realize(d)
        circuit = rotating_circuit(sub)
        derived = chord_diagram(circuit)
        records.append((d, circuit, derived))
        vertices = " ".join(str(v) for v, _, _ in circuit.passages)
        lines.append(f"component {idx}: vertex sequence {vertices}")
        lines.append(f"component {idx}: diagram {derived}")
        idx += 1
    for _ in range(circles):
        from .circuits import EMPTY_DIAGRAM, RotatingCircuit
        from .core import CIRCLE

        records.append((EMPTY_DIAGRAM, RotatingCircuit(CIRCLE, ()), EMPTY_DIAGRAM))
        lines.append(f"component {idx}: circle")
        idx += 1
    _emit(args, certificates.circuit_certificate(g, records) if args.json else {}, lines)
    return 0


def _cmd_minor(args, s_variant: bool) -> int:
    _, _, g = _load(args.file)
    name, pattern = _pattern_graph(args.pattern)
    if s_variant:
        witness = has_s_minor(g, pattern)
        doc = certificates.s_minor_certificate(g, name, pattern, witness)
        noun = "s-minor"
    else:
        witness = has_minor(g, pattern)
        doc = certificates.minor_certificate(g, name, pattern, witness)
        noun = "minor"
    if witness is None:
        lines = [f"{name} is not a {noun} of the input"]
    else:
        lines = [f"{name} is a {noun} of the input"]
        if s_variant:
            lines.append(f"kept edges: {list(witness.kept_edges)}")
            lines.append(f"suppressed vertices: {list(witness.suppressed_vertices)}")
            if witness.deleted_components:
                lines.append(f"deleted components: {list(witness.deleted_components)}")
        else:
            for step in witness.steps:
                lines.append(f"  {certificates.steps_to_json([step])[0]}")
    _emit(args, doc if args.json else {}, lines)
    return 0 if witness is not None else 1


def _cmd_enumerate(args) -> int:
    if args.chords < 0:
        raise CliError("--chords must be >= 0")
    lines = []
    if args.verify:
        report = verify_deciders(args.chords)
        lines.append(
            f"checked {report.classes} diagram classes "
            f"({report.labeled} labeled instances, <= {args.chords} chords)"
        )
        if report.disagreements:
            first = report.disagreements[0]
            lines.append(
                f"FIRST DISAGREEMENT: {first.question} on {first.diagram} "
                f"(decider={first.decider}, oracle={first.oracle})"
            )
        lines.append(f"disagreements: {len(report.disagreements)}")
        doc = {
            "question": "enumerate",
            "input_fingerprint": f"chords<={args.chords}",
            "verdict": report.ok,
            "witness": {
                "classes": report.classes,
                "labeled": report.labeled,
                "disagreements": len(report.disagreements),
            },
        }
        _emit(args, doc if args.json else {}, lines)
        return 0 if report.ok else 1
    from .enumeration import diagram_classes

    reps = diagram_classes(args.chords)
    per_size: dict[int, int] = {}
    for d in reps:
        per_size[d.n_chords] = per_size.get(d.n_chords, 0) + 1
    for n in sorted(per_size):
        lines.append(
            f"chords {n}: {per_size[n]} classes ({labeled_count(n)} labeled)"
        )
    lines.append(f"total: {len(reps)} classes")
    doc = {
        "question": "enumerate",
        "input_fingerprint": f"chords<={args.chords}",
        "verdict": True,
        "witness": {"classes": len(reps), "per_size": per_size},
    }
    _emit(args, doc if args.json else {}, lines)
    return 0


def _dispatch(argv) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "check":
        if args.property == "planar":
            return _cmd_check_planar(args)
        return _cmd_check_rp2(args)
    if args.command == "circuit":
        return _cmd_circuit(args)
    if args.command == "minor":
        return _cmd_minor(args, s_variant=False)
    if args.command == "sminor":
        return _cmd_minor(args, s_variant=True)
    if args.command == "enumerate":
        return _cmd_enumerate(args)
    raise CliError(f"unknown command {args.command!r}")  # pragma: no cover


def run_command(argv) -> tuple[int, str]:
    """Run a CLI invocation, returning (exit code, captured output)."""
    buffer = io.StringIO()
    try:
        with redirect_stdout(buffer):
            code = _dispatch(list(argv))
    except CliError as exc:
        buffer.write(f"error: {exc}\n")
        code = exc.code
    except DiagramParseError as exc:
        buffer.write(f"error: {exc}\n")
        code = 2
    except ValueError as exc:
        buffer.write(f"error: {exc}\n")
        code = 2
    except SystemExit as exc:  # argparse --help
        code = int(exc.code or 0)
    return code, buffer.getvalue()


def main(argv=None) -> int:
    code, output = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(output)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
