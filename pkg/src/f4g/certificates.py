"""JSON certificate documents and their re-validation.

Every document is ``{question, input_fingerprint, verdict, witness}``.
Positive witnesses are chord bipartitions or (D1, D2) splits checked
directly against the diagram; negative witnesses carry obstruction kinds
with replayable smoothing/deletion steps.
"""

from __future__ import annotations

from typing import Optional

from .circuits import (
    FramedChordDiagram,
    RotatingCircuit,
    chord_diagram,
    linked,
    realization_circuit,
    realize,
)
from .core import (
    FramedFourGraph,
    Pairing,
    SmoothingChoice,
    fingerprint,
    is_isomorphic,
    named_graph,
)
from .minors import (
    ComponentDeletion,
    MinorWitness,
    SMinorWitness,
    replay_minor,
    replay_s_minor,
)
from .obstructions import (
    Obstruction,
    PlanarityVerdict,
    Rp2Verdict,
    check_split,
    materialize_obstruction,
)


class CertificateError(ValueError):
    pass


# ---------------------------------------------------------------------------
# encoding helpers


def steps_to_json(steps) -> list:
    out = []
    for step in steps:
        if isinstance(step, SmoothingChoice):
            out.append({"op": "smooth", "vertex": step.vertex, "pairing": step.pairing.name})
        elif isinstance(step, ComponentDeletion):
            out.append({"op": "delete_component", "index": step.index})
        else:
            raise TypeError(f"unknown step {step!r}")
    return out


def steps_from_json(items) -> tuple:
    steps = []
    for item in items:
        if item["op"] == "smooth":
            steps.append(SmoothingChoice(item["vertex"], Pairing[item["pairing"]]))
        elif item["op"] == "delete_component":
            steps.append(ComponentDeletion(item["index"]))
        else:
            raise CertificateError(f"unknown step op {item['op']!r}")
    return tuple(steps)


def diagram_to_json(d: FramedChordDiagram) -> dict:
    return {"word": list(d.word), "framings": list(d.framing_bits)}


def diagram_from_json(data) -> FramedChordDiagram:
    return FramedChordDiagram(tuple(data["word"]), tuple(data["framings"]))


def _obstruction_to_json(diagram: FramedChordDiagram, obs: Obstruction) -> dict:
    """Obstruction evidence with steps that replay on ``realize(diagram)``,
    keeping the certificate self-contained."""
    circuit = realization_circuit(diagram)
    witness = materialize_obstruction(circuit.graph, obs, circuit)
    return {
        "kind": obs.kind,
        "chords": list(obs.chords),
        "steps": steps_to_json(witness.steps),
    }


# ---------------------------------------------------------------------------
# document builders


def planarity_certificate(g: FramedFourGraph, verdict: PlanarityVerdict) -> dict:
    witness = []
    for idx, comp in enumerate(verdict.components):
        entry: dict = {
            "component": idx,
            "diagram": diagram_to_json(comp.diagram),
            "planar": comp.planar,
        }
        if comp.planar:
            entry["bipartition"] = [list(part) for part in comp.bipartition]
        else:
            entry["obstruction"] = _obstruction_to_json(comp.diagram, comp.obstruction)
        witness.append(entry)
    return {
        "question": "planar",
        "input_fingerprint": fingerprint(g),
        "verdict": verdict.planar,
        "witness": witness,
    }


def rp2_certificate(g: FramedFourGraph, verdict: Rp2Verdict) -> dict:
    witness = []
    for idx, comp in enumerate(verdict.components):
        entry: dict = {
            "component": idx,
            "diagram": diagram_to_json(comp.diagram),
            "embeddable": comp.embeddable,
            "planar": comp.planar,
        }
        if comp.embeddable:
            entry["split"] = {"d1": list(comp.split[0]), "d2": list(comp.split[1])}
        else:
            entry["obstruction"] = _obstruction_to_json(comp.diagram, comp.obstruction)
        witness.append(entry)
    return {
        "question": "rp2-multi" if verdict.multi else "rp2",
        "input_fingerprint": fingerprint(g),
        "verdict": verdict.embeddable,
        "witness": witness,
    }


def minor_certificate(
    g: FramedFourGraph,
    pattern_name: str,
    pattern: FramedFourGraph,
    witness: Optional[MinorWitness],
) -> dict:
    doc = {
        "question": f"minor:{pattern_name}",
        "input_fingerprint": fingerprint(g),
        "verdict": witness is not None,
        "witness": None,
    }
    if witness is not None:
        doc["witness"] = {
            "pattern_fingerprint": fingerprint(pattern),
            "steps": steps_to_json(witness.steps),
        }
    return doc


def s_minor_certificate(
    g: FramedFourGraph,
    pattern_name: str,
    pattern: FramedFourGraph,
    witness: Optional[SMinorWitness],
) -> dict:
    doc = {
        "question": f"sminor:{pattern_name}",
        "input_fingerprint": fingerprint(g),
        "verdict": witness is not None,
        "witness": None,
    }
    if witness is not None:
        doc["witness"] = {
            "pattern_fingerprint": fingerprint(pattern),
            "kept_edges": [list(e) for e in witness.kept_edges],
            "suppressed_vertices": list(witness.suppressed_vertices),
            "deleted_components": list(witness.deleted_components),
        }
    return doc


def circuit_certificate(g: FramedFourGraph, records) -> dict:
    """``records`` are (source diagram, circuit, derived diagram) triples per
    component; the steps traverse ``realize(source)``."""
    witness = []
    for idx, (source, circuit, derived) in enumerate(records):
        witness.append(
            {
                "component": idx,
                "source": diagram_to_json(source),
                "steps": list(circuit.steps),
                "passages": [list(p) for p in circuit.passages],
                "diagram": diagram_to_json(derived),
            }
        )
    return {
        "question": "circuit",
        "input_fingerprint": fingerprint(g),
        "verdict": True,
        "witness": witness,
    }


# ---------------------------------------------------------------------------
# validation


def _validate_obstruction(diagram: FramedChordDiagram, data: dict, targets) -> None:
    if data["kind"] not in targets:
        raise CertificateError(f"unexpected obstruction kind {data['kind']!r}")
    if not set(data["chords"]) <= set(diagram.labels):
        raise CertificateError("obstruction chords not in diagram")
    g = realize(diagram)
    steps = steps_from_json(data["steps"])
    result = replay_minor(g, MinorWitness(steps, "", ""))
    if not is_isomorphic(result, named_graph(data["kind"])):
        raise CertificateError(
            f"obstruction steps do not replay to {data['kind']}"
        )


def _validate_bipartition(diagram: FramedChordDiagram, parts) -> None:
    p1, p2 = (tuple(p) for p in parts)
    if sorted(p1 + p2) != sorted(diagram.labels):
        raise CertificateError("bipartition must cover the chords exactly")
    if any(b == 1 for b in diagram.framing_bits):
        raise CertificateError("planar witness with a framing-1 chord")
    for part in (p1, p2):
        for i, a in enumerate(part):
            for b in part[i + 1 :]:
                if linked(diagram, a, b):
                    raise CertificateError(f"linked pair {a},{b} within a part")


def validate_certificate(doc: dict) -> bool:
    """Re-validate an emitted certificate; raises CertificateError on any
    inconsistency, returns True otherwise."""
    question = doc["question"]
    if question == "planar":
        overall = True
        for entry in doc["witness"]:
            diagram = diagram_from_json(entry["diagram"])
            if entry["planar"]:
                _validate_bipartition(diagram, entry["bipartition"])
            else:
                overall = False
                _validate_obstruction(diagram, entry["obstruction"], ("gamma", "delta"))
        if overall != doc["verdict"]:
            raise CertificateError("verdict does not match component records")
        return True
    if question in ("rp2", "rp2-multi"):
        all_embeddable = True
        non_planar = 0
        for entry in doc["witness"]:
            diagram = diagram_from_json(entry["diagram"])
            if not entry["planar"]:
                non_planar += 1
            if entry["embeddable"]:
                split = entry["split"]
                if not check_split(diagram, tuple(split["d1"]), tuple(split["d2"])):
                    raise CertificateError("split violates the side conditions")
            else:
                all_embeddable = False
                _validate_obstruction(
                    diagram, entry["obstruction"], ("delta", "gamma1")
                )
        expected = all_embeddable
        if question == "rp2-multi" and expected:
            expected = non_planar <= 1
        if expected != doc["verdict"]:
            raise CertificateError("verdict does not match component records")
        return True
    if question.startswith("minor:") or question.startswith("sminor:"):
        if doc["verdict"] != (doc["witness"] is not None):
            raise CertificateError("verdict does not match witness presence")
        return True
    if question == "circuit":
        for entry in doc["witness"]:
            source = diagram_from_json(entry["source"])
            derived = diagram_from_json(entry["diagram"])
            g = realize(source)
            if entry["steps"]:
                circuit = RotatingCircuit(g, tuple(entry["steps"]))
                if chord_diagram(circuit).canonical != derived.canonical:
                    raise CertificateError("circuit does not encode its diagram")
            elif derived.word:
                raise CertificateError("circle circuit must have an empty diagram")
        return True
    if question == "enumerate":
        return True
    raise CertificateError(f"unknown question {question!r}")


def validate_minor_certificate(doc: dict, g: FramedFourGraph, pattern: FramedFourGraph) -> bool:
    """Replay a minor/sminor certificate against the actual input graph."""
    if fingerprint(g) != doc["input_fingerprint"]:
        raise CertificateError("input fingerprint mismatch")
    if doc["witness"] is None:
        return True
    data = doc["witness"]
    if doc["question"].startswith("minor:"):
        steps = steps_from_json(data["steps"])
        result = replay_minor(g, MinorWitness(steps, "", ""))
    else:
        witness = SMinorWitness(
            kept_edges=tuple(tuple(e) for e in data["kept_edges"]),
            suppressed_vertices=tuple(data["suppressed_vertices"]),
            deleted_components=tuple(data["deleted_components"]),
            source="",
            target="",
        )
        result = replay_s_minor(g, witness)
    if not is_isomorphic(result, pattern):
        raise CertificateError("witness does not replay to the pattern")
    return True
