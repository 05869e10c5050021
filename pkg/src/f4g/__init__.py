"""Framed 4-valent graphs: planarity and projective-plane checkerboard
embeddability, decided with machine-checkable certificates and verified
against brute-force minor oracles."""

from .core import (
    CIRCLE,
    EMPTY_GRAPH,
    FramedFourGraph,
    Pairing,
    SmoothingChoice,
    SourceSinkStructure,
    all_smoothings,
    components,
    components_with_vertices,
    delete_component,
    disjoint_union,
    fingerprint,
    has_source_sink_structure,
    is_connected,
    is_isomorphic,
    named_graph,
    odd_gon,
    smooth,
    source_sink_structures,
)
from .circuits import (
    EMPTY_DIAGRAM,
    FramedChordDiagram,
    RotatingCircuit,
    TraversalSplitError,
    all_rotating_circuits,
    change_transition,
    change_transitions,
    chord_diagram,
    delete_chord,
    diagrams_equivalent,
    interlacement_graph,
    linked,
    realize,
    rotating_circuit,
)
from .minors import (
    ComponentDeletion,
    MinorWitness,
    SMinorWitness,
    has_minor,
    has_s_minor,
    replay_minor,
    replay_s_minor,
)
from .obstructions import (
    ColoringConflict,
    ComponentPlanarity,
    ComponentRp2,
    HGraph,
    Obstruction,
    PlanarityVerdict,
    Rp2Verdict,
    TransverseCyclePair,
    TwoColoring,
    build_H,
    check_split,
    forced_two_coloring,
    gamma_s_minor_witness,
    is_planar,
    materialize_obstruction,
    minimal_odd_cycle,
    rp2_checkerboard_embeddable,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
