"""Conjugacy stability of finitely generated subgroups of free groups.

The library answers, with machine-checkable certificates, whether every
pair of subgroup elements conjugate in the ambient free group is already
conjugate inside the subgroup.  It is built on a Stallings inverse-automata
toolkit (folding, cores, pullbacks, coset automata) plus an independent
brute-force oracle used to validate the decision procedure at desk scale.
"""

__version__ = "0.1.0"

from .words import (
    Alphabet,
    Word,
    RootDecomposition,
    free_reduce,
    signed_letter_order,
    conjugate_in_free,
    centralizer_generator,
)
from .stallings import (
    StallingsGraph,
    Subgroup,
    CosetAutomaton,
    PullbackComponent,
    fold,
    build_graph,
    core_trim,
    graph_basis,
    conjugate_subgroup,
    pullback,
    intersection,
    coset_automaton,
    double_coset_automaton,
    coset_intersect,
    to_dot,
)
from .stability import (
    CandidateRep,
    RepAnalysis,
    Certificate,
    StabilityReport,
    STABLE,
    NOT_STABLE,
    candidate_reps,
    decide_stability,
    conjugacy_in_subgroup,
    validate_certificate,
    in_double_coset,
    dedup_double_cosets,
)
from .oracle import (
    BallSpec,
    OracleVerdict,
    enumerate_ball,
    brute_stability_witness,
    ls_exhaustive_check,
    max_ball_radius,
)

__all__ = [
    "__version__",
    "Alphabet",
    "Word",
    "RootDecomposition",
    "free_reduce",
    "signed_letter_order",
    "conjugate_in_free",
    "centralizer_generator",
    "StallingsGraph",
    "Subgroup",
    "CosetAutomaton",
    "PullbackComponent",
    "fold",
    "build_graph",
    "core_trim",
    "graph_basis",
    "conjugate_subgroup",
    "pullback",
    "intersection",
    "coset_automaton",
    "double_coset_automaton",
    "coset_intersect",
    "to_dot",
    "CandidateRep",
    "RepAnalysis",
    "Certificate",
    "StabilityReport",
    "STABLE",
    "NOT_STABLE",
    "candidate_reps",
    "decide_stability",
    "conjugacy_in_subgroup",
    "validate_certificate",
    "in_double_coset",
    "dedup_double_cosets",
    "BallSpec",
    "OracleVerdict",
    "enumerate_ball",
    "brute_stability_witness",
    "ls_exhaustive_check",
    "max_ball_radius",
]
