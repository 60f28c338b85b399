"""Exact coordination sequences of periodic graphs and proofs that their
generating functions are rational.

The pipeline: a periodic graph is turned into a vector-output finite
automaton whose Parikh image encodes all bounded-length reachability facts;
that image is a semilinear set, which is decomposed into disjoint
unambiguous linear sets; each part has a closed-form rational generating
function, and their sum times (1 - z) is the generating function of the
coordination sequence.  Every stage is cross-checked against brute-force
oracles (cover BFS, run enumeration, box enumeration), and all arithmetic is
exact.
"""

from ._kernels import BACKEND as kernel_backend
from .automaton import (
    ParikhVector,
    VectorNFA,
    build_coordination_nfa,
    parikh_image,
    run_parikh_oracle,
)
from .cli import (
    PipelineReport,
    cross_verify,
    nfa_from_json,
    nfa_to_json,
    pipeline_coordination_gf,
    symbolic_coordination_gf,
)
from .errors import BudgetExceeded, DecompositionError
from .genfunc import (
    NotQuasiPolynomialError,
    QuasiPolynomial,
    RationalGF,
    cumulative_to_exact,
    fit_rational,
    gf_add,
    gf_from_json,
    gf_to_json,
    gf_unambiguous_linear,
    series_coeffs,
    to_quasi_polynomial,
)
from .periodic_graph import (
    CoordinationSequence,
    CoverVertex,
    EdgeOrbit,
    ParseError,
    PeriodicGraph,
    bfs_coordination,
    canonical_edge_orbit,
    cover_neighbors,
    cumulative_counts,
    parse_periodic_graph,
)
from .semilinear import (
    AmbiguousWitness,
    LinearSet,
    SemilinearSet,
    Unambiguous,
    Unknown,
    check_unambiguous,
    count_representations,
    disambiguate,
    enumerate_in_box,
    linear_set_from_json,
    linear_set_to_json,
    member,
    semilinear_from_json,
    semilinear_to_json,
    slice_counts,
    validate_decomposition,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousWitness",
    "BudgetExceeded",
    "CoordinationSequence",
    "CoverVertex",
    "DecompositionError",
    "EdgeOrbit",
    "LinearSet",
    "NotQuasiPolynomialError",
    "ParikhVector",
    "ParseError",
    "PeriodicGraph",
    "PipelineReport",
    "QuasiPolynomial",
    "RationalGF",
    "SemilinearSet",
    "Unambiguous",
    "Unknown",
    "VectorNFA",
    "bfs_coordination",
    "build_coordination_nfa",
    "canonical_edge_orbit",
    "check_unambiguous",
    "count_representations",
    "cover_neighbors",
    "cross_verify",
    "cumulative_counts",
    "cumulative_to_exact",
    "disambiguate",
    "enumerate_in_box",
    "fit_rational",
    "gf_add",
    "gf_from_json",
    "gf_to_json",
    "gf_unambiguous_linear",
    "kernel_backend",
    "linear_set_from_json",
    "linear_set_to_json",
    "member",
    "nfa_from_json",
    "nfa_to_json",
    "parikh_image",
    "parse_periodic_graph",
    "pipeline_coordination_gf",
    "run_parikh_oracle",
    "semilinear_from_json",
    "semilinear_to_json",
    "series_coeffs",
    "slice_counts",
    "symbolic_coordination_gf",
    "to_quasi_polynomial",
    "validate_decomposition",
]
