"""Finite bikei (involutory biquandles), their homology and cocycle invariants
of unoriented links and marked vertex surface diagrams."""

from .algebra import (
    AxiomReport,
    Bikei,
    BikeiHom,
    MalformedTableError,
    alexander_bikei,
    are_isomorphic,
    canonical_form,
    constant_action_bikei,
    enumerate_bikei,
    enumerate_homomorphisms,
    find_isomorphism,
    load_bikei,
    parse_bikei,
    relabel,
    render_bikei,
    verify_axioms,
)
from .chain_complex import ChainBasis, boundary_matrix, degenerate_generators, render_matrix
from .diagram import (
    Diagram,
    DiagramError,
    apply_move,
    coloring_constraints,
    diagrams_isomorphic,
    find_sites,
    load_diagram,
    parse_diagram,
    random_move,
    render_diagram,
)
from .errors import BikeiError, DomainError, GuardExceeded, ParseError
from .homology import (
    Cocycle2,
    CohomologyResult,
    bikei_cohomology,
    bikei_homology,
    is_cocycle_2,
    load_cocycle,
    mochizuki_cocycle,
    parse_cocycle,
    render_cocycle,
)
from .intlinalg import AbelianGroupShape, smith_normal_form, solve_mod
from .invariant import (
    Coloring,
    InvariantValue,
    boltzmann_weight,
    cocycle_invariant,
    counting_invariant,
    enumerate_colorings,
)

__version__ = "0.1.0"
