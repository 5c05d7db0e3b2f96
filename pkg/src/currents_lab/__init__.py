"""Exact rational geodesic currents on free groups and orbit experiments
for outer automorphisms acting on them."""
from .currents import (
    FrequencyProfile,
    RationalCurrent,
    act,
    add,
    counting_current,
    exact_profile,
    frequency_profile,
    load_current,
    occurrences,
    projective_distance,
    scale,
    weight,
)
from .dynamics import (
    BoundaryStatus,
    BudgetError,
    FixedStatus,
    OrbitReport,
    PeriodicClassCertificate,
    PreconditionError,
    TooManyClassesError,
    boundary_class_test,
    detect_convergence,
    estimate_dilatation,
    exceptional_orbit_check,
    fixed_point_check,
    hyperbolic_candidate_search,
    orbit,
    periodic_class_search,
    pf_eigenvalue,
    transition_matrix,
)
from .free_group import (
    Automorphism,
    CyclicWord,
    MalformedWordError,
    RankMismatchError,
    Word,
    apply,
    compose,
    conjugacy_class,
    conjugate_equal,
    cyclic_reduce,
    is_proper_power,
    load_automorphism,
    power,
    reduce,
    verify_inverse,
)
from .trees import (
    InvalidGraphError,
    MarkedMetricGraph,
    intersection,
    load_graph,
    rose,
    scale_tree,
    translation_length,
    tree_act,
)
from .whitehead import (
    WhiteheadAutomorphism,
    WhiteheadGraph,
    is_primitive,
    minimal_set_obstruction,
    whitehead_automorphisms,
    whitehead_graph,
    whitehead_reduce,
)

__all__ = [
    "FrequencyProfile",
    "RationalCurrent",
    "act",
    "add",
    "counting_current",
    "exact_profile",
    "frequency_profile",
    "load_current",
    "occurrences",
    "projective_distance",
    "scale",
    "weight",
    "BoundaryStatus",
    "BudgetError",
    "FixedStatus",
    "OrbitReport",
    "PeriodicClassCertificate",
    "PreconditionError",
    "TooManyClassesError",
    "boundary_class_test",
    "detect_convergence",
    "estimate_dilatation",
    "exceptional_orbit_check",
    "fixed_point_check",
    "hyperbolic_candidate_search",
    "orbit",
    "periodic_class_search",
    "pf_eigenvalue",
    "transition_matrix",
    "Automorphism",
    "CyclicWord",
    "MalformedWordError",
    "RankMismatchError",
    "Word",
    "apply",
    "compose",
    "conjugacy_class",
    "conjugate_equal",
    "cyclic_reduce",
    "is_proper_power",
    "load_automorphism",
    "power",
    "reduce",
    "verify_inverse",
    "InvalidGraphError",
    "MarkedMetricGraph",
    "intersection",
    "load_graph",
    "rose",
    "scale_tree",
    "translation_length",
    "tree_act",
    "WhiteheadAutomorphism",
    "WhiteheadGraph",
    "is_primitive",
    "minimal_set_obstruction",
    "whitehead_automorphisms",
    "whitehead_graph",
    "whitehead_reduce",
]

__version__ = "0.1.0"
