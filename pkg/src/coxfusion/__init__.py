"""Coxeter planes as fixed points of Verlinde-ring hypergroup actions."""

from .chebyshev import IntPolynomial, delta, evaluate, product_support
from .coxeter import (
    INFINITE,
    Bipartition,
    CoxeterDiagram,
    CoxeterError,
    CoxeterPlane,
    bipartition,
    cartan_form,
    coxeter_number,
    coxeter_plane,
    diagram,
    distinguished_coxeter_element,
    parse_diagram,
    project_to_plane,
    reflection_matrices,
    root_system,
    rotation_angle,
)
from .fusion_ring import (
    FusionElement,
    FusionRing,
    FusionRingError,
    even_subring,
    fib_ring,
    multiply,
    verlinde_ring,
)
from .hypergroup import (
    FixedSpace,
    Hypergroup,
    HypergroupAction,
    action_from_module,
    fixed_space,
    from_fusion_ring,
    verify_hypergroup_axioms,
)
from .report import CheckResult, all_passed, failures
from .verify import (
    TheoremReport,
    check_bifurcation_lemma,
    check_decomposition_lemma,
    check_main_theorem,
    check_regular_split,
    default_roster,
    run_suite,
)
from .zplus_module import (
    RegularElement,
    ZPlusModule,
    ZPlusModuleError,
    ade_module,
    decompose,
    regular_element,
    regular_module,
    restrict,
)

__version__ = "0.1.0"
