"""Sidon sets for integer linear forms as perturbations of integer sequences."""

from .bound_analysis import (
    DensityCheck,
    WindowCertificate,
    density_check,
    greedy_bound_holds,
    greedy_radius,
    refute_bounded,
    window_certificate,
)
from .constructor import (
    GrowthCheck,
    check_growth,
    construct_bounded,
    construct_poly,
    iter_bounded_choices,
)
from .estimators import PerturbationRefuter, SidonPerturbation
from .exceptions import (
    BudgetExceeded,
    ConstructionError,
    NotSidonError,
    PreconditionError,
    SidonError,
)
from .linear_form import (
    IndexSet,
    LinearForm,
    NWitness,
    contraction,
    has_property_N,
    parse_form,
    subset_sum,
    vanishing_subset,
)
from .sequence_io import IntSequence, emit_trace, parse_sequence_spec, trace_from_json
from .sidon_engine import (
    CollisionWitness,
    ExtensionChecker,
    ExtensionConflict,
    FiniteSet,
    can_extend,
    forbidden_values,
    is_sidon,
    phi_image,
    translate_family,
)
from .trace import ConstructionTrace, TraceStep

__version__ = "0.1.0"
