"""Singularity ideals, tangent forms and first-order unfoldings of polynomial foliations."""

__version__ = "0.1.0"

from .errors import FoliaError, ParseError, PreconditionError, SemanticError
from .limits import Limits, ResourceLimitError, limits
from .polycore import PolyRing, Polynomial
from .extalg import (
    DiffForm,
    MultiVector,
    contract,
    dx,
    exterior_derivative,
    function_form,
    one_form,
    radial_field,
    vector_field,
    wedge,
)
from .groebner import (
    FreeModuleElement,
    Ideal,
    Submodule,
    ideal_dimension,
    ideal_equal,
    ideal_member,
    ideal_quotient,
    ideal_quotient_ideal,
    intersect,
    module_quotient,
    radical_equal,
    radical_member,
    submodule_member,
    syzygies,
)
from .foliation import (
    AnalysisReport,
    FoliationForm,
    TangentFrame,
    check_descent,
    check_integrability,
    check_plucker,
    decomposability_defect,
    inclusion_report,
    is_kupka_point,
    is_persistent_point,
    kupka_ideal,
    persistent_ideal,
    persistent_truncation_oracle,
    singular_ideal,
    tangent_frame,
)
from .unfolding import (
    DualForm,
    UnfoldingDatum,
    build_unfolding_codim1,
    build_unfolding_codimq,
    dual_derivative,
    dual_wedge,
    solve_flatness,
    unfolding_nonvanishing,
    verify_unfolding,
)
from .dsl import parse, print_document
