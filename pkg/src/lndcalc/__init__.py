"""Exact symbolic computation for algebras with commuting locally nilpotent
derivations: invariant projections, Taylor decompositions, Weyl-algebra
automorphism inversion, exp/log, and differential operator series."""

from .automorphisms import (
    Automorphism,
    Derivation,
    DiffOpSeries,
    LinearMapTable,
    aut_apply,
    aut_compose,
    aut_to_series,
    aut_verify,
    exp_der,
    invert,
    linear_map_table,
    log_aut,
    map_to_series,
    series_apply,
    twisted_partials,
    twisted_system,
)
from .commpoly import CommPoly, comm_mul, comm_partial, comm_substitute, jacobian_det
from .errors import (
    CapExceededError,
    JacobianError,
    LndError,
    ParseError,
    RelationError,
    SignatureMismatchError,
    UsageError,
)
from .freealg import FreeElement, free_ad, free_mul, free_partial
from .invariants import (
    GeneratorWitness,
    commutative_invariant_images,
    enumerate_generators,
    graded_kernel_oracle,
    relation_check,
    subalgebra_graded_dimension,
    weitzenboeck_closed_form,
    weitzenboeck_invariants,
    weitzenboeck_system,
)
from .multiindex import MultiIndex
from .parsing import (
    CommCarrier,
    FreeCarrier,
    WeylCarrier,
    parse_comm,
    parse_element,
    parse_free,
    parse_images,
    parse_weyl,
)
from .projections import (
    NILPOTENCE_CAP,
    CombinationDerivation,
    InnerDerivation,
    LndSystem,
    PartialDerivation,
    TaylorCoefficients,
    standard_system,
)
from .weyl import (
    DEGREE_CAP,
    WeylElement,
    WeylSignature,
    apply_pd_multi,
    central_to_commpoly,
    commpoly_to_central,
    weyl_ad,
    weyl_mul,
)

__version__ = "0.1.0"

__all__ = [
    "Automorphism",
    "CapExceededError",
    "CombinationDerivation",
    "CommCarrier",
    "CommPoly",
    "DEGREE_CAP",
    "Derivation",
    "DiffOpSeries",
    "FreeCarrier",
    "FreeElement",
    "GeneratorWitness",
    "InnerDerivation",
    "JacobianError",
    "LinearMapTable",
    "LndError",
    "LndSystem",
    "MultiIndex",
    "NILPOTENCE_CAP",
    "ParseError",
    "PartialDerivation",
    "RelationError",
    "SignatureMismatchError",
    "TaylorCoefficients",
    "UsageError",
    "WeylCarrier",
    "WeylElement",
    "WeylSignature",
    "apply_pd_multi",
    "aut_apply",
    "aut_compose",
    "aut_to_series",
    "aut_verify",
    "central_to_commpoly",
    "comm_mul",
    "comm_partial",
    "comm_substitute",
    "commpoly_to_central",
    "commutative_invariant_images",
    "enumerate_generators",
    "exp_der",
    "free_ad",
    "free_mul",
    "free_partial",
    "graded_kernel_oracle",
    "invert",
    "jacobian_det",
    "linear_map_table",
    "log_aut",
    "map_to_series",
    "parse_comm",
    "parse_element",
    "parse_free",
    "parse_images",
    "parse_weyl",
    "relation_check",
    "series_apply",
    "standard_system",
    "subalgebra_graded_dimension",
    "twisted_partials",
    "twisted_system",
    "weitzenboeck_closed_form",
    "weitzenboeck_invariants",
    "weitzenboeck_system",
    "weyl_ad",
    "weyl_mul",
]
