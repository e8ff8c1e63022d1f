"""Finite models of setoid categories with equality on objects."""

from .errors import (
    CompatibilityError,
    DomainMismatch,
    ExtensionalityError,
    IncompleteFamily,
    InvalidArrow,
    MalformedInput,
    PreconditionError,
)
from .report import Report
from .setoid import (
    ExtFun,
    Setoid,
    Subsetoid,
    check_extensional,
    check_setoid,
    dot_in,
    ext_eq,
    ext_maps,
    ext_setoid,
    identity,
    product,
    subsetoid_eq,
    subsetoid_leq,
)
from .family import (
    Family,
    SetoidSum,
    SubsetoidFamily,
    check_cocone,
    check_down_family,
    check_family,
    check_injection_property,
    complete_transports,
    hat_family,
    sigma,
    universal_map,
)
from .relations import (
    Relation,
    graph_of,
    identity_relation,
    is_functional,
    rel_compose,
    rel_dom,
    rel_ran,
    saturate,
)
from .category import (
    EACategory,
    EAFunctor,
    ECategory,
    EFunctor,
    HFCategory,
    SetoidsCategory,
    check_e_functor,
    check_ea,
    check_ea_functor,
    check_hf,
    ea_to_hf,
    hf_to_ea,
)
from .constructions import (
    build_C,
    build_S,
    check_iso,
    discrete_category,
    family_as_efunctor,
    full_image,
    functor_M,
    functor_N,
)

__version__ = "0.1.0"
