"""Exact arithmetic for free nilpotent groups, their automorphism towers,
polynomial coefficient modules, and degree-0 homological stability scans."""

from .autos import (
    Endo,
    HomMap,
    abelianization_matrix,
    apply_endo,
    compose,
    conjugate,
    endo_from_images,
    endo_from_json,
    endo_from_matrix,
    endo_to_json,
    flat,
    hom_gl_action,
    invert,
    is_automorphism,
    lift,
    lift_to_class,
    project,
    sharp,
    stabilize,
)
from .group import (
    GroupElement,
    NotAGroupElement,
    center_test,
    comm,
    element_from_json,
    element_to_json,
    element_to_text,
    h1_rank,
    h2_rank,
    inv,
    lcs_degree,
    leading_lie_part,
    magnus_embed,
    magnus_peel,
    mul,
    parse_element,
    truncate,
)
from .intlinalg import FinAbPresentation, SNFResult, snf
from .lie import LieElement, lie_apply_matrix, lie_bracket
from .series import TruncatedSeries
from .modules import (
    BasedModule,
    Const,
    DualStd,
    Ext,
    Hom,
    LieLayer,
    ModuleSpec,
    Std,
    Sum,
    Tensor,
    based_module_to_json,
    eval_module,
    kernel_homology_module,
    parse_module_spec,
    restrict_action,
)
from .stability import (
    ScanReport,
    aut_generators,
    coinvariants,
    gl_generators,
    kernel_homology_rank,
    stability_scan,
)
from .words import LyndonBasisElement, lyndon_basis, lyndon_words, mobius, witt_rank

__version__ = "0.1.0"
