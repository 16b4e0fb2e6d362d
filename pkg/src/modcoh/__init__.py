"""Exact coherence checks for monoidal categories acting on module categories.

Layers, bottom up: ``linalg`` (exact matrices over Q and GF(p)), ``algebra``
(algebras, modules, balanced tensors, corners), ``monoidal`` (modules over a
Hopf algebra), ``modcat`` (action structures and diagram checkers),
``transport`` (structure transported along an equivalence), ``truncation``
(``A-mod ~ eAe-mod`` for a full idempotent) and ``stages`` (nested
idempotents).
"""
from .algebra import (
    Algebra,
    Bimodule,
    Idempotent,
    Module,
    ModuleMorphism,
    balanced_tensor,
    corner_algebra,
    corner_module,
    hom_basis,
    is_full_idempotent,
    make_group_algebra,
    regular_module,
    validate_algebra,
)
from .linalg import GF, QQ, Mat, echelonize, kernel_basis, kronecker, solve
from .modcat import (
    ActionStructure,
    DiagramReport,
    ModuleFunctorDatum,
    check_bimodule_axioms,
    check_bimodule_functor,
    check_module_functor,
    check_naturality,
    check_pentagon,
    compose_module_functors,
    tensor_action,
)
from .monoidal import HopfData, MonoidalContext, hopf_from_group, tensor_modules
from .stages import build_staged, check_stage_factorization, staged_equivalence_functors
from .transport import (
    EquivalenceDatum,
    induced_module_functors,
    transport_bimodule,
    transport_left,
    transport_right,
)
from .truncation import (
    FullnessFailure,
    build_truncation_equivalence,
    corner_bimodule_structure,
    translate_left,
    translate_right,
)

__version__ = "0.1.0"
