"""nangulate: exact-arithmetic workbench for n-angulations of proj-A.

The layers, bottom to top:

* linalg      exact fields F_p / Q and dense matrices with certificates
* algebras    finite-dimensional algebras, right modules, hom spaces
* structure   radicals, socles, idempotents, covers, envelopes
* bimodules   enveloping algebras, syzygies, twist detection, tensors
* complexes   periodic complexes, rotations, cones, the homotopy solver
* engine      angulation contexts, membership, lifting, completions
* verify      randomized axiom suite and the worked-family surveys
"""

from .linalg import Mat, PrimeField, QQ, RationalField, field_by_name
from .algebras import Algebra, Automorphism, Module, ModuleMap, hom_basis
from .structure import (
    algebra_radical,
    injective_envelope,
    is_selfinjective,
    is_semisimple,
    primitive_idempotents,
    projective_cover,
)
from .bimodules import Enveloping, bimodule_syzygy, detect_twist, twist_module
from .complexes import (
    ChainMap,
    Homotopy,
    PeriodicComplex,
    Suspension,
    homotopy_between,
    is_contractible,
    is_exact,
    is_homotopy_equivalence,
    mapping_cone,
    reduce_stably_zero,
    rotate_left,
    rotate_right,
    z1,
)
from .engine import AngulationContext, MembershipCertificate, build_context, r_u_complex
from .verify import verify_axioms

__all__ = [
    "Algebra",
    "AngulationContext",
    "Automorphism",
    "ChainMap",
    "Enveloping",
    "Homotopy",
    "Mat",
    "MembershipCertificate",
    "Module",
    "ModuleMap",
    "PeriodicComplex",
    "PrimeField",
    "QQ",
    "RationalField",
    "Suspension",
    "algebra_radical",
    "bimodule_syzygy",
    "build_context",
    "detect_twist",
    "field_by_name",
    "hom_basis",
    "homotopy_between",
    "injective_envelope",
    "is_contractible",
    "is_exact",
    "is_homotopy_equivalence",
    "is_selfinjective",
    "is_semisimple",
    "mapping_cone",
    "primitive_idempotents",
    "projective_cover",
    "r_u_complex",
    "reduce_stably_zero",
    "rotate_left",
    "rotate_right",
    "twist_module",
    "verify_axioms",
    "z1",
]

__version__ = "0.1.0"
