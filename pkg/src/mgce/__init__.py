"""Exact mixed graded Chevalley-Eilenberg complexes of small dg Lie algebras."""
from .ce import (betti, ce_cohomological, ce_coefficients, ce_homological, ce_map, duality_check,
                 monoidality_check)
from .complex import ChainComplex, dual_complex, homology, shift, tensor_complex
from .enveloping import koszul_resolution, pbw_truncate, u_cone_mixed
from .lie import DgLieAlgebra, Representation, adjoint_rep, make_lie, trivial_rep, validate_lie, validate_rep
from .linalg import RatMatrix, kernel_basis, rank
from .manifest import load_fixture, parse_manifest, serialize_manifest
from .mixed import (MixedGradedModule, adjoint_eps, dual_mixed, internal_hom, tate_total, tensor_mixed,
                    validate_mixed)

__all__ = [
    "ChainComplex",
    "DgLieAlgebra",
    "MixedGradedModule",
    "RatMatrix",
    "Representation",
    "adjoint_eps",
    "adjoint_rep",
    "betti",
    "ce_coefficients",
    "ce_cohomological",
    "ce_homological",
    "ce_map",
    "dual_complex",
    "dual_mixed",
    "duality_check",
    "homology",
    "internal_hom",
    "kernel_basis",
    "koszul_resolution",
    "load_fixture",
    "make_lie",
    "monoidality_check",
    "parse_manifest",
    "pbw_truncate",
    "rank",
    "serialize_manifest",
    "shift",
    "tate_total",
    "tensor_complex",
    "tensor_mixed",
    "trivial_rep",
    "u_cone_mixed",
    "validate_lie",
    "validate_mixed",
    "validate_rep",
]

__version__ = "0.1.0"
