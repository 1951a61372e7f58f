"""Exact homological invariants of generalized fibre sums of closed,
oriented 4-manifolds.

Given two sides described by algebraic data (Betti numbers, first
homology, the embedding of the surface on homology, pairing numbers of
the canonical class) and a gluing vector, the library computes the Betti
numbers and first homology of the sum, its rim-tori and split-class
groups, the block intersection form with its unimodular classification,
and the canonical class of the symplectic sum, all in exact integer
arithmetic with full internal cross-validation.
"""

from .abgroups import AbGroup, direct_sum, is_isomorphic, is_torsion_free, normal_form
from .engine import (
    ComplementInvariants,
    KernelData,
    SplitClass,
    SplitClassBasis,
    betti_numbers,
    complement_invariants,
    first_cohomology_rank,
    first_homology,
    kernel_data,
    phi_action_h1,
    phi_action_h2,
    rim_tori_group,
    split_class_basis,
)
from .forms import (
    BlockForm,
    CanonicalClass,
    Divisibility,
    FormClass,
    ScopeError,
    assemble_intersection_form,
    canonical_class,
    canonical_square,
    classify_form,
    divisibility,
    embed_h2,
    ionel_parker_checks,
    scope_gate,
)
from .intlat import (
    IntBasis,
    IntMatrix,
    SNFDecomposition,
    cokernel_presentation,
    kernel_basis,
    rank,
    smith_normal_form,
)
from .model import (
    BettiNumbers,
    DocumentError,
    FibreSumProblem,
    GluingClass,
    ManifoldSide,
    elliptic_surface,
    parse_problem,
    problem_to_dict,
    side_to_dict,
    validate_problem,
    validate_side,
)

__version__ = "0.1.0"

__all__ = [
    "AbGroup",
    "BettiNumbers",
    "BlockForm",
    "CanonicalClass",
    "ComplementInvariants",
    "Divisibility",
    "DocumentError",
    "FibreSumProblem",
    "FormClass",
    "GluingClass",
    "IntBasis",
    "IntMatrix",
    "KernelData",
    "ManifoldSide",
    "SNFDecomposition",
    "ScopeError",
    "SplitClass",
    "SplitClassBasis",
    "assemble_intersection_form",
    "betti_numbers",
    "canonical_class",
    "canonical_square",
    "classify_form",
    "cokernel_presentation",
    "complement_invariants",
    "direct_sum",
    "divisibility",
    "elliptic_surface",
    "embed_h2",
    "first_cohomology_rank",
    "first_homology",
    "ionel_parker_checks",
    "is_isomorphic",
    "is_torsion_free",
    "kernel_basis",
    "kernel_data",
    "normal_form",
    "parse_problem",
    "phi_action_h1",
    "phi_action_h2",
    "problem_to_dict",
    "rank",
    "rim_tori_group",
    "scope_gate",
    "side_to_dict",
    "smith_normal_form",
    "split_class_basis",
    "validate_problem",
    "validate_side",
]
