"""Simplicial affine semigroups: toric ideals, tangent cones, Betti numbers."""

from .semigroup import (
    AffineSemigroup,
    apery_set,
    contains,
    detect_extremal_rays,
    factorizations,
    is_homogeneous_semigroup,
    natural_semigroup,
    order,
    order_obstructions,
    verify_reduction,
)
from .binomial import Binomial, TermOrder, buchberger, gastinger_check, lattice_kernel, toric_ideal
from .local import cm_check, homogeneity_gb_check, mora_normal_form, project_basis, standard_basis
from .betti import betti_compare, betti_semigroup, betti_standard_graded
from .extensions import (
    extension_sequence,
    geometric_semigroup,
    is_complete_intersection,
    nice_extension,
    projective_closure,
    verify_extension_theorems,
)

__version__ = "0.1.0"

__all__ = [
    "AffineSemigroup",
    "Binomial",
    "TermOrder",
    "apery_set",
    "betti_compare",
    "betti_semigroup",
    "betti_standard_graded",
    "buchberger",
    "cm_check",
    "contains",
    "detect_extremal_rays",
    "extension_sequence",
    "factorizations",
    "gastinger_check",
    "geometric_semigroup",
    "homogeneity_gb_check",
    "is_complete_intersection",
    "is_homogeneous_semigroup",
    "lattice_kernel",
    "mora_normal_form",
    "natural_semigroup",
    "nice_extension",
    "order",
    "order_obstructions",
    "project_basis",
    "projective_closure",
    "standard_basis",
    "toric_ideal",
    "verify_extension_theorems",
    "verify_reduction",
]
