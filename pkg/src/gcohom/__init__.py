"""Exact-arithmetic group cohomology for finite groups.

The package models continuous and locally continuous cochains over a finite
group through pluggable continuity classes, builds the associated double
complex, and transfers locally tame cocycles to globally tame ones with
machine-checkable certificates.  All arithmetic is exact.
"""

from .bicomplex import (BiCochain, TotalCochain, augment_h, augment_v,
                        col_edge, corner_witness, d_h, d_v, equivariantize,
                        row_contraction, row_edge, total_differential,
                        total_from_components, vertical_insertion)
from .checks import CheckResult, run_suite
from .cochains import (Cochain, InhomCochain, cochain_from_function,
                       differential, homogeneous_of, inhomogeneous_of,
                       is_equivariant, zero_cochain)
from .cohomology import (CoboundaryWitness, CohomologyGroup, cohomology_group,
                         solve_coboundary)
from .continuity import (ContinuityClass, all_class, is_continuous,
                         is_locally_continuous, is_member, quotient_class)
from .errors import (ClassViolationError, GcohomError, InternalCheckError,
                     ObstructionError, ValidationError)
from .groups import FiniteGroup, direct_product, group_from_mult, make_cyclic
from .ladder import (CoefficientSES, LadderReport, LESReport, connecting_hom,
                     ladder_check, les_segment, make_ses)
from .linalg import (FPAbelianGroup, SNFResult, homology_at, kernel_mod,
                     lattice_quotient, smith_normal_form, solve_fp)
from .modules import GModule, module_with_action, trivial_module
from .transfer import (ExactnessReport, TransferCertificate, TransferStep,
                       column_exactness_check, transfer_lc_to_c)

__version__ = "0.1.0"

__all__ = [
    "BiCochain", "TotalCochain", "augment_h", "augment_v", "col_edge",
    "corner_witness", "d_h", "d_v", "equivariantize", "row_contraction",
    "row_edge", "total_differential", "total_from_components",
    "vertical_insertion",
    "CheckResult", "run_suite",
    "Cochain", "InhomCochain", "cochain_from_function", "differential",
    "homogeneous_of", "inhomogeneous_of", "is_equivariant", "zero_cochain",
    "CoboundaryWitness", "CohomologyGroup", "cohomology_group",
    "solve_coboundary",
    "ContinuityClass", "all_class", "is_continuous", "is_locally_continuous",
    "is_member", "quotient_class",
    "ClassViolationError", "GcohomError", "InternalCheckError",
    "ObstructionError", "ValidationError",
    "FiniteGroup", "direct_product", "group_from_mult", "make_cyclic",
    "CoefficientSES", "LadderReport", "LESReport", "connecting_hom",
    "ladder_check", "les_segment", "make_ses",
    "FPAbelianGroup", "SNFResult", "homology_at", "kernel_mod",
    "lattice_quotient", "smith_normal_form", "solve_fp",
    "GModule", "module_with_action", "trivial_module",
    "ExactnessReport", "TransferCertificate", "TransferStep",
    "column_exactness_check", "transfer_lc_to_c",
    "__version__",
]
