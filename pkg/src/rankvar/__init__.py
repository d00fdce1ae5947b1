"""Rank varieties, Jordan types and LR combinatorics for symmetric-group modules
restricted to a maximal elementary abelian p-subgroup."""

from .cp import JordanType, gaussian_ext, jt_complementary, jt_ext, jt_stable, jt_sym, jt_tensor
from .gf import FieldSpec, GFMatrix, ext_power_matrix, kron, make_field, nilpotent_jordan_type, rank
from .modules import (ModuleRep, b_basis_change, direct_sum, ext_power_module, hook_specht, matrix_L,
                      natural_specht, quotient_D1, simple_D)
from .partitions import (Partition, complement, conjugate, dominates, enumerate_partitions,
                         union_sort)
from .variety import (PointAlpha, eval_f, eval_p, generic_type, in_rank_variety, jordan_at,
                      maximal_set_test, orbit_reduce, scan, x_alpha)

__version__ = "0.1.0"
