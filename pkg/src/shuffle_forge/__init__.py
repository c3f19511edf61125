"""Exact computer algebra for trigonometric and rational shuffle algebras
of types C and D: quantum root vectors, specialization maps, integral-form
membership tests, and verification suites runnable from the shuffle-forge CLI.
"""

from .scalars import (LaurentZ, RationalV, PolyH, FracH, NotDivisible,
                      quantum_int, quantum_factorial, quantum_binom, angle)
from .roots import (RootSystem, PositiveRoot, positive_roots, root_by_name,
                    KostantPartition, kostant_partitions, PBWDKey, pbwd_keys)
from .shuffle import (ShuffleElement, unit, zero, generator, star, psi,
                      wheel_check, zeta, FELeaf, FEProd, FESum, FEScale,
                      FEComm, defining_relation, serre_relation,
                      proportional_monomial)
from .rootvec import (tilde_root_vector, tilde_parts, generic_root_vector,
                      doubled_root_vector, random_root_vector,
                      rtt_root_vector, divided_power, pbwd_monomial,
                      pbwd_image, closed_form)
from .specmaps import (phi_d, phi_single, kappa, c_factor, c_tilde,
                       lusztig_member, rtt_member, verify_vanishing,
                       verify_leading, dimension_report, p_lambda)
from .yangian import (RationalShuffleElement, unit_rat, zero_rat,
                      generator_rat, star_rat, psi_rat, wheel_check_rat,
                      hzeta, yangian_root_vector, tilde_x, xbar,
                      pbwd_monomial_rat, defining_relation_rat,
                      serre_relation_rat, phi_d_rat, phi_single_rat,
                      is_good, is_integral)
from .polyvars import KERNEL_BACKEND

__version__ = "1.0.0"

__all__ = [
    "LaurentZ", "RationalV", "PolyH", "FracH", "NotDivisible",
    "quantum_int", "quantum_factorial", "quantum_binom", "angle",
    "RootSystem", "PositiveRoot", "positive_roots", "root_by_name",
    "KostantPartition", "kostant_partitions", "PBWDKey", "pbwd_keys",
    "ShuffleElement", "unit", "zero", "generator", "star", "psi",
    "wheel_check", "zeta", "FELeaf", "FEProd", "FESum", "FEScale", "FEComm",
    "defining_relation", "serre_relation", "proportional_monomial",
    "tilde_root_vector", "tilde_parts", "generic_root_vector",
    "doubled_root_vector", "random_root_vector", "rtt_root_vector",
    "divided_power", "pbwd_monomial", "pbwd_image", "closed_form",
    "phi_d", "phi_single", "kappa", "c_factor", "c_tilde",
    "lusztig_member", "rtt_member", "verify_vanishing", "verify_leading",
    "dimension_report", "p_lambda",
    "RationalShuffleElement", "unit_rat", "zero_rat", "generator_rat",
    "star_rat", "psi_rat", "wheel_check_rat", "hzeta",
    "yangian_root_vector", "tilde_x", "xbar", "pbwd_monomial_rat",
    "defining_relation_rat", "serre_relation_rat", "phi_d_rat",
    "phi_single_rat", "is_good", "is_integral",
    "KERNEL_BACKEND", "__version__",
]
